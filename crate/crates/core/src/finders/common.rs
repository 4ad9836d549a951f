//! Small helpers shared by the finders.

use std::collections::HashMap;

use super::report::{Star, Sunflower};
use crate::hypergraph::Hypergraph;

pub(crate) type Codegrees = HashMap<Vec<usize>, usize>;

pub(crate) fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

pub(crate) fn codeg(table: &Codegrees, set: &[usize]) -> usize {
    table.get(&sorted(set)[..]).copied().unwrap_or(0)
}

/// Vertices `z` with `set ∪ {z}` an edge, ascending. `set` has size `r - 1`.
pub(crate) fn completions(g: &Hypergraph, set: &[usize]) -> Vec<usize> {
    let s = sorted(set);
    let mut out: Vec<usize> = g
        .edges_containing(&s)
        .into_iter()
        .filter_map(|i| g.edges()[i].iter().copied().find(|v| s.binary_search(v).is_err()))
        .collect();
    out.sort_unstable();
    out
}

/// The `count` smallest unused completions of `set`, marked used on success.
pub(crate) fn extend_fresh(g: &Hypergraph, set: &[usize], count: usize, used: &mut [bool]) -> Option<Vec<usize>> {
    let picks: Vec<usize> = completions(g, set).into_iter().filter(|&z| !used[z]).take(count).collect();
    if picks.len() < count {
        return None;
    }
    for &z in &picks {
        used[z] = true;
    }
    Some(picks)
}

/// Vertices by decreasing value, ties by index.
pub(crate) fn by_desc(values: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(values[v]), v));
    order
}

/// The link of `v` in a 3-graph as vertex pairs, keeping those `keep` accepts.
pub(crate) fn link_pairs(g: &Hypergraph, v: usize, mut keep: impl FnMut(usize, usize) -> bool) -> Vec<(usize, usize)> {
    g.incident(v)
        .iter()
        .filter_map(|&i| {
            let e = &g.edges()[i];
            let mut rest = e.iter().copied().filter(|&u| u != v);
            let (a, b) = (rest.next()?, rest.next()?);
            keep(a, b).then_some((a, b))
        })
        .collect()
}

/// `St_4(h, k, 1)` from `Sf_3(1,k)` copies in the link of `apex`.
pub(crate) fn star_from_sunflowers(apex: usize, flowers: &[Sunflower]) -> Star {
    Star::new(
        apex,
        flowers
            .iter()
            .map(|f| {
                Star::new(
                    f.kernel[0],
                    f.petals.iter().map(|p| Star::flat(p[0], &[p[1]])).collect(),
                )
            })
            .collect(),
    )
}

pub(crate) fn mark(used: &mut [bool], vs: impl IntoIterator<Item = usize>) {
    for v in vs {
        used[v] = true;
    }
}
