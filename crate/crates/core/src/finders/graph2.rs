//! Graph-level building blocks: star-or-matching and many disjoint stars.

use serde::{Deserialize, Serialize};

use super::report::{FinderReport, Run, Star};
use super::FinderError;
use crate::hypergraph::Hypergraph;

/// Simple graph as sorted adjacency lists.
#[derive(Clone, Debug)]
pub(crate) struct Graph2 {
    pub adj: Vec<Vec<usize>>,
}

impl Graph2 {
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in pairs {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Graph2 { adj }
    }

    pub fn from_hypergraph(g: &Hypergraph) -> Self {
        debug_assert_eq!(g.r(), 2);
        Self::from_pairs(g.n(), g.edges().iter().map(|e| (e[0], e[1])))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchOrStar {
    Star { center: usize, leaves: Vec<usize> },
    Matching { edges: Vec<[usize; 2]> },
    Exhausted,
}

/// A star `S_k` at the smallest-index vertex of degree at least k; failing
/// that, an l-matching by repeatedly taking the smallest non-isolated vertex
/// with its smallest neighbour and deleting both. With no `S_k` and at least
/// `2kl` edges the matching is guaranteed.
pub fn match_or_star(g: &Hypergraph, k: usize, l: usize) -> Result<MatchOrStar, FinderError> {
    if g.r() != 2 {
        return Err(FinderError::Arity { expected: 2, found: g.r() });
    }
    let g2 = Graph2::from_hypergraph(g);
    Ok(star_or_matching(&g2, k, l, &vec![false; g2.n()]))
}

pub(crate) fn star_or_matching(g: &Graph2, k: usize, l: usize, forbidden: &[bool]) -> MatchOrStar {
    let live = |v: usize| !forbidden[v];
    for v in (0..g.n()).filter(|&v| live(v)) {
        let nbrs: Vec<usize> = g.adj[v].iter().copied().filter(|&u| live(u)).collect();
        if k > 0 && nbrs.len() >= k {
            return MatchOrStar::Star {
                center: v,
                leaves: nbrs[..k].to_vec(),
            };
        }
    }
    match greedy_matching(g, l, forbidden) {
        Some(edges) => MatchOrStar::Matching { edges },
        None => MatchOrStar::Exhausted,
    }
}

pub(crate) fn greedy_matching(g: &Graph2, l: usize, forbidden: &[bool]) -> Option<Vec<[usize; 2]>> {
    let mut dead = forbidden.to_vec();
    let mut out = Vec::new();
    for v in 0..g.n() {
        if out.len() == l {
            break;
        }
        if dead[v] {
            continue;
        }
        if let Some(&u) = g.adj[v].iter().find(|&&u| !dead[u]) {
            dead[v] = true;
            dead[u] = true;
            out.push([v.min(u), v.max(u)]);
        }
    }
    (out.len() == l).then_some(out)
}

/// Greedy maximal collection of vertex-disjoint `S_k`: centres in increasing
/// order, each with its smallest available neighbours. Marks used vertices.
pub(crate) fn greedy_stars(
    g: &Graph2,
    k: usize,
    count: usize,
    used: &mut [bool],
    center_ok: impl Fn(usize) -> bool,
    leaf_ok: impl Fn(usize) -> bool,
) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for c in 0..g.n() {
        if out.len() == count {
            break;
        }
        if used[c] || !center_ok(c) || g.degree(c) < k {
            continue;
        }
        let leaves: Vec<usize> = g.adj[c]
            .iter()
            .copied()
            .filter(|&u| !used[u] && leaf_ok(u))
            .take(k)
            .collect();
        if leaves.len() == k {
            used[c] = true;
            for &u in &leaves {
                used[u] = true;
            }
            out.push((c, leaves));
        }
    }
    out
}

/// `min{s, floor(sqrt(sn)/k)}`, the number of disjoint `S_k` promised at `6sn` edges.
pub(crate) fn star_target(n: usize, k: usize, s: usize) -> usize {
    s.min(((s * n) as f64).sqrt().div_euclid(k.max(1) as f64) as usize)
}

type Stars = Vec<(usize, Vec<usize>)>;

/// Two-phase search for `t` disjoint `S_k`: greedy high-degree centres
/// first, else a maximal collection after deleting the edges at high-degree
/// vertices. `Err` carries the failing phase.
pub(crate) fn disjoint_stars(
    g: &Graph2,
    k: usize,
    t: usize,
    run: &mut Run,
    forbidden: &[bool],
) -> Result<Stars, (&'static str, String)> {
    let n = g.n();
    if t == 0 {
        return Ok(Vec::new());
    }
    let high_cut = t * (k + 1) - 1;
    let high: Vec<usize> = (0..n).filter(|&v| !forbidden[v] && g.degree(v) >= high_cut).collect();
    run.phase("stars:high-degree-centres");
    if high.len() >= t {
        let centres = &high[..t];
        let mut used = forbidden.to_vec();
        for &c in centres {
            used[c] = true;
        }
        let mut out = Vec::new();
        for &c in centres {
            let leaves: Vec<usize> = g.adj[c].iter().copied().filter(|&u| !used[u]).take(k).collect();
            run.steps(1);
            if leaves.len() < k {
                break;
            }
            for &u in &leaves {
                used[u] = true;
            }
            out.push((c, leaves));
        }
        if out.len() == t {
            return Ok(out);
        }
    }
    run.phase("stars:maximal-collection");
    let mut removed = forbidden.to_vec();
    let mut cut = 0;
    for &v in &high {
        cut += g.degree(v);
        removed[v] = true;
    }
    run.deleted("stars:maximal-collection", cut);
    let mut used = removed.clone();
    let out = greedy_stars(g, k, t, &mut used, |_| true, |_| true);
    run.steps(out.len());
    if out.len() == t {
        Ok(out)
    } else {
        Err((
            "stars:maximal-collection",
            format!("maximal collection has {} of {t} stars", out.len()),
        ))
    }
}

/// Disjoint copies of `S_k` in a graph with `e >= 6sn` and `s >= k`.
pub fn disjoint_stars_graph(g: &Hypergraph, k: usize, s: usize) -> Result<FinderReport, FinderError> {
    if g.r() != 2 {
        return Err(FinderError::Arity { expected: 2, found: g.r() });
    }
    let g2 = Graph2::from_hypergraph(g);
    let target = star_target(g.n(), k, s);
    let mut run = Run::new(format!("{target} x S_{k}"));
    let required = 6.0 * (s * g.n()) as f64;
    run.hypothesis("e >= 6sn and s >= k", required, g.edge_count());
    if !run.hypothesis_met() || s < k || k == 0 {
        run.phase("precondition");
        return Ok(run.exhausted("precondition", "needs e >= 6sn and s >= k >= 1"));
    }
    let forbidden = vec![false; g.n()];
    match disjoint_stars(&g2, k, target, &mut run, &forbidden) {
        Ok(stars) => {
            let copies = stars.iter().map(|(c, l)| Star::flat(*c, l).embedding()).collect();
            Ok(run.found(g, copies))
        }
        Err((phase, why)) => Ok(run.exhausted(phase, why)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::random_graph_with_max_degree;
    use crate::util::subsets_of_range;

    fn graph(n: usize, pairs: &[[usize; 2]]) -> Hypergraph {
        Hypergraph::new(2, n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn matching_and_star_examples() {
        let m = graph(6, &[[0, 1], [2, 3], [4, 5]]);
        assert_eq!(
            match_or_star(&m, 2, 3).unwrap(),
            MatchOrStar::Matching {
                edges: vec![[0, 1], [2, 3], [4, 5]]
            }
        );
        let s5 = graph(6, &[[0, 1], [0, 2], [0, 3], [0, 4], [0, 5]]);
        assert_eq!(
            match_or_star(&s5, 3, 1).unwrap(),
            MatchOrStar::Star {
                center: 0,
                leaves: vec![1, 2, 3]
            }
        );
        assert!(match_or_star(&Hypergraph::empty(3, 4), 1, 1).is_err());
    }

    /// Maximum matching size by exhaustive search (tiny graphs only).
    fn max_matching(adj: &Graph2, dead: &mut Vec<bool>, from: usize) -> usize {
        let Some(v) = (from..adj.n()).find(|&v| !dead[v]) else {
            return 0;
        };
        dead[v] = true;
        let mut best = max_matching(adj, dead, v + 1);
        for &u in &adj.adj[v] {
            if !dead[u] {
                dead[u] = true;
                best = best.max(1 + max_matching(adj, dead, v + 1));
                dead[u] = false;
            }
        }
        dead[v] = false;
        best
    }

    #[test]
    fn bounded_degree_graphs_always_match() {
        let (k, l) = (3, 2);
        for seed in 0..500 {
            let g = random_graph_with_max_degree(14, k, 2 * k * l, seed).unwrap();
            let g2 = Graph2::from_hypergraph(&g);
            assert!(max_matching(&g2, &mut vec![false; 14], 0) >= l);
            match match_or_star(&g, k, l).unwrap() {
                MatchOrStar::Matching { edges } => {
                    assert_eq!(edges.len(), l);
                    let mut seen = std::collections::HashSet::new();
                    for [a, b] in edges {
                        assert!(g.contains_edge(&[a, b]));
                        assert!(seen.insert(a) && seen.insert(b));
                    }
                }
                other => panic!("seed {seed}: {other:?}"),
            }
        }
    }

    #[test]
    fn disjoint_stars_examples() {
        let k20 = Hypergraph::new(2, 20, subsets_of_range(20, 2)).unwrap();
        let rep = disjoint_stars_graph(&k20, 2, 2).unwrap();
        assert_eq!(rep.failing_phase(), Some("precondition"));
        let k25 = Hypergraph::new(2, 25, subsets_of_range(25, 2)).unwrap();
        let rep = disjoint_stars_graph(&k25, 2, 2).unwrap();
        assert!(rep.copies().len() >= 2);
        crate::embedding::validate_disjoint(rep.copies(), &k25).unwrap();
    }
}
