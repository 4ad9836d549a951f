//! 3-uniform generalised stars: the single-star argument, the well-behaved
//! disjoint collection, and the three star lemmas feeding the 4-uniform
//! finders.

use std::collections::BTreeMap;

use super::common::{by_desc, codeg, extend_fresh, link_pairs, mark};
use super::config::FinderConfig;
use super::descent::disjoint_star_descent;
use super::graph2::{disjoint_stars, greedy_stars, Graph2};
use super::report::{FinderReport, Run, Star};
use super::FinderError;
use crate::hypergraph::Hypergraph;
use crate::shapes::StarShape;

fn flat_stars(stars: Vec<(usize, Vec<usize>)>) -> Vec<Star> {
    stars.into_iter().map(|(c, l)| Star::flat(c, &l)).collect()
}

/// `St_3(h,k)` by the two-branch argument on `3hk`-expanding pairs.
pub(crate) fn st3_core(g: &Hypergraph, h: usize, k: usize, run: &mut Run) -> Option<Star> {
    let n = g.n();
    let tau = 3 * h * k;
    run.threshold(2, tau as f64);
    let table = g.codegree_table(2);
    let expanding = |a: usize, b: usize| codeg(&table, &[a, b]) >= tau;
    run.expanding(table.values().filter(|&&c| c >= tau).count());
    let has_expanding = |e: &[usize]| expanding(e[0], e[1]) || expanding(e[0], e[2]) || expanding(e[1], e[2]);
    let heavy = g.edges().iter().filter(|e| has_expanding(e)).count();

    let expanding_branch = |run: &mut Run| -> Option<Star> {
        run.phase("st3:expanding-pairs");
        let dv: Vec<Vec<(usize, usize)>> = (0..n).map(|v| link_pairs(g, v, expanding)).collect();
        let sizes: Vec<usize> = dv.iter().map(Vec::len).collect();
        for v in by_desc(&sizes) {
            if sizes[v] == 0 {
                break;
            }
            run.steps(1);
            let d = Graph2::from_pairs(n, dv[v].iter().copied());
            // an S_h of expanding pairs extends greedily
            if let Some(c) = (0..n).find(|&c| d.degree(c) >= h) {
                let leaves = &d.adj[c][..h];
                let mut used = vec![false; n];
                used[c] = true;
                mark(&mut used, leaves.iter().copied());
                let children: Option<Vec<Star>> = leaves
                    .iter()
                    .map(|&y| extend_fresh(g, &[c, y], k, &mut used).map(|zs| Star::flat(y, &zs)))
                    .collect();
                if let Some(children) = children {
                    return Some(Star::new(c, children));
                }
            }
            let mut used = vec![false; n];
            used[v] = true;
            let stars = greedy_stars(&d, k, h, &mut used, |_| true, |_| true);
            if stars.len() == h {
                return Some(Star::new(v, flat_stars(stars)));
            }
        }
        None
    };
    let deletion_branch = |run: &mut Run| -> Option<Star> {
        run.phase("st3:deletion");
        let pruned = g.filter_edges(|e| !has_expanding(e));
        run.deleted("st3:deletion", g.edge_count() - pruned.edge_count());
        for v in by_desc(&pruned.degrees()) {
            if pruned.degree(v) < h * k {
                break;
            }
            run.steps(1);
            let link = Graph2::from_pairs(n, link_pairs(&pruned, v, |_, _| true));
            let mut used = vec![false; n];
            used[v] = true;
            let stars = greedy_stars(&link, k, h, &mut used, |_| true, |_| true);
            if stars.len() == h {
                return Some(Star::new(v, flat_stars(stars)));
            }
        }
        None
    };
    if 2 * heavy >= g.edge_count() {
        expanding_branch(run).or_else(|| deletion_branch(run))
    } else {
        deletion_branch(run).or_else(|| expanding_branch(run))
    }
}

pub fn find_st3(g: &Hypergraph, h: usize, k: usize, cfg: &FinderConfig) -> Result<FinderReport, FinderError> {
    super::check_arity(g, 3)?;
    let shape = StarShape::new(vec![h, k]).map_err(|e| FinderError::InvalidArgument(e.to_string()))?;
    let mut run = Run::new(&shape);
    let (n, hf, kf) = (g.n() as f64, h as f64, k as f64);
    run.hypothesis(
        "e >= c max(k n^2, h^2 k^2 n)",
        cfg.st3 * (kf * n * n).max(hf * hf * kf * kf * n),
        g.edge_count(),
    );
    if shape.vertex_count() > g.n() {
        run.phase("size");
        return Ok(run.exhausted("size", "pattern has more vertices than the host"));
    }
    if let Some(star) = st3_core(g, h, k, &mut run) {
        return Ok(run.found(g, vec![star.embedding()]));
    }
    if cfg.descent_budget > 0 {
        run.phase("greedy-descent");
        let mut used = vec![false; g.n()];
        let (stars, nodes) = disjoint_star_descent(g, &[h, k], 1, &mut used, &|_, _| true, cfg.descent_budget);
        run.steps(nodes as usize);
        if let Some(star) = stars.into_iter().next() {
            return Ok(run.found(g, vec![star.embedding()]));
        }
    }
    let phase = run.last_phase().unwrap_or("start").to_string();
    Ok(run.exhausted(&phase, "no copy under this strategy"))
}

/// Degree buckets for the 3-uniform level-set argument: 0 = A, 1 = B, 2 = C.
fn bucket(deg: usize, l2: f64, l3: f64) -> usize {
    let x = deg as f64;
    if x > l2 {
        0
    } else if x > l3 {
        1
    } else {
        2
    }
}

/// `t` vertex-disjoint well-behaved `St_3(h,k)`: second layer of degree at
/// most `L2 = e/(3ht)`, third layer at most `L3 = e/(3hkt)`.
pub fn find_disjoint_st3_wellbehaved(
    g: &Hypergraph,
    h: usize,
    k: usize,
    t: usize,
    cfg: &FinderConfig,
) -> Result<FinderReport, FinderError> {
    super::check_arity(g, 3)?;
    let shape = StarShape::new(vec![h, k]).map_err(|e| FinderError::InvalidArgument(e.to_string()))?;
    let mut run = Run::new(format!("{t} x {shape}"));
    let (n, hf, kf, tf) = (g.n() as f64, h as f64, k as f64, t as f64);
    let c = cfg.disjoint_st3;
    // t <= min(s, sqrt(sn)/h, s^{1/3} n^{2/3} / (hk)) with s = e / (c n^2)
    run.hypothesis(
        "t <= min(s, sqrt(sn)/h, s^{1/3} n^{2/3}/(hk)), s = e/(c n^2)",
        c * (n * n * tf).max(n * hf * hf * tf * tf).max((hf * kf * tf).powi(3)),
        g.edge_count(),
    );
    let (copies, failed) = wellbehaved_collection(g, h, k, t, c, &vec![false; g.n()], cfg.descent_budget, &mut run);
    if let Some(phase) = failed {
        return Ok(run.exhausted(phase, format!("found {} of {t} copies", copies.len())));
    }
    let embeddings = copies.iter().map(Star::embedding).collect();
    Ok(run.found(g, embeddings))
}

/// The level-set collection behind [`find_disjoint_st3_wellbehaved`]. Returns
/// the copies found and, when short of `t`, the case that failed.
pub(crate) fn wellbehaved_collection(
    g: &Hypergraph,
    h: usize,
    k: usize,
    t: usize,
    c: f64,
    forbidden: &[bool],
    descent_budget: u64,
    run: &mut Run,
) -> (Vec<Star>, Option<&'static str>) {
    let mut copies: Vec<Star> = Vec::new();
    if t == 0 {
        return (copies, None);
    }
    let e = g.edge_count() as f64;
    let (n, hf, kf, tf) = (g.n() as f64, h as f64, k as f64, t as f64);
    let s = e / (c * n * n);
    let l2 = e / (3.0 * hf * tf);
    let l3 = e / (3.0 * hf * kf * tf);
    let deg = g.degrees();
    let lvl: Vec<usize> = deg.iter().map(|&x| bucket(x, l2, l3)).collect();
    let mut used = forbidden.to_vec();
    while copies.len() < t {
        let avail = g.without_vertices(&used);
        let mut types: BTreeMap<[usize; 3], Vec<Vec<usize>>> = BTreeMap::new();
        for edge in avail.edges() {
            let mut ty = [0; 3];
            for &v in edge {
                ty[lvl[v]] += 1;
            }
            types.entry(ty).or_default().push(edge.clone());
        }
        let mut order: Vec<([usize; 3], Vec<Vec<usize>>)> = types.into_iter().collect();
        order.sort_by_key(|(ty, f)| (std::cmp::Reverse(f.len()), *ty));
        let mut next = None;
        let mut first_case = None;
        for (ty, f) in &order {
            let f = Hypergraph::from_sorted_edges(3, g.n(), f.clone());
            let case = match ty[2] {
                0 => "disjoint-st3:case-i",
                3 => "disjoint-st3:case-ii",
                2 => "disjoint-st3:case-iii",
                _ => "disjoint-st3:case-iv",
            };
            first_case.get_or_insert(case);
            run.phase(case);
            next = match ty[2] {
                0 => None,
                3 => st3_core(&f, h, k, run),
                2 => two_in_c(&f, &lvl, h, k, run),
                _ => one_in_c(&f, &lvl, h, k, s * n * n / (hf * kf * tf).powi(2), run),
            };
            if next.is_some() {
                break;
            }
        }
        if next.is_none() && descent_budget > 0 {
            run.phase("greedy-descent");
            let ok = |layer: usize, v: usize| match layer {
                1 => lvl[v] >= 1,
                2 => lvl[v] == 2,
                _ => true,
            };
            let mut u = used.clone();
            let (stars, nodes) = disjoint_star_descent(g, &[h, k], 1, &mut u, &ok, descent_budget);
            run.steps(nodes as usize);
            next = stars.into_iter().next();
        }
        match next {
            Some(star) => {
                mark(&mut used, star.vertices());
                copies.push(star);
            }
            None => return (copies, Some(first_case.unwrap_or("disjoint-st3:no-edges"))),
        }
    }
    (copies, None)
}

/// Case of two C vertices per edge: h disjoint `S_k` in the link of a
/// heavy `A ∪ B` vertex.
fn two_in_c(f: &Hypergraph, lvl: &[usize], h: usize, k: usize, run: &mut Run) -> Option<Star> {
    let n = f.n();
    for x in by_desc(&f.degrees()) {
        if f.degree(x) < h * k {
            break;
        }
        if lvl[x] == 2 {
            continue;
        }
        run.steps(1);
        let link = Graph2::from_pairs(n, link_pairs(f, x, |_, _| true));
        let mut forbidden = vec![false; n];
        forbidden[x] = true;
        if let Ok(stars) = disjoint_stars(&link, k, h, run, &forbidden) {
            return Some(Star::new(x, flat_stars(stars)));
        }
        let mut used = forbidden;
        let stars = greedy_stars(&link, k, h, &mut used, |_| true, |_| true);
        if stars.len() == h {
            return Some(Star::new(x, flat_stars(stars)));
        }
    }
    None
}

/// Case of one C vertex per edge: a star of expanding `A ∪ B` pairs with
/// leaves in B, extended by C vertices.
fn one_in_c(f: &Hypergraph, lvl: &[usize], h: usize, k: usize, tau: f64, run: &mut Run) -> Option<Star> {
    let n = f.n();
    let tau = (tau.ceil() as usize).max(1);
    run.threshold(2, tau as f64);
    let mut adj = vec![Vec::new(); n];
    for (p, c) in f.codegree_table(2) {
        if c >= tau && lvl[p[0]] < 2 && lvl[p[1]] < 2 {
            adj[p[0]].push(p[1]);
            adj[p[1]].push(p[0]);
        }
    }
    run.expanding(adj.iter().map(Vec::len).sum::<usize>() / 2);
    for c in 0..n {
        let mut leaves: Vec<usize> = adj[c].iter().copied().filter(|&y| lvl[y] == 1).collect();
        if leaves.len() < h {
            continue;
        }
        leaves.sort_unstable();
        run.steps(1);
        let mut used = vec![false; n];
        used[c] = true;
        let mut children = Vec::new();
        for y in leaves {
            if children.len() == h {
                break;
            }
            used[y] = true;
            match extend_fresh(f, &[c, y], k, &mut used) {
                Some(zs) => children.push(Star::flat(y, &zs)),
                None => used[y] = false,
            }
        }
        if children.len() == h {
            return Some(Star::new(c, children));
        }
    }
    None
}

/// Repeatedly takes a centre (by decreasing degree in what is left, among
/// those `centre_ok` accepts) whose link holds `d` disjoint `S_k`.
fn collect_centred(
    h: &Hypergraph,
    d: usize,
    k: usize,
    want: usize,
    used: &mut [bool],
    centre_ok: impl Fn(usize) -> bool,
    run: &mut Run,
) -> Vec<Star> {
    let n = h.n();
    let mut out = Vec::new();
    'outer: while out.len() < want {
        let rest = h.without_vertices(used);
        for w in by_desc(&rest.degrees()) {
            if rest.degree(w) < d * k {
                break;
            }
            if !centre_ok(w) {
                continue;
            }
            run.steps(1);
            let link = Graph2::from_pairs(n, link_pairs(&rest, w, |_, _| true));
            let mut u = used.to_vec();
            u[w] = true;
            let stars = greedy_stars(&link, k, d, &mut u, |_| true, |_| true);
            if stars.len() == d {
                let star = Star::new(w, flat_stars(stars));
                mark(used, star.vertices());
                out.push(star);
                continue 'outer;
            }
        }
        break;
    }
    out
}

/// `d` disjoint `St_3(d,k)` in a 3-graph whose pair codegrees stay below
/// `3kd^2`: heavy centres first, then the all-B or A-centred collections.
pub(crate) fn bounded_codegree_stars(h: &Hypergraph, d: usize, k: usize, forbidden: &[bool], run: &mut Run) -> Vec<Star> {
    let n = h.n();
    let h = h.without_vertices(forbidden);
    let e = h.edge_count() as f64;
    let cut = e * d as f64 / (8.0 * n as f64);
    let in_a: Vec<bool> = (0..n).map(|v| h.degree(v) as f64 > cut).collect();
    let trimmed = h.filter_edges(|e| e.iter().filter(|&&v| in_a[v]).count() <= 1);
    run.deleted("st3-lemma:two-in-a", h.edge_count() - trimmed.edge_count());
    let all_b = trimmed.filter_edges(|e| e.iter().all(|&v| !in_a[v]));
    let one_a = trimmed.filter_edges(|e| e.iter().any(|&v| in_a[v]));
    let mut branches: Vec<(&str, &Hypergraph, bool)> = vec![
        ("st3-lemma:all-b", &all_b, false),
        ("st3-lemma:a-centres", &one_a, true),
    ];
    if 3 * all_b.edge_count() < h.edge_count() {
        branches.swap(0, 1);
    }
    // below the lemma's density the trimmed graphs can be empty; the
    // untrimmed host is tried last
    branches.push(("st3-lemma:unrestricted", &h, false));
    let mut best = Vec::new();
    for (phase, graph, a_centres) in branches {
        run.phase(phase);
        let mut used = forbidden.to_vec();
        let got = collect_centred(graph, d, k, d, &mut used, |w| !a_centres || in_a[w], run);
        if got.len() >= d {
            return got;
        }
        if got.len() > best.len() {
            best = got;
        }
    }
    best
}

/// `d` disjoint `St_3(d,k)` with leaves outside `C`, every edge of `h`
/// having exactly one vertex in `C`.
pub(crate) fn leaves_outside(
    h: &Hypergraph,
    in_c: &[bool],
    d: usize,
    k: usize,
    forbidden: &[bool],
    run: &mut Run,
) -> Vec<Star> {
    let n = h.n();
    let h = h
        .without_vertices(forbidden)
        .filter_edges(|e| e.iter().filter(|&&v| in_c[v]).count() == 1);
    let delta = h.edge_count() as f64 * d as f64 / (8.0 * n as f64);
    let heavy: Vec<usize> = (0..n).filter(|&v| !in_c[v] && h.degree(v) as f64 >= delta && h.degree(v) > 0).collect();
    run.phase("leaves-outside:heavy-centres");
    if heavy.len() >= d {
        let x: Vec<usize> = heavy[..d].to_vec();
        let mut in_x = vec![false; n];
        mark(&mut in_x, x.iter().copied());
        let hx = h.filter_edges(|e| e.iter().filter(|&&v| in_x[v]).count() <= 1);
        run.deleted("leaves-outside:heavy-centres", h.edge_count() - hx.edge_count());
        let mut used = forbidden.to_vec();
        mark(&mut used, x.iter().copied());
        let mut out = Vec::new();
        for &c in &x {
            let link = Graph2::from_pairs(n, link_pairs(&hx, c, |_, _| true));
            let stars = greedy_stars(&link, k, d, &mut used, |v| in_c[v], |v| !in_c[v] && !in_x[v]);
            run.steps(stars.len());
            if stars.len() < d {
                break;
            }
            out.push(Star::new(c, flat_stars(stars)));
        }
        if out.len() == d {
            return out;
        }
    }
    run.phase("leaves-outside:c-centres");
    let mut removed = forbidden.to_vec();
    mark(&mut removed, heavy.iter().copied());
    let light = h.without_vertices(&removed);
    run.deleted("leaves-outside:c-centres", h.edge_count() - light.edge_count());
    collect_centred(&light, d, k, d, &mut removed, |w| in_c[w], run)
}

/// One `St_3(d,d)` with second layer in `B ∪ C` and leaves in `C`, on a
/// 3-graph living on `B ∪ C`.
pub(crate) fn leaves_inside(h: &Hypergraph, in_b: &[bool], in_c: &[bool], d: usize, run: &mut Run) -> Option<Star> {
    let n = h.n();
    let inside_c = h.filter_edges(|e| e.iter().all(|&v| in_c[v]));
    let mixed = h.filter_edges(|e| e.iter().any(|&v| in_c[v]) && e.iter().any(|&v| in_b[v]));
    let mut order = [true, false];
    if 4 * inside_c.edge_count() < h.edge_count() {
        order = [false, true];
    }
    for within_c in order {
        if within_c {
            run.phase("leaves-inside:within-c");
            if let Some(s) = st3_core(&inside_c, d, d, run) {
                return Some(s);
            }
            continue;
        }
        run.phase("leaves-inside:b-pairs");
        // a B-pair is C-expanding when it completes through C in 3d^2 ways
        let tau = 3 * d * d;
        run.threshold(2, tau as f64);
        let mut through_c: std::collections::HashMap<(usize, usize), usize> = Default::default();
        for e in mixed.edges() {
            for (i, j, l) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                if (in_b[e[i]] || in_b[e[j]]) && in_c[e[l]] {
                    *through_c.entry((e[i], e[j])).or_default() += 1;
                }
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (&(a, b), &c) in &through_c {
            if c >= tau {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        run.expanding(adj.iter().map(Vec::len).sum::<usize>() / 2);
        for u in 0..n {
            if adj[u].len() < d {
                continue;
            }
            let mut ys = adj[u].clone();
            ys.sort_unstable();
            let mut used = vec![false; n];
            used[u] = true;
            let mut children = Vec::new();
            for y in ys {
                if children.len() == d {
                    break;
                }
                used[y] = true;
                let zs: Vec<usize> = super::common::completions(&mixed, &[u, y])
                    .into_iter()
                    .filter(|&z| in_c[z] && !used[z])
                    .take(d)
                    .collect();
                if zs.len() == d {
                    mark(&mut used, zs.iter().copied());
                    children.push(Star::flat(y, &zs));
                } else {
                    used[y] = false;
                }
            }
            run.steps(1);
            if children.len() == d {
                return Some(Star::new(u, children));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{random_hypergraph, star_pattern};
    use crate::util::subsets_of_range;

    #[test]
    fn pattern_gives_identity() {
        for (h, k) in [(1, 1), (2, 3), (3, 2), (1, 4), (4, 1)] {
            let p = star_pattern(&StarShape::new(vec![h, k]).unwrap());
            let rep = find_st3(&p, h, k, &FinderConfig::default()).unwrap();
            assert!(rep.is_found(), "({h},{k})");
            assert_eq!(rep.copies()[0].vertex_map, (0..p.n()).collect::<Vec<_>>(), "({h},{k})");
        }
    }

    #[test]
    fn complete_host_of_pattern_size() {
        let (h, k) = (2, 3);
        let n = h * k + h + 1;
        let g = Hypergraph::new(3, n, subsets_of_range(n, 3)).unwrap();
        assert!(find_st3(&g, h, k, &FinderConfig::default()).unwrap().is_found());
        let small = Hypergraph::new(3, n - 1, subsets_of_range(n - 1, 3)).unwrap();
        assert_eq!(
            find_st3(&small, h, k, &FinderConfig::default()).unwrap().failing_phase(),
            Some("size")
        );
    }

    #[test]
    fn dense_random_hosts() {
        for seed in 0..10 {
            let g = random_hypergraph(3, 30, 1500, seed).unwrap();
            let rep = find_st3(&g, 2, 3, &FinderConfig::default()).unwrap();
            assert!(rep.is_found());
            assert!(!rep.trace.iter().any(|p| p == "greedy-descent"));
        }
    }

    #[test]
    fn bounded_codegree_lemma_on_pattern_union() {
        let (d, k) = (2, 2);
        let one = star_pattern(&StarShape::new(vec![d, k]).unwrap());
        let host = one.disjoint_union(&one);
        let mut run = Run::new("");
        let stars = bounded_codegree_stars(&host, d, k, &vec![false; host.n()], &mut run);
        assert_eq!(stars.len(), d);
        let copies: Vec<_> = stars.iter().map(Star::embedding).collect();
        crate::embedding::validate_disjoint(&copies, &host).unwrap();
    }
}
