//! 4-uniform generalised stars: `St_4(sqrt k, k, 1)` through expanding
//! triples and the bounded-codegree sunflower lemma, `St_4(d,d,k)` through
//! expanding triples and the bounded-codegree star lemma.

use std::collections::HashMap;

use super::common::{by_desc, codeg, extend_fresh, mark, star_from_sunflowers, Codegrees};
use super::config::FinderConfig;
use super::descent::disjoint_star_descent;
use super::graph2::{disjoint_stars, greedy_matching, greedy_stars, Graph2};
use super::report::{FinderReport, Run, Star, Sunflower};
use super::st3::{bounded_codegree_stars, st3_core};
use super::sunflower::disjoint_sf3;
use super::FinderError;
use crate::hypergraph::Hypergraph;
use crate::shapes::StarShape;
use crate::util::isqrt;

pub fn find_st4(g: &Hypergraph, shape: &StarShape, cfg: &FinderConfig) -> Result<FinderReport, FinderError> {
    super::check_arity(g, 4)?;
    if shape.r() != 4 {
        return Err(FinderError::UnsupportedShape(format!("{shape} is not 4-uniform")));
    }
    let mut run = Run::new(shape);
    if shape.vertex_count() > g.n() {
        run.phase("size");
        return Ok(run.exhausted("size", "pattern has more vertices than the host"));
    }
    let (n, e) = (g.n() as f64, g.edge_count());
    let none = vec![false; g.n()];
    let ds = &shape.degrees;
    let found = if ds[2] == 1 && ds[0] == isqrt(ds[1]) {
        let kf = ds[1] as f64;
        run.hypothesis("e >= c n max(k^2 n, k^{9/2})", cfg.st4_middle * n * (kf * kf * n).max(kf.powf(4.5)), e);
        middle(g, ds[1], &mut run)
    } else if ds[0] == ds[1] {
        run.hypothesis("e >= c k n^3", cfg.st4_dense * ds[2] as f64 * n.powi(3), e);
        dense(g, ds[0], ds[2], &none, &mut run)
    } else {
        run.phase("generic-descent");
        None
    };
    if let Some(star) = found {
        return Ok(run.found(g, vec![star.embedding()]));
    }
    if cfg.descent_budget > 0 {
        run.phase("greedy-descent");
        let mut used = none;
        let (stars, nodes) = disjoint_star_descent(g, ds, 1, &mut used, &|_, _| true, cfg.descent_budget);
        run.steps(nodes as usize);
        if let Some(star) = stars.into_iter().next() {
            return Ok(run.found(g, vec![star.embedding()]));
        }
    }
    let phase = run.last_phase().unwrap_or("start").to_string();
    Ok(run.exhausted(&phase, "no copy under this strategy"))
}

fn triple_of(e: &[usize], skip: usize) -> [usize; 3] {
    let mut t = [0; 3];
    let mut j = 0;
    for (i, &v) in e.iter().enumerate() {
        if i != skip {
            t[j] = v;
            j += 1;
        }
    }
    t
}

/// For each vertex v, the expanding triples X with `v ∪ X` an edge.
fn expanding_links(g: &Hypergraph, expanding: impl Fn(&[usize]) -> bool) -> Vec<Vec<Vec<usize>>> {
    let mut dv = vec![Vec::new(); g.n()];
    for e in g.edges() {
        for skip in 0..4 {
            let t = triple_of(e, skip);
            if expanding(&t) {
                dv[e[skip]].push(t.to_vec());
            }
        }
    }
    dv
}

fn has_expanding_triple(e: &[usize], expanding: &impl Fn(&[usize]) -> bool) -> bool {
    (0..4).any(|skip| expanding(&triple_of(e, skip)))
}

/// Extends every root-to-leaf triple of a 3-uniform star by `k` fresh leaves.
fn extend_star(g: &Hypergraph, s3: &Star, k: usize, used: &mut [bool]) -> Option<Star> {
    mark(used, s3.vertices());
    let mut mids = Vec::new();
    for c in &s3.children {
        let mut leaves = Vec::new();
        for l in &c.children {
            let zs = extend_fresh(g, &[s3.root, c.root, l.root], k, used)?;
            leaves.push(Star::flat(l.root, &zs));
        }
        mids.push(Star::new(c.root, leaves));
    }
    Some(Star::new(s3.root, mids))
}

fn middle(g: &Hypergraph, k: usize, run: &mut Run) -> Option<Star> {
    let n = g.n();
    let m = isqrt(k);
    let tau = (3.0 * (k as f64).powf(1.5)).ceil() as usize;
    run.threshold(3, tau as f64);
    let triples = g.codegree_table(3);
    let expanding = |t: &[usize]| codeg(&triples, t) >= tau;
    run.expanding(triples.values().filter(|&&c| c >= tau).count());
    let heavy = g.edges().iter().filter(|e| has_expanding_triple(e, &expanding)).count();

    let deletion = |run: &mut Run| -> Option<Star> {
        run.phase("st4-middle:deletion");
        let pruned = g.filter_edges(|e| !has_expanding_triple(e, &expanding));
        run.deleted("st4-middle:deletion", g.edge_count() - pruned.edge_count());
        for x in by_desc(&pruned.degrees()) {
            if pruned.degree(x) < m * k {
                break;
            }
            run.steps(1);
            let gx = pruned.link(&[x]).expect("vertex");
            let mut forbidden = vec![false; n];
            forbidden[x] = true;
            let flowers = disjoint_sf3(&gx, k, m, &forbidden, run);
            if flowers.len() >= m {
                return Some(star_from_sunflowers(x, &flowers[..m]));
            }
        }
        None
    };
    let expanding_branch = |run: &mut Run| -> Option<Star> {
        run.phase("st4-middle:expanding-triples");
        let dv = expanding_links(g, expanding);
        let sizes: Vec<usize> = dv.iter().map(Vec::len).collect();
        for x in by_desc(&sizes) {
            if sizes[x] == 0 {
                break;
            }
            run.steps(1);
            let dx = Hypergraph::from_sorted_edges(3, n, dv[x].iter().map(|t| t.to_vec()).collect());
            if let Some(s) = middle_in_dx(g, &dx, x, k, m, tau, run) {
                return Some(s);
            }
        }
        None
    };
    if 2 * heavy <= g.edge_count() {
        deletion(run).or_else(|| expanding_branch(run))
    } else {
        expanding_branch(run).or_else(|| deletion(run))
    }
}

/// The three claims on `D_x`, then the bounded-codegree lemma on what is
/// left of `D_x` once expanding pairs are removed.
fn middle_in_dx(g: &Hypergraph, dx: &Hypergraph, x: usize, k: usize, m: usize, tau: usize, run: &mut Run) -> Option<Star> {
    let n = g.n();
    let pairs: Codegrees = dx.codegree_table(2);
    let exp_pair = |a: usize, b: usize| codeg(&pairs, &[a, b]) >= tau;
    let mut p_adj = vec![Vec::new(); n];
    for (p, &c) in &pairs {
        if c >= tau {
            p_adj[p[0]].push(p[1]);
            p_adj[p[1]].push(p[0]);
        }
    }
    for a in &mut p_adj {
        a.sort_unstable();
    }

    run.phase("st4-middle:claim-a");
    for v0 in 0..n {
        if p_adj[v0].len() < m {
            continue;
        }
        let mut used = vec![false; n];
        used[v0] = true;
        let second: Vec<usize> = p_adj[v0][..m].to_vec();
        mark(&mut used, second.iter().copied());
        let s3: Option<Vec<Star>> = second
            .iter()
            .map(|&vi| extend_fresh(dx, &[v0, vi], k, &mut used).map(|zs| Star::flat(vi, &zs)))
            .collect();
        if let Some(s3) = s3.map(|c| Star::new(v0, c)) {
            if let Some(s) = extend_star(g, &s3, 1, &mut used) {
                return Some(s);
            }
        }
    }

    // D_xy: pairs X with y ∪ X in D_x and X expanding in D_x
    let mut dxy: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for t in dx.edges() {
        for (y, a, b) in [(t[0], t[1], t[2]), (t[1], t[0], t[2]), (t[2], t[0], t[1])] {
            if exp_pair(a, b) {
                dxy.entry(y).or_default().push((a, b));
            }
        }
    }
    let sizes: Vec<usize> = (0..n).map(|y| dxy.get(&y).map_or(0, Vec::len)).collect();
    run.phase("st4-middle:claim-b");
    for y in by_desc(&sizes) {
        if sizes[y] < m * k {
            break;
        }
        let graph = Graph2::from_pairs(n, dxy[&y].iter().copied());
        let mut used = vec![false; n];
        used[y] = true;
        let stars = greedy_stars(&graph, k, m, &mut used, |_| true, |_| true);
        if stars.len() < m {
            continue;
        }
        run.steps(1);
        let s3 = Star::new(y, stars.into_iter().map(|(c, l)| Star::flat(c, &l)).collect());
        let mut used = vec![false; n];
        if let Some(s) = extend_star(g, &s3, 1, &mut used) {
            return Some(s);
        }
    }
    run.phase("st4-middle:claim-c");
    let centres: Vec<usize> = by_desc(&sizes)
        .into_iter()
        .filter(|&y| y != x && sizes[y] >= 6 * k * k)
        .take(m)
        .collect();
    if centres.len() == m {
        let mut used = vec![false; n];
        used[x] = true;
        mark(&mut used, centres.iter().copied());
        let mut flowers = Vec::new();
        for &y in &centres {
            let graph = Graph2::from_pairs(n, dxy[&y].iter().copied());
            let Some(mt) = greedy_matching(&graph, k, &used) else { break };
            mark(&mut used, mt.iter().flatten().copied());
            flowers.push(Sunflower {
                kernel: vec![y],
                petals: mt.into_iter().map(|p| p.to_vec()).collect(),
            });
        }
        if flowers.len() == m {
            return Some(star_from_sunflowers(x, &flowers));
        }
    }
    run.phase("st4-middle:pruned-dx");
    let pruned = dx.filter_edges(|t| !(exp_pair(t[0], t[1]) || exp_pair(t[0], t[2]) || exp_pair(t[1], t[2])));
    run.deleted("st4-middle:pruned-dx", dx.edge_count() - pruned.edge_count());
    let mut forbidden = vec![false; n];
    forbidden[x] = true;
    let flowers = disjoint_sf3(&pruned, k, m, &forbidden, run);
    (flowers.len() >= m).then(|| star_from_sunflowers(x, &flowers[..m]))
}

/// `St_4(d,d,k)` avoiding `forbidden`.
pub(crate) fn dense(g: &Hypergraph, d: usize, k: usize, forbidden: &[bool], run: &mut Run) -> Option<Star> {
    let g = &g.without_vertices(forbidden);
    let n = g.n();
    let tau = 3 * k * d * d;
    run.threshold(3, tau as f64);
    let triples = g.codegree_table(3);
    let expanding = |t: &[usize]| codeg(&triples, t) >= tau;
    run.expanding(triples.values().filter(|&&c| c >= tau).count());
    let heavy = g.edges().iter().filter(|e| has_expanding_triple(e, &expanding)).count();

    let expanding_branch = |run: &mut Run| -> Option<Star> {
        run.phase("st4-dense:expanding-triples");
        let dv = expanding_links(g, expanding);
        let sizes: Vec<usize> = dv.iter().map(Vec::len).collect();
        for v in by_desc(&sizes) {
            if sizes[v] == 0 {
                break;
            }
            run.steps(1);
            let dvg = Hypergraph::from_sorted_edges(3, n, dv[v].clone());
            // a vertex of D_v-degree 6dn carries d disjoint S_d in its link
            for w in by_desc(&dvg.degrees()) {
                if dvg.degree(w) < 6 * d * n {
                    break;
                }
                let link = Graph2::from_pairs(n, super::common::link_pairs(&dvg, w, |_, _| true));
                let mut fb = forbidden.to_vec();
                fb[w] = true;
                let Ok(stars) = disjoint_stars(&link, d, d, run, &fb) else { continue };
                let s3 = Star::new(w, stars.into_iter().map(|(c, l)| Star::flat(c, &l)).collect());
                let mut used = forbidden.to_vec();
                if let Some(s) = extend_star(g, &s3, k, &mut used) {
                    return Some(s);
                }
            }
            let mut used = forbidden.to_vec();
            used[v] = true;
            let mut lower = Vec::new();
            while lower.len() < d {
                let mut inner = Run::new("");
                let Some(s) = st3_core(&dvg.without_vertices(&used), d, k, &mut inner) else { break };
                mark(&mut used, s.vertices());
                lower.push(s);
            }
            if lower.len() == d {
                return Some(Star::new(v, lower));
            }
        }
        None
    };
    let deletion = |run: &mut Run| -> Option<Star> {
        run.phase("st4-dense:deletion");
        let pruned = g.filter_edges(|e| !has_expanding_triple(e, &expanding));
        run.deleted("st4-dense:deletion", g.edge_count() - pruned.edge_count());
        for x in by_desc(&pruned.degrees()) {
            if pruned.degree(x) < d * d * k {
                break;
            }
            run.steps(1);
            let h = pruned.link(&[x]).expect("vertex");
            let mut fb = forbidden.to_vec();
            fb[x] = true;
            let lower = bounded_codegree_stars(&h, d, k, &fb, run);
            if lower.len() >= d {
                return Some(Star::new(x, lower.into_iter().take(d).collect()));
            }
        }
        None
    };
    if 2 * heavy >= g.edge_count() {
        expanding_branch(run).or_else(|| deletion(run))
    } else {
        deletion(run).or_else(|| expanding_branch(run))
    }
}
