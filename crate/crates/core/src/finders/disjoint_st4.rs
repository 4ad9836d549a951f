//! Vertex-disjoint well-behaved `St_4(d,d,k)` through the four-level
//! degree partition and the 35 edge types.

use std::collections::BTreeMap;

use super::common::{by_desc, completions, mark};
use super::config::FinderConfig;
use super::descent::disjoint_star_descent;
use super::graph2::{greedy_stars, Graph2};
use super::report::{FinderReport, Run, Star};
use super::st3::{leaves_inside, leaves_outside, wellbehaved_collection};
use super::st4::dense;
use super::FinderError;
use crate::hypergraph::{Hypergraph, Level, LevelSetPartition};
use crate::shapes::StarShape;
use crate::util::{cube_root_ratio, iroot};

fn idx(l: Level) -> usize {
    match l {
        Level::A => 0,
        Level::B => 1,
        Level::C => 2,
        Level::D => 3,
    }
}

/// `t` vertex-disjoint `St_4(d,d,k)`, `d = floor((n/k)^{1/3})`, whose second,
/// third and fourth layers have degree at most `L2 = e/(4td)`,
/// `L3 = e/(4td^2)` and `L4 = e/(4td^2 k)` respectively.
pub fn find_disjoint_st4(g: &Hypergraph, k: usize, t: usize, cfg: &FinderConfig) -> Result<FinderReport, FinderError> {
    super::check_arity(g, 4)?;
    if k == 0 {
        return Err(FinderError::InvalidArgument("k must be positive".into()));
    }
    let n = g.n();
    let d = cube_root_ratio(n, k);
    let mut run = Run::new(format!("{t} x St4({d},{d},{k})"));
    let t_cap = k.min(iroot(d as u128, 4) as usize);
    run.hypothesis_if(
        format!("e >= c k n^3 and t <= min(k, d^(1/4)) = {t_cap}"),
        cfg.disjoint_st4 * k as f64 * (n as f64).powi(3),
        g.edge_count(),
        t <= t_cap,
    );
    if t == 0 {
        return Ok(run.found(g, Vec::new()));
    }
    if d == 0 {
        run.phase("size");
        return Ok(run.exhausted("size", "d = floor((n/k)^(1/3)) is zero"));
    }
    let shape = StarShape::new(vec![d, d, k]).expect("positive degrees");
    if shape.vertex_count() * t > n {
        run.phase("size");
        return Ok(run.exhausted(
            "size",
            format!("{t} copies need {} vertices, host has {n}", shape.vertex_count() * t),
        ));
    }
    let part = levels(g, d, k, t)?;
    let lvl: Vec<usize> = part.levels().iter().map(|&l| idx(l)).collect();
    let mut used = vec![false; n];
    let mut copies = Vec::new();
    while copies.len() < t {
        let avail = g.without_vertices(&used);
        let mut types: BTreeMap<[usize; 4], Vec<Vec<usize>>> = BTreeMap::new();
        let mut dropped = 0;
        for e in avail.edges() {
            let mut ty = [0; 4];
            for &v in e {
                ty[lvl[v]] += 1;
            }
            if ty[3] >= 1 && ty[2] + ty[3] >= 2 && ty[1] + ty[2] + ty[3] >= 3 {
                types.entry(ty).or_default().push(e.clone());
            } else {
                dropped += 1;
            }
        }
        run.deleted("disjoint-st4:badly-placed", dropped);
        let mut order: Vec<([usize; 4], Vec<Vec<usize>>)> = types.into_iter().collect();
        order.sort_by_key(|(ty, f)| (std::cmp::Reverse(f.len()), *ty));
        let mut next = None;
        let mut first_case = None;
        for (ty, f) in &order {
            let f = Hypergraph::from_sorted_edges(4, n, f.clone());
            let case = match ty[3] {
                4 => "disjoint-st4:case-i",
                3 => "disjoint-st4:case-ii",
                2 if ty[1] == 2 => "disjoint-st4:case-iii-a",
                2 => "disjoint-st4:case-iii-b",
                _ => "disjoint-st4:case-iv",
            };
            first_case.get_or_insert(case);
            run.phase(case);
            next = match case {
                "disjoint-st4:case-i" => dense(&f, d, k, &used, &mut run),
                "disjoint-st4:case-ii" => three_in_d(&f, &lvl, d, k, &used, cfg, &mut run),
                "disjoint-st4:case-iii-a" => two_b_two_d(&f, &lvl, d, k, &used, &mut run),
                "disjoint-st4:case-iii-b" => c_and_two_d(&f, &lvl, d, k, &used, &mut run),
                _ => one_in_d(&f, &lvl, d, k, &used, &mut run),
            };
            if next.is_some() {
                break;
            }
        }
        if next.is_none() && cfg.descent_budget > 0 {
            run.phase("greedy-descent");
            // second layer in B ∪ C ∪ D, third in C ∪ D, leaves in D
            let ok = |layer: usize, v: usize| layer == 0 || lvl[v] >= layer;
            let mut u = used.clone();
            let (stars, nodes) = disjoint_star_descent(g, &[d, d, k], 1, &mut u, &ok, cfg.descent_budget);
            run.steps(nodes as usize);
            next = stars.into_iter().next();
        }
        match next {
            Some(star) => {
                mark(&mut used, star.vertices());
                copies.push(star);
            }
            None => {
                let phase = first_case.unwrap_or("disjoint-st4:no-edges");
                return Ok(run.exhausted(phase, format!("found {} of {t} copies", copies.len())));
            }
        }
    }
    let embeddings = copies.iter().map(Star::embedding).collect();
    Ok(run.found(g, embeddings))
}

/// The level partition the finder uses, for revalidating its output.
pub fn levels(g: &Hypergraph, d: usize, k: usize, t: usize) -> Result<LevelSetPartition, FinderError> {
    let e = g.edge_count() as f64;
    let (d, k, t) = (d as f64, k as f64, t.max(1) as f64);
    Ok(g.level_sets(e / (4.0 * t * d), e / (4.0 * t * d * d), e / (4.0 * t * d * d * k))?)
}

fn non_d_by_degree(f: &Hypergraph, lvl: &[usize]) -> Vec<usize> {
    by_desc(&f.degrees())
        .into_iter()
        .filter(|&v| lvl[v] < 3 && f.degree(v) > 0)
        .collect()
}

/// Case (ii): a vertex outside D whose link holds `d` disjoint `St_3(d,k)`.
fn three_in_d(
    f: &Hypergraph,
    lvl: &[usize],
    d: usize,
    k: usize,
    used: &[bool],
    cfg: &FinderConfig,
    run: &mut Run,
) -> Option<Star> {
    for v in non_d_by_degree(f, lvl) {
        run.steps(1);
        let link = f.link(&[v]).expect("vertex");
        let mut fb = used.to_vec();
        fb[v] = true;
        let (lower, _) = wellbehaved_collection(&link, d, k, d, cfg.disjoint_st3, &fb, 0, run);
        if lower.len() == d {
            return Some(Star::new(v, lower));
        }
    }
    None
}

/// Case (iii)(a): a star of heavy B–B pairs whose pair links carry `S_k`s.
fn two_b_two_d(f: &Hypergraph, lvl: &[usize], d: usize, k: usize, used: &[bool], run: &mut Run) -> Option<Star> {
    let n = f.n();
    let nb = lvl.iter().filter(|&&l| l == 1).count().max(1);
    let tau = ((f.edge_count() as f64 / (nb * nb) as f64).ceil() as usize).max(1);
    run.threshold(2, tau as f64);
    let mut adj = vec![Vec::new(); n];
    for (p, c) in f.codegree_table(2) {
        if c >= tau && lvl[p[0]] == 1 && lvl[p[1]] == 1 {
            adj[p[0]].push(p[1]);
            adj[p[1]].push(p[0]);
        }
    }
    run.expanding(adj.iter().map(Vec::len).sum::<usize>() / 2);
    for u in 0..n {
        if adj[u].len() < d {
            continue;
        }
        run.steps(1);
        let mut ys = adj[u].clone();
        ys.sort_unstable();
        let mut taken = used.to_vec();
        taken[u] = true;
        mark(&mut taken, ys.iter().copied());
        let mut seconds = Vec::new();
        for y in ys {
            if seconds.len() == d {
                break;
            }
            let link = f.link(&[u, y]).expect("pair");
            let g2 = Graph2::from_pairs(n, link.edges().iter().map(|e| (e[0], e[1])));
            let mut trial = taken.clone();
            let stars = greedy_stars(&g2, k, d, &mut trial, |v| lvl[v] >= 2, |v| lvl[v] == 3);
            if stars.len() == d {
                taken = trial;
                seconds.push(Star::new(y, stars.into_iter().map(|(c, l)| Star::flat(c, &l)).collect()));
            }
        }
        if seconds.len() == d {
            return Some(Star::new(u, seconds));
        }
    }
    None
}

/// Case (iii)(b): a vertex whose link (one C and two D per edge) holds `d`
/// disjoint `St_3(d,k)` with leaves outside C.
fn c_and_two_d(f: &Hypergraph, lvl: &[usize], d: usize, k: usize, used: &[bool], run: &mut Run) -> Option<Star> {
    let in_c: Vec<bool> = lvl.iter().map(|&l| l == 2).collect();
    for v in non_d_by_degree(f, lvl) {
        run.steps(1);
        let link = f
            .link(&[v])
            .expect("vertex")
            .filter_edges(|e| e.iter().filter(|&&u| lvl[u] == 3).count() == 2);
        let mut fb = used.to_vec();
        fb[v] = true;
        let lower = leaves_outside(&link, &in_c, d, k, &fb, run);
        if lower.len() >= d {
            return Some(Star::new(v, lower.into_iter().take(d).collect()));
        }
    }
    None
}

/// Case (iv): heavy triples outside A and D form a 3-graph holding an
/// `St_3(d,d)` with leaves in C; each path then takes k fresh D vertices.
fn one_in_d(f: &Hypergraph, lvl: &[usize], d: usize, k: usize, used: &[bool], run: &mut Run) -> Option<Star> {
    let n = f.n();
    let abc = lvl.iter().filter(|&&l| l < 3).count().max(1);
    let tau = ((f.edge_count() as f64 / (abc as f64).powi(3)).ceil() as usize).max(1);
    run.threshold(3, tau as f64);
    let mut tri: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for e in f.edges() {
        let t: Vec<usize> = e.iter().copied().filter(|&v| lvl[v] < 3).collect();
        *tri.entry(t).or_default() += 1;
    }
    let heavy: Vec<Vec<usize>> = tri
        .into_iter()
        .filter(|(t, c)| *c >= tau && t.len() == 3 && t.iter().all(|&v| lvl[v] != 0 && !used[v]))
        .map(|(t, _)| t)
        .collect();
    run.expanding(heavy.len());
    let h3 = Hypergraph::from_sorted_edges(3, n, heavy);
    let in_b: Vec<bool> = lvl.iter().map(|&l| l == 1).collect();
    let in_c: Vec<bool> = lvl.iter().map(|&l| l == 2).collect();
    let s3 = leaves_inside(&h3, &in_b, &in_c, d, run)?;
    let mut taken = used.to_vec();
    mark(&mut taken, s3.vertices());
    let mut seconds = Vec::new();
    for c in &s3.children {
        let mut thirds = Vec::new();
        for l in &c.children {
            let zs: Vec<usize> = completions(f, &[s3.root, c.root, l.root])
                .into_iter()
                .filter(|&z| lvl[z] == 3 && !taken[z])
                .take(k)
                .collect();
            if zs.len() < k {
                return None;
            }
            mark(&mut taken, zs.iter().copied());
            thirds.push(Star::flat(l.root, &zs));
        }
        seconds.push(Star::new(c.root, thirds));
    }
    Some(Star::new(s3.root, seconds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star_pattern;

    #[test]
    fn planted_single_copy_is_well_behaved() {
        // n = 54, k = 2 gives d = 3; the apex and 23 spare vertices carry noise
        let k = 2;
        let star = star_pattern(&StarShape::new(vec![3, 3, k]).unwrap());
        let mut edges: Vec<Vec<usize>> = star.edges().to_vec();
        let spare: Vec<usize> = std::iter::once(0).chain(31..54).collect();
        crate::util::for_each_subset(&spare, 4, |s| {
            if edges.len() < 54 + 60 {
                edges.push(s.to_vec());
            }
        });
        let g = Hypergraph::new(4, 54, edges).unwrap();
        let rep = find_disjoint_st4(&g, k, 1, &FinderConfig::default()).unwrap();
        assert!(rep.is_found(), "{rep:?}");
        let part = levels(&g, 3, k, 1).unwrap();
        let map = &rep.copies()[0].vertex_map;
        assert!(map[1..4].iter().all(|&v| part.level(v) != Level::A));
        assert!(map[4..13].iter().all(|&v| matches!(part.level(v), Level::C | Level::D)));
        assert!(map[13..].iter().all(|&v| part.level(v) == Level::D));
    }

    #[test]
    fn too_many_copies_for_the_host() {
        let star = star_pattern(&StarShape::new(vec![2, 2, 2]).unwrap());
        let g = star.with_vertex_count(16);
        let rep = find_disjoint_st4(&g, 2, 2, &FinderConfig::default()).unwrap();
        assert_eq!(rep.failing_phase(), Some("size"));
    }
}
