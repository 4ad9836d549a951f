//! Sunflower finders: the expanding-set deletion arguments for `Sf_3(1,k)`,
//! `Sf_4(1,k)` and `Sf_4(2,k)`, pigeonhole on codegrees for `Sf_r(r-1,k)`,
//! and disjoint `Sf_3(1,k)` copies under a codegree cap.

use super::common::{by_desc, codeg, completions, extend_fresh, link_pairs, mark};
use super::config::FinderConfig;
use super::descent::sunflower_descent;
use super::graph2::{greedy_matching, star_or_matching, Graph2, MatchOrStar};
use super::report::{FinderReport, Run, Sunflower};
use super::FinderError;
use crate::hypergraph::Hypergraph;
use crate::shapes::SunflowerShape;
use crate::util::binomial_f64;

pub fn find_sunflower(g: &Hypergraph, shape: SunflowerShape, cfg: &FinderConfig) -> Result<FinderReport, FinderError> {
    super::check_arity(g, shape.r)?;
    let SunflowerShape { r, t, k } = shape;
    let mut run = Run::new(shape);
    let n = g.n() as f64;
    let kf = k as f64;
    let found = if t + 1 == r {
        run.hypothesis(
            "e >= c k C(n, r-1) / r (some (r-1)-set has codegree k)",
            cfg.sf_codegree * kf * binomial_f64(g.n(), r - 1) / r as f64,
            g.edge_count(),
        );
        pigeonhole(g, k, &mut run)
    } else {
        match (r, t) {
            (3, 1) => {
                run.hypothesis("e >= c k^2 n", cfg.sf3_star * kf * kf * n, g.edge_count());
                sf3_core(g, k, &mut run)
            }
            (4, 1) => {
                run.hypothesis("e >= c k^2 n^2", cfg.sf4_star * kf * kf * n * n, g.edge_count());
                sf41(g, k, &mut run)
            }
            (4, 2) => {
                run.hypothesis("e >= c k^2 n^2", cfg.sf4_pair * kf * kf * n * n, g.edge_count());
                sf42(g, k, &mut run)
            }
            _ => return Err(FinderError::UnsupportedShape(shape.to_string())),
        }
    };
    if let Some(f) = found {
        return Ok(run.found(g, vec![f.embedding()]));
    }
    if cfg.descent_budget > 0 {
        run.phase("greedy-descent");
        let (f, nodes) = sunflower_descent(g, t, k, &vec![false; g.n()], cfg.descent_budget);
        run.steps(nodes as usize);
        if let Some(f) = f {
            return Ok(run.found(g, vec![f.embedding()]));
        }
    }
    let phase = run.last_phase().unwrap_or("start").to_string();
    Ok(run.exhausted(&phase, "no copy under this strategy"))
}

/// The smallest `(r-1)`-set of codegree at least k, with its k smallest completions.
fn pigeonhole(g: &Hypergraph, k: usize, run: &mut Run) -> Option<Sunflower> {
    run.phase("pigeonhole");
    run.threshold(g.r() - 1, k as f64);
    let mut heavy: Vec<Vec<usize>> = g
        .codegree_table(g.r() - 1)
        .into_iter()
        .filter(|(_, c)| *c >= k)
        .map(|(s, _)| s)
        .collect();
    run.expanding(heavy.len());
    heavy.sort_unstable();
    let kernel = heavy.into_iter().next()?;
    let petals = completions(g, &kernel).into_iter().take(k).map(|z| vec![z]).collect();
    Some(Sunflower { kernel, petals })
}

/// `Sf_3(1,k)`. If some vertex sees k `2k`-expanding pairs forming a star,
/// extend the star greedily; if they form a matching, that vertex is the
/// kernel. Otherwise drop every edge with an expanding pair and look for a
/// k-matching in the link of a high-degree vertex.
pub(crate) fn sf3_core(g: &Hypergraph, k: usize, run: &mut Run) -> Option<Sunflower> {
    let n = g.n();
    let tau = 2 * k;
    run.threshold(2, tau as f64);
    let table = g.codegree_table(2);
    let expanding = |a: usize, b: usize| codeg(&table, &[a, b]) >= tau;
    run.expanding(table.values().filter(|&&c| c >= tau).count());
    let heavy = g
        .edges()
        .iter()
        .filter(|e| expanding(e[0], e[1]) || expanding(e[0], e[2]) || expanding(e[1], e[2]))
        .count();
    let none = vec![false; n];

    let expanding_branch = |run: &mut Run| -> Option<Sunflower> {
        run.phase("sf3:expanding-pairs");
        for v in 0..n {
            let dv = link_pairs(g, v, expanding);
            if dv.is_empty() {
                continue;
            }
            run.steps(1);
            match star_or_matching(&Graph2::from_pairs(n, dv), k, k, &none) {
                MatchOrStar::Matching { edges } => {
                    return Some(Sunflower {
                        kernel: vec![v],
                        petals: edges.into_iter().map(|p| p.to_vec()).collect(),
                    })
                }
                MatchOrStar::Star { center, leaves } => {
                    let mut used = none.clone();
                    mark(&mut used, leaves.iter().copied().chain([center]));
                    let mut petals = Vec::with_capacity(k);
                    for &y in &leaves {
                        let Some(z) = extend_fresh(g, &[center, y], 1, &mut used) else { break };
                        petals.push(vec![y, z[0]]);
                    }
                    if petals.len() == k {
                        return Some(Sunflower {
                            kernel: vec![center],
                            petals,
                        });
                    }
                }
                MatchOrStar::Exhausted => {}
            }
        }
        None
    };
    let deletion_branch = |run: &mut Run| -> Option<Sunflower> {
        run.phase("sf3:deletion");
        let pruned = g.filter_edges(|e| !(expanding(e[0], e[1]) || expanding(e[0], e[2]) || expanding(e[1], e[2])));
        run.deleted("sf3:deletion", g.edge_count() - pruned.edge_count());
        for v in by_desc(&pruned.degrees()) {
            if pruned.degree(v) < k {
                break;
            }
            run.steps(1);
            let link = Graph2::from_pairs(n, link_pairs(&pruned, v, |_, _| true));
            let edges = match star_or_matching(&link, tau, k, &none) {
                MatchOrStar::Matching { edges } => Some(edges),
                _ => greedy_matching(&link, k, &none),
            };
            if let Some(edges) = edges {
                return Some(Sunflower {
                    kernel: vec![v],
                    petals: edges.into_iter().map(|p| p.to_vec()).collect(),
                });
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

/// `Sf_4(1,k)`: an `Sf_3(1,k)` among the `3k`-expanding triples of some
/// link, extended by fresh vertices; else, with those edges gone, a k-star
/// of `18k^2`-expanding pairs whose links supply disjoint pairs.
fn sf41(g: &Hypergraph, k: usize, run: &mut Run) -> Option<Sunflower> {
    let n = g.n();
    let tau3 = 3 * k;
    run.threshold(3, tau3 as f64);
    let triples = g.codegree_table(3);
    let expanding = |t: &[usize]| codeg(&triples, t) >= tau3;
    run.expanding(triples.values().filter(|&&c| c >= tau3).count());
    run.phase("sf4:expanding-triples");
    let dv: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            g.incident(v)
                .iter()
                .map(|&i| g.edges()[i].iter().copied().filter(|&u| u != v).collect::<Vec<_>>())
                .filter(|t| expanding(t))
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = dv.iter().map(Vec::len).collect();
    for v in by_desc(&sizes) {
        if sizes[v] == 0 {
            break;
        }
        let d = Hypergraph::from_sorted_edges(3, n, dv[v].clone());
        let mut inner = Run::new("");
        let Some(f) = sf3_core(&d, k, &mut inner) else { continue };
        run.steps(1);
        let mut used = vec![false; n];
        mark(&mut used, f.vertices());
        let mut petals = Vec::with_capacity(k);
        for p in &f.petals {
            let Some(z) = extend_fresh(g, &[f.kernel[0], p[0], p[1]], 1, &mut used) else { break };
            petals.push(vec![p[0], p[1], z[0]]);
        }
        if petals.len() == k {
            return Some(Sunflower {
                kernel: f.kernel,
                petals,
            });
        }
    }

    run.phase("sf4:expanding-pairs");
    let pruned = g.filter_edges(|e| {
        !(expanding(&e[..3]) || expanding(&[e[0], e[1], e[3]]) || expanding(&[e[0], e[2], e[3]]) || expanding(&e[1..]))
    });
    run.deleted("sf4:expanding-pairs", g.edge_count() - pruned.edge_count());
    let tau2 = 18 * k * k;
    run.threshold(2, tau2 as f64);
    let pairs = pruned.codegree_table(2);
    let mut p_adj = vec![Vec::new(); n];
    for (p, &c) in &pairs {
        if c >= tau2 {
            p_adj[p[0]].push(p[1]);
            p_adj[p[1]].push(p[0]);
        }
    }
    run.expanding(p_adj.iter().map(Vec::len).sum::<usize>() / 2);
    for c in 0..n {
        if p_adj[c].len() < k {
            continue;
        }
        run.steps(1);
        let mut leaves = p_adj[c].clone();
        leaves.sort_unstable();
        let mut used = vec![false; n];
        used[c] = true;
        let mut petals = Vec::new();
        for y in leaves {
            if petals.len() == k {
                break;
            }
            if used[y] {
                continue;
            }
            used[y] = true;
            let link = pruned.link(&[c, y]).expect("valid pair");
            match link.edges().iter().find(|e| !used[e[0]] && !used[e[1]]) {
                Some(e) => {
                    mark(&mut used, [e[0], e[1]]);
                    petals.push(vec![y, e[0], e[1]]);
                }
                None => used[y] = false,
            }
        }
        if petals.len() == k {
            return Some(Sunflower { kernel: vec![c], petals });
        }
    }
    None
}

/// `Sf_4(2,k)`: an `Sf_3(1,k)` in the link of a high-degree vertex.
fn sf42(g: &Hypergraph, k: usize, run: &mut Run) -> Option<Sunflower> {
    run.phase("sf4:max-degree-link");
    for v in by_desc(&g.degrees()) {
        if g.degree(v) < k {
            break;
        }
        run.steps(1);
        let link = g.link(&[v]).expect("valid vertex");
        let mut inner = Run::new("");
        if let Some(f) = sf3_core(&link, k, &mut inner) {
            let mut kernel = vec![v, f.kernel[0]];
            kernel.sort_unstable();
            return Some(Sunflower {
                kernel,
                petals: f.petals,
            });
        }
    }
    None
}

/// `count` (default `ceil(sqrt k)`) vertex-disjoint `Sf_3(1,k)` in a 3-graph
/// whose pair codegrees are at most `3k^{3/2}`.
pub fn find_disjoint_sf3_bounded_codegree(
    g: &Hypergraph,
    k: usize,
    count: Option<usize>,
    cfg: &FinderConfig,
) -> Result<FinderReport, FinderError> {
    super::check_arity(g, 3)?;
    if k == 0 {
        return Err(FinderError::InvalidArgument("k must be positive".into()));
    }
    let cap = 3.0 * (k as f64).powf(1.5);
    let mut table: Vec<(Vec<usize>, usize)> = g.codegree_table(2).into_iter().collect();
    table.sort_unstable();
    if let Some((pair, c)) = table.into_iter().find(|(_, c)| *c as f64 > cap) {
        return Err(FinderError::Codegree { pair, codegree: c, cap });
    }
    let count = count.unwrap_or_else(|| (k as f64).sqrt().ceil() as usize);
    let shape = SunflowerShape::new(3, 1, k).expect("k > 0");
    let mut run = Run::new(format!("{count} x {shape}"));
    let (n, kf) = (g.n() as f64, k as f64);
    run.hypothesis(
        "e >= c max(k^2 n, k^{9/2})",
        cfg.disjoint_sf3 * (kf * kf * n).max(kf.powf(4.5)),
        g.edge_count(),
    );
    let flowers = disjoint_sf3(g, k, count, &vec![false; g.n()], &mut run);
    if flowers.len() >= count {
        let copies = flowers.iter().map(Sunflower::embedding).collect();
        return Ok(run.found(g, copies));
    }
    let mut used = vec![false; g.n()];
    let mut flowers = Vec::new();
    if cfg.descent_budget > 0 {
        run.phase("greedy-descent");
        let mut spent = 0;
        while flowers.len() < count && spent < cfg.descent_budget {
            let (f, nodes) = sunflower_descent(g, 1, k, &used, cfg.descent_budget - spent);
            spent += nodes.max(1);
            let Some(f) = f else { break };
            mark(&mut used, f.vertices());
            flowers.push(f);
        }
        run.steps(spent as usize);
        if flowers.len() >= count {
            let copies = flowers.iter().map(Sunflower::embedding).collect();
            return Ok(run.found(g, copies));
        }
    }
    Ok(run.exhausted(
        "disjoint-sf3:iterate",
        format!("found {} of {count} disjoint copies", flowers.len()),
    ))
}

/// The two-branch argument; `forbidden` vertices are never used. Returns as
/// many copies as it managed (at most `count`).
pub(crate) fn disjoint_sf3(g: &Hypergraph, k: usize, count: usize, forbidden: &[bool], run: &mut Run) -> Vec<Sunflower> {
    let n = g.n();
    let high_cut = 18 * k * k * k;
    run.threshold(1, high_cut as f64);
    let high: Vec<usize> = (0..n).filter(|&v| !forbidden[v] && g.degree(v) >= high_cut).collect();
    run.phase("disjoint-sf3:high-degree-centres");
    if high.len() >= count {
        let centres = &high[..count];
        let mut used = forbidden.to_vec();
        mark(&mut used, centres.iter().copied());
        let mut out = Vec::new();
        for &x in centres {
            let link = Graph2::from_pairs(n, link_pairs(g, x, |_, _| true));
            let Some(m) = greedy_matching(&link, k, &used) else { break };
            run.steps(1);
            mark(&mut used, m.iter().flatten().copied());
            out.push(Sunflower {
                kernel: vec![x],
                petals: m.into_iter().map(|p| p.to_vec()).collect(),
            });
        }
        if out.len() == count {
            return out;
        }
    }
    run.phase("disjoint-sf3:iterate");
    let mut removed = forbidden.to_vec();
    mark(&mut removed, high.iter().copied());
    let base = g.without_vertices(&removed);
    run.deleted("disjoint-sf3:iterate", g.edge_count() - base.edge_count());
    let mut used = removed;
    let mut out = Vec::new();
    while out.len() < count {
        let rest = base.without_vertices(&used);
        let mut inner = Run::new("");
        let Some(f) = sf3_core(&rest, k, &mut inner) else { break };
        run.steps(1);
        mark(&mut used, f.vertices());
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{random_hypergraph, sf_free, sunflower_pattern};

    fn shape(r: usize, t: usize, k: usize) -> SunflowerShape {
        SunflowerShape::new(r, t, k).unwrap()
    }

    #[test]
    fn planted_sf31_in_free_host() {
        let free = sf_free(shape(3, 1, 4), 20, 0).unwrap();
        let host = free.disjoint_union(&sunflower_pattern(shape(3, 1, 4)));
        let rep = find_sunflower(&host, shape(3, 1, 4), &FinderConfig::default()).unwrap();
        assert!(rep.is_found(), "{rep:?}");
        rep.copies()[0].validate(&host).unwrap();
    }

    #[test]
    fn pigeonhole_uses_heavy_pair() {
        let host = Hypergraph::new(3, 8, [[0, 1, 2], [0, 1, 3], [0, 1, 4], [2, 5, 6]]).unwrap();
        let rep = find_sunflower(&host, shape(3, 2, 3), &FinderConfig::default()).unwrap();
        assert_eq!(rep.trace[0], "pigeonhole");
        assert_eq!(rep.copies()[0].vertex_map[..2], [0, 1]);
    }

    #[test]
    fn guarantee_regime_sf31() {
        for seed in 0..20 {
            let (k, n) = (3, 30);
            let g = random_hypergraph(3, n, 4 * k * k * n, seed).unwrap();
            let rep = find_sunflower(&g, shape(3, 1, k), &FinderConfig::default()).unwrap();
            assert!(rep.is_found());
            assert!(rep.stats.hypothesis.as_ref().unwrap().met);
            assert!(!rep.trace.contains(&"greedy-descent".to_string()));
        }
    }

    #[test]
    fn sf4_shapes_on_dense_hosts() {
        let g = random_hypergraph(4, 14, 700, 3).unwrap();
        for t in 1..=3 {
            let rep = find_sunflower(&g, shape(4, t, 2), &FinderConfig::default()).unwrap();
            assert!(rep.is_found(), "t={t}: {rep:?}");
        }
    }

    #[test]
    fn unsupported_and_arity() {
        let g = Hypergraph::empty(3, 5);
        assert!(matches!(
            find_sunflower(&g, shape(3, 0, 2), &FinderConfig::default()),
            Err(FinderError::UnsupportedShape(_))
        ));
        assert!(matches!(
            find_sunflower(&g, shape(4, 1, 2), &FinderConfig::default()),
            Err(FinderError::Arity { .. })
        ));
    }

    #[test]
    fn codegree_cap_error_names_pair() {
        // k = 1: cap 3, pair {0,1} sits in 4 edges
        let g = Hypergraph::new(3, 6, [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5]]).unwrap();
        match find_disjoint_sf3_bounded_codegree(&g, 1, None, &FinderConfig::default()) {
            Err(FinderError::Codegree { pair, codegree, .. }) => {
                assert_eq!(pair, vec![0, 1]);
                assert_eq!(codegree, 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn planted_disjoint_copies() {
        let k = 4;
        let one = sunflower_pattern(shape(3, 1, k));
        let host = one.disjoint_union(&one).disjoint_union(&Hypergraph::empty(3, 10));
        let rep = find_disjoint_sf3_bounded_codegree(&host, k, None, &FinderConfig::default()).unwrap();
        assert_eq!(rep.copies().len(), 2);
    }
}
