use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::steiner::{greedy_steiner, partial_steiner_bound};
use super::{invalid, ConstructionError};
use crate::hypergraph::Hypergraph;
use crate::shapes::SunflowerShape;
use crate::util::{binomial, binomial_f64, for_each_subset, rng};

pub const DEFAULT_RETRY_LIMIT: usize = 16;

/// Rounds of the good-graph construction: `max(1, floor(n^2 / 48k^2))`.
pub fn sf42_rounds(n: usize, k: usize) -> usize {
    (n * n / (48 * k * k)).max(1)
}

/// The edge count the construction for `shape` is guaranteed to reach.
pub fn sf_free_edge_bound(shape: SunflowerShape, n: usize) -> Result<f64, ConstructionError> {
    let k = shape.k;
    Ok(match (shape.r, shape.t) {
        (3, 1) => (binomial(k, 2) * (n - k) as u128) as f64,
        (4, 1) => (binomial(k, 2) * binomial(n - k, 2)) as f64,
        (3, 2) => partial_steiner_bound(2, 3, n),
        (4, 3) => partial_steiner_bound(3, 4, n),
        (4, 2) => {
            let side = 2 * k;
            let ratio = (side as f64 / n as f64).powi(2);
            (0..sf42_rounds(n, k))
                .map(|i| binomial_f64(side, 4) * (1.0 - 6.0 * i as f64 * ratio) / 2.0)
                .sum()
        }
        _ => return Err(ConstructionError::UnsupportedShape(shape)),
    })
}

/// An `Sf_r(t,k)`-free r-graph on `n` vertices from the matching lower-bound
/// construction. Deterministic constructions ignore the seed.
pub fn sf_free(shape: SunflowerShape, n: usize, seed: u64) -> Result<Hypergraph, ConstructionError> {
    let (r, t, k) = (shape.r, shape.t, shape.k);
    if !matches!((r, t), (3, 1) | (3, 2) | (4, 1) | (4, 2) | (4, 3)) {
        return Err(ConstructionError::UnsupportedShape(shape));
    }
    if k < 2 || 2 * k > n {
        return Err(invalid(format!("{shape} needs 2 <= k <= n/2 (got n={n})")));
    }
    let g = match (r, t) {
        (3, 1) => one_in_a(n, k),
        (4, 1) => two_in_each(n, k),
        (3, 2) | (4, 3) => {
            if n < r {
                return Err(invalid(format!("{shape} needs n >= {r}")));
            }
            steiner_union(t, r, n, k, seed)
        }
        _ => {
            // four samples are distinct with probability 1 - 6/n, which the
            // expectation bound needs to be at least 1/2
            if n < 12 {
                return Err(invalid(format!("{shape} needs n >= 12 (got n={n})")));
            }
            return good_graph_union(n, k, seed);
        }
    };
    let bound = sf_free_edge_bound(shape, n)?;
    if (g.edge_count() as f64) < bound - 1e-9 {
        return Err(ConstructionError::CertificateFailed {
            what: format!("{shape}: {} edges, below the bound {bound:.3}", g.edge_count()),
            attempts: 1,
        });
    }
    if matches!((r, t), (3, 2) | (4, 3)) {
        // every t-set lies in at most k-1 edges, one per copy
        if let Some((set, c)) = g.codegree_table(t).into_iter().find(|(_, c)| *c >= k) {
            return Err(ConstructionError::CertificateFailed {
                what: format!("{set:?} has codegree {c}"),
                attempts: 1,
            });
        }
    }
    Ok(g)
}

/// B = `0..k`, A = the rest; edges take two vertices of B and one of A.
fn one_in_a(n: usize, k: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for b1 in 0..k {
        for b2 in b1 + 1..k {
            for a in k..n {
                edges.push(vec![b1, b2, a]);
            }
        }
    }
    Hypergraph::from_sorted_edges(3, n, edges)
}

/// B = `0..k`, A = the rest; edges take two vertices from each side.
fn two_in_each(n: usize, k: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for b1 in 0..k {
        for b2 in b1 + 1..k {
            for a1 in k..n {
                for a2 in a1 + 1..n {
                    edges.push(vec![b1, b2, a1, a2]);
                }
            }
        }
    }
    Hypergraph::from_sorted_edges(4, n, edges)
}

/// Union of `k - 1` randomly relabelled copies of the greedy `S(t, t+1, n)`.
fn steiner_union(t: usize, r: usize, n: usize, k: usize, seed: u64) -> Hypergraph {
    let base = greedy_steiner(t, r, n);
    let mut prng = rng(seed, 0x5f32);
    let mut edges = Vec::new();
    for _ in 0..k - 1 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut prng);
        for e in &base {
            let mut m: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            m.sort_unstable();
            edges.push(m);
        }
    }
    Hypergraph::from_sorted_edges(r, n, edges)
}

/// The good-graph rounds: each round samples 2k vertices with repetition,
/// keeps the complete graph on them minus pairs used by earlier rounds, and
/// drops pairs outside every K4. The 4-graph is the set of K4s.
fn good_graph_union(n: usize, k: usize, seed: u64) -> Result<Hypergraph, ConstructionError> {
    let rounds = sf42_rounds(n, k);
    let bound = sf_free_edge_bound(SunflowerShape { r: 4, t: 2, k }, n)?;
    let mut best = 0;
    for attempt in 0..DEFAULT_RETRY_LIMIT {
        let mut prng = rng(seed, 0x4200 + attempt as u64);
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for _ in 0..rounds {
            let mut verts: Vec<usize> = (0..2 * k).map(|_| prng.gen_range(0..n)).collect();
            verts.sort_unstable();
            verts.dedup();
            let fresh = |a: usize, b: usize| !used.contains(&(a, b));
            let mut quads = Vec::new();
            for_each_subset(&verts, 4, |q| {
                let ok = (0..4).all(|i| (i + 1..4).all(|j| fresh(q[i], q[j])));
                if ok {
                    quads.push(q.to_vec());
                }
            });
            // pairs of this round that survive are exactly those inside a K4
            for q in &quads {
                for i in 0..4 {
                    for j in i + 1..4 {
                        used.insert((q[i], q[j]));
                    }
                }
            }
            edges.extend(quads);
        }
        let g = Hypergraph::from_sorted_edges(4, n, edges);
        best = best.max(g.edge_count());
        if g.edge_count() as f64 >= bound - 1e-9 && pair_spans_at_most(&g, 2 * k) {
            return Ok(g);
        }
    }
    Err(ConstructionError::CertificateFailed {
        what: format!("Sf4(2,{k}) rounds gave at most {best} K4s, below {bound:.3}"),
        attempts: DEFAULT_RETRY_LIMIT,
    })
}

/// Every pair's edges together touch at most `limit` vertices, so no pair
/// kernels a sunflower with `limit / 2` petals.
fn pair_spans_at_most(g: &Hypergraph, limit: usize) -> bool {
    g.codegree_table(2).keys().all(|pair| {
        let mut span: Vec<usize> = g
            .edges_containing(pair)
            .into_iter()
            .flat_map(|i| g.edges()[i].clone())
            .collect();
        span.sort_unstable();
        span.dedup();
        span.len() <= limit
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(r: usize, t: usize, k: usize) -> SunflowerShape {
        SunflowerShape::new(r, t, k).unwrap()
    }

    #[test]
    fn one_vertex_in_a_counts() {
        let g = sf_free(shape(3, 1, 4), 20, 0).unwrap();
        assert_eq!(g.edge_count(), 96);
    }

    #[test]
    fn steiner_unions_respect_codegree() {
        let g = sf_free(shape(4, 3, 3), 10, 5).unwrap();
        for tri in crate::util::subsets_of_range(10, 3) {
            assert!(g.codegree(&tri).unwrap() <= 2);
        }
        let g = sf_free(shape(3, 2, 2), 9, 0).unwrap();
        assert!(g.codegree_table(2).values().all(|&c| c <= 1));
        assert_eq!(g.edge_count(), greedy_steiner(2, 3, 9).len());
    }

    #[test]
    fn good_graphs_meet_their_certificate() {
        for (n, k) in [(12, 2), (14, 3), (30, 2)] {
            let g = sf_free(shape(4, 2, k), n, 3).unwrap();
            assert!(pair_spans_at_most(&g, 2 * k));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(sf_free(shape(3, 0, 2), 10, 0), Err(ConstructionError::UnsupportedShape(_))));
        assert!(matches!(sf_free(shape(4, 2, 2), 11, 0), Err(ConstructionError::InvalidParameters(_))));
        assert!(sf_free(shape(3, 1, 6), 10, 0).is_err());
        assert!(sf_free(shape(4, 1, 1), 10, 0).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = sf_free(shape(4, 2, 2), 20, 11).unwrap();
        let b = sf_free(shape(4, 2, 2), 20, 11).unwrap();
        assert_eq!(crate::format::serialize(&a), crate::format::serialize(&b));
    }
}
