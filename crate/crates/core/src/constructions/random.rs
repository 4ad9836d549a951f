use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{invalid, ConstructionError};
use crate::hypergraph::Hypergraph;
use crate::util::{binomial, for_each_subset, rng, subsets_of_range};

/// Uniform r-graph on `n` vertices with exactly `e` edges.
pub fn random_hypergraph(r: usize, n: usize, e: usize, seed: u64) -> Result<Hypergraph, ConstructionError> {
    let total = binomial(n, r);
    if r == 0 || (e as u128) > total {
        return Err(invalid(format!("cannot place {e} edges among C({n},{r}) = {total}")));
    }
    let mut prng = rng(seed, 0x7a11);
    let edges: Vec<Vec<usize>> = if total <= 2_000_000 {
        let all = subsets_of_range(n, r);
        index::sample(&mut prng, all.len(), e).into_iter().map(|i| all[i].clone()).collect()
    } else {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(e);
        while out.len() < e {
            let mut cand: Vec<usize> = index::sample(&mut prng, n, r).into_vec();
            cand.sort_unstable();
            if seen.insert(cand.clone()) {
                out.push(cand);
            }
        }
        out
    };
    Ok(Hypergraph::from_sorted_edges(r, n, edges))
}

/// Random-order greedy linear r-graph: candidate r-sets are drawn at random
/// and kept when they share at most one vertex with every kept edge.
pub fn random_linear_hypergraph(r: usize, n: usize, attempts: usize, seed: u64) -> Hypergraph {
    let mut prng = rng(seed, 0x11ea);
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    if n >= r && r >= 2 {
        for _ in 0..attempts {
            let mut cand: Vec<usize> = index::sample(&mut prng, n, r).into_vec();
            cand.sort_unstable();
            let mut clash = false;
            for_each_subset(&cand, 2, |p| clash = clash || covered.contains(&(p[0], p[1])));
            if !clash {
                for_each_subset(&cand, 2, |p| {
                    covered.insert((p[0], p[1]));
                });
                edges.push(cand);
            }
        }
    }
    Hypergraph::from_sorted_edges(r, n, edges)
}

/// Random graph with maximum degree below `cap` and (if reachable) exactly
/// `e` edges, built by shuffled greedy insertion with restarts.
pub fn random_graph_with_max_degree(n: usize, cap: usize, e: usize, seed: u64) -> Option<Hypergraph> {
    let mut prng = rng(seed, 0xdeca);
    let mut pairs = subsets_of_range(n, 2);
    for _ in 0..64 {
        pairs.shuffle(&mut prng);
        let mut deg = vec![0; n];
        let mut edges = Vec::new();
        for p in &pairs {
            if edges.len() == e {
                break;
            }
            if deg[p[0]] + 1 < cap && deg[p[1]] + 1 < cap {
                deg[p[0]] += 1;
                deg[p[1]] += 1;
                edges.push(p.clone());
            }
        }
        if edges.len() == e {
            return Some(Hypergraph::from_sorted_edges(2, n, edges));
        }
        let _ = prng.gen::<u64>();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graphs_have_requested_size() {
        let g = random_hypergraph(3, 30, 200, 7).unwrap();
        assert_eq!(g.edge_count(), 200);
        assert_eq!(g, random_hypergraph(3, 30, 200, 7).unwrap());
        assert!(random_hypergraph(3, 4, 5, 0).is_err());
        let big = random_hypergraph(4, 200, 50, 1).unwrap();
        assert_eq!(big.edge_count(), 50);
    }

    #[test]
    fn linear_graphs_are_linear() {
        let g = random_linear_hypergraph(3, 40, 5000, 3);
        assert!(g.codegree_table(2).values().all(|&c| c == 1));
        assert!(g.edge_count() > 100);
    }

    #[test]
    fn degree_capped_graphs() {
        let g = random_graph_with_max_degree(20, 3, 20, 1).unwrap();
        assert_eq!(g.edge_count(), 20);
        assert!(g.max_degree() < 3);
    }
}
