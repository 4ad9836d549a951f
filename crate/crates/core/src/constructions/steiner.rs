use std::collections::HashSet;

use rand::seq::SliceRandom;

use super::{invalid, ConstructionError};
use crate::hypergraph::Hypergraph;
use crate::util::{binomial_f64, for_each_subset, is_prime, rng};

/// Lexicographic greedy partial Steiner system: scan the k-subsets of `0..n`
/// in order and keep one whenever none of its t-subsets is already covered.
pub fn greedy_steiner(t: usize, k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut covered: HashSet<Vec<usize>> = HashSet::new();
    let mut edges = Vec::new();
    let items: Vec<usize> = (0..n).collect();
    for_each_subset(&items, k, |cand| {
        let mut clash = false;
        for_each_subset(cand, t, |sub| {
            clash = clash || covered.contains(sub);
        });
        if !clash {
            for_each_subset(cand, t, |sub| {
                covered.insert(sub.to_vec());
            });
            edges.push(cand.to_vec());
        }
    });
    edges
}

/// `C(n,k) / sum_{i=t}^{k} C(k,i) C(n-k,k-i)`: the counting bound any maximal
/// partial Steiner system meets.
pub fn partial_steiner_bound(t: usize, k: usize, n: usize) -> f64 {
    let denom: f64 = (t..=k).map(|i| binomial_f64(k, i) * binomial_f64(n - k, k - i)).sum();
    binomial_f64(n, k) / denom
}

/// A k-graph on `0..n` where every t-set lies in at most one edge: the
/// lexicographic greedy system relabelled by a seeded uniform permutation.
pub fn partial_steiner(t: usize, k: usize, n: usize, seed: u64) -> Result<Hypergraph, ConstructionError> {
    if t == 0 || t >= k || k > n {
        return Err(invalid(format!("partial Steiner needs 0 < t < k <= n (got t={t}, k={k}, n={n})")));
    }
    let base = Hypergraph::from_sorted_edges(k, n, greedy_steiner(t, k, n));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng(seed, 0x57e1));
    let g = base.relabel(&perm, n);
    let bound = partial_steiner_bound(t, k, n);
    if (g.edge_count() as f64) < bound - 1e-9 {
        return Err(ConstructionError::CertificateFailed {
            what: format!("{} edges, below the greedy bound {bound:.3}", g.edge_count()),
            attempts: 1,
        });
    }
    Ok(g)
}

/// The affine-plane linear k-graph together with the prime used.
#[derive(Clone, Debug)]
pub struct LinearPlane {
    pub p: usize,
    pub graph: Hypergraph,
}

/// Partial lines of `F_p^2`: vertex `(x, y)` with `x < k` is `x*p + y`, and
/// `(a, b)` gives the edge `{(s, a + s*b mod p) : s < k}`.
pub fn linear_partial_lines(k: usize, n: usize) -> Result<LinearPlane, ConstructionError> {
    if k < 2 || 2 * k * k > n {
        return Err(invalid(format!("need 2 <= k <= sqrt(n/2) (got k={k}, n={n})")));
    }
    // largest prime p with n/2k <= p <= n/k
    let hi = n / k;
    let p = (1..=hi)
        .rev()
        .find(|&p| is_prime(p) && 2 * k * p >= n)
        .ok_or_else(|| invalid(format!("no prime in [{n}/{}, {n}/{k}]", 2 * k)))?;
    let mut edges = Vec::with_capacity(p * p);
    for a in 0..p {
        for b in 0..p {
            let mut e: Vec<usize> = (0..k).map(|s| s * p + (a + s * b) % p).collect();
            e.sort_unstable();
            edges.push(e);
        }
    }
    let graph = Hypergraph::from_sorted_edges(k, n, edges);
    if 4 * k * k * graph.edge_count() < n * n {
        return Err(ConstructionError::CertificateFailed {
            what: format!("{} edges, below n^2/4k^2", graph.edge_count()),
            attempts: 1,
        });
    }
    Ok(LinearPlane { p, graph })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_greedy_on_seven_points_is_fano() {
        let e = greedy_steiner(2, 3, 7);
        assert_eq!(
            e,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5]
            ]
        );
    }

    #[test]
    fn partial_steiner_examples() {
        for seed in 0..20 {
            let g = partial_steiner(2, 3, 7, seed).unwrap();
            assert_eq!(g.edge_count(), 7);
            assert!(g.codegree_table(2).values().all(|&c| c <= 1));
            let m = partial_steiner(1, 2, 6, seed).unwrap();
            assert_eq!(m.edge_count(), 3);
            assert!(m.degrees().iter().all(|&d| d == 1));
        }
        let g = partial_steiner(3, 4, 8, 1).unwrap();
        for tri in crate::util::subsets_of_range(8, 3) {
            assert!(g.codegree(&tri).unwrap() <= 1);
        }
        assert!(partial_steiner(3, 3, 8, 1).is_err());
    }

    #[test]
    fn seeds_change_labels_not_size() {
        let a = partial_steiner(2, 3, 9, 1).unwrap();
        let b = partial_steiner(2, 3, 9, 2).unwrap();
        assert_eq!(a.edge_count(), b.edge_count());
        assert_eq!(a, partial_steiner(2, 3, 9, 1).unwrap());
    }

    #[test]
    fn partial_lines_examples() {
        let l = linear_partial_lines(2, 8).unwrap();
        assert_eq!(l.p, 3);
        assert_eq!(l.graph.edge_count(), 9);
        assert_eq!(l.graph.support().len(), 6);
        let l = linear_partial_lines(3, 50).unwrap();
        assert!(l.p * 6 >= 50 && l.p * 3 <= 50);
        assert!(linear_partial_lines(2, 4).is_err());
    }
}
