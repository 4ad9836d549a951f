//! Largest sunflower with a given kernel size.
//!
//! For each candidate kernel C (a t-subset of some edge whose codegree beats
//! the best so far) the petals `e \ C` form a set family; a sunflower with
//! kernel C is a packing of pairwise disjoint petals, found as a maximum
//! clique in the petal-disjointness graph.

use serde::{Deserialize, Serialize};

use super::budget::SearchBudget;
use super::clique::{max_clique, BitSet};
use super::OracleError;
use crate::constructions::sunflower_pattern;
use crate::embedding::Embedding;
use crate::hypergraph::Hypergraph;
use crate::shapes::SunflowerShape;
use crate::util::{is_subset_sorted, sorted_minus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunflowerWitness {
    pub kernel: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
}

impl SunflowerWitness {
    /// The witness as an embedding of `Sf_r(t, k)`.
    pub fn to_embedding(&self, r: usize) -> Embedding {
        let t = self.kernel.len();
        let shape = SunflowerShape {
            r,
            t,
            k: self.edges.len(),
        };
        let mut map = self.kernel.clone();
        for e in &self.edges {
            map.extend(sorted_minus(e, &self.kernel));
        }
        Embedding::new(sunflower_pattern(shape), map)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SunflowerResult {
    /// Largest petal count found (exact unless `exhausted`).
    pub k: usize,
    pub witness: Option<SunflowerWitness>,
    /// True when the budget ran out; `k` is then only a lower bound.
    pub exhausted: bool,
    pub nodes: u64,
}

pub fn max_sunflower_exact(g: &Hypergraph, t: usize, budget: SearchBudget) -> Result<SunflowerResult, OracleError> {
    max_sunflower_until(g, t, usize::MAX, budget)
}

/// As [`max_sunflower_exact`], but stops as soon as `stop_at` petals are found.
pub fn max_sunflower_until(
    g: &Hypergraph,
    t: usize,
    stop_at: usize,
    budget: SearchBudget,
) -> Result<SunflowerResult, OracleError> {
    if t >= g.r() {
        return Err(OracleError::InvalidArgument(format!(
            "kernel size {t} must be below the uniformity {}",
            g.r()
        )));
    }
    let mut meter = budget.meter();
    let mut best: Option<SunflowerWitness> = None;
    let mut kernels: Vec<(Vec<usize>, usize)> = if t == 0 {
        vec![(Vec::new(), g.edge_count())]
    } else {
        g.codegree_table(t).into_iter().collect()
    };
    // high-codegree kernels first, ties lexicographic
    kernels.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    for (kernel, codeg) in kernels {
        let have = best.as_ref().map_or(0, |w| w.edges.len());
        if codeg <= have || have >= stop_at {
            break;
        }
        let members: Vec<usize> = if kernel.is_empty() {
            (0..g.edge_count()).collect()
        } else {
            g.edges_containing(&kernel)
        };
        let petals: Vec<Vec<usize>> = members.iter().map(|&i| sorted_minus(&g.edges()[i], &kernel)).collect();
        let adj = disjointness_graph(&petals, g.n());
        let out = max_clique(&adj, have, stop_at, &mut meter);
        if out.clique.len() > have {
            let mut edges: Vec<Vec<usize>> = out.clique.iter().map(|&i| g.edges()[members[i]].clone()).collect();
            edges.sort_unstable();
            best = Some(SunflowerWitness {
                kernel: kernel.clone(),
                edges,
            });
        }
        if !out.complete {
            break;
        }
    }
    if let Some(w) = &best {
        debug_assert!(w.edges.iter().all(|e| is_subset_sorted(&w.kernel, e)));
    }
    Ok(SunflowerResult {
        k: best.as_ref().map_or(0, |w| w.edges.len()),
        witness: best,
        exhausted: meter.tripped,
        nodes: meter.nodes,
    })
}

fn disjointness_graph(sets: &[Vec<usize>], n: usize) -> Vec<BitSet> {
    let masks: Vec<BitSet> = sets
        .iter()
        .map(|s| {
            let mut b = BitSet::new(n.max(1));
            for &v in s {
                b.insert(v);
            }
            b
        })
        .collect();
    let mut adj = vec![BitSet::new(sets.len()); sets.len()];
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if masks[i].and(&masks[j]).is_empty() {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::partial_steiner;

    #[test]
    fn self_witness() {
        let g = sunflower_pattern(SunflowerShape::new(4, 2, 5).unwrap());
        let res = max_sunflower_exact(&g, 2, SearchBudget::unlimited()).unwrap();
        assert_eq!(res.k, 5);
        let w = res.witness.unwrap();
        assert_eq!(w.kernel, vec![0, 1]);
        w.to_embedding(4).validate(&g).unwrap();
    }

    #[test]
    fn fano_values() {
        let f = partial_steiner(2, 3, 7, 0).unwrap();
        assert_eq!(max_sunflower_exact(&f, 0, SearchBudget::unlimited()).unwrap().k, 1);
        let res = max_sunflower_exact(&f, 1, SearchBudget::unlimited()).unwrap();
        assert_eq!(res.k, 3);
        res.witness.unwrap().to_embedding(3).validate(&f).unwrap();
        assert_eq!(max_sunflower_exact(&f, 2, SearchBudget::unlimited()).unwrap().k, 1);
    }

    #[test]
    fn empty_graph_and_bad_kernel() {
        let g = Hypergraph::empty(3, 5);
        assert_eq!(max_sunflower_exact(&g, 1, SearchBudget::unlimited()).unwrap().k, 0);
        assert!(max_sunflower_exact(&g, 3, SearchBudget::unlimited()).is_err());
    }
}
