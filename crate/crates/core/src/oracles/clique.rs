//! Maximum clique by branch and bound with greedy colouring bounds.
//!
//! Used for set packing: the vertices are sets, adjacency is disjointness.

use super::budget::Meter;

#[derive(Clone, Debug)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|wi| wi * 64 + self.words[wi].trailing_zeros() as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Best clique found and whether the search ran to completion.
pub(crate) struct CliqueOutcome {
    pub clique: Vec<usize>,
    pub complete: bool,
}

/// Maximum clique of the graph given by `adj`, stopping early once a clique
/// of size `stop_at` is found. `floor` is a size already known elsewhere, so
/// only strictly larger cliques are reported.
pub(crate) fn max_clique(adj: &[BitSet], floor: usize, stop_at: usize, meter: &mut Meter) -> CliqueOutcome {
    let n = adj.len();
    let mut all = BitSet::new(n);
    for v in 0..n {
        all.insert(v);
    }
    let mut search = Search {
        adj,
        best: Vec::new(),
        floor,
        stop_at,
        current: Vec::new(),
        done: false,
    };
    search.expand(all, meter);
    CliqueOutcome {
        clique: search.best,
        complete: !meter.tripped,
    }
}

struct Search<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    floor: usize,
    stop_at: usize,
    current: Vec<usize>,
    done: bool,
}

impl Search<'_> {
    fn target(&self) -> usize {
        self.best.len().max(self.floor)
    }

    /// Greedy sequential colouring; returns vertices with their colour bound, ascending.
    fn colour(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut rest = cand.clone();
        let mut colour = 0;
        while !rest.is_empty() {
            colour += 1;
            let mut avail = rest.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                rest.remove(v);
                out.push((v, colour));
                for u in self.adj[v].iter() {
                    if avail.contains(u) {
                        avail.remove(u);
                    }
                }
            }
        }
        out
    }

    fn expand(&mut self, cand: BitSet, meter: &mut Meter) {
        if self.done || meter.tick() {
            self.done = true;
            return;
        }
        let order = self.colour(&cand);
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.target() {
                return;
            }
            self.current.push(v);
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.target() {
                    self.best = self.current.clone();
                    if self.best.len() >= self.stop_at {
                        self.done = true;
                    }
                }
            } else {
                self.expand(next, meter);
            }
            self.current.pop();
            if self.done {
                return;
            }
            cand.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::SearchBudget;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn finds_maximum_clique() {
        // K4 on {0,1,2,3} plus a triangle {3,4,5}
        let adj = graph(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5)],
        );
        let out = max_clique(&adj, 0, usize::MAX, &mut SearchBudget::unlimited().meter());
        let mut c = out.clique;
        c.sort();
        assert_eq!(c, vec![0, 1, 2, 3]);
        assert!(out.complete);
    }

    #[test]
    fn respects_floor_and_empty_graph() {
        let adj = graph(3, &[(0, 1)]);
        let out = max_clique(&adj, 2, usize::MAX, &mut SearchBudget::unlimited().meter());
        assert!(out.clique.is_empty());
        let out = max_clique(&[], 0, usize::MAX, &mut SearchBudget::unlimited().meter());
        assert!(out.clique.is_empty());
    }
}
