//! The r-uniform hypergraph model.
//!
//! Vertices are the dense integers `0..n`. Every edge is stored as a sorted
//! vertex list and the edge list itself is kept in lexicographic order, so
//! iteration is deterministic everywhere. A per-vertex incidence index is
//! built eagerly next to the edge list; for `n <= 64` a sorted list of edge
//! bitmasks backs membership queries.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::HypergraphError;
use crate::util::for_each_subset;

/// An r-uniform hypergraph on the vertex set `0..n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    masks: Option<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = HypergraphError;
    fn try_from(raw: RawHypergraph) -> Result<Self, Self::Error> {
        Hypergraph::new(raw.r, raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(g: Hypergraph) -> Self {
        RawHypergraph {
            r: g.r,
            n: g.n,
            edges: g.edges,
        }
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl std::hash::Hash for Hypergraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.r.hash(state);
        self.n.hash(state);
        self.edges.hash(state);
    }
}

fn mask_of(edge: &[usize]) -> u64 {
    edge.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

impl Hypergraph {
    /// Builds a hypergraph, collapsing duplicate edges.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r == 0 {
            return Err(HypergraphError::ZeroUniformity);
        }
        let mut out = Vec::new();
        for (index, e) in edges.into_iter().enumerate() {
            let e = e.as_ref();
            if e.len() != r {
                return Err(HypergraphError::WrongArity {
                    index,
                    expected: r,
                    found: e.len(),
                });
            }
            let mut sorted = e.to_vec();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(HypergraphError::RepeatedVertex { index, vertex: w[0] });
                }
            }
            if let Some(&v) = sorted.last() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { index, vertex: v, n });
                }
            }
            out.push(sorted);
        }
        Ok(Self::from_sorted_edges(r, n, out))
    }

    /// Edgeless hypergraph.
    pub fn empty(r: usize, n: usize) -> Self {
        assert!(r >= 1, "uniformity must be at least 1");
        Self::from_sorted_edges(r, n, Vec::new())
    }

    /// Internal constructor: every edge must already be sorted, of size r, in range.
    pub(crate) fn from_sorted_edges(r: usize, n: usize, mut edges: Vec<Vec<usize>>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            debug_assert_eq!(e.len(), r);
            for &v in e {
                incidence[v].push(i);
            }
        }
        let masks = (n <= 64).then(|| {
            let mut m: Vec<u64> = edges.iter().map(|e| mask_of(e)).collect();
            m.sort_unstable();
            m
        });
        Hypergraph {
            r,
            n,
            edges,
            incidence,
            masks,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in lexicographic order, each sorted.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices (into [`edges`](Self::edges)) of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Membership test for a sorted vertex list.
    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        if edge.len() != self.r || edge.iter().any(|&v| v >= self.n) {
            return false;
        }
        match &self.masks {
            Some(m) => m.binary_search(&mask_of(edge)).is_ok(),
            None => self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok(),
        }
    }

    /// Vertices of degree at least one, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.incidence[v].is_empty()).collect()
    }

    fn check_query(&self, s: &[usize], min: usize, max: usize) -> Result<Vec<usize>, HypergraphError> {
        if s.len() < min || s.len() > max {
            return Err(HypergraphError::SetSize {
                size: s.len(),
                min,
                max,
            });
        }
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::QueryRepeated(w[0]));
            }
        }
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(HypergraphError::QueryOutOfRange { vertex: v, n: self.n });
        }
        Ok(sorted)
    }

    /// Indices of edges containing the sorted set `s` (all edges for `s = ∅`).
    pub(crate) fn edges_containing(&self, s: &[usize]) -> Vec<usize> {
        match s.iter().min_by_key(|&&v| self.incidence[v].len()) {
            None => (0..self.edges.len()).collect(),
            Some(&pivot) => self.incidence[pivot]
                .iter()
                .copied()
                .filter(|&i| crate::util::is_subset_sorted(s, &self.edges[i]))
                .collect(),
        }
    }

    /// Number of edges containing `s`. `codegree(∅)` is the edge count.
    pub fn codegree(&self, s: &[usize]) -> Result<usize, HypergraphError> {
        let s = self.check_query(s, 0, self.r)?;
        Ok(self.edges_containing(&s).len())
    }

    /// The link of `s`: the `(r - |s|)`-graph of sets `T` with `s ∪ T` an edge.
    pub fn link(&self, s: &[usize]) -> Result<Hypergraph, HypergraphError> {
        if self.r < 2 {
            return Err(HypergraphError::SetSize {
                size: s.len(),
                min: 1,
                max: 0,
            });
        }
        let s = self.check_query(s, 1, self.r - 1)?;
        let edges = self
            .edges_containing(&s)
            .into_iter()
            .map(|i| crate::util::sorted_minus(&self.edges[i], &s))
            .collect();
        Ok(Self::from_sorted_edges(self.r - s.len(), self.n, edges))
    }

    /// Codegrees of every `size`-subset that lies inside at least one edge.
    pub fn codegree_table(&self, size: usize) -> HashMap<Vec<usize>, usize> {
        let mut table: HashMap<Vec<usize>, usize> = HashMap::new();
        if size > self.r {
            return table;
        }
        for e in &self.edges {
            for_each_subset(e, size, |sub| {
                *table.entry(sub.to_vec()).or_insert(0) += 1;
            });
        }
        table
    }

    /// All `size`-sets of codegree at least `threshold` (and at least one),
    /// in lexicographic order. Candidates come from the edges.
    pub fn expanding_sets(&self, size: usize, threshold: usize) -> Result<Vec<Vec<usize>>, HypergraphError> {
        if size < 1 || size + 1 > self.r {
            return Err(HypergraphError::SetSize {
                size,
                min: 1,
                max: self.r.saturating_sub(1),
            });
        }
        let mut out: Vec<Vec<usize>> = self
            .codegree_table(size)
            .into_iter()
            .filter(|(_, c)| *c >= threshold.max(1))
            .map(|(s, _)| s)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Degree level sets `A/B/C/D` for thresholds `L2 >= L3 >= L4 >= 0`.
    pub fn level_sets(&self, l2: f64, l3: f64, l4: f64) -> Result<LevelSetPartition, HypergraphError> {
        LevelSetPartition::from_degrees(&self.degrees(), l2, l3, l4)
    }

    /// Same vertex set, keeping the edges selected by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[usize]) -> bool) -> Hypergraph {
        let edges = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        Self::from_sorted_edges(self.r, self.n, edges)
    }

    /// Drops every edge touching a vertex in `removed` (vertex set unchanged).
    pub fn without_vertices(&self, removed: &[bool]) -> Hypergraph {
        self.filter_edges(|e| e.iter().all(|&v| !removed[v]))
    }

    /// Applies a vertex relabelling `v -> perm[v]` into a vertex set of size `new_n`.
    pub fn relabel(&self, perm: &[usize], new_n: usize) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut m: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        Self::from_sorted_edges(self.r, new_n, edges)
    }

    /// Edge union of two hypergraphs with the same uniformity.
    pub fn union(&self, other: &Hypergraph) -> Hypergraph {
        assert_eq!(self.r, other.r);
        let n = self.n.max(other.n);
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        Self::from_sorted_edges(self.r, n, edges)
    }

    /// Disjoint union: the vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        assert_eq!(self.r, other.r);
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| e.iter().map(|&v| v + shift).collect()));
        Self::from_sorted_edges(self.r, self.n + other.n, edges)
    }

    /// Removes isolated vertices, compacting the labels in increasing order.
    /// Returns the compacted hypergraph and the old label of each new vertex.
    pub fn strip_isolated(&self) -> (Hypergraph, Vec<usize>) {
        let support = self.support();
        let mut new_label = vec![usize::MAX; self.n];
        for (i, &v) in support.iter().enumerate() {
            new_label[v] = i;
        }
        let g = self.relabel(&new_label, support.len());
        (g, support)
    }

    /// Same edges on a larger vertex set.
    pub fn with_vertex_count(&self, n: usize) -> Hypergraph {
        assert!(n >= self.n || self.edges.iter().all(|e| e.iter().all(|&v| v < n)));
        Self::from_sorted_edges(self.r, n, self.edges.clone())
    }
}

/// Which degree bucket a vertex falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    A,
    B,
    C,
    D,
}

/// Partition of the vertices by degree:
/// `A: deg > L2`, `B: L3 < deg <= L2`, `C: L4 < deg <= L3`, `D: deg <= L4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSetPartition {
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    levels: Vec<Level>,
}

impl LevelSetPartition {
    pub fn from_degrees(degrees: &[usize], l2: f64, l3: f64, l4: f64) -> Result<Self, HypergraphError> {
        if !(l2 >= l3 && l3 >= l4 && l4 >= 0.0) {
            return Err(HypergraphError::UnorderedThresholds { l2, l3, l4 });
        }
        let mut p = LevelSetPartition {
            l2,
            l3,
            l4,
            a: Vec::new(),
            b: Vec::new(),
            c: Vec::new(),
            d: Vec::new(),
            levels: Vec::with_capacity(degrees.len()),
        };
        for (v, &deg) in degrees.iter().enumerate() {
            let x = deg as f64;
            let level = if x > l2 {
                p.a.push(v);
                Level::A
            } else if x > l3 {
                p.b.push(v);
                Level::B
            } else if x > l4 {
                p.c.push(v);
                Level::C
            } else {
                p.d.push(v);
                Level::D
            };
            p.levels.push(level);
        }
        Ok(p)
    }

    pub fn level(&self, v: usize) -> Level {
        self.levels[v]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fano() -> Hypergraph {
        Hypergraph::new(
            3,
            7,
            [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
        .unwrap()
    }

    #[test]
    fn build_collapses_duplicates_and_sorts() {
        let g = Hypergraph::new(3, 4, [[0, 1, 2], [2, 1, 0]]).unwrap();
        assert_eq!(g.edge_count(), 1);
        let p = Hypergraph::new(2, 3, [[1, 2], [0, 1]]).unwrap();
        assert_eq!(p.edges(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new(4, 3, [[0, 1, 2, 3]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 5, [vec![0, 1]]),
            Err(HypergraphError::WrongArity { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 5, [[0, 1, 1]]),
            Err(HypergraphError::RepeatedVertex { vertex: 1, .. })
        ));
        assert!(Hypergraph::new(0, 5, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn degenerate_graphs_are_legal() {
        let g = Hypergraph::new(3, 0, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.codegree(&[]).unwrap(), 0);
        assert!(g.expanding_sets(1, 0).unwrap().is_empty());
    }

    #[test]
    fn link_examples() {
        let g = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(g.link(&[0]).unwrap().edges(), &[vec![1, 2]]);
        let f = fano();
        let l = f.link(&[0]).unwrap();
        assert_eq!(l.r(), 2);
        assert_eq!(l.edges(), &[vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert!(f.link(&[]).is_err());
        assert!(f.link(&[0, 1, 2]).is_err());
    }

    #[test]
    fn codegree_examples() {
        let f = fano();
        assert_eq!(f.codegree(&[0]).unwrap(), 3);
        assert_eq!(f.codegree(&[]).unwrap(), 7);
        assert_eq!(f.codegree(&[0, 1]).unwrap(), 1);
        assert!(f.codegree(&[0, 9]).is_err());
        assert!(f.codegree(&[0, 1, 2, 3]).is_err());
        let k4 = Hypergraph::new(3, 4, crate::util::subsets_of_range(4, 3)).unwrap();
        assert_eq!(k4.codegree(&[0, 1]).unwrap(), 2);
    }

    #[test]
    fn fano_pairs_are_all_one_expanding() {
        let f = fano();
        assert_eq!(f.expanding_sets(2, 1).unwrap().len(), 21);
        assert!(f.expanding_sets(2, 2).unwrap().is_empty());
        assert!(f.expanding_sets(3, 1).is_err());
    }

    #[test]
    fn level_sets_of_matching_and_star() {
        // degree 1 with L3 = 1 is not strictly above L3, so matched vertices land in C
        let m = Hypergraph::new(2, 6, [[0, 1], [2, 3]]).unwrap();
        let p = m.level_sets(2.0, 1.0, 0.0).unwrap();
        assert!(p.a.is_empty());
        assert!(p.b.is_empty());
        assert_eq!(p.c, vec![0, 1, 2, 3]);
        assert_eq!(p.d, vec![4, 5]);
        let p = m.level_sets(2.0, 0.5, 0.0).unwrap();
        assert_eq!(p.b, vec![0, 1, 2, 3]);
        let star = Hypergraph::new(2, 6, (1..6).map(|v| [0, v])).unwrap();
        let p = star.level_sets(4.0, 1.0, 0.0).unwrap();
        assert_eq!(p.a, vec![0]);
        assert_eq!(p.level(0), Level::A);
        assert_eq!(p.c, vec![1, 2, 3, 4, 5]);
        assert!(m.level_sets(1.0, 2.0, 0.0).is_err());
        assert!(m.level_sets(2.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn membership_with_and_without_masks() {
        let f = fano();
        assert!(f.contains_edge(&[1, 4, 6]));
        assert!(!f.contains_edge(&[1, 4, 5]));
        let big = Hypergraph::new(2, 100, [[3, 99], [0, 70]]).unwrap();
        assert!(big.contains_edge(&[3, 99]));
        assert!(!big.contains_edge(&[3, 70]));
    }

    #[test]
    fn strip_isolated_compacts() {
        let g = Hypergraph::new(2, 6, [[1, 4], [4, 5]]).unwrap();
        let (h, map) = g.strip_isolated();
        assert_eq!(map, vec![1, 4, 5]);
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2]]);
    }
}
