//! Exact subhypergraph containment by backtracking over injective maps.
//!
//! Pattern vertices are ordered max-degree first, then by the number of
//! edges shared with already-ordered vertices. A host candidate must
//! dominate the pattern vertex's degree and every pair codegree towards the
//! mapped vertices, and each pattern edge is checked as soon as its last
//! vertex is placed. Isolated pattern vertices go to unused host vertices at
//! the end.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::budget::{Meter, SearchBudget};
use super::OracleError;
use crate::embedding::Embedding;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Containment {
    Found { embedding: Embedding, nodes: u64 },
    Absent { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl Containment {
    pub fn is_found(&self) -> bool {
        matches!(self, Containment::Found { .. })
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Containment::Absent { .. })
    }
}

pub fn contains_exact(host: &Hypergraph, pattern: &Hypergraph, budget: SearchBudget) -> Result<Containment, OracleError> {
    let mut found = None;
    let outcome = for_each_embedding(host, pattern, budget, |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(match (found, outcome) {
        (Some(vertex_map), s) => Containment::Found {
            embedding: Embedding::new(pattern.clone(), vertex_map),
            nodes: s.nodes,
        },
        (None, s) if s.exhausted => Containment::BudgetExhausted { nodes: s.nodes },
        (None, s) => Containment::Absent { nodes: s.nodes },
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SearchSummary {
    pub nodes: u64,
    pub exhausted: bool,
}

/// Calls `visit` with every injective map (indexed by pattern vertex) under
/// which the pattern's edges land on host edges. Isolated pattern vertices
/// are sent to the smallest unused host vertices, so each map of the
/// non-isolated part is reported once.
pub fn for_each_embedding(
    host: &Hypergraph,
    pattern: &Hypergraph,
    budget: SearchBudget,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<SearchSummary, OracleError> {
    if pattern.r() != host.r() {
        return Err(OracleError::Arity {
            host: host.r(),
            pattern: pattern.r(),
        });
    }
    let mut meter = budget.meter();
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(SearchSummary {
            nodes: 0,
            exhausted: false,
        });
    }
    let plan = Plan::new(pattern);
    let mut state = State {
        host,
        pattern,
        plan: &plan,
        map: vec![usize::MAX; pattern.n()],
        used: vec![false; host.n()],
        host_pairs: PairCodegrees::new(host),
    };
    let _ = state.extend(0, &mut meter, &mut visit);
    Ok(SearchSummary {
        nodes: meter.nodes,
        exhausted: meter.tripped,
    })
}

/// Host pair codegrees; a dense matrix when it fits, a hash map otherwise.
enum PairCodegrees {
    Dense { n: usize, counts: Vec<u32> },
    Sparse(std::collections::HashMap<(usize, usize), u32>),
}

impl PairCodegrees {
    fn new(g: &Hypergraph) -> Self {
        let n = g.n();
        if g.r() < 2 {
            return PairCodegrees::Sparse(Default::default());
        }
        if n <= 600 {
            let mut counts = vec![0u32; n * n];
            for e in g.edges() {
                for i in 0..e.len() {
                    for j in i + 1..e.len() {
                        counts[e[i] * n + e[j]] += 1;
                        counts[e[j] * n + e[i]] += 1;
                    }
                }
            }
            PairCodegrees::Dense { n, counts }
        } else {
            let mut m = std::collections::HashMap::new();
            for e in g.edges() {
                for i in 0..e.len() {
                    for j in i + 1..e.len() {
                        *m.entry((e[i], e[j])).or_insert(0) += 1;
                    }
                }
            }
            PairCodegrees::Sparse(m)
        }
    }

    fn get(&self, a: usize, b: usize) -> u32 {
        match self {
            PairCodegrees::Dense { n, counts } => counts[a * n + b],
            PairCodegrees::Sparse(m) => *m.get(&(a.min(b), a.max(b))).unwrap_or(&0),
        }
    }
}

struct Plan {
    /// Non-isolated pattern vertices in placement order.
    order: Vec<usize>,
    isolated: Vec<usize>,
    /// For each position: the pattern edges completed by placing that vertex.
    closing: Vec<Vec<usize>>,
    /// For each position: (earlier position, pair codegree) for every earlier neighbour.
    pair_needs: Vec<Vec<(usize, u32)>>,
}

impl Plan {
    fn new(p: &Hypergraph) -> Self {
        let n = p.n();
        let mut pair = vec![0u32; n * n];
        for e in p.edges() {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    pair[e[i] * n + e[j]] += 1;
                    pair[e[j] * n + e[i]] += 1;
                }
            }
        }
        let active: Vec<usize> = (0..n).filter(|&v| p.degree(v) > 0).collect();
        let isolated: Vec<usize> = (0..n).filter(|&v| p.degree(v) == 0).collect();
        let mut order: Vec<usize> = Vec::with_capacity(active.len());
        let mut placed = vec![false; n];
        while order.len() < active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links: u32 = order.iter().map(|&u| pair[v * n + u]).sum();
                    (links, p.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for (ei, e) in p.edges().iter().enumerate() {
            let last = e.iter().map(|&v| pos[v]).max().unwrap();
            closing[last].push(ei);
        }
        let pair_needs = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (0..i)
                    .filter_map(|j| {
                        let c = pair[v * n + order[j]];
                        (c > 0).then_some((j, c))
                    })
                    .collect()
            })
            .collect();
        Plan {
            order,
            isolated,
            closing,
            pair_needs,
        }
    }
}

struct State<'a> {
    host: &'a Hypergraph,
    pattern: &'a Hypergraph,
    plan: &'a Plan,
    map: Vec<usize>,
    used: Vec<bool>,
    host_pairs: PairCodegrees,
}

impl State<'_> {
    fn candidates(&self, depth: usize) -> Vec<usize> {
        let needs = &self.plan.pair_needs[depth];
        match needs
            .iter()
            .map(|&(j, _)| self.map[self.plan.order[j]])
            .min_by_key(|&h| self.host.degree(h))
        {
            Some(anchor) => {
                let mut c: Vec<usize> = self
                    .host
                    .incident(anchor)
                    .iter()
                    .flat_map(|&ei| self.host.edges()[ei].iter().copied())
                    .filter(|&h| !self.used[h])
                    .collect();
                c.sort_unstable();
                c.dedup();
                c
            }
            None => (0..self.host.n()).filter(|&h| !self.used[h]).collect(),
        }
    }

    fn extend(
        &mut self,
        depth: usize,
        meter: &mut Meter,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if meter.tick() {
            return ControlFlow::Break(());
        }
        if depth == self.plan.order.len() {
            return self.place_isolated(visit);
        }
        let v = self.plan.order[depth];
        let deg = self.pattern.degree(v);
        for h in self.candidates(depth) {
            if self.host.degree(h) < deg {
                continue;
            }
            let dominated = self.plan.pair_needs[depth]
                .iter()
                .all(|&(j, c)| self.host_pairs.get(h, self.map[self.plan.order[j]]) >= c);
            if !dominated {
                continue;
            }
            self.map[v] = h;
            let edges_ok = self.plan.closing[depth].iter().all(|&ei| {
                let mut img: Vec<usize> = self.pattern.edges()[ei].iter().map(|&u| self.map[u]).collect();
                img.sort_unstable();
                self.host.contains_edge(&img)
            });
            if edges_ok {
                self.used[h] = true;
                let flow = self.extend(depth + 1, meter, visit);
                self.used[h] = false;
                if flow.is_break() {
                    self.map[v] = usize::MAX;
                    return flow;
                }
            }
            self.map[v] = usize::MAX;
        }
        ControlFlow::Continue(())
    }

    fn place_isolated(&mut self, visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        let mut free = (0..self.host.n()).filter(|&h| !self.used[h]);
        let mut map = self.map.clone();
        for &v in &self.plan.isolated {
            map[v] = free.next().expect("pattern fits in host");
        }
        visit(&map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{pattern, star_pattern};
    use crate::shapes::{StarShape, SunflowerShape};
    use crate::util::subsets_of_range;

    fn fano() -> Hypergraph {
        crate::constructions::partial_steiner(2, 3, 7, 0).unwrap()
    }

    #[test]
    fn single_edge_in_nonempty_host() {
        let host = fano();
        let edge = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let c = contains_exact(&host, &edge, SearchBudget::unlimited()).unwrap();
        match c {
            Containment::Found { embedding, .. } => embedding.validate(&host).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fano_has_no_two_triples_on_a_pair() {
        let p = pattern(SunflowerShape::new(3, 2, 2).unwrap());
        assert!(contains_exact(&fano(), &p, SearchBudget::unlimited()).unwrap().is_absent());
        let p = pattern(SunflowerShape::new(3, 1, 3).unwrap());
        assert!(contains_exact(&fano(), &p, SearchBudget::unlimited()).unwrap().is_found());
    }

    #[test]
    fn star_in_complete_host_of_its_size() {
        let host = Hypergraph::new(3, 7, subsets_of_range(7, 3)).unwrap();
        let p = star_pattern(&StarShape::new(vec![2, 2]).unwrap());
        let c = contains_exact(&host, &p, SearchBudget::unlimited()).unwrap();
        assert!(c.is_found());
        let small = Hypergraph::new(3, 6, subsets_of_range(6, 3)).unwrap();
        assert!(contains_exact(&small, &p, SearchBudget::unlimited()).unwrap().is_absent());
    }

    #[test]
    fn isolated_pattern_vertices_are_placed() {
        let host = Hypergraph::new(2, 4, [[2, 3]]).unwrap();
        let p = Hypergraph::new(2, 4, [[1, 2]]).unwrap();
        let Containment::Found { embedding, .. } = contains_exact(&host, &p, SearchBudget::unlimited()).unwrap() else {
            panic!()
        };
        embedding.validate(&host).unwrap();
    }

    #[test]
    fn arity_mismatch_and_budget() {
        let host = fano();
        let p = Hypergraph::new(2, 2, [[0, 1]]).unwrap();
        assert!(contains_exact(&host, &p, SearchBudget::unlimited()).is_err());
        let p = pattern(SunflowerShape::new(3, 2, 2).unwrap());
        assert!(matches!(
            contains_exact(&host, &p, SearchBudget::nodes(3)).unwrap(),
            Containment::BudgetExhausted { .. }
        ));
    }

    #[test]
    fn embedding_count_of_triangle_in_k4() {
        let host = Hypergraph::new(2, 4, subsets_of_range(4, 2)).unwrap();
        let tri = Hypergraph::new(2, 3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        let mut count = 0;
        for_each_embedding(&host, &tri, SearchBudget::unlimited(), |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(count, 24);
    }
}
