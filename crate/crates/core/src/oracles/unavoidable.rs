//! (n, e)-unavoidability and the largest unavoidable pattern.
//!
//! A pattern H is (n, e)-unavoidable when every r-graph on n vertices with
//! e edges contains it, i.e. when `ex(n, H) < e`. Patterns are compared with
//! their isolated vertices stripped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::budget::SearchBudget;
use super::contains::contains_exact;
use super::turan::{free_graph_with_edges, Decision};
use super::OracleError;
use crate::canon::{canonical_form, CanonicalForm, CANONICAL_VERTEX_LIMIT};
use crate::hypergraph::Hypergraph;
use crate::util::{binomial, for_each_subset};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Unavoidability {
    Yes { nodes: u64 },
    /// An H-free host with exactly e edges.
    No { witness: Hypergraph, nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl Unavoidability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Unavoidability::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Unavoidability::No { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Unavoidability::Yes { nodes } | Unavoidability::No { nodes, .. } | Unavoidability::BudgetExhausted { nodes } => {
                *nodes
            }
        }
    }
}

fn check_edges(r: usize, n: usize, e: usize) -> Result<(), OracleError> {
    if e == 0 || e as u128 > binomial(n, r) {
        return Err(OracleError::InvalidArgument(format!(
            "edge count {e} outside 1..=C({n},{r})"
        )));
    }
    Ok(())
}

pub fn is_unavoidable(pattern: &Hypergraph, n: usize, e: usize, budget: SearchBudget) -> Result<Unavoidability, OracleError> {
    check_edges(pattern.r(), n, e)?;
    let mut meter = budget.meter();
    let decision = free_graph_with_edges(n, pattern, e, &mut meter)?;
    Ok(match decision {
        Decision::Exists(witness) => Unavoidability::No {
            witness,
            nodes: meter.nodes,
        },
        Decision::None => Unavoidability::Yes { nodes: meter.nodes },
        Decision::Unknown => Unavoidability::BudgetExhausted { nodes: meter.nodes },
    })
}

/// `un_r(n, e)` restricted to patterns on at most `max_pattern_vertices`
/// non-isolated vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnResult {
    /// Largest edge count of a pattern certified unavoidable.
    pub value: usize,
    pub witness: Hypergraph,
    /// Some candidate could not be decided; `value` is then a lower bound.
    pub exhausted: bool,
    pub patterns_checked: usize,
    pub nodes: u64,
}

/// Orderly search over patterns by edge count. Unavoidability is inherited
/// by subgraphs, so every unavoidable (q+1)-edge pattern extends some
/// unavoidable q-edge pattern; only those are extended. Hosts found to block
/// one candidate are tried first against the next ones.
pub fn un_exact(
    r: usize,
    n: usize,
    e: usize,
    max_pattern_vertices: usize,
    budget: SearchBudget,
) -> Result<UnResult, OracleError> {
    if r == 0 {
        return Err(OracleError::InvalidArgument("uniformity must be positive".into()));
    }
    check_edges(r, n, e)?;
    let vlimit = max_pattern_vertices.min(n).min(CANONICAL_VERTEX_LIMIT);
    if vlimit < r {
        return Err(OracleError::InvalidArgument(format!(
            "patterns need at least {r} vertices, limit is {vlimit}"
        )));
    }
    let mut meter = budget.meter();
    let mut blockers: Vec<Hypergraph> = Vec::new();
    let single = Hypergraph::new(r, r, [(0..r).collect::<Vec<_>>()])?;
    let mut level = vec![single.clone()];
    let mut best = single;
    let mut value = 1;
    let mut exhausted = false;
    let mut checked = 1;
    loop {
        let mut next: BTreeMap<CanonicalForm, Hypergraph> = BTreeMap::new();
        for p in &level {
            for q in extensions(p, vlimit) {
                let key = canonical_form(&q)?;
                next.entry(key).or_insert(q);
            }
        }
        let mut survivors = Vec::new();
        for (key, cand) in next {
            checked += 1;
            if blocked(&blockers, &cand) {
                continue;
            }
            let sub = SearchBudget {
                node_limit: budget.node_limit.map(|l| l.saturating_sub(meter.nodes)),
                time_limit: None,
            };
            if sub.node_limit == Some(0) {
                exhausted = true;
                break;
            }
            match is_unavoidable(&cand, n, e, sub)? {
                Unavoidability::Yes { nodes } => {
                    meter.nodes += nodes;
                    survivors.push((key, cand));
                }
                Unavoidability::No { witness, nodes } => {
                    meter.nodes += nodes;
                    blockers.push(witness);
                }
                Unavoidability::BudgetExhausted { nodes } => {
                    meter.nodes += nodes;
                    exhausted = true;
                }
            }
        }
        if survivors.is_empty() || exhausted {
            if let Some((_, p)) = survivors.into_iter().next() {
                value += 1;
                best = p;
            }
            break;
        }
        value += 1;
        best = survivors[0].1.clone();
        level = survivors.into_iter().map(|(_, p)| p).collect();
    }
    Ok(UnResult {
        value,
        witness: best,
        exhausted,
        patterns_checked: checked,
        nodes: meter.nodes,
    })
}

fn blocked(hosts: &[Hypergraph], pattern: &Hypergraph) -> bool {
    hosts
        .iter()
        .any(|h| contains_exact(h, pattern, SearchBudget::unlimited()).is_ok_and(|c| c.is_absent()))
}

/// All patterns obtained by adding one new edge, using existing vertices
/// and fresh ones labelled from `p.n()` upwards.
pub(crate) fn extensions(p: &Hypergraph, vertex_limit: usize) -> Vec<Hypergraph> {
    let r = p.r();
    let v = p.n();
    let existing: Vec<usize> = (0..v).collect();
    let mut out = Vec::new();
    for fresh in 0..=r {
        if v + fresh > vertex_limit || r - fresh > v {
            continue;
        }
        for_each_subset(&existing, r - fresh, |old| {
            let mut edge = old.to_vec();
            edge.extend(v..v + fresh);
            if p.contains_edge(&edge) {
                return;
            }
            let mut edges = p.edges().to_vec();
            edges.push(edge);
            out.push(Hypergraph::from_sorted_edges(r, v + fresh, edges));
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sunflower_pattern;
    use crate::shapes::SunflowerShape;
    use crate::util::subsets_of_range;

    #[test]
    fn single_edge_always_unavoidable() {
        let edge = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert!(is_unavoidable(&edge, 6, 1, SearchBudget::unlimited()).unwrap().is_yes());
        assert!(is_unavoidable(&edge, 6, 0, SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn linear_threshold_on_seven_points() {
        let p = sunflower_pattern(SunflowerShape::new(3, 2, 2).unwrap());
        assert!(is_unavoidable(&p, 7, 8, SearchBudget::unlimited()).unwrap().is_yes());
        match is_unavoidable(&p, 7, 7, SearchBudget::unlimited()).unwrap() {
            Unavoidability::No { witness, .. } => {
                assert_eq!(witness.edge_count(), 7);
                assert!(contains_exact(&witness, &p, SearchBudget::unlimited()).unwrap().is_absent());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_un_values() {
        assert_eq!(un_exact(2, 5, 1, 10, SearchBudget::unlimited()).unwrap().value, 1);
        let full = un_exact(3, 5, 10, 5, SearchBudget::unlimited()).unwrap();
        assert_eq!(full.value, 10);
        assert!(!full.exhausted);
    }

    /// Every graph on 5 vertices with e edges against every pattern.
    fn brute_un(n: usize, e: usize) -> usize {
        let pairs = subsets_of_range(n, 2);
        let mut hosts = Vec::new();
        for_each_subset(&(0..pairs.len()).collect::<Vec<_>>(), e, |s| {
            hosts.push(Hypergraph::new(2, n, s.iter().map(|&i| pairs[i].clone())).unwrap());
        });
        let mut best = 0;
        for q in 1..=e {
            for_each_subset(&(0..pairs.len()).collect::<Vec<_>>(), q, |s| {
                let pat = Hypergraph::new(2, n, s.iter().map(|&i| pairs[i].clone())).unwrap();
                if hosts
                    .iter()
                    .all(|h| contains_exact(h, &pat, SearchBudget::unlimited()).unwrap().is_found())
                {
                    best = best.max(q);
                }
            });
        }
        best
    }

    #[test]
    fn graph_table_matches_double_enumeration() {
        for e in 1..=6 {
            let un = un_exact(2, 5, e, 5, SearchBudget::unlimited()).unwrap();
            assert_eq!(un.value, brute_un(5, e), "e={e}");
        }
    }
}
