//! Exact Erdős–Rado numbers `f_r(k)`: the least m such that every family of
//! m distinct r-sets contains a sunflower with k petals.
//!
//! Sunflower-free families are grown one set at a time and kept up to
//! isomorphism. A family of m sets lives on at most r·m points after
//! relabelling, and every sunflower-free family of size m+1 contains one of
//! size m, so the first empty level m gives `f_r(k) = m`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::budget::SearchBudget;
use super::sunflower::max_sunflower_until;
use super::unavoidable::extensions;
use super::OracleError;
use crate::canon::{canonical_form, CanonicalForm};
use crate::error::HypergraphError;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErdosRadoResult {
    pub r: usize,
    pub k: usize,
    pub lower: usize,
    pub upper: usize,
    /// A largest sunflower-free family found; it has `lower - 1` sets
    /// whenever the search completed.
    pub witness: Hypergraph,
    /// Isomorphism classes of sunflower-free families, per size.
    pub classes: Vec<usize>,
    pub nodes: u64,
}

impl ErdosRadoResult {
    pub fn value(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// `(k-1)^r` and `(k-1)^r r! + 1`.
pub fn erdos_rado_bounds(r: usize, k: usize) -> (u128, u128) {
    let base = (k as u128 - 1).pow(r as u32);
    let fact: u128 = (1..=r as u128).product();
    (base, base * fact + 1)
}

pub(crate) fn has_sunflower(g: &Hypergraph, k: usize) -> Result<bool, OracleError> {
    for t in 0..g.r() {
        if max_sunflower_until(g, t, k, SearchBudget::unlimited())?.k >= k {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn f_exact(r: usize, k: usize, budget: SearchBudget) -> Result<ErdosRadoResult, OracleError> {
    if r == 0 || k == 0 {
        return Err(OracleError::InvalidArgument("r and k must be positive".into()));
    }
    let (lo_bound, hi_bound) = erdos_rado_bounds(r, k);
    let upper_cap = usize::try_from(hi_bound).unwrap_or(usize::MAX);
    if k == 1 {
        // a single set is a one-petal sunflower
        return Ok(ErdosRadoResult {
            r,
            k,
            lower: 1,
            upper: 1,
            witness: Hypergraph::empty(r, 0),
            classes: vec![1],
            nodes: 0,
        });
    }
    let mut meter = budget.meter();
    let first = Hypergraph::new(r, r, [(0..r).collect::<Vec<_>>()])?;
    let mut level = vec![first];
    let mut classes = vec![1, 1];
    let mut exhausted = false;
    'grow: loop {
        let m = level[0].edge_count();
        let mut next: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
        for fam in &level {
            for ext in extensions(fam, r * (m + 1)) {
                if meter.tick() {
                    exhausted = true;
                    break 'grow;
                }
                if has_sunflower(&ext, k)? {
                    continue;
                }
                match canonical_form(&ext) {
                    Ok(key) => {
                        next.insert(key, ());
                    }
                    Err(HypergraphError::CanonicalTooLarge { .. } | HypergraphError::CanonicalBudget(_)) => {
                        exhausted = true;
                        break 'grow;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        if next.is_empty() {
            break;
        }
        classes.push(next.len());
        level = next.into_keys().map(|key| key.decode()).collect();
    }
    let largest = level[0].edge_count();
    let (lower, upper) = if exhausted {
        // a product family of (k-1)^r sets has no k-petal sunflower
        let floor = usize::try_from(lo_bound + 1).unwrap_or(usize::MAX);
        ((largest + 1).max(floor), upper_cap)
    } else {
        (largest + 1, largest + 1)
    };
    if !exhausted && !(lo_bound <= lower as u128 && lower as u128 <= hi_bound) {
        return Err(OracleError::InvalidArgument(format!(
            "f_{r}({k}) = {lower} violates the Erdős–Rado bounds [{lo_bound}, {hi_bound}]"
        )));
    }
    Ok(ErdosRadoResult {
        r,
        k,
        lower,
        upper,
        witness: level[0].clone(),
        classes,
        nodes: meter.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons() {
        for k in 1..=6 {
            assert_eq!(f_exact(1, k, SearchBudget::unlimited()).unwrap().value(), Some(k));
        }
    }

    #[test]
    fn two_sets_always_bloom() {
        assert_eq!(f_exact(2, 2, SearchBudget::unlimited()).unwrap().value(), Some(2));
        assert_eq!(f_exact(3, 2, SearchBudget::unlimited()).unwrap().value(), Some(2));
    }

    #[test]
    fn graphs_without_three_petals() {
        let res = f_exact(2, 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(res.value(), Some(7));
        assert_eq!(res.witness.edge_count(), 6);
        assert!(!has_sunflower(&res.witness, 3).unwrap());
    }

    #[test]
    fn budget_interval() {
        let res = f_exact(2, 3, SearchBudget::nodes(3)).unwrap();
        assert!(res.lower <= 7 && res.upper >= 7);
        assert!(res.value().is_none());
    }
}
