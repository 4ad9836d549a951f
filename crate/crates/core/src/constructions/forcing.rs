use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::steiner::{linear_partial_lines, partial_steiner, partial_steiner_bound};
use super::{invalid, ConstructionError};
use crate::hypergraph::Hypergraph;
use crate::util::{binomial, for_each_subset, isqrt};

/// The catalog of 4-graphs that force structure on unavoidable patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForcingFamilyId {
    Steiner34,
    FullStar,
    LinearBlowup,
    SplitPairs,
    PairedSet,
    BicliqueBlowup,
    TripleSide,
    DisjointCliques,
    SideSplit,
}

impl ForcingFamilyId {
    pub const ALL: [ForcingFamilyId; 9] = [
        ForcingFamilyId::Steiner34,
        ForcingFamilyId::FullStar,
        ForcingFamilyId::LinearBlowup,
        ForcingFamilyId::SplitPairs,
        ForcingFamilyId::PairedSet,
        ForcingFamilyId::BicliqueBlowup,
        ForcingFamilyId::TripleSide,
        ForcingFamilyId::DisjointCliques,
        ForcingFamilyId::SideSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ForcingFamilyId::Steiner34 => "steiner_34",
            ForcingFamilyId::FullStar => "full_star",
            ForcingFamilyId::LinearBlowup => "linear_blowup",
            ForcingFamilyId::SplitPairs => "split_pairs",
            ForcingFamilyId::PairedSet => "paired_set",
            ForcingFamilyId::BicliqueBlowup => "biclique_blowup",
            ForcingFamilyId::TripleSide => "triple_side",
            ForcingFamilyId::DisjointCliques => "disjoint_cliques",
            ForcingFamilyId::SideSplit => "side_split",
        }
    }
}

impl fmt::Display for ForcingFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ForcingFamilyId {
    type Err = ConstructionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ConstructionError::UnknownFamily(s.to_string()))
    }
}

/// Explicit size parameters; each family reads only the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ForcingParams {
    /// `k` for linear_blowup, paired_set and biclique_blowup.
    pub k: Option<usize>,
    /// `|V1|` for split_pairs, triple_side and side_split.
    pub v1: Option<usize>,
    /// Clique size for disjoint_cliques.
    pub t: Option<usize>,
    /// Uniformity for disjoint_cliques (default 4).
    pub r: Option<usize>,
    pub seed: u64,
}

fn need(p: Option<usize>, what: &str, id: ForcingFamilyId) -> Result<usize, ConstructionError> {
    p.ok_or_else(|| invalid(format!("{id} needs parameter `{what}`")))
}

/// Builds the named family and checks its edge count against the bound its
/// definition gives.
pub fn forcing_family(id: ForcingFamilyId, n: usize, params: &ForcingParams) -> Result<Hypergraph, ConstructionError> {
    use ForcingFamilyId::*;
    let (g, bound): (Hypergraph, f64) = match id {
        Steiner34 => {
            let g = partial_steiner(3, 4, n, params.seed)?;
            (g, partial_steiner_bound(3, 4, n))
        }
        FullStar => {
            if n < 4 {
                return Err(invalid("full_star needs n >= 4"));
            }
            let mut edges = Vec::new();
            let rest: Vec<usize> = (1..n).collect();
            for_each_subset(&rest, 3, |s| edges.push(vec![0, s[0], s[1], s[2]]));
            (Hypergraph::from_sorted_edges(4, n, edges), binomial(n - 1, 3) as f64)
        }
        LinearBlowup => {
            let k = need(params.k, "k", id)?;
            if k < 4 {
                return Err(invalid("linear_blowup needs k >= 4"));
            }
            let plane = linear_partial_lines(k, n)?;
            let mut edges = Vec::new();
            for e in plane.graph.edges() {
                for_each_subset(e, 4, |s| edges.push(s.to_vec()));
            }
            let g = Hypergraph::from_sorted_edges(4, n, edges);
            (g, (n * n) as f64 / (4 * k * k) as f64 * binomial(k, 4) as f64)
        }
        SplitPairs => {
            let v1 = need(params.v1, "v1", id)?;
            if v1 < 2 || v1 + 2 > n {
                return Err(invalid("split_pairs needs 2 <= |V1| <= n - 2"));
            }
            (
                pairs_times_pairs(n, &pairs_within(0, v1), v1),
                (binomial(v1, 2) * binomial(n - v1, 2)) as f64,
            )
        }
        PairedSet => {
            let k = need(params.k, "k", id)?;
            let s = 2 * k * k;
            if k == 0 || s + 2 > n {
                return Err(invalid("paired_set needs 2k^2 + 2 <= n"));
            }
            let pairs: Vec<(usize, usize)> = (0..k * k).map(|i| (2 * i, 2 * i + 1)).collect();
            (pairs_times_pairs(n, &pairs, s), (k * k) as f64 * binomial(n - s, 2) as f64)
        }
        BicliqueBlowup => {
            let k = need(params.k, "k", id)?;
            let s = isqrt(k);
            let width = 2 * k * s;
            if k == 0 || width + 2 > n {
                return Err(invalid("biclique_blowup needs 2k*floor(sqrt k) + 2 <= n"));
            }
            let mut pairs = Vec::new();
            for c in 0..k {
                let base = 2 * s * c;
                for a in 0..s {
                    for b in 0..s {
                        pairs.push((base + a, base + s + b));
                    }
                }
            }
            (
                pairs_times_pairs(n, &pairs, width),
                (k * s * s) as f64 * binomial(n - width, 2) as f64,
            )
        }
        TripleSide => {
            let v1 = need(params.v1, "v1", id)?;
            if v1 < 3 || v1 >= n {
                return Err(invalid("triple_side needs 3 <= |V1| < n"));
            }
            let mut edges = Vec::new();
            let side: Vec<usize> = (0..v1).collect();
            for_each_subset(&side, 3, |tri| {
                for w in v1..n {
                    edges.push(vec![tri[0], tri[1], tri[2], w]);
                }
            });
            (
                Hypergraph::from_sorted_edges(4, n, edges),
                (binomial(v1, 3) * (n - v1) as u128) as f64,
            )
        }
        DisjointCliques => {
            let t = need(params.t, "t", id)?;
            let r = params.r.unwrap_or(4);
            if r == 0 || t < r || t > n {
                return Err(invalid("disjoint_cliques needs r <= t <= n"));
            }
            let mut edges = Vec::new();
            for c in 0..n / t {
                let block: Vec<usize> = (c * t..(c + 1) * t).collect();
                for_each_subset(&block, r, |s| edges.push(s.to_vec()));
            }
            (
                Hypergraph::from_sorted_edges(r, n, edges),
                ((n / t) as u128 * binomial(t, r)) as f64,
            )
        }
        SideSplit => {
            let v1 = need(params.v1, "v1", id)?;
            if v1 < 1 || v1 + 3 > n {
                return Err(invalid("side_split needs 1 <= |V1| <= n - 3"));
            }
            let mut edges = Vec::new();
            let other: Vec<usize> = (v1..n).collect();
            for_each_subset(&other, 3, |tri| {
                for u in 0..v1 {
                    edges.push(vec![u, tri[0], tri[1], tri[2]]);
                }
            });
            (
                Hypergraph::from_sorted_edges(4, n, edges),
                (v1 as u128 * binomial(n - v1, 3)) as f64,
            )
        }
    };
    if (g.edge_count() as f64) < bound - 1e-9 {
        return Err(ConstructionError::CertificateFailed {
            what: format!("{id}: {} edges, below {bound:.3}", g.edge_count()),
            attempts: 1,
        });
    }
    Ok(g)
}

fn pairs_within(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in lo..hi {
        for b in a + 1..hi {
            out.push((a, b));
        }
    }
    out
}

/// Each listed pair joined with every pair of vertices from `outside..n`.
fn pairs_times_pairs(n: usize, pairs: &[(usize, usize)], outside: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for &(a, b) in pairs {
        for c in outside..n {
            for d in c + 1..n {
                edges.push(vec![a, b, c, d]);
            }
        }
    }
    Hypergraph::from_sorted_edges(4, n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with(f: impl FnOnce(&mut ForcingParams)) -> ForcingParams {
        let mut p = ForcingParams::default();
        f(&mut p);
        p
    }

    #[test]
    fn catalog_examples() {
        let g = forcing_family(ForcingFamilyId::FullStar, 8, &ForcingParams::default()).unwrap();
        assert_eq!(g.edge_count(), 35);
        assert!(g.edges().iter().all(|e| e[0] == 0));

        let g = forcing_family(ForcingFamilyId::DisjointCliques, 12, &with(|p| p.t = Some(6))).unwrap();
        assert_eq!(g.edge_count(), 30);
        assert!(g.edges().iter().all(|e| e[0] / 6 == e[3] / 6));

        let g = forcing_family(ForcingFamilyId::SplitPairs, 10, &with(|p| p.v1 = Some(4))).unwrap();
        assert_eq!(g.edge_count(), 90);
        assert!(g.edges().iter().all(|e| e.iter().filter(|&&v| v < 4).count() == 2));
    }

    #[test]
    fn sized_families() {
        let g = forcing_family(ForcingFamilyId::PairedSet, 12, &with(|p| p.k = Some(2))).unwrap();
        assert_eq!(g.edge_count(), 4 * 6);
        // s = 2: four copies of K_{2,2} on 16 vertices, each pair joined with the other 4
        let g = forcing_family(ForcingFamilyId::BicliqueBlowup, 20, &with(|p| p.k = Some(4))).unwrap();
        assert_eq!(g.edge_count(), 16 * 6);
        assert!(forcing_family(ForcingFamilyId::BicliqueBlowup, 14, &with(|p| p.k = Some(4))).is_err());
        let g = forcing_family(ForcingFamilyId::TripleSide, 9, &with(|p| p.v1 = Some(4))).unwrap();
        assert_eq!(g.edge_count(), 4 * 5);
        let g = forcing_family(ForcingFamilyId::SideSplit, 8, &with(|p| p.v1 = Some(2))).unwrap();
        assert_eq!(g.edge_count(), 2 * 20);
        let g = forcing_family(ForcingFamilyId::LinearBlowup, 40, &with(|p| p.k = Some(4))).unwrap();
        let plane = linear_partial_lines(4, 40).unwrap();
        assert_eq!(g.edge_count(), plane.p * plane.p);
    }

    #[test]
    fn names_round_trip() {
        for id in ForcingFamilyId::ALL {
            assert_eq!(id.name().parse::<ForcingFamilyId>().unwrap(), id);
        }
        assert!("nope".parse::<ForcingFamilyId>().is_err());
        assert!(forcing_family(ForcingFamilyId::SplitPairs, 10, &ForcingParams::default()).is_err());
    }
}
