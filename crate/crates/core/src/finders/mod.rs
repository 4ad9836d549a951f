//! Search procedures transcribed from the extremal upper-bound arguments.
//!
//! Every finder returns explicit certificates or a report naming the phase
//! where its strategy ran out; an exhausted report never claims absence.

mod bound;
mod common;
mod config;
mod descent;
mod disjoint_st4;
mod graph2;
mod kst;
mod report;
mod st3;
mod st4;
mod sunflower;

use thiserror::Error;

use crate::error::HypergraphError;

pub use bound::unavoidable_edge_bound;
pub use config::{FinderConfig, FALLBACK_CONSTANT};
pub use disjoint_st4::{find_disjoint_st4, levels as disjoint_st4_levels};
pub use graph2::{disjoint_stars_graph, match_or_star, MatchOrStar};
pub use kst::{
    find_disjoint_4partite, kst_bipartite, kst_rpartite, kst_rpartite_with_last, Biclique, BipartiteOutcome,
    RpartiteOutcome,
};
pub use report::{ExpansionThreshold, FinderReport, FinderStats, Hypothesis, Outcome, PhaseCount};
pub use st3::{find_disjoint_st3_wellbehaved, find_st3};
pub use st4::find_st4;
pub use sunflower::{find_disjoint_sf3_bounded_codegree, find_sunflower};

#[derive(Debug, Error)]
pub enum FinderError {
    #[error("expected a {expected}-uniform host, got {found}-uniform")]
    Arity { expected: usize, found: usize },
    #[error("unsupported shape {0}")]
    UnsupportedShape(String),
    #[error("pair {pair:?} has codegree {codegree}, above the cap {cap}")]
    Codegree { pair: Vec<usize>, codegree: usize, cap: f64 },
    #[error("not a bipartite instance: {0}")]
    NotBipartite(String),
    #[error("tuple {index} has {found} coordinates, expected {expected}")]
    TupleArity { index: usize, expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

fn check_arity(g: &crate::hypergraph::Hypergraph, r: usize) -> Result<(), FinderError> {
    if g.r() != r {
        return Err(FinderError::Arity {
            expected: r,
            found: g.r(),
        });
    }
    Ok(())
}
