//! Generators for the explicit extremal constructions.
//!
//! Every generator is a pure function of its parameters and seed, and checks
//! its own edge-count bound (and a freeness certificate where one is cheap)
//! before returning.

mod forcing;
mod patterns;
mod random;
mod steiner;
mod sunflower_free;

use thiserror::Error;

pub use forcing::{forcing_family, ForcingFamilyId, ForcingParams};
pub use patterns::{complete_multipartite, er_lower, pattern, sunflower_pattern, star_pattern};
pub use random::{random_graph_with_max_degree, random_hypergraph, random_linear_hypergraph};
pub use steiner::{greedy_steiner, linear_partial_lines, partial_steiner, partial_steiner_bound, LinearPlane};
pub use sunflower_free::{sf_free, sf_free_edge_bound, sf42_rounds, DEFAULT_RETRY_LIMIT};

use crate::shapes::SunflowerShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no construction for {0}")]
    UnsupportedShape(SunflowerShape),
    #[error("unknown construction `{0}`")]
    UnknownFamily(String),
    #[error("certificate failed after {attempts} attempt(s): {what}")]
    CertificateFailed { what: String, attempts: usize },
}

pub(crate) fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidParameters(msg.into())
}
