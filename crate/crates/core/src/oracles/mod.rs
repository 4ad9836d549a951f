//! Exact oracles: containment, largest sunflowers, Turán numbers,
//! unavoidability and Erdős–Rado numbers, all under explicit search budgets.

mod budget;
mod cache;
mod clique;
mod contains;
mod erdos_rado;
mod sunflower;
mod turan;
mod unavoidable;

use thiserror::Error;

use crate::error::HypergraphError;

pub use budget::SearchBudget;
pub use contains::{contains_exact, for_each_embedding, Containment, SearchSummary};
pub use sunflower::{max_sunflower_exact, max_sunflower_until, SunflowerResult, SunflowerWitness};
pub use cache::{ex_cached, f_cached, Provenance, ResultCache, CACHE_DIR_ENV, CONFIG_ENV, CONFIG_KEY};
pub use erdos_rado::{erdos_rado_bounds, f_exact, ErdosRadoResult};
pub use turan::{ex_exact, ex_exact_dfs, TuranResult};
pub use unavoidable::{is_unavoidable, un_exact, UnResult, Unavoidability};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("host is {host}-uniform but the pattern is {pattern}-uniform")]
    Arity { host: usize, pattern: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("instance too large for exact search: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("cache: {0}")]
    Cache(String),
}
