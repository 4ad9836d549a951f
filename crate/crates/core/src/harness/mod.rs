//! Reproducible desk-scale experiments over the constructions, finders and
//! oracles, with JSON reports and re-checkable certificates.

mod certificate;
mod experiments;
mod params;
mod pattern;
mod report;
mod runner;
mod spec;
mod table;

use std::path::PathBuf;

use thiserror::Error;

pub use certificate::{load_certificate, Certificate};
pub use experiments::{golden_patterns, planted_disjoint_st4, ExperimentId};
pub use params::{derive_parameters, derive_parameters_with, ParameterRecord, Regime};
pub use pattern::{parse_pattern, PatternSpec};
pub use report::{PointRecord, PointStatus, Report, ReportBody, Summary, Timing};
pub use runner::{run_experiment, run_experiment_with_workers, verify_report_certificates};
pub use spec::{ExperimentSpec, Grid, GridPoint, OutputPaths};
pub use table::{turan_table, TuranCell, TuranTable};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error("invalid pattern `{0}`")]
    Pattern(String),
    #[error("({n}, {e}) lies outside {what}")]
    Regime { n: usize, e: f64, what: String },
    #[error(transparent)]
    Oracle(#[from] crate::oracles::OracleError),
    #[error(transparent)]
    Construction(#[from] crate::constructions::ConstructionError),
    #[error(transparent)]
    Hypergraph(#[from] crate::error::HypergraphError),
    #[error("worker pool: {0}")]
    Pool(String),
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> HarnessError {
    let path = path.into();
    move |source| HarnessError::Io { path, source }
}
