use thiserror::Error;

/// Errors raised while building or querying a [`Hypergraph`](crate::Hypergraph).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 1")]
    ZeroUniformity,
    #[error("edge {index} has {found} vertices, expected {expected}")]
    WrongArity {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {index} uses vertex {vertex}, but the vertex set is 0..{n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("set size {size} outside the allowed range {min}..={max}")]
    SetSize { size: usize, min: usize, max: usize },
    #[error("query set contains vertex {vertex} outside 0..{n}")]
    QueryOutOfRange { vertex: usize, n: usize },
    #[error("query set repeats vertex {0}")]
    QueryRepeated(usize),
    #[error("level thresholds must satisfy L2 >= L3 >= L4 >= 0 (got {l2}, {l3}, {l4})")]
    UnorderedThresholds { l2: f64, l3: f64, l4: f64 },
    #[error("canonical form is limited to {limit} vertices (got {n})")]
    CanonicalTooLarge { n: usize, limit: usize },
    #[error("canonical form search exceeded its node budget of {0}")]
    CanonicalBudget(u64),
}

/// Errors raised by the `.hg` text parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {cause}")]
    Malformed { line: usize, cause: String },
    #[error("missing header line `r=<int> n=<int>`")]
    MissingHeader,
}

impl ParseError {
    pub(crate) fn at(line: usize, cause: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            cause: cause.into(),
        }
    }
}
