//! Extremal hypergraph toolkit: constructions, proof-derived finders and
//! exact oracles for sunflowers, generalised stars and unavoidable patterns.

pub mod canon;
pub mod constructions;
pub mod embedding;
pub mod error;
pub mod finders;
pub mod format;
pub mod harness;
pub mod hypergraph;
pub mod oracles;
pub mod shapes;
pub mod util;

pub use canon::{canonical_form, CanonicalForm};
pub use embedding::{Embedding, EmbeddingError};
pub use error::{HypergraphError, ParseError};
pub use format::{parse, serialize};
pub use hypergraph::{Hypergraph, Level, LevelSetPartition};
pub use shapes::{Shape, ShapeError, StarShape, SunflowerShape};
