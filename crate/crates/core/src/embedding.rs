//! Copy certificates: injective maps from a pattern into a host.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("pattern is {pattern}-uniform but the host is {host}-uniform")]
    Arity { pattern: usize, host: usize },
    #[error("map has {found} entries for a pattern on {expected} vertices")]
    MapLength { expected: usize, found: usize },
    #[error("pattern vertex {vertex} maps to {image}, outside the host")]
    OutOfRange { vertex: usize, image: usize },
    #[error("host vertex {0} is hit twice")]
    NotInjective(usize),
    #[error("pattern edge {edge:?} maps to {image:?}, which is not a host edge")]
    MissingEdge { edge: Vec<usize>, image: Vec<usize> },
    #[error("copies {a} and {b} share host vertex {vertex}")]
    Overlap { a: usize, b: usize, vertex: usize },
}

/// A pattern together with `vertex_map[p] = host vertex of pattern vertex p`.
/// The host is not stored; certificates are checked against it by [`validate`](Self::validate).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: Hypergraph,
    pub vertex_map: Vec<usize>,
}

impl Embedding {
    pub fn new(pattern: Hypergraph, vertex_map: Vec<usize>) -> Self {
        Embedding { pattern, vertex_map }
    }

    pub fn validate(&self, host: &Hypergraph) -> Result<(), EmbeddingError> {
        if self.pattern.r() != host.r() {
            return Err(EmbeddingError::Arity {
                pattern: self.pattern.r(),
                host: host.r(),
            });
        }
        if self.vertex_map.len() != self.pattern.n() {
            return Err(EmbeddingError::MapLength {
                expected: self.pattern.n(),
                found: self.vertex_map.len(),
            });
        }
        let mut seen = vec![false; host.n()];
        for (vertex, &image) in self.vertex_map.iter().enumerate() {
            if image >= host.n() {
                return Err(EmbeddingError::OutOfRange { vertex, image });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(EmbeddingError::NotInjective(image));
            }
        }
        for e in self.pattern.edges() {
            let image = self.image_of(e);
            if !host.contains_edge(&image) {
                return Err(EmbeddingError::MissingEdge {
                    edge: e.clone(),
                    image,
                });
            }
        }
        Ok(())
    }

    /// Sorted image of a pattern vertex set.
    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut m: Vec<usize> = set.iter().map(|&v| self.vertex_map[v]).collect();
        m.sort_unstable();
        m
    }

    /// Host images of all pattern edges.
    pub fn image_edges(&self) -> Vec<Vec<usize>> {
        self.pattern.edges().iter().map(|e| self.image_of(e)).collect()
    }
}

/// Validates each embedding and checks that no two share a host vertex.
pub fn validate_disjoint(copies: &[Embedding], host: &Hypergraph) -> Result<(), EmbeddingError> {
    let mut owner: Vec<Option<usize>> = vec![None; host.n()];
    for (i, c) in copies.iter().enumerate() {
        c.validate(host)?;
        for &v in &c.vertex_map {
            if let Some(a) = owner[v] {
                return Err(EmbeddingError::Overlap { a, b: i, vertex: v });
            }
            owner[v] = Some(i);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_each_failure() {
        let host = Hypergraph::new(2, 4, [[0, 1], [1, 2]]).unwrap();
        let path = Hypergraph::new(2, 3, [[0, 1], [1, 2]]).unwrap();
        assert!(Embedding::new(path.clone(), vec![0, 1, 2]).validate(&host).is_ok());
        assert!(Embedding::new(path.clone(), vec![2, 1, 0]).validate(&host).is_ok());
        assert!(matches!(
            Embedding::new(path.clone(), vec![0, 1, 3]).validate(&host),
            Err(EmbeddingError::MissingEdge { .. })
        ));
        assert!(matches!(
            Embedding::new(path.clone(), vec![0, 1, 1]).validate(&host),
            Err(EmbeddingError::NotInjective(1))
        ));
        assert!(matches!(
            Embedding::new(path.clone(), vec![0, 1, 9]).validate(&host),
            Err(EmbeddingError::OutOfRange { .. })
        ));
        assert!(matches!(
            Embedding::new(path, vec![0, 1]).validate(&host),
            Err(EmbeddingError::MapLength { .. })
        ));
    }

    #[test]
    fn overlapping_copies_are_rejected() {
        let host = Hypergraph::new(2, 4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        let edge = Hypergraph::new(2, 2, [[0, 1]]).unwrap();
        let a = Embedding::new(edge.clone(), vec![0, 1]);
        let b = Embedding::new(edge.clone(), vec![2, 3]);
        let c = Embedding::new(edge, vec![1, 2]);
        assert!(validate_disjoint(&[a.clone(), b], &host).is_ok());
        assert!(matches!(
            validate_disjoint(&[a, c], &host),
            Err(EmbeddingError::Overlap { vertex: 1, .. })
        ));
    }
}
