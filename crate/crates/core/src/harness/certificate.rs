use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{io_err, HarnessError};
use crate::embedding::{validate_disjoint, Embedding};
use crate::hypergraph::Hypergraph;
use crate::oracles::{contains_exact, max_sunflower_until, SearchBudget};

/// A self-contained claim that [`verify`](Certificate::verify) re-checks
/// from scratch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `host` has no sunflower with `k` petals and a kernel of size `t`
    /// (of any size below the uniformity when `t` is absent).
    SunflowerFree { host: Hypergraph, t: Option<usize>, k: usize },
    /// `host` contains no copy of `pattern`.
    PatternFree { host: Hypergraph, pattern: Hypergraph },
    /// Every two edges of `host` share at most one vertex.
    Linear { host: Hypergraph },
    /// Vertex-disjoint copies inside `host`.
    Copies { host: Hypergraph, copies: Vec<Embedding> },
    /// `a × b` is contained in the bipartite edge list.
    Biclique {
        edges: Vec<(usize, usize)>,
        a: Vec<usize>,
        b: Vec<usize>,
    },
    /// `blocks[0] × ... × blocks[r-1]` is contained in `tuples`.
    Product {
        tuples: Vec<Vec<usize>>,
        blocks: Vec<Vec<usize>>,
    },
}

impl Certificate {
    pub fn verify(&self) -> Result<(), String> {
        match self {
            Certificate::SunflowerFree { host, t, k } => {
                let kernels = match t {
                    Some(t) => *t..*t + 1,
                    None => 0..host.r(),
                };
                for t in kernels {
                    let res = max_sunflower_until(host, t, *k, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
                    if res.k >= *k {
                        return Err(format!("sunflower with {} petals and kernel size {t}", res.k));
                    }
                }
                Ok(())
            }
            Certificate::PatternFree { host, pattern } => {
                let c = contains_exact(host, pattern, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
                if c.is_absent() {
                    Ok(())
                } else {
                    Err("host contains the pattern".into())
                }
            }
            Certificate::Linear { host } => {
                let edges = host.edges();
                for (i, a) in edges.iter().enumerate() {
                    for b in &edges[i + 1..] {
                        let common = a.iter().filter(|v| b.contains(v)).count();
                        if common > 1 {
                            return Err(format!("{a:?} and {b:?} share {common} vertices"));
                        }
                    }
                }
                Ok(())
            }
            Certificate::Copies { host, copies } => validate_disjoint(copies, host).map_err(|e| e.to_string()),
            Certificate::Biclique { edges, a, b } => {
                let set: HashSet<(usize, usize)> = edges.iter().copied().collect();
                match a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).find(|p| !set.contains(p)) {
                    Some(p) => Err(format!("missing edge {p:?}")),
                    None => Ok(()),
                }
            }
            Certificate::Product { tuples, blocks } => {
                let set: HashSet<&[usize]> = tuples.iter().map(Vec::as_slice).collect();
                let mut idx = vec![0usize; blocks.len()];
                if blocks.iter().any(Vec::is_empty) {
                    return Err("empty block".into());
                }
                loop {
                    let tuple: Vec<usize> = idx.iter().zip(blocks).map(|(&i, b)| b[i]).collect();
                    if !set.contains(tuple.as_slice()) {
                        return Err(format!("missing tuple {tuple:?}"));
                    }
                    let mut pos = blocks.len();
                    loop {
                        if pos == 0 {
                            return Ok(());
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < blocks[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        }
    }

    pub(crate) fn write(&self, path: &Path) -> Result<(), HarnessError> {
        let text = serde_json::to_string(self).expect("certificates serialise");
        std::fs::write(path, text).map_err(io_err(path))
    }
}

/// Reads a certificate file and re-verifies it.
pub fn load_certificate(path: &Path) -> Result<Certificate, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let cert: Certificate = serde_json::from_str(&text).map_err(|e| HarnessError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    cert.verify().map_err(|message| HarnessError::Format {
        path: path.to_path_buf(),
        message,
    })?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_and_rejects() {
        let host = Hypergraph::new(2, 4, [[0, 1], [2, 3]]).unwrap();
        assert!(Certificate::Linear { host: host.clone() }.verify().is_ok());
        assert!(Certificate::SunflowerFree { host: host.clone(), t: Some(1), k: 2 }.verify().is_ok());
        assert!(Certificate::SunflowerFree { host, t: None, k: 2 }.verify().is_err());
        let prod = Certificate::Product {
            tuples: vec![vec![0, 1], vec![0, 2], vec![1, 1]],
            blocks: vec![vec![0], vec![1, 2]],
        };
        assert!(prod.verify().is_ok());
        let bad = Certificate::Product {
            tuples: vec![vec![0, 1], vec![0, 2], vec![1, 1]],
            blocks: vec![vec![0, 1], vec![1, 2]],
        };
        assert!(bad.verify().is_err());
        let bic = Certificate::Biclique {
            edges: vec![(0, 0), (0, 1), (1, 0)],
            a: vec![0, 1],
            b: vec![0],
        };
        assert!(bic.verify().is_ok());
    }
}
