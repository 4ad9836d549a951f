use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{io_err, HarnessError};
use crate::format::serialize;
use crate::hypergraph::Hypergraph;
use crate::oracles::{ex_cached, ex_exact_dfs, OracleError, ResultCache, SearchBudget};
use crate::util::binomial;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranCell {
    pub pattern: String,
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    /// Set when the cell is an interval rather than a value.
    pub flagged: bool,
    pub note: Option<String>,
    /// Archived witness in the `.hg` format.
    pub witness: Option<String>,
    /// Agreement with the direct solver, when cross-checking.
    pub direct_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranTable {
    pub r: usize,
    pub n_max: usize,
    pub cells: Vec<TuranCell>,
}

/// `ex(n, H)` for `r <= n <= n_max` and each pattern, pattern by pattern.
pub fn turan_table(
    r: usize,
    n_max: usize,
    patterns: &[(String, Hypergraph)],
    budget: SearchBudget,
    cache: Option<&ResultCache>,
    cross_check: bool,
    witness_dir: Option<&Path>,
) -> Result<TuranTable, HarnessError> {
    if let Some((name, p)) = patterns.iter().find(|(_, p)| p.r() != r) {
        return Err(HarnessError::InvalidSpec(format!("{name} is {}-uniform, table is {r}-uniform", p.r())));
    }
    if let Some(dir) = witness_dir {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let mut cells = Vec::new();
    for (name, p) in patterns {
        for n in r.max(1)..=n_max {
            let mut cell = TuranCell {
                pattern: name.clone(),
                n,
                lower: 0,
                upper: binomial(n, r).min(usize::MAX as u128) as usize,
                flagged: true,
                note: None,
                witness: None,
                direct_agrees: None,
            };
            let res = match ex_cached(cache, n, p, budget) {
                Ok((res, _)) => res,
                Err(OracleError::TooLarge(why)) => {
                    cell.note = Some(format!("too large: {why}"));
                    cells.push(cell);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            cell.lower = res.lower;
            cell.upper = res.upper;
            cell.flagged = !res.is_exact();
            if cell.flagged {
                cell.note = Some("search budget exhausted".into());
            }
            if cross_check {
                let direct = ex_exact_dfs(n, p, budget)?;
                cell.direct_agrees = match (res.value(), direct.value()) {
                    (Some(a), Some(b)) => Some(a == b),
                    _ => None,
                };
            }
            if let Some(dir) = witness_dir {
                let clean: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
                let path = dir.join(format!("{clean}-n{n}.hg"));
                std::fs::write(&path, serialize(&res.witness)).map_err(io_err(&path))?;
                cell.witness = Some(path.display().to_string());
            }
            cells.push(cell);
        }
    }
    Ok(TuranTable { r, n_max, cells })
}

impl TuranTable {
    pub fn write_json(&self, path: &Path) -> Result<(), HarnessError> {
        let text = serde_json::to_string_pretty(self).expect("table serialises");
        std::fs::write(path, text + "\n").map_err(io_err(path))
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), HarnessError> {
        let format = |e: csv::Error| HarnessError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_path(path).map_err(format)?;
        for c in &self.cells {
            w.serialize(c).map_err(format)?;
        }
        w.flush().map_err(io_err(path))
    }

    /// The column of one pattern, indexed by n.
    pub fn column(&self, pattern: &str) -> Vec<&TuranCell> {
        self.cells.iter().filter(|c| c.pattern == pattern).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sunflower_pattern;
    use crate::shapes::SunflowerShape;

    #[test]
    fn star_column_matches_degree_cap() {
        for k in 2..=3 {
            let star = sunflower_pattern(SunflowerShape { r: 2, t: 1, k });
            let t = turan_table(2, 7, &[("S".into(), star)], SearchBudget::unlimited(), None, false, None).unwrap();
            for c in t.column("S") {
                assert!(!c.flagged);
                assert_eq!(c.lower, (c.n * (k - 1) / 2).min(c.n * (c.n - 1) / 2), "n={} k={k}", c.n);
            }
        }
    }

    #[test]
    fn single_edge_column_is_zero() {
        let edge = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let t = turan_table(3, 6, &[("edge".into(), edge)], SearchBudget::unlimited(), None, true, None).unwrap();
        assert!(t.cells.iter().all(|c| c.lower == 0 && c.upper == 0 && c.direct_agrees == Some(true)));
    }
}
