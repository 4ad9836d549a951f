use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::experiments::ExperimentId;
use super::{io_err, HarnessError};
use crate::finders::FinderConfig;
use crate::oracles::SearchBudget;

/// Parameter lists; the grid is their product. Axes an experiment does not
/// read are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub r: Vec<usize>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub t: Vec<usize>,
    pub e: Vec<usize>,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub report: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Directory receiving one certificate file per checked object.
    pub certificates: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub experiment: ExperimentId,
    #[serde(default)]
    pub grid: Grid,
    /// Finder constant overrides, applied to every point.
    #[serde(default)]
    pub constants: BTreeMap<String, f64>,
    /// Node limit for each oracle call; absent means unlimited.
    #[serde(default)]
    pub node_budget: Option<u64>,
    #[serde(default)]
    pub output: OutputPaths,
}

/// One grid point; `None` marks an axis the experiment does not read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
}

impl ExperimentSpec {
    pub fn new(experiment: ExperimentId) -> Self {
        ExperimentSpec {
            experiment,
            grid: Grid::default(),
            constants: BTreeMap::new(),
            node_budget: None,
            output: OutputPaths::default(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn finder_config(&self) -> Result<FinderConfig, HarnessError> {
        let mut cfg = FinderConfig::default();
        for (name, value) in &self.constants {
            cfg.set(name, &value.to_string()).map_err(HarnessError::InvalidSpec)?;
        }
        Ok(cfg)
    }

    pub fn budget(&self) -> SearchBudget {
        match self.node_budget {
            Some(n) => SearchBudget::nodes(n),
            None => SearchBudget::unlimited(),
        }
    }

    /// Grid points in seed-major order (seeds outermost, then r, n, k, t, e).
    pub fn points(&self) -> Vec<GridPoint> {
        let axes = self.experiment.axes();
        let g = &self.grid;
        // an unread axis contributes one `None`; an optional empty axis uses the default
        fn axis<T: Copy>(values: &[T], use_: super::experiments::Axis) -> Option<Vec<Option<T>>> {
            use super::experiments::Axis::*;
            match use_ {
                Unused => Some(vec![None]),
                Optional if values.is_empty() => Some(vec![None]),
                _ if values.is_empty() => None,
                _ => Some(values.iter().copied().map(Some).collect()),
            }
        }
        let (Some(seeds), Some(rs), Some(ns), Some(ks), Some(ts), Some(es)) = (
            axis(&g.seeds, axes.seeds),
            axis(&g.r, axes.r),
            axis(&g.n, axes.n),
            axis(&g.k, axes.k),
            axis(&g.t, axes.t),
            axis(&g.e, axes.e),
        ) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for &seed in &seeds {
            for &r in &rs {
                for &n in &ns {
                    for &k in &ks {
                        for &t in &ts {
                            for &e in &es {
                                out.push(GridPoint { seed, r, n, k, t, e });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
