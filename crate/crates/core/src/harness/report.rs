use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::spec::{ExperimentSpec, GridPoint};
use super::{io_err, HarnessError};
use crate::finders::FinderConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    #[default]
    Pass,
    Fail,
    /// A search budget ran out before the expectation could be decided.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub index: usize,
    pub inputs: GridPoint,
    pub status: PointStatus,
    pub notes: Vec<String>,
    pub stats: BTreeMap<String, Value>,
    /// Certificate files, when a certificate directory was given.
    pub certificates: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub points: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

/// Everything that must reproduce byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBody {
    pub toolkit_version: String,
    pub spec: ExperimentSpec,
    pub finder_config: FinderConfig,
    pub records: Vec<PointRecord>,
    pub summary: Summary,
}

/// Wall-clock data, kept out of the digest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub generated_unix_secs: u64,
    pub workers: usize,
    pub total_ms: f64,
    pub point_ms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub body: ReportBody,
    /// FNV-1a of the compact JSON of `body`.
    pub body_digest: String,
    pub timing: Timing,
}

pub(crate) fn digest(body: &ReportBody) -> String {
    let text = serde_json::to_string(body).expect("report body serialises");
    let h = text
        .bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    format!("{h:016x}")
}

#[derive(Serialize)]
struct CsvRow<'a> {
    index: usize,
    seed: Option<u64>,
    r: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    t: Option<usize>,
    e: Option<usize>,
    status: &'a str,
    notes: String,
}

impl Report {
    /// 0 exactly when no point failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.body.summary.fail > 0)
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string(&self.body).expect("report body serialises")
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn write_json(&self, path: &Path) -> Result<(), HarnessError> {
        let text = serde_json::to_string_pretty(self).expect("report serialises");
        std::fs::write(path, text + "\n").map_err(io_err(path))
    }

    /// One row per point; statistics and certificates are left out.
    pub fn write_csv(&self, path: &Path) -> Result<(), HarnessError> {
        let format = |e: csv::Error| HarnessError::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let mut w = csv::Writer::from_path(path).map_err(format)?;
        for rec in &self.body.records {
            let p = rec.inputs;
            let status = match rec.status {
                PointStatus::Pass => "pass",
                PointStatus::Fail => "fail",
                PointStatus::Inconclusive => "inconclusive",
            };
            w.serialize(CsvRow {
                index: rec.index,
                seed: p.seed,
                r: p.r,
                n: p.n,
                k: p.k,
                t: p.t,
                e: p.e,
                status,
                notes: rec.notes.join("; "),
            })
            .map_err(format)?;
        }
        w.flush().map_err(io_err(path))
    }
}
