use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use super::experiments::Ctx;
use super::report::{digest, PointRecord, PointStatus, Report, ReportBody, Summary, Timing};
use super::spec::ExperimentSpec;
use super::{io_err, HarnessError};
use crate::oracles::ResultCache;

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, HarnessError> {
    run_experiment_with_workers(spec, 1)
}

/// Runs every grid point, up to `workers` at a time, and assembles the
/// report in grid order. Outputs named in the spec are written before
/// returning.
pub fn run_experiment_with_workers(spec: &ExperimentSpec, workers: usize) -> Result<Report, HarnessError> {
    let started = Instant::now();
    let cfg = spec.finder_config()?;
    let points = spec.points();
    for (i, p) in points.iter().enumerate() {
        spec.experiment
            .validate(p)
            .map_err(|why| HarnessError::InvalidSpec(format!("{} point {i} {p:?}: {why}", spec.experiment)))?;
    }
    if let Some(dir) = &spec.output.certificates {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let ctx = Ctx {
        cfg: cfg.clone(),
        budget: spec.budget(),
        cache: ResultCache::from_env()?,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let results = pool.install(|| {
        points
            .par_iter()
            .map(|p| {
                let t0 = Instant::now();
                let res = spec.experiment.run(p, &ctx);
                (res, t0.elapsed().as_secs_f64() * 1e3)
            })
            .collect::<Vec<_>>()
    });
    let mut records = Vec::with_capacity(points.len());
    let mut point_ms = Vec::with_capacity(points.len());
    for (index, ((res, ms), inputs)) in results.into_iter().zip(&points).enumerate() {
        let res = res?;
        let mut certificates = Vec::new();
        if let Some(dir) = &spec.output.certificates {
            for (label, cert) in &res.certificates {
                let path = dir.join(certificate_name(index, label));
                cert.write(&path)?;
                certificates.push(path.display().to_string());
            }
        }
        records.push(PointRecord {
            index,
            inputs: *inputs,
            status: res.status,
            notes: res.notes,
            stats: res.stats,
            certificates,
        });
        point_ms.push(ms);
    }
    let count = |s: PointStatus| records.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        points: records.len(),
        pass: count(PointStatus::Pass),
        fail: count(PointStatus::Fail),
        inconclusive: count(PointStatus::Inconclusive),
    };
    let body = ReportBody {
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        spec: spec.clone(),
        finder_config: cfg,
        records,
        summary,
    };
    let report = Report {
        body_digest: digest(&body),
        body,
        timing: Timing {
            generated_unix_secs: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            workers: workers.max(1),
            total_ms: started.elapsed().as_secs_f64() * 1e3,
            point_ms,
        },
    };
    if let Some(path) = &spec.output.report {
        report.write_json(path)?;
    }
    if let Some(path) = &spec.output.csv {
        report.write_csv(path)?;
    }
    Ok(report)
}

fn certificate_name(index: usize, label: &str) -> String {
    let clean: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("p{index:05}-{clean}.json")
}

/// Loads every certificate a report references and re-verifies it.
pub fn verify_report_certificates(report: &Report) -> Result<usize, HarnessError> {
    let mut checked = 0;
    for rec in &report.body.records {
        for path in &rec.certificates {
            super::certificate::load_certificate(Path::new(path))?;
            checked += 1;
        }
    }
    Ok(checked)
}
