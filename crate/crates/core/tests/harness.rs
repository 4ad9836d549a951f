use std::fs;

use unavoid_core::harness::{
    load_certificate, run_experiment, run_experiment_with_workers, verify_report_certificates, Certificate,
    ExperimentId, ExperimentSpec, HarnessError, PointStatus, Report,
};
use unavoid_core::Hypergraph;

fn kst(seeds: u64) -> ExperimentSpec {
    let mut s = ExperimentSpec::new(ExperimentId::KstGuarantee);
    s.grid.seeds = (0..seeds).collect();
    s
}

#[test]
fn empty_required_axis_gives_an_empty_passing_report() {
    let s = ExperimentSpec::new(ExperimentId::Linearity);
    let r = run_experiment(&s).unwrap();
    assert_eq!(r.body.summary.points, 0);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn outputs_round_trip_and_certificates_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = ExperimentSpec::new(ExperimentId::ErdosRado);
    s.grid.r = vec![1, 2];
    s.grid.k = vec![3];
    s.output.report = Some(dir.path().join("report.json"));
    s.output.csv = Some(dir.path().join("report.csv"));
    s.output.certificates = Some(dir.path().join("certs"));
    let r = run_experiment(&s).unwrap();
    assert_eq!(r.body.summary.pass, 2);

    let back = Report::load(&dir.path().join("report.json")).unwrap();
    assert_eq!(back.body_json(), r.body_json());
    assert_eq!(back.body_digest, r.body_digest);

    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3, "header plus one row per point:\n{csv}");
    assert!(csv.lines().next().unwrap().starts_with("index,"));

    let listed: usize = r.body.records.iter().map(|p| p.certificates.len()).sum();
    assert!(listed > 0);
    assert_eq!(verify_report_certificates(&back).unwrap(), listed);
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // a triangle is not free of a two-edge star
    let host = Hypergraph::new(2, 3, [[0, 1], [0, 2], [1, 2]]).unwrap();
    let pattern = Hypergraph::new(2, 3, [[0, 1], [0, 2]]).unwrap();
    let cert = Certificate::PatternFree { host, pattern };
    assert!(cert.verify().is_err());
    fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    assert!(load_certificate(&path).is_err());
}

#[test]
fn worker_count_does_not_change_the_body() {
    let s = kst(24);
    let one = run_experiment_with_workers(&s, 1).unwrap();
    let three = run_experiment_with_workers(&s, 3).unwrap();
    assert_eq!(one.body_json(), three.body_json());
    assert_eq!(one.body_digest, three.body_digest);
    let indices: Vec<usize> = three.body.records.iter().map(|p| p.index).collect();
    assert_eq!(indices, (0..24).collect::<Vec<_>>());
}

#[test]
fn unknown_fields_and_out_of_range_points_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    fs::write(&path, r#"{"experiment":"linearity","grid":{"k":[2]},"colour":"red"}"#).unwrap();
    assert!(matches!(ExperimentSpec::load(&path), Err(HarnessError::Format { .. })));

    let mut s = ExperimentSpec::new(ExperimentId::Linearity);
    s.grid.k = vec![3];
    s.grid.n = vec![10];
    assert!(matches!(run_experiment(&s), Err(HarnessError::InvalidSpec(_))));
}

#[test]
fn unknown_constant_is_refused() {
    let mut s = kst(1);
    s.constants.insert("no_such_constant".into(), 1.0);
    assert!(run_experiment(&s).is_err());
}

#[test]
fn failing_points_set_the_exit_code() {
    // d = 2 at n = 16: two copies need 30 vertices
    let mut s = ExperimentSpec::new(ExperimentId::LevelSets);
    s.grid.n = vec![16];
    s.grid.k = vec![2];
    s.grid.t = vec![2];
    let r = run_experiment(&s).unwrap();
    assert_eq!(r.body.records[0].status, PointStatus::Fail);
    assert_ne!(r.exit_code(), 0);
}

#[test]
fn spec_file_loads_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    fs::write(
        &path,
        r#"{"experiment":"oracle-soundness","grid":{"n":[4,5],"seeds":[0,1,2]},"node_budget":100000}"#,
    )
    .unwrap();
    let s = ExperimentSpec::load(&path).unwrap();
    let r = run_experiment(&s).unwrap();
    assert_eq!(r.body.summary.points, 6);
    assert_eq!(r.body.summary.fail, 0);
}
