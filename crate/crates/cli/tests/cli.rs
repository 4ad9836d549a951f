use std::fs;
use std::process::{Command, Output};

fn unavoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unavoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lists_every_experiment() {
    let o = unavoid(&["experiments"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["construction-freeness", "cross-oracle", "level-sets", "kst-guarantee"] {
        assert!(text.contains(name), "{name} missing from\n{text}");
    }
}

#[test]
fn generate_then_find_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("host.hg");
    let host = host.to_str().unwrap();
    let o = unavoid(&["gen", "random", "--r", "3", "--n", "30", "--e", "480", "--seed", "5", "--out", host]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = unavoid(&["find", "--pattern", "sf:3,1,2", "--input", host]);
    assert!(o.status.success());
    let rep: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep["outcome"]["status"], "found");

    let o = unavoid(&["oracle", "contains", "--host", host, "--pattern", "sf:3,1,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).to_lowercase().contains("found"));
}

#[test]
fn sunflower_free_host_has_no_sunflower() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("free.hg");
    let host = host.to_str().unwrap();
    let o = unavoid(&["gen", "sf-free", "--r", "3", "--t", "1", "--k", "3", "--n", "10", "--out", host]);
    assert!(o.status.success());
    let o = unavoid(&["oracle", "sunflower", "--host", host, "--t", "1"]);
    let res: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(res["k"].as_u64().unwrap() < 3, "{res}");
}

#[test]
fn run_writes_a_report_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let certs = dir.path().join("certs");
    fs::write(
        &spec,
        format!(
            r#"{{"experiment":"erdos-rado","grid":{{"r":[1,2],"k":[3]}},"output":{{"certificates":{:?}}}}}"#,
            certs.to_str().unwrap()
        ),
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let csv = dir.path().join("report.csv");
    let o = unavoid(&[
        "run",
        "--spec",
        spec.to_str().unwrap(),
        "--workers",
        "2",
        "--out",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(csv.exists());
    let o = unavoid(&["verify", report.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("certificates verified"));
}

#[test]
fn failing_run_exits_non_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(&spec, r#"{"experiment":"level-sets","grid":{"n":[16],"k":[2],"t":[2]}}"#).unwrap();
    let o = unavoid(&["run", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn params_and_errors() {
    let o = unavoid(&["params", "--regime", "middle", "--n", "100", "--e", "250000"]);
    assert!(o.status.success());
    let rec: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["k"], 5);

    let o = unavoid(&["params", "--regime", "sparse", "--n", "10", "--e", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = unavoid(&["find", "--pattern", "nonsense", "--input", "-"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn erdos_rado_number() {
    let o = unavoid(&["oracle", "f", "--r", "2", "--k", "3"]);
    let res: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(res["lower"], 7);
    assert_eq!(res["upper"], 7);
}
