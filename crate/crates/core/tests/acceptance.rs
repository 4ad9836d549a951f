//! The ten acceptance criteria at desk scale. Runs as a plain binary so the
//! PASS/FAIL lines are always printed:
//!
//!     cargo test -p unavoid-core --test acceptance
//!
//! Criteria whose parameters cannot be realised are reported as FAIL with
//! the reason; the process only exits non-zero when a realisable check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use unavoid_core::constructions::{er_lower, linear_partial_lines};
use unavoid_core::harness::{run_experiment_with_workers, ExperimentId, ExperimentSpec, PointStatus, Report};
use unavoid_core::oracles::{f_exact, SearchBudget};
use unavoid_core::Hypergraph;

struct Verdict {
    pass: bool,
    /// A failure that is expected because the criterion cannot be met.
    tolerated: bool,
    detail: String,
    elapsed: Duration,
}

fn spec(exp: ExperimentId, edit: impl FnOnce(&mut ExperimentSpec)) -> ExperimentSpec {
    let mut s = ExperimentSpec::new(exp);
    edit(&mut s);
    s
}

fn run(s: &ExperimentSpec) -> Report {
    run_experiment_with_workers(s, 4).unwrap_or_else(|e| panic!("{}: {e}", s.experiment))
}

fn failures(r: &Report) -> Vec<String> {
    r.body
        .records
        .iter()
        .filter(|p| p.status != PointStatus::Pass)
        .map(|p| format!("{:?} {:?}: {}", p.inputs, p.status, p.notes.join("; ")))
        .collect()
}

/// Every point of every report passes, and nothing took longer than `limit`.
fn all_pass(reports: &[Report], expect_points: usize, limit: Duration, started: Instant) -> Verdict {
    let points: usize = reports.iter().map(|r| r.body.summary.points).sum();
    let bad: Vec<String> = reports.iter().flat_map(failures).collect();
    let elapsed = started.elapsed();
    let mut why = Vec::new();
    if points != expect_points {
        why.push(format!("{points} points, expected {expect_points}"));
    }
    if !bad.is_empty() {
        why.push(format!("{} not passing, first: {}", bad.len(), bad[0]));
    }
    if elapsed > limit {
        why.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    Verdict {
        pass: why.is_empty(),
        tolerated: false,
        detail: if why.is_empty() {
            format!("{points} points")
        } else {
            why.join("; ")
        },
        elapsed,
    }
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn ac1() -> Verdict {
    let t0 = Instant::now();
    let reports: Vec<Report> = [2usize, 3]
        .iter()
        .map(|&k| {
            run(&spec(ExperimentId::ConstructionFreeness, |s| {
                s.grid.k = vec![k];
                s.grid.n = (2 * k..=14).collect();
            }))
        })
        .collect();
    let mut v = all_pass(&reports, 11 + 9, minutes(5), t0);
    let skipped = reports
        .iter()
        .flat_map(|r| &r.body.records)
        .flat_map(|p| p.stats.values())
        .filter(|s| s.get("skipped").is_some())
        .count();
    v.detail += &format!(", {skipped} shape cells outside the construction's range");
    v
}

fn ac2() -> Verdict {
    let t0 = Instant::now();
    let reports: Vec<Report> = (2usize..=5)
        .map(|k| {
            run(&spec(ExperimentId::Linearity, |s| {
                s.grid.k = vec![k];
                s.grid.n = (2 * k * k..=60).collect();
            }))
        })
        .collect();
    let expect = (2usize..=5).map(|k| 61 - 2 * k * k).sum();
    let mut v = all_pass(&reports, expect, minutes(5), t0);
    // direct recount, independent of the experiment
    for k in 2..=5 {
        for n in 2 * k * k..=60 {
            let g = linear_partial_lines(k, n).unwrap().graph;
            let edges = g.edges();
            let linear = (0..edges.len())
                .all(|i| (i + 1..edges.len()).all(|j| edges[i].iter().filter(|x| edges[j].contains(x)).count() <= 1));
            let enough = (g.edge_count() * 4 * k * k) >= n * n;
            if !linear || !enough {
                v.pass = false;
                v.detail = format!("k={k} n={n}: linear={linear}, {} edges", g.edge_count());
            }
        }
    }
    v.elapsed = t0.elapsed();
    v
}

/// Three sets pairwise meeting in the same set.
fn is_sunflower(a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let meet = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().copied().filter(|v| y.contains(v)).collect() };
    let ab = meet(a, b);
    ab == meet(a, c) && ab == meet(b, c)
}

fn sunflower_free3(g: &Hypergraph) -> bool {
    let e = g.edges();
    (0..e.len()).all(|i| (i + 1..e.len()).all(|j| (j + 1..e.len()).all(|l| !is_sunflower(&e[i], &e[j], &e[l]))))
}

fn ac3() -> Verdict {
    let t0 = Instant::now();
    let reports = vec![
        run(&spec(ExperimentId::ErdosRado, |s| {
            s.grid.r = vec![2];
            s.grid.k = vec![3];
        })),
        run(&spec(ExperimentId::ErdosRado, |s| {
            s.grid.r = vec![1];
            s.grid.k = (2..=6).collect();
        })),
    ];
    let mut v = all_pass(&reports, 6, minutes(2), t0);
    let f = f_exact(2, 3, SearchBudget::unlimited()).unwrap();
    let low = er_lower(2, 3);
    let mut notes = vec![format!("f_2(3) = {}", f.lower)];
    if f.lower != f.upper || !(5..=9).contains(&f.lower) {
        v.pass = false;
        notes.push("outside [5, 9]".into());
    }
    if low.edge_count() != 4 || !sunflower_free3(&low) {
        v.pass = false;
        notes.push("er_lower(2,3) not a sunflower-free 4-family".into());
    }
    for k in 1..=6 {
        let f1 = f_exact(1, k, SearchBudget::unlimited()).unwrap();
        if (f1.lower, f1.upper) != (k, k) {
            v.pass = false;
            notes.push(format!("f_1({k}) in [{}, {}]", f1.lower, f1.upper));
        }
    }
    v.detail = format!("{}; {}", v.detail, notes.join(", "));
    v.elapsed = t0.elapsed();
    v
}

fn ac4() -> Verdict {
    let t0 = Instant::now();
    let r = run(&spec(ExperimentId::FinderGuarantee, |s| {
        s.grid.k = vec![2, 3];
        s.grid.n = vec![30, 60];
        s.grid.seeds = (0..100).collect();
    }));
    all_pass(&[r], 400, minutes(3), t0)
}

fn ac5() -> Verdict {
    let t0 = Instant::now();
    let r = run(&spec(ExperimentId::OracleSoundness, |s| {
        s.grid.n = (3..=6).collect();
        s.grid.seeds = (0..500).collect();
    }));
    all_pass(&[r], 2000, minutes(10), t0)
}

fn ac6() -> Verdict {
    let t0 = Instant::now();
    // every (r, n) with C(n, r) <= 35
    let reports: Vec<Report> = [(2usize, 8usize), (3, 7), (4, 7)]
        .iter()
        .map(|&(r, top)| {
            run(&spec(ExperimentId::CrossOracle, |s| {
                s.grid.r = vec![r];
                s.grid.n = (r..=top).collect();
            }))
        })
        .collect();
    all_pass(&reports, 7 + 5 + 4, minutes(10), t0)
}

fn ac7() -> Verdict {
    let t0 = Instant::now();
    let r = run(&spec(ExperimentId::Unavoidability, |s| {
        s.grid.n = vec![8, 9];
    }));
    all_pass(&[r], 2, minutes(15), t0)
}

fn ac8() -> Verdict {
    let t0 = Instant::now();
    let r = run(&spec(ExperimentId::KstGuarantee, |s| {
        s.grid.seeds = (0..200).collect();
    }));
    all_pass(&[r], 200, minutes(2), t0)
}

/// Points that cannot be realised: two copies do not fit in the host, and at
/// n = 16 the noise needed to push the planted layers into their levels has
/// nowhere to go.
const UNREALISABLE: [(usize, usize); 3] = [(16, 1), (16, 2), (54, 2)];

fn ac9() -> Verdict {
    let t0 = Instant::now();
    let r = run(&spec(ExperimentId::LevelSets, |s| {
        s.grid.n = vec![16, 54];
        s.grid.k = vec![2];
        s.grid.t = vec![1, 2];
    }));
    let mut v = all_pass(std::slice::from_ref(&r), 4, minutes(5), t0);
    let realisable_ok = r
        .body
        .records
        .iter()
        .filter(|p| !UNREALISABLE.contains(&(p.inputs.n.unwrap(), p.inputs.t.unwrap())))
        .all(|p| p.status == PointStatus::Pass);
    let expected_fail = r
        .body
        .records
        .iter()
        .filter(|p| p.status != PointStatus::Pass)
        .all(|p| UNREALISABLE.contains(&(p.inputs.n.unwrap(), p.inputs.t.unwrap())));
    v.tolerated = !v.pass && realisable_ok && expected_fail;
    v.detail = format!("{} of 4 points pass; {}", r.body.summary.pass, v.detail);
    v
}

fn ac10() -> Verdict {
    let t0 = Instant::now();
    let specs = [
        spec(ExperimentId::ConstructionFreeness, |s| {
            s.grid.k = vec![2, 3];
            s.grid.n = vec![12, 13];
            s.grid.seeds = vec![0, 7];
        }),
        spec(ExperimentId::FinderGuarantee, |s| {
            s.grid.k = vec![2];
            s.grid.n = vec![30];
            s.grid.seeds = (0..12).collect();
        }),
        spec(ExperimentId::OracleSoundness, |s| {
            s.grid.n = vec![5, 6];
            s.grid.seeds = (0..40).collect();
        }),
        spec(ExperimentId::KstGuarantee, |s| s.grid.seeds = (0..20).collect()),
        spec(ExperimentId::LevelSets, |s| {
            s.grid.n = vec![54];
            s.grid.k = vec![2];
            s.grid.t = vec![1];
            s.grid.seeds = vec![0, 1, 2];
        }),
    ];
    let mut bad = Vec::new();
    for s in &specs {
        let bodies: Vec<String> = [1, 1, 4, 4]
            .iter()
            .map(|&w| run_experiment_with_workers(s, w).unwrap().body_json())
            .collect();
        if bodies.iter().any(|b| b != &bodies[0]) {
            bad.push(s.experiment.to_string());
        }
    }
    Verdict {
        pass: bad.is_empty(),
        tolerated: false,
        detail: if bad.is_empty() {
            format!("{} specs byte-identical across 4 runs", specs.len())
        } else {
            format!("differing bodies: {}", bad.join(", "))
        },
        elapsed: t0.elapsed(),
    }
}

fn main() -> ExitCode {
    // `cargo test` passes filter arguments; `--list` must not run anything
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    type Check = (&'static str, fn() -> Verdict);
    let criteria: [Check; 10] = [
        ("1 construction freeness", ac1),
        ("2 linearity", ac2),
        ("3 Erdos-Rado sandwich", ac3),
        ("4 finder guarantee", ac4),
        ("5 oracle soundness", ac5),
        ("6 cross-oracle agreement", ac6),
        ("7 unavoidability", ac7),
        ("8 KST guarantee", ac8),
        ("9 level sets", ac9),
        ("10 determinism", ac10),
    ];
    let mut broken = 0;
    for (name, check) in criteria {
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        let note = if v.tolerated { " [not realisable at this scale]" } else { "" };
        println!("{tag} AC{name} ({:.1}s): {}{note}", v.elapsed.as_secs_f64(), v.detail);
        if !v.pass && !v.tolerated {
            broken += 1;
        }
    }
    if broken == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
