//! The closed registry of experiments. Each one reads a fixed set of grid
//! axes, checks its preconditions before anything runs, and turns one grid
//! point into a pass/fail record with certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::certificate::Certificate;
use super::report::PointStatus;
use super::spec::GridPoint;
use super::HarnessError;
use crate::constructions::{
    er_lower, linear_partial_lines, partial_steiner, random_hypergraph, sf_free, sf_free_edge_bound, star_pattern,
    sunflower_pattern, ConstructionError,
};
use crate::embedding::validate_disjoint;
use crate::finders::{
    disjoint_st4_levels, find_disjoint_st4, find_st3, find_sunflower, kst_bipartite, kst_rpartite, FinderConfig,
    FinderReport,
};
use crate::hypergraph::Hypergraph;
use crate::oracles::{
    contains_exact, erdos_rado_bounds, ex_exact, ex_exact_dfs, f_cached, is_unavoidable, max_sunflower_until, un_exact,
    Containment, ResultCache, SearchBudget, Unavoidability,
};
use crate::shapes::{StarShape, SunflowerShape};
use crate::util::{binomial, cube_root_ratio, for_each_subset, rng, subsets_of_range};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    ConstructionFreeness,
    Linearity,
    ErdosRado,
    FinderGuarantee,
    OracleSoundness,
    CrossOracle,
    Unavoidability,
    KstGuarantee,
    LevelSets,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 9] = [
        ExperimentId::ConstructionFreeness,
        ExperimentId::Linearity,
        ExperimentId::ErdosRado,
        ExperimentId::FinderGuarantee,
        ExperimentId::OracleSoundness,
        ExperimentId::CrossOracle,
        ExperimentId::Unavoidability,
        ExperimentId::KstGuarantee,
        ExperimentId::LevelSets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::ConstructionFreeness => "construction-freeness",
            ExperimentId::Linearity => "linearity",
            ExperimentId::ErdosRado => "erdos-rado",
            ExperimentId::FinderGuarantee => "finder-guarantee",
            ExperimentId::OracleSoundness => "oracle-soundness",
            ExperimentId::CrossOracle => "cross-oracle",
            ExperimentId::Unavoidability => "unavoidability",
            ExperimentId::KstGuarantee => "kst-guarantee",
            ExperimentId::LevelSets => "level-sets",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ExperimentId::ConstructionFreeness => {
                "(n, k[, seeds]): the five sunflower-free constructions are free and meet their edge bounds"
            }
            ExperimentId::Linearity => "(n, k): partial lines form a linear k-graph with at least n^2/4k^2 edges",
            ExperimentId::ErdosRado => "(r, k): f_r(k) within the Erdős–Rado bounds, product family sunflower-free",
            ExperimentId::FinderGuarantee => "(n, k, seeds[, e]): Sf3(1,k) found in random 3-graphs with e = c k^2 n",
            ExperimentId::OracleSoundness => {
                "(n, seeds): finders never contradict the containment oracle on Sf3(1,2), Sf3(2,2), St3(2,2)"
            }
            ExperimentId::CrossOracle => "(r, n): both exact Turán solvers agree on the golden patterns",
            ExperimentId::Unavoidability => {
                "(n[, e]): every 2-edge 4-graph is avoided by the linear or the fixed-pair host; one edge is unavoidable"
            }
            ExperimentId::KstGuarantee => "(seeds): Kővári–Sós–Turán bicliques and r-partite blocks on random instances",
            ExperimentId::LevelSets => "(n, k, t[, seeds]): planted disjoint St4(d,d,k) recovered well-behaved",
        }
    }

    pub(crate) fn axes(self) -> Axes {
        use Axis::*;
        let none = Axes {
            r: Unused,
            n: Unused,
            k: Unused,
            t: Unused,
            e: Unused,
            seeds: Unused,
        };
        match self {
            ExperimentId::ConstructionFreeness => Axes {
                n: Required,
                k: Required,
                seeds: Optional,
                ..none
            },
            ExperimentId::Linearity => Axes {
                n: Required,
                k: Required,
                ..none
            },
            ExperimentId::ErdosRado => Axes {
                r: Required,
                k: Required,
                ..none
            },
            ExperimentId::FinderGuarantee => Axes {
                n: Required,
                k: Required,
                e: Optional,
                seeds: Required,
                ..none
            },
            ExperimentId::OracleSoundness => Axes {
                n: Required,
                seeds: Required,
                ..none
            },
            ExperimentId::CrossOracle => Axes {
                r: Required,
                n: Required,
                ..none
            },
            ExperimentId::Unavoidability => Axes {
                n: Required,
                e: Optional,
                ..none
            },
            ExperimentId::KstGuarantee => Axes {
                seeds: Required,
                ..none
            },
            ExperimentId::LevelSets => Axes {
                n: Required,
                k: Required,
                t: Required,
                seeds: Optional,
                ..none
            },
        }
    }

    /// Rejects a grid point the experiment cannot run.
    pub(crate) fn validate(self, p: &GridPoint) -> Result<(), String> {
        let n = p.n.unwrap_or(0);
        let k = p.k.unwrap_or(0);
        match self {
            ExperimentId::ConstructionFreeness => check(k >= 2 && 2 * k <= n, "needs 2 <= k <= n/2"),
            ExperimentId::Linearity => check(k >= 2 && 2 * k * k <= n, "needs k >= 2 and n >= 2k^2"),
            ExperimentId::ErdosRado => check(p.r.unwrap_or(0) >= 1 && k >= 1, "needs r, k >= 1"),
            ExperimentId::FinderGuarantee => {
                check(k >= 1 && n >= 3, "needs k >= 1 and n >= 3")?;
                match p.e {
                    Some(e) => check(e as u128 <= binomial(n, 3), "e exceeds C(n,3)"),
                    None => Ok(()),
                }
            }
            ExperimentId::OracleSoundness => check((3..=8).contains(&n), "needs 3 <= n <= 8"),
            ExperimentId::CrossOracle => {
                let r = p.r.unwrap_or(0);
                check(r >= 1 && n >= r, "needs 1 <= r <= n")?;
                check(binomial(n, r) <= 64, "needs C(n,r) <= 64")
            }
            ExperimentId::Unavoidability => {
                check((4..=12).contains(&n), "needs 4 <= n <= 12")?;
                let cap = forcing_hosts(n).map_err(|e| e.to_string())?.2;
                match p.e {
                    Some(e) => check(e >= 1 && e <= cap, "needs 1 <= e <= the smaller forcing host"),
                    None => Ok(()),
                }
            }
            ExperimentId::KstGuarantee => Ok(()),
            ExperimentId::LevelSets => check(k >= 1 && p.t.unwrap_or(0) >= 1 && n >= 4, "needs k, t >= 1 and n >= 4"),
        }
    }

    pub(crate) fn run(self, p: &GridPoint, ctx: &Ctx) -> Result<PointResult, HarnessError> {
        let mut out = PointResult::default();
        let res = match self {
            ExperimentId::ConstructionFreeness => construction_freeness(p, ctx, &mut out),
            ExperimentId::Linearity => linearity(p, &mut out),
            ExperimentId::ErdosRado => erdos_rado(p, ctx, &mut out),
            ExperimentId::FinderGuarantee => finder_guarantee(p, ctx, &mut out),
            ExperimentId::OracleSoundness => oracle_soundness(p, ctx, &mut out),
            ExperimentId::CrossOracle => cross_oracle(p, ctx, &mut out),
            ExperimentId::Unavoidability => unavoidability(p, ctx, &mut out),
            ExperimentId::KstGuarantee => kst_guarantee(p, &mut out),
            ExperimentId::LevelSets => level_sets(p, ctx, &mut out),
        };
        // an error inside a point is a failed expectation, not an aborted run
        if let Err(e) = res {
            out.fail(e);
        }
        Ok(out)
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentId {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| HarnessError::InvalidSpec(format!("unknown experiment `{s}`")))
    }
}

fn check(ok: bool, why: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Axis {
    Unused,
    Required,
    /// An empty list falls back to the experiment's default.
    Optional,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Axes {
    pub r: Axis,
    pub n: Axis,
    pub k: Axis,
    pub t: Axis,
    pub e: Axis,
    pub seeds: Axis,
}

pub(crate) struct Ctx {
    pub cfg: FinderConfig,
    pub budget: SearchBudget,
    pub cache: Option<ResultCache>,
}

#[derive(Debug, Default)]
pub(crate) struct PointResult {
    pub status: PointStatus,
    pub notes: Vec<String>,
    pub stats: BTreeMap<String, Value>,
    pub certificates: Vec<(String, Certificate)>,
}

impl PointResult {
    fn fail(&mut self, why: impl ToString) {
        self.status = PointStatus::Fail;
        self.notes.push(why.to_string());
    }

    fn inconclusive(&mut self, why: impl ToString) {
        if self.status == PointStatus::Pass {
            self.status = PointStatus::Inconclusive;
        }
        self.notes.push(why.to_string());
    }

    fn stat(&mut self, key: impl Into<String>, value: Value) {
        self.stats.insert(key.into(), value);
    }

    /// Records a certificate after checking it; a certificate that does not
    /// verify fails the point.
    fn certify(&mut self, label: impl Into<String>, cert: Certificate) {
        let label = label.into();
        if let Err(e) = cert.verify() {
            self.fail(format!("{label}: certificate rejected: {e}"));
        }
        self.certificates.push((label, cert));
    }
}

type Step = Result<(), String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

const SHAPES: [(usize, usize); 5] = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)];

fn construction_freeness(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let (n, k, seed) = (p.n.unwrap_or(0), p.k.unwrap_or(0), p.seed.unwrap_or(0));
    for (r, t) in SHAPES {
        let shape = SunflowerShape::new(r, t, k).map_err(err)?;
        let g = match sf_free(shape, n, seed) {
            Ok(g) => g,
            Err(ConstructionError::InvalidParameters(why)) => {
                out.stat(shape.to_string(), json!({"skipped": why}));
                continue;
            }
            Err(e) => {
                out.fail(format!("{shape}: {e}"));
                continue;
            }
        };
        let bound = sf_free_edge_bound(shape, n).map_err(err)?;
        let edges = g.edge_count();
        // the two closed forms are met with equality; the others are lower bounds
        let closed = matches!((r, t), (3, 1) | (4, 1));
        if closed && edges as f64 != bound {
            out.fail(format!("{shape}: {edges} edges, closed form gives {bound}"));
        } else if (edges as f64) < bound - 1e-9 {
            out.fail(format!("{shape}: {edges} edges, below the bound {bound:.3}"));
        }
        let best = max_sunflower_until(&g, t, k, ctx.budget).map_err(err)?;
        if best.k >= k {
            out.fail(format!("{shape}: oracle found {} petals", best.k));
        } else if best.exhausted {
            out.inconclusive(format!("{shape}: oracle budget exhausted"));
        }
        out.stat(
            shape.to_string(),
            json!({"edges": edges, "bound": bound, "max_petals": best.k}),
        );
        out.certificates.push((
            shape.to_string(),
            Certificate::SunflowerFree {
                host: g,
                t: Some(t),
                k,
            },
        ));
    }
    Ok(())
}

fn linearity(p: &GridPoint, out: &mut PointResult) -> Step {
    let (n, k) = (p.n.unwrap_or(0), p.k.unwrap_or(0));
    let plane = linear_partial_lines(k, n).map_err(err)?;
    let edges = plane.graph.edge_count();
    out.stat("p", json!(plane.p));
    out.stat("edges", json!(edges));
    if 4 * k * k * edges < n * n {
        out.fail(format!("{edges} edges, below n^2/4k^2"));
    }
    // the certificate check is the exhaustive pairwise scan
    out.certify("linear", Certificate::Linear { host: plane.graph });
    Ok(())
}

fn erdos_rado(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let (r, k) = (p.r.unwrap_or(0), p.k.unwrap_or(0));
    let (lo, hi) = erdos_rado_bounds(r, k);
    let mut floor = 1;
    if k >= 2 {
        let low = er_lower(r, k);
        if low.edge_count() as u128 != lo {
            out.fail(format!("product family has {} sets, expected {lo}", low.edge_count()));
        }
        floor = low.edge_count() + 1;
        out.certify("product-family", Certificate::SunflowerFree { host: low, t: None, k });
    }
    let (res, _) = f_cached(ctx.cache.as_ref(), r, k, ctx.budget).map_err(err)?;
    out.stat("lower", json!(res.lower));
    out.stat("upper", json!(res.upper));
    out.stat("classes", json!(res.classes));
    out.stat("bounds", json!([lo as f64, hi as f64]));
    match res.value() {
        Some(v) => {
            if (v as u128) < lo || (v as u128) > hi {
                out.fail(format!("f = {v} outside [{lo}, {hi}]"));
            }
            if v < floor {
                out.fail(format!("f = {v} but a sunflower-free family of {} sets exists", floor - 1));
            }
            if r == 1 && v != k {
                out.fail(format!("f_1({k}) = {v}"));
            }
            if k >= 2 && res.witness.edge_count() + 1 == v {
                out.certify(
                    "extremal-family",
                    Certificate::SunflowerFree {
                        host: res.witness,
                        t: None,
                        k,
                    },
                );
            }
        }
        None => {
            if (res.upper as u128) < lo || (res.lower as u128) > hi {
                out.fail(format!("interval [{}, {}] misses the bounds", res.lower, res.upper));
            }
            out.inconclusive(format!("search budget exhausted: [{}, {}]", res.lower, res.upper));
        }
    }
    Ok(())
}

fn record_finder(out: &mut PointResult, key: &str, host: &Hypergraph, rep: &FinderReport) {
    out.stat(
        key,
        json!({
            "found": rep.is_found(),
            "copies": rep.copies().len(),
            "hypothesis_met": rep.stats.hypothesis.as_ref().map(|h| h.met),
            "failing_phase": rep.failing_phase(),
            "trace": rep.trace,
        }),
    );
    if rep.is_found() {
        out.certify(
            key,
            Certificate::Copies {
                host: host.clone(),
                copies: rep.copies().to_vec(),
            },
        );
    }
}

fn finder_guarantee(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let (n, k, seed) = (p.n.unwrap_or(0), p.k.unwrap_or(0), p.seed.unwrap_or(0));
    let default_e = (ctx.cfg.sf3_star * (k * k * n) as f64).ceil() as usize;
    let e = p.e.unwrap_or(default_e).min(binomial(n, 3) as usize);
    let g = random_hypergraph(3, n, e, seed).map_err(err)?;
    let rep = find_sunflower(&g, SunflowerShape::new(3, 1, k).map_err(err)?, &ctx.cfg).map_err(err)?;
    out.stat("edges", json!(e));
    record_finder(out, "Sf3(1,k)", &g, &rep);
    if !rep.is_found() {
        out.fail(format!("exhausted in {}", rep.failing_phase().unwrap_or("?")));
    }
    Ok(())
}

/// Patterns checked against the containment oracle, with the finder for each.
fn soundness_cases() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("Sf3(1,2)", sunflower_pattern(SunflowerShape { r: 3, t: 1, k: 2 })),
        ("Sf3(2,2)", sunflower_pattern(SunflowerShape { r: 3, t: 2, k: 2 })),
        ("St3(2,2)", star_pattern(&StarShape { degrees: vec![2, 2] })),
    ]
}

fn oracle_soundness(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let (n, seed) = (p.n.unwrap_or(0), p.seed.unwrap_or(0));
    let total = binomial(n, 3) as usize;
    let e = rng(seed, 0x50d).gen_range(1..=total);
    let g = random_hypergraph(3, n, e, seed).map_err(err)?;
    out.stat("edges", json!(e));
    for (i, (name, pattern)) in soundness_cases().into_iter().enumerate() {
        let rep = match i {
            0 => find_sunflower(&g, SunflowerShape::new(3, 1, 2).map_err(err)?, &ctx.cfg),
            1 => find_sunflower(&g, SunflowerShape::new(3, 2, 2).map_err(err)?, &ctx.cfg),
            _ => find_st3(&g, 2, 2, &ctx.cfg),
        }
        .map_err(err)?;
        let oracle = contains_exact(&g, &pattern, ctx.budget).map_err(err)?;
        out.stat(
            format!("{name}:oracle"),
            json!(match oracle {
                Containment::Found { .. } => "found",
                Containment::Absent { .. } => "absent",
                Containment::BudgetExhausted { .. } => "exhausted",
            }),
        );
        record_finder(out, name, &g, &rep);
        if rep.is_found() {
            if let Err(e) = validate_disjoint(rep.copies(), &g) {
                out.fail(format!("{name}: bad certificate: {e}"));
            }
            if oracle.is_absent() {
                out.fail(format!("{name}: finder found a copy the oracle rules out"));
            }
        }
        if matches!(oracle, Containment::BudgetExhausted { .. }) {
            out.inconclusive(format!("{name}: oracle budget exhausted"));
        }
    }
    Ok(())
}

/// The fixed small patterns on which the two Turán solvers are compared.
pub fn golden_patterns(r: usize) -> Vec<(String, Hypergraph)> {
    let sf = |t: usize, k: usize| {
        let shape = SunflowerShape { r, t, k };
        (shape.to_string(), sunflower_pattern(shape))
    };
    let graph = |name: &str, n: usize, edges: &[&[usize]]| {
        let g = Hypergraph::new(r, n, edges.iter().map(|e| e.to_vec())).expect("golden pattern");
        (name.to_string(), g)
    };
    let mut out = vec![graph("edge", r, &[&(0..r).collect::<Vec<_>>()])];
    match r {
        2 => {
            out.extend([sf(0, 2), sf(1, 2), sf(1, 3)]);
            out.push(graph("K3", 3, &[&[0, 1], &[0, 2], &[1, 2]]));
            out.push(graph("P4", 4, &[&[0, 1], &[1, 2], &[2, 3]]));
            out.push(graph("C4", 4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]));
        }
        3 => {
            out.extend([sf(0, 2), sf(1, 2), sf(2, 2), sf(2, 3)]);
            out.push(graph("K4-", 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]));
            out.push(graph("K4", 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]));
        }
        4 => out.extend([sf(0, 2), sf(1, 2), sf(2, 2), sf(3, 2)]),
        _ => {}
    }
    out
}

fn cross_oracle(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let (r, n) = (p.r.unwrap_or(0), p.n.unwrap_or(0));
    for (name, pattern) in golden_patterns(r) {
        let a = ex_exact(n, &pattern, ctx.budget).map_err(err)?;
        let b = ex_exact_dfs(n, &pattern, ctx.budget).map_err(err)?;
        out.stat(
            name.clone(),
            json!({"conflict": [a.lower, a.upper], "direct": [b.lower, b.upper]}),
        );
        match (a.value(), b.value()) {
            (Some(x), Some(y)) if x != y => out.fail(format!("{name}: {x} by conflicts, {y} by direct search")),
            (Some(_), Some(_)) => {}
            _ => {
                if a.lower > b.upper || b.lower > a.upper {
                    out.fail(format!("{name}: disjoint intervals"));
                }
                out.inconclusive(format!("{name}: budget exhausted"));
            }
        }
        for (tag, res) in [("conflict", &a), ("direct", &b)] {
            if res.witness.edge_count() != res.lower {
                out.fail(format!("{name}: {tag} witness has {} edges", res.witness.edge_count()));
            }
        }
        if a.witness.edge_count() > 0 && pattern.n() <= n {
            out.certify(
                format!("{name}:witness"),
                Certificate::PatternFree {
                    host: a.witness,
                    pattern,
                },
            );
        }
    }
    Ok(())
}

/// The linear (partial Steiner S(2,4,n)) host, the fixed-pair host, and
/// the smaller of their sizes.
fn forcing_hosts(n: usize) -> Result<(Hypergraph, Hypergraph, usize), ConstructionError> {
    let linear = partial_steiner(2, 4, n, 0)?;
    let mut pair_edges = Vec::new();
    for_each_subset(&(2..n).collect::<Vec<_>>(), 2, |s| pair_edges.push(vec![0, 1, s[0], s[1]]));
    let pair = Hypergraph::new(4, n, pair_edges).map_err(|e| ConstructionError::InvalidParameters(e.to_string()))?;
    let cap = linear.edge_count().min(pair.edge_count());
    Ok((linear, pair, cap))
}

fn first_edges(g: &Hypergraph, e: usize) -> Hypergraph {
    g.filter_edges({
        let mut left = e;
        move |_| {
            let keep = left > 0;
            left = left.saturating_sub(1);
            keep
        }
    })
}

fn unavoidability(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let n = p.n.unwrap_or(0);
    let (linear, pair, cap) = forcing_hosts(n).map_err(err)?;
    let e = p.e.unwrap_or(cap);
    let (linear, pair) = (first_edges(&linear, e), first_edges(&pair, e));
    out.stat("e", json!(e));
    out.stat("forcing_sizes", json!([cap, linear.edge_count(), pair.edge_count()]));
    let edge = Hypergraph::new(4, 4, [[0, 1, 2, 3]]).map_err(err)?;
    match is_unavoidable(&edge, n, e, ctx.budget).map_err(err)? {
        Unavoidability::Yes { .. } => {}
        Unavoidability::No { .. } => out.fail("the single edge is avoidable"),
        Unavoidability::BudgetExhausted { .. } => out.inconclusive("single edge: budget exhausted"),
    }
    for shared in 0..4 {
        // two 4-sets meeting in `shared` vertices
        let second: Vec<usize> = (4 - shared..8 - shared).collect();
        let pattern = Hypergraph::new(4, 8 - shared, [vec![0, 1, 2, 3], second]).map_err(err)?;
        // the linear host has no two edges sharing 2+ vertices, the fixed-pair host no two sharing < 2
        let (host_name, host) = if shared >= 2 { ("linear", &linear) } else { ("fixed-pair", &pair) };
        let direct = contains_exact(host, &pattern, ctx.budget).map_err(err)?;
        let decided = is_unavoidable(&pattern, n, e, ctx.budget).map_err(err)?;
        out.stat(
            format!("shared={shared}"),
            json!({"witness_host": host_name, "host_avoids": direct.is_absent(), "avoidable": decided.is_no()}),
        );
        if !direct.is_absent() {
            out.fail(format!("{host_name} host contains the pair sharing {shared}"));
        }
        match decided {
            Unavoidability::No { .. } => {}
            Unavoidability::Yes { .. } => out.fail(format!("pair sharing {shared} reported unavoidable")),
            Unavoidability::BudgetExhausted { .. } => out.inconclusive(format!("pair sharing {shared}: budget exhausted")),
        }
        out.certify(
            format!("shared-{shared}"),
            Certificate::PatternFree {
                host: host.clone(),
                pattern,
            },
        );
    }
    let un = un_exact(4, n, e, 8, ctx.budget).map_err(err)?;
    out.stat("un", json!({"value": un.value, "exhausted": un.exhausted}));
    if un.exhausted {
        out.inconclusive("un_exact budget exhausted");
    } else if un.value != 1 {
        out.fail(format!("un_4({n}, {e}) = {}", un.value));
    }
    Ok(())
}

/// `t C(a,s) < b C(floor(m/b), s)` in exact integer arithmetic.
fn kst_condition(a: usize, b: usize, m: usize, s: usize, t: usize) -> bool {
    (t as u128) * binomial(a, s) < (b as u128) * binomial(m / b, s)
}

fn kst_guarantee(p: &GridPoint, out: &mut PointResult) -> Step {
    let seed = p.seed.unwrap_or(0);
    let mut prng = rng(seed, 0x657);
    let mut instance = None;
    for _ in 0..10_000 {
        let a = prng.gen_range(3..=8usize);
        let b = prng.gen_range(6..=40usize);
        let s = prng.gen_range(1..=a.min(3));
        let t = prng.gen_range(1..=4usize);
        let density = prng.gen_range(0.3..0.95);
        let edges: Vec<(usize, usize)> = (0..a)
            .flat_map(|x| (0..b).map(move |y| (x, y)))
            .filter(|_| prng.gen_bool(density))
            .collect();
        if kst_condition(a, b, edges.len(), s, t) {
            instance = Some((a, b, s, t, edges));
            break;
        }
    }
    let Some((a, b, s, t, edges)) = instance else {
        return Err("no instance satisfying the counting condition".into());
    };
    out.stat("bipartite", json!({"a": a, "b": b, "s": s, "t": t, "edges": edges.len()}));
    let bip = kst_bipartite(a, b, &edges, s, t).map_err(err)?;
    if !bip.hypothesis {
        out.fail("finder disagrees on the counting condition");
    }
    match bip.biclique {
        Some(bc) if bc.a.len() == s && bc.b.len() == t => {
            out.certify("biclique", Certificate::Biclique { edges, a: bc.a, b: bc.b })
        }
        Some(bc) => out.fail(format!("biclique of size {}x{}", bc.a.len(), bc.b.len())),
        None => out.fail("no K_{s,t} under the counting condition"),
    }
    let n = prng.gen_range(4..=7usize);
    let density = prng.gen_range(0.6..0.95);
    let mut tuples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if prng.gen_bool(density) {
                    tuples.push(vec![x, y, z]);
                }
            }
        }
    }
    let rp = kst_rpartite(n, 3, &tuples, 1).map_err(err)?;
    out.stat(
        "rpartite",
        json!({"n": n, "tuples": tuples.len(), "found": rp.blocks.is_some(), "hypothesis": rp.hypothesis}),
    );
    if let Some(blocks) = rp.blocks {
        out.certify("blocks", Certificate::Product { tuples, blocks });
    }
    Ok(())
}

/// `t` disjoint copies of `St4(d,d,k)` with `d = floor((n/k)^{1/3})`, plus
/// seeded noise on the apexes and the unused vertices, aiming at
/// `6 t d^2 k` edges so that the planted layers fall into the right levels.
pub fn planted_disjoint_st4(n: usize, k: usize, t: usize, seed: u64) -> Result<Hypergraph, ConstructionError> {
    let d = cube_root_ratio(n, k);
    let shape = StarShape::new(vec![d, d, k]).map_err(|e| ConstructionError::InvalidParameters(e.to_string()))?;
    let vc = shape.vertex_count();
    if t * vc > n {
        return Err(ConstructionError::InvalidParameters(format!(
            "{t} copies of {shape} need {} vertices, only {n} available",
            t * vc
        )));
    }
    let star = star_pattern(&shape);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for i in 0..t {
        edges.extend(star.edges().iter().map(|e| e.iter().map(|&v| v + i * vc).collect::<Vec<_>>()));
    }
    let pool: Vec<usize> = (0..t).map(|i| i * vc).chain(t * vc..n).collect();
    let candidates = if pool.len() >= 4 { subsets_of_range(pool.len(), 4) } else { Vec::new() };
    let want = 5 * t * d * d * k;
    let take = want.min(candidates.len());
    for i in index::sample(&mut rng(seed, 0x9a17), candidates.len(), take).into_vec() {
        edges.push(candidates[i].iter().map(|&j| pool[j]).collect());
    }
    Hypergraph::new(4, n, edges).map_err(|e| ConstructionError::InvalidParameters(e.to_string()))
}

fn level_sets(p: &GridPoint, ctx: &Ctx, out: &mut PointResult) -> Step {
    let (n, k, t, seed) = (p.n.unwrap_or(0), p.k.unwrap_or(0), p.t.unwrap_or(0), p.seed.unwrap_or(0));
    let d = cube_root_ratio(n, k);
    out.stat("d", json!(d));
    let g = planted_disjoint_st4(n, k, t, seed).map_err(|e| format!("cannot plant: {e}"))?;
    let e = g.edge_count();
    let rep = find_disjoint_st4(&g, k, t, &ctx.cfg).map_err(err)?;
    out.stat("edges", json!(e));
    record_finder(out, "disjoint-St4", &g, &rep);
    if !rep.is_found() {
        out.fail(format!("exhausted in {}", rep.failing_phase().unwrap_or("?")));
        return Ok(());
    }
    if rep.copies().len() != t {
        out.fail(format!("{} copies for t = {t}", rep.copies().len()));
    }
    // levels straight from the thresholds L2 = e/4td, L3 = L2/d, L4 = L3/k
    let mut deg = vec![0usize; n];
    for edge in g.edges() {
        for &v in edge {
            deg[v] += 1;
        }
    }
    let (ef, df, kf, tf) = (e as f64, d as f64, k as f64, t as f64);
    let l2 = ef / (4.0 * tf * df);
    let l3 = l2 / df;
    let l4 = l3 / kf;
    out.stat("thresholds", json!([l2, l3, l4]));
    let level = |v: usize| {
        let x = deg[v] as f64;
        if x > l2 {
            0
        } else if x > l3 {
            1
        } else if x > l4 {
            2
        } else {
            3
        }
    };
    let finder_levels = disjoint_st4_levels(&g, d, k, t).map_err(err)?;
    for (i, copy) in rep.copies().iter().enumerate() {
        let map = &copy.vertex_map;
        let layers = [(1, 1 + d, 1), (1 + d, 1 + d + d * d, 2), (1 + d + d * d, map.len(), 3)];
        for (lo, hi, min_level) in layers {
            for &v in &map[lo..hi] {
                let ok = if min_level == 3 { level(v) == 3 } else { level(v) >= min_level };
                if !ok {
                    out.fail(format!("copy {i}: vertex {v} of degree {} breaks the level order", deg[v]));
                }
                if finder_levels.level(v) as usize != level(v) {
                    out.fail(format!("vertex {v}: finder and definition disagree on its level"));
                }
            }
        }
    }
    Ok(())
}
