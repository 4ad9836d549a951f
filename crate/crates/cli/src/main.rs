use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use unavoid_core::constructions::{
    er_lower, forcing_family, linear_partial_lines, partial_steiner, random_hypergraph, random_linear_hypergraph,
    sf_free, ForcingFamilyId, ForcingParams,
};
use unavoid_core::finders::{
    disjoint_stars_graph, find_disjoint_4partite, find_disjoint_sf3_bounded_codegree, find_disjoint_st3_wellbehaved,
    find_disjoint_st4, find_st3, find_st4, find_sunflower, match_or_star, FinderConfig,
};
use unavoid_core::harness::{
    derive_parameters_with, parse_pattern, run_experiment_with_workers, turan_table, verify_report_certificates,
    ExperimentId, ExperimentSpec, PatternSpec, Regime, Report,
};
use unavoid_core::oracles::{
    contains_exact, ex_cached, f_cached, is_unavoidable, max_sunflower_exact, un_exact, ResultCache, SearchBudget,
};
use unavoid_core::{parse, serialize, Hypergraph, SunflowerShape};

#[derive(Parser)]
#[command(name = "unavoid", version, about = "Sunflowers, generalised stars and unavoidable hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypergraph in the .hg format.
    Gen {
        #[command(subcommand)]
        what: Gen,
        /// Write here instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run a finder on a host and print its report as JSON.
    Find(FindArgs),
    /// Run an exact oracle and print the result as JSON.
    Oracle {
        #[command(subcommand)]
        what: Oracle,
        /// Node limit for the search.
        #[arg(long, global = true)]
        nodes: Option<u64>,
    },
    /// Run an experiment spec; exits non-zero when an expectation fails.
    Run {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Report path (overrides the spec's output.report).
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV summary path (overrides the spec's output.csv).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List the registered experiments.
    Experiments,
    /// Re-verify every certificate referenced by a report.
    Verify { report: PathBuf },
    /// Table of exact Turán numbers for n <= n_max.
    Table(TableArgs),
    /// Parameters a regime's construction/finder pair consumes.
    Params {
        #[arg(long)]
        regime: Regime,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: f64,
        /// Middle-regime constant in k = c sqrt(e) / n.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Sunflower-free construction for Sf_r(t,k).
    SfFree {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform random r-graph with exactly e edges.
    Random {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random greedy linear r-graph.
    RandomLinear {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        attempts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Partial Steiner system S(t,k,n).
    Steiner {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Linear k-graph from partial lines of an affine plane.
    Lines {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Forcing family by name.
    Forcing {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        v1: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The (k-1)^r product family with no k-petal sunflower.
    ErLower {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// A pattern from the pattern grammar.
    Pattern { spec: String },
}

#[derive(Args)]
struct FindArgs {
    /// Pattern: sf:r,t,k | st:d1,..,d_{r-1} | k4p:s,s,s,t | matching:l | star:k
    #[arg(long)]
    pattern: String,
    /// Host in the .hg format ("-" for stdin).
    #[arg(long)]
    input: PathBuf,
    /// Number of vertex-disjoint copies, for the finders that take one.
    #[arg(long)]
    copies: Option<usize>,
    /// Finder constant override, `name=value`; repeatable.
    #[arg(long = "const", value_name = "NAME=VALUE")]
    constants: Vec<String>,
}

#[derive(Subcommand)]
enum Oracle {
    /// Does the host contain the pattern?
    Contains {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Largest sunflower with kernel size t.
    Sunflower {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// ex(n, H).
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
    },
    /// Is H contained in every n-vertex graph with e edges?
    Unavoidable {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
    },
    /// un_r(n, e) over patterns on at most max-vertices vertices.
    Un {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
    },
    /// Erdős–Rado number f_r(k).
    F {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n_max: usize,
    /// Pattern from the grammar; repeatable.
    #[arg(long = "pattern", required = true)]
    patterns: Vec<String>,
    #[arg(long)]
    nodes: Option<u64>,
    /// Also run the direct solver and record agreement.
    #[arg(long)]
    cross_check: bool,
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn budget(nodes: Option<u64>) -> SearchBudget {
    nodes.map_or_else(SearchBudget::unlimited, SearchBudget::nodes)
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(value: &impl Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn read_host(path: &Path) -> Result<Hypergraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| path.display().to_string())?
    };
    parse(&text).with_context(|| path.display().to_string())
}

fn pattern(text: &str) -> Result<PatternSpec> {
    Ok(parse_pattern(text)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { what, out } => {
            let g = generate(what)?;
            let text = serialize(&g);
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| path.display().to_string())?,
                None => emit(&text)?,
            }
        }
        Command::Find(args) => find(args)?,
        Command::Oracle { what, nodes } => oracle(what, budget(nodes))?,
        Command::Run {
            spec,
            workers,
            out,
            csv,
        } => {
            let mut spec = ExperimentSpec::load(&spec)?;
            if out.is_some() {
                spec.output.report = out;
            }
            if csv.is_some() {
                spec.output.csv = csv;
            }
            let report = run_experiment_with_workers(&spec, workers)?;
            let s = &report.body.summary;
            eprintln!(
                "{}: {} points, {} pass, {} fail, {} inconclusive",
                spec.experiment, s.points, s.pass, s.fail, s.inconclusive
            );
            if spec.output.report.is_none() {
                print_json(&report)?;
            }
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
        Command::Experiments => {
            for id in ExperimentId::ALL {
                emit(&format!("{:<22} {}\n", id.name(), id.description()))?;
            }
        }
        Command::Verify { report } => {
            let report = Report::load(&report)?;
            let checked = verify_report_certificates(&report)?;
            emit(&format!("{checked} certificates verified\n"))?;
        }
        Command::Table(args) => table(args)?,
        Command::Params { regime, n, e, c } => print_json(&derive_parameters_with(regime, n, e, c)?)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(what: Gen) -> Result<Hypergraph> {
    Ok(match what {
        Gen::SfFree { r, t, k, n, seed } => sf_free(SunflowerShape::new(r, t, k)?, n, seed)?,
        Gen::Random { r, n, e, seed } => random_hypergraph(r, n, e, seed)?,
        Gen::RandomLinear { r, n, attempts, seed } => random_linear_hypergraph(r, n, attempts, seed),
        Gen::Steiner { t, k, n, seed } => partial_steiner(t, k, n, seed)?,
        Gen::Lines { k, n } => linear_partial_lines(k, n)?.graph,
        Gen::Forcing {
            family,
            n,
            k,
            v1,
            t,
            r,
            seed,
        } => {
            let id: ForcingFamilyId = family.parse()?;
            forcing_family(id, n, &ForcingParams { k, v1, t, r, seed })?
        }
        Gen::ErLower { r, k } => {
            if r == 0 || k < 2 {
                bail!("er-lower needs r >= 1 and k >= 2");
            }
            er_lower(r, k)
        }
        Gen::Pattern { spec } => pattern(&spec)?.hypergraph(),
    })
}

fn find(args: FindArgs) -> Result<()> {
    let g = read_host(&args.input)?;
    let mut cfg = FinderConfig::default();
    for c in &args.constants {
        let (name, value) = c.split_once('=').with_context(|| format!("`{c}` is not name=value"))?;
        cfg.set(name.trim(), value.trim()).map_err(anyhow::Error::msg)?;
    }
    let text = args.pattern.trim();
    if let Some(l) = text.strip_prefix("matching:") {
        let l: usize = l.parse().context("matching:l")?;
        return print_json(&match_or_star(&g, l, l)?);
    }
    let spec = pattern(text)?;
    let report = match (&spec, args.copies) {
        (PatternSpec::Sunflower(s), Some(c)) if s.r == 3 && s.t == 1 => {
            find_disjoint_sf3_bounded_codegree(&g, s.k, Some(c), &cfg)?
        }
        (PatternSpec::Sunflower(s), _) if s.r == 2 && s.t == 1 => {
            disjoint_stars_graph(&g, s.k, args.copies.unwrap_or(s.k))?
        }
        (PatternSpec::Sunflower(s), _) => find_sunflower(&g, *s, &cfg)?,
        (PatternSpec::Star(s), None) if s.degrees.len() == 2 => find_st3(&g, s.degrees[0], s.degrees[1], &cfg)?,
        (PatternSpec::Star(s), Some(c)) if s.degrees.len() == 2 => {
            find_disjoint_st3_wellbehaved(&g, s.degrees[0], s.degrees[1], c, &cfg)?
        }
        (PatternSpec::Star(s), Some(c)) if s.degrees.len() == 3 && s.degrees[0] == s.degrees[1] => {
            find_disjoint_st4(&g, s.degrees[2], c, &cfg)?
        }
        (PatternSpec::Star(s), _) => find_st4(&g, s, &cfg)?,
        (PatternSpec::Multipartite(sizes), c) if sizes.len() == 4 && sizes[..3].iter().all(|&x| x == sizes[0]) => {
            find_disjoint_4partite(&g, sizes[0], sizes[3], c.unwrap_or(1), &cfg)?
        }
        _ => bail!("no finder for {spec}"),
    };
    print_json(&report)
}

fn oracle(what: Oracle, budget: SearchBudget) -> Result<()> {
    let cache = ResultCache::from_env()?;
    match what {
        Oracle::Contains { host, pattern: p } => {
            print_json(&contains_exact(&read_host(&host)?, &pattern(&p)?.hypergraph(), budget)?)
        }
        Oracle::Sunflower { host, t } => print_json(&max_sunflower_exact(&read_host(&host)?, t, budget)?),
        Oracle::Ex { n, pattern: p } => print_json(&ex_cached(cache.as_ref(), n, &pattern(&p)?.hypergraph(), budget)?.0),
        Oracle::Unavoidable { pattern: p, n, e } => print_json(&is_unavoidable(&pattern(&p)?.hypergraph(), n, e, budget)?),
        Oracle::Un { r, n, e, max_vertices } => print_json(&un_exact(r, n, e, max_vertices, budget)?),
        Oracle::F { r, k } => print_json(&f_cached(cache.as_ref(), r, k, budget)?.0),
    }
}

fn table(args: TableArgs) -> Result<()> {
    let patterns: Vec<(String, Hypergraph)> = args
        .patterns
        .iter()
        .map(|p| pattern(p).map(|s| (s.to_string(), s.hypergraph())))
        .collect::<Result<_>>()?;
    let cache = ResultCache::from_env()?;
    let t = turan_table(
        args.r,
        args.n_max,
        &patterns,
        budget(args.nodes),
        cache.as_ref(),
        args.cross_check,
        args.witness_dir.as_deref(),
    )?;
    if let Some(path) = &args.out {
        t.write_json(path)?;
    }
    if let Some(path) = &args.csv {
        t.write_csv(path)?;
    }
    if args.out.is_none() && args.csv.is_none() {
        print_json(&t)?;
    }
    Ok(())
}
