//! Command-line front end: `verify` runs the check graph, `sweep` tabulates
//! the two failure bounds, `simulate` prints one instance's outcome table.
//!
//! Exit status is [`EXIT_OK`] when everything passed, [`EXIT_FAIL`] when a
//! check failed and [`EXIT_USAGE`] for bad arguments, bad config or
//! unwritable output.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qpe_core::analytic::{failure_bounds, success_prob};
use qpe_core::circuit::output_distribution;
use qpe_core::harness::{build_check_graph, diagonal_instance, random_instance, run_suite};
use qpe_core::{CheckReport, CheckStatus, OutputFormat, Phase, PhaseGeometry, RunConfig, MAX_QUBITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seed used when neither `--seed` nor the config file sets one.
pub const SEED_ENV: &str = "QPE_CERTIFY_SEED";

/// Outcomes at or below this probability are left out of `simulate` tables.
pub const OUTCOME_CUTOFF: f64 = 1e-12;

pub const DEFAULT_E_MAX: u64 = 8192;

#[derive(Debug, Parser)]
#[command(name = "qpe-certify", version, about = "Numerical certification of quantum phase estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the check graph and write a report.
    Verify(VerifyArgs),
    /// Tabulate the tight and original failure bounds for e = 1..=e_max.
    Sweep(SweepArgs),
    /// Simulate one instance and print its outcome distribution.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Key-value config file; flags override its entries.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub t_max: Option<u32>,
    /// Run only these checks and their prerequisites.
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    pub include: Vec<String>,
    /// Drop these checks and everything depending on them.
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    pub exclude: Vec<String>,
    #[arg(long)]
    pub format: Option<OutputFormat>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = DEFAULT_E_MAX)]
    pub e_max: u64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// First-register size.
    #[arg(short = 't', long = "t")]
    pub t: u32,
    /// Second-register size.
    #[arg(short = 's', long = "s", default_value_t = 1)]
    pub s: u32,
    /// `a/2^q`, `p/q` or a decimal in [0, 1).
    #[arg(long)]
    pub phase: String,
    /// Use a seeded random unitary instead of the diagonal one.
    #[arg(long)]
    pub random: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub format: Option<OutputFormat>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Verify(args) => verify(&args, stdout, stderr),
        Command::Sweep(args) => sweep(&args, stdout),
        Command::Simulate(args) => simulate_cmd(&args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("{SEED_ENV}={v:?} is not a seed")),
        Err(_) => Ok(None),
    }
}

/// Defaults, then the seed environment variable, then the config file,
/// then flags.
pub fn verify_config(args: &VerifyArgs) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(seed) = env_seed()? {
        config.seed = seed;
    }
    if let Some(path) = &args.config {
        config = RunConfig::from_file_with(config, path)?;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(t) = args.t_max {
        config.t_max = t;
    }
    if !args.include.is_empty() {
        config.include = args.include.clone();
    }
    if !args.exclude.is_empty() {
        config.exclude = args.exclude.clone();
    }
    if let Some(f) = args.format {
        config.format = f;
    }
    if let Some(out) = &args.out {
        config.output = Some(out.clone());
    }
    if let Some(w) = args.workers {
        config.workers = Some(w);
    }
    config.validate()?;
    Ok(config)
}

fn open_output(path: Option<&Path>) -> Result<Option<File>> {
    path.map(|p| File::create(p).with_context(|| format!("cannot write {}", p.display())))
        .transpose()
}

fn emit(file: Option<File>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match file {
        Some(mut f) => f.write_all(text.as_bytes()).context("writing output")?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let config = verify_config(args)?;
    // Opened before the run so a bad path fails fast.
    let file = open_output(config.output.as_deref())?;
    let graph = build_check_graph(&config)?;
    let report = run_suite(&graph, &config)?;
    emit(file, stdout, &render_report(&report, config.format)?)?;
    writeln!(
        stderr,
        "{} passed, {} failed, {} skipped",
        report.count(CheckStatus::Pass),
        report.count(CheckStatus::Fail),
        report.count(CheckStatus::Skipped)
    )?;
    Ok(if report.count(CheckStatus::Fail) == 0 {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

#[derive(Serialize)]
struct ReportRow<'a> {
    name: &'a str,
    status: &'static str,
    instances: u64,
    worst_margin: Option<f64>,
    failing_params: Option<&'a str>,
    elapsed_ms: u64,
    note: Option<&'a str>,
}

pub fn render_report(report: &CheckReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(report.to_json()? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &report.results {
                w.serialize(ReportRow {
                    name: &r.name,
                    status: r.status.as_str(),
                    instances: r.instances,
                    worst_margin: r.worst_margin,
                    failing_params: r.failing_params.as_deref(),
                    elapsed_ms: r.elapsed_ms,
                    note: r.note.as_deref(),
                })?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
        }
        OutputFormat::Text => {
            let mut out = format!("qpe-certify {} seed={}\n", report.version, report.seed);
            for r in &report.results {
                out += &format!("{:<7} {} instances={}", r.status.as_str(), r.name, r.instances);
                if let Some(m) = r.worst_margin {
                    out += &format!(" worst_margin={m:e}");
                }
                if let Some(p) = &r.failing_params {
                    out += &format!(" at {p}");
                }
                if let Some(n) = &r.note {
                    out += &format!(" ({n})");
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// CSV with header `e,tight,original`; the original bound is blank at
/// `e = 1`, outside its domain.
pub fn sweep_csv(e_max: u64) -> Result<String> {
    if e_max < 2 {
        bail!("--e-max must be at least 2, got {e_max}");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["e", "tight", "original"])?;
    for e in 1..=e_max {
        let b = failure_bounds(e)?;
        w.write_record([
            e.to_string(),
            b.tight.to_string(),
            b.original.map(|o| o.to_string()).unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
}

fn sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let csv = sweep_csv(args.e_max)?;
    emit(open_output(args.out.as_deref())?, stdout, &csv)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub m: u64,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Success {
    pub e: u64,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    pub t: u32,
    pub s: u32,
    pub phase: String,
    /// Seed of the random instance, absent for the diagonal one.
    pub seed: Option<u64>,
    /// Outcomes with probability above [`OUTCOME_CUTOFF`].
    pub outcomes: Vec<Outcome>,
    pub b_floor: i64,
    pub b_round: i64,
    pub delta_floor: f64,
    pub success: Vec<Success>,
}

pub fn simulate(t: u32, s: u32, phase: Phase, seed: Option<u64>) -> Result<Simulation> {
    if t == 0 || s == 0 {
        bail!("register sizes must be positive (t={t}, s={s})");
    }
    if t + s > MAX_QUBITS {
        bail!("t + s = {} exceeds {MAX_QUBITS} qubits", t + s);
    }
    let inst = match seed {
        Some(seed) => random_instance(t, s, phase, seed)?,
        None => diagonal_instance(t, s, phase)?,
    };
    let dist = output_distribution(&inst)?;
    let g = PhaseGeometry::new(&phase, t);
    let outcomes = dist
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > OUTCOME_CUTOFF)
        .map(|(m, &prob)| Outcome { m: m as u64, prob })
        .collect();
    let e_max = (1u64 << (t - 1)).saturating_sub(2);
    let success = (1..=e_max)
        .map(|e| Ok(Success { e, prob: success_prob(&dist, &phase, e)? }))
        .collect::<Result<_>>()?;
    Ok(Simulation {
        t,
        s,
        phase: phase.to_string(),
        seed,
        outcomes,
        b_floor: g.b_floor,
        b_round: g.b_round,
        delta_floor: g.delta_floor,
        success,
    })
}

pub fn render_simulation(sim: &Simulation, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(sim)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for o in &sim.outcomes {
                w.serialize(o)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for o in &sim.outcomes {
                out += &format!("m={} prob={:.12}\n", o.m, o.prob);
            }
            out += &format!(
                "b_f={} b_r={} delta_bf={:e}\n",
                sim.b_floor, sim.b_round, sim.delta_floor
            );
            for s in &sim.success {
                out += &format!("e={} success_prob={:.12}\n", s.e, s.prob);
            }
            Ok(out)
        }
    }
}

fn simulate_cmd(args: &SimulateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let phase: Phase = args.phase.parse()?;
    let seed = match (args.random, args.seed) {
        (false, _) => None,
        (true, Some(s)) => Some(s),
        (true, None) => Some(env_seed()?.unwrap_or(0)),
    };
    let sim = simulate(args.t, args.s, phase, seed)?;
    let text = render_simulation(&sim, args.format.unwrap_or(OutputFormat::Text))?;
    emit(open_output(args.out.as_deref())?, stdout, &text)?;
    Ok(EXIT_OK)
}
