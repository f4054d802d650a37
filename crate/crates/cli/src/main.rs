//! `surfcurve`: batch driver for frame, rectifying, isometry and theorem
//! checks on catalog surfaces and curves.
//!
//! Exit status is 0 when every check passes or is skipped, 1 on a check
//! failure and 2 on a configuration error.

mod config;
mod frame;
mod isometry;
mod output;
mod rectify;
mod theorem;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::{ConfigError, RunConfig, TARGET_FIXTURES};
use output::{Emitter, Format};

#[derive(Parser)]
#[command(
    name = "surfcurve",
    version,
    about = "Curves on surfaces: frames, rectifying curves and isometry checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// JSON run configuration; defaults select every shipped fixture.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `output.dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Treat identities that exceed their tolerance as failures.
    #[arg(long)]
    strict: bool,
    /// Seed for the random tangent coefficients (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Output format; repeat for several (overrides `output.formats`).
    #[arg(long = "format", value_enum)]
    formats: Vec<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Frenet and Darboux frames along each target curve.
    Frame(RunArgs),
    /// Rectifying residual, decomposition and class of each target curve.
    Rectify(RunArgs),
    /// Metric deviation and geodesic-curvature invariance for surface pairs.
    Isometry(RunArgs),
    /// Theorem checks on the shipped fixture pairs.
    Theorem(RunArgs),
    /// List surfaces, curves, pairs, fixtures and checks.
    Catalog {
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

pub struct Run {
    pub cfg: RunConfig,
    pub strict: bool,
}

fn prepare(args: &RunArgs) -> Result<(Run, Emitter)> {
    let mut cfg = match &args.config {
        Some(p) => {
            let cfg = RunConfig::load(p)?;
            cfg.check_names()?;
            cfg
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if !args.formats.is_empty() {
        cfg.output.formats = args.formats.clone();
    }
    if cfg.output.formats.is_empty() {
        cfg.output.formats = vec![Format::Json, Format::Csv];
    }
    if let Some(out) = &args.out {
        cfg.output.dir = Some(out.clone());
    }
    let dir = cfg
        .output
        .dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("surfcurve-out"));
    let emit = Emitter::new(&dir, cfg.output.formats.iter().copied())?;
    Ok((
        Run {
            cfg,
            strict: args.strict,
        },
        emit,
    ))
}

#[derive(Serialize)]
struct Entry {
    name: &'static str,
    description: &'static str,
}

fn entries(list: &[(&'static str, &'static str)]) -> Vec<Entry> {
    list.iter()
        .map(|&(name, description)| Entry { name, description })
        .collect()
}

fn catalog(json: bool) -> Result<()> {
    let checks: Vec<(&'static str, &'static str)> = surfcurve::theorems::TheoremId::ALL
        .iter()
        .map(|t| (t.as_str(), "theorem checker"))
        .chain([
            (
                "matched-products",
                "mu sin(theta) and mu cos(theta) agree across the pair",
            ),
            (
                "internal-consistency",
                "closed-form chart components against direct dot products",
            ),
        ])
        .collect();
    let sections = [
        ("surfaces", surfcurve::surfaces::catalog_names()),
        ("curves", surfcurve::frames::curve_names()),
        ("pairs", surfcurve::isometry::pair_names()),
        ("targets", TARGET_FIXTURES),
        ("fixtures", surfcurve::theorems::fixture_names()),
        ("checks", checks.as_slice()),
    ];
    let mut text = String::new();
    if json {
        let map: std::collections::BTreeMap<&str, Vec<Entry>> =
            sections.iter().map(|(k, v)| (*k, entries(v))).collect();
        text = serde_json::to_string_pretty(&map)? + "\n";
    } else {
        for (title, list) in sections {
            text += &format!("{title}:\n");
            for (name, description) in list {
                text += &format!("  {name:<22} {description}\n");
            }
        }
    }
    // a closed pipe (`surfcurve catalog | head`) is not an error
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    Ok(())
}

type Handler = fn(&Run, &mut Emitter) -> Result<Outcome>;

fn dispatch(cli: Cli) -> Result<Outcome> {
    let (args, f): (RunArgs, Handler) = match cli.command {
        Command::Catalog { json } => {
            catalog(json)?;
            return Ok(Outcome::Pass);
        }
        Command::Frame(a) => (a, frame::run),
        Command::Rectify(a) => (a, rectify::run),
        Command::Isometry(a) => (a, isometry::run),
        Command::Theorem(a) => (a, theorem::run),
    };
    let (run, mut emit) = prepare(&args)?;
    let outcome = f(&run, &mut emit)?;
    for p in emit.written() {
        eprintln!("wrote {}", p.display());
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) if e.is::<ConfigError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
