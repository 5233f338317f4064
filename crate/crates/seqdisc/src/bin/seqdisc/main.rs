//! Command-line interface for the sequential-discrimination toolkit.
//!
//! Subcommands:
//!
//! * `optimize` — optimal working point of a scheme plus the information
//!   quantities evaluated there, as JSON.
//! * `sweep` — one-parameter grids of the headline quantities, as CSV.
//! * `simulate` — Monte-Carlo run of the measurement chain with a per-trial
//!   ledger and an empirical-versus-analytic statistics report.
//! * `qkd` — Monte-Carlo run followed by key sifting; ASCII keys plus a
//!   JSON summary.
//! * `figure` — the datasets behind the nine standard figures, as CSV.
//!
//! Numeric CSV columns are printed with 17 significant digits so parsing
//! them back yields the original doubles exactly. Exit status is 0 on
//! success, 2 for parameter or usage errors, and 3 for runtime (numerical
//! or I/O) errors. `SEQDISC_THREADS` caps the Monte-Carlo worker count.

mod config;
mod figures;
mod optimize_cmd;
mod simulate;
mod sweep;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Errors surfaced by the CLI, split by exit status: parameter and usage
/// problems exit 2, runtime (numerical or I/O) problems exit 3.
#[derive(Debug)]
pub enum CliError {
    /// Invalid parameters, configuration, or usage.
    Param(String),
    /// Numerical degeneracies and I/O failures.
    Runtime(String),
}

/// Result alias for CLI operations.
pub type CliResult<T> = Result<T, CliError>;

impl From<seqdisc::Error> for CliError {
    fn from(err: seqdisc::Error) -> Self {
        match err {
            seqdisc::Error::OutOfRange { .. }
            | seqdisc::Error::ConstraintViolation(_)
            | seqdisc::Error::UnsupportedPriors { .. } => CliError::Param(err.to_string()),
            seqdisc::Error::NumericalDegeneracy(_) | seqdisc::Error::NoCrossing { .. } => {
                CliError::Runtime(err.to_string())
            }
        }
    }
}

/// Measurement scheme selecting the working point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    /// Minimize the joint failure probability, then maximize joint success.
    MinFailure,
    /// Maximize the joint success probability with no failure constraint.
    SuccessOnly,
    /// Both observers draw one of the two one-sided projective setups.
    FlipFlop,
    /// A lone observer draws one of the two one-sided projective setups.
    FlipFlopSingle,
}

impl Scheme {
    /// Stable name, matching the command-line spelling.
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::MinFailure => "min-failure",
            Scheme::SuccessOnly => "success-only",
            Scheme::FlipFlop => "flip-flop",
            Scheme::FlipFlopSingle => "flip-flop-single",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, String> {
        <Scheme as ValueEnum>::from_str(raw, true)
    }
}

/// Shared preparation parameters.
#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Overlap of the two preparations, in [0, 1).
    #[arg(long)]
    pub s: Option<f64>,
    /// Prior probability of state 1, in (0, 1).
    #[arg(long)]
    pub eta1: Option<f64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "seqdisc",
    version,
    about = "Sequential unambiguous discrimination of two nonorthogonal qubit states",
    long_about = "Optimal working points, information curves, figure datasets, and \
                  Monte-Carlo runs for a chain of two observers who each try to \
                  identify one of two nonorthogonal qubit preparations without \
                  ever being wrong."
)]
struct Cli {
    /// Flat `key = value` configuration file; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a scheme's optimal working point and its information content.
    Optimize(optimize_cmd::OptimizeArgs),
    /// Tabulate quantities along a one-parameter grid as CSV.
    Sweep(sweep::SweepArgs),
    /// Monte-Carlo run of the measurement chain.
    Simulate(simulate::SimulateArgs),
    /// Monte-Carlo run followed by key sifting.
    Qkd(simulate::QkdArgs),
    /// Emit the dataset behind one of the standard figures as CSV.
    Figure(figures::FigureArgs),
}

/// Formats a double with 17 significant digits so CSV round-trips exactly.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes a JSON value with stable key order and a trailing newline.
pub fn json_pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|err| CliError::Runtime(format!("writing stdout: {err}")))
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|err| CliError::Runtime(format!("writing {}: {err}", path.display()))),
    }
}

/// Applies `SEQDISC_THREADS` to the global worker pool.
fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("SEQDISC_THREADS") else {
        return Ok(());
    };
    let workers: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Param(format!(
            "SEQDISC_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|err| CliError::Runtime(format!("thread pool: {err}")))
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    let cfg = config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Optimize(args) => optimize_cmd::run(&args, &cfg),
        Command::Sweep(args) => sweep::run(&args, &cfg),
        Command::Simulate(args) => simulate::run_simulate(&args, &cfg),
        Command::Qkd(args) => simulate::run_qkd(&args, &cfg),
        Command::Figure(args) => figures::run(&args, &cfg),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Param(msg)) => {
            eprintln!("error: {msg}");
            process::exit(2);
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            process::exit(3);
        }
    }
}
