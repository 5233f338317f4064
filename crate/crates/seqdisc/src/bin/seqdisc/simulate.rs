//! `simulate` and `qkd`: Monte-Carlo runs of the measurement chain.
//!
//! `simulate` draws the requested number of trials, optionally writes the
//! per-trial ledger as CSV, and reports empirical statistics next to their
//! analytic references with z-scores (a z-score is `null` when its standard
//! error vanishes while the deviation does not). `qkd` runs the same chain
//! and then sifts the conclusive outcomes into shared keys: three ASCII bit
//! lines (first observer, second observer, both conclusive) plus a JSON
//! summary with rate, balance, and conclusive count per key. Identical
//! seeds produce byte-identical outputs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::{json, Value};

use seqdisc::model::{DiscriminationProblem, SequentialStrategy};
use seqdisc::neumark::{build_bob_unitary, build_charlie_unitary, StageUnitary};
use seqdisc::optimize::{
    ff_sequential_failure, ff_sequential_joint, ff_single, joint_failure, joint_success,
    optimize_minfail_success, optimize_success_only, FlipFlopStrategy,
};
use seqdisc::sim::{
    empirical_stats, run_flipflop_sequential, run_flipflop_single, run_sequential, sift_keys,
    Estimate, Key, SimulationStats, TrialLedger,
};

use crate::config::FileConfig;
use crate::{json_pretty, write_text, CliError, CliResult, ProblemArgs, Scheme};

/// Arguments of `simulate`.
#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Scheme fixing the measurement chain.
    #[arg(long, value_enum)]
    pub scheme: Option<Scheme>,
    /// Flip-flop mixing probability (defaults to the key-balanced η₁).
    #[arg(long)]
    pub c: Option<f64>,
    /// Intermediate overlap of a custom strategy (needs --q1b and --q1c).
    #[arg(long)]
    pub t: Option<f64>,
    /// First observer's failure probability on state 1 (custom strategy).
    #[arg(long)]
    pub q1b: Option<f64>,
    /// Second observer's failure probability on state 1 (custom strategy).
    #[arg(long)]
    pub q1c: Option<f64>,
    /// Number of Monte-Carlo trials.
    #[arg(long, short = 'n')]
    pub trials: Option<u64>,
    /// Seed of the deterministic per-trial streams.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the per-trial ledger CSV here (skipped when omitted).
    #[arg(long)]
    pub out_ledger: Option<PathBuf>,
    /// Write the statistics JSON here; stdout when omitted.
    #[arg(long)]
    pub out_stats: Option<PathBuf>,
    /// Write the six-dimensional stage unitaries as JSON here.
    #[arg(long)]
    pub dump_unitaries: Option<PathBuf>,
}

/// Arguments of `qkd`.
#[derive(Debug, Args)]
pub struct QkdArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Scheme fixing the measurement chain.
    #[arg(long, value_enum)]
    pub scheme: Option<Scheme>,
    /// Flip-flop mixing probability (defaults to the key-balanced η₁).
    #[arg(long)]
    pub c: Option<f64>,
    /// Intermediate overlap of a custom strategy (needs --q1b and --q1c).
    #[arg(long)]
    pub t: Option<f64>,
    /// First observer's failure probability on state 1 (custom strategy).
    #[arg(long)]
    pub q1b: Option<f64>,
    /// Second observer's failure probability on state 1 (custom strategy).
    #[arg(long)]
    pub q1c: Option<f64>,
    /// Number of Monte-Carlo trials.
    #[arg(long, short = 'n')]
    pub trials: Option<u64>,
    /// Seed of the deterministic per-trial streams.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the three key lines here; stdout when omitted.
    #[arg(long)]
    pub out_keys: Option<PathBuf>,
    /// Write the key summary JSON here; stdout when omitted.
    #[arg(long)]
    pub out_summary: Option<PathBuf>,
}

/// Resolved measurement chain: the scheme plus its operating parameters.
struct ChainSpec {
    scheme: Scheme,
    /// Flip-flop mixing probability (ignored by the POVM schemes).
    c: f64,
    /// Explicit `(t, q1b, q1c)` overriding the scheme's optimum.
    custom: Option<(f64, f64, f64)>,
}

/// Validates the strategy-selection flags against the scheme and applies
/// the flag > file > default precedence where a key is applicable.
fn resolve_chain(
    scheme: Scheme,
    c_flag: Option<f64>,
    t: Option<f64>,
    q1b: Option<f64>,
    q1c: Option<f64>,
    cfg: &FileConfig,
    eta1: f64,
) -> CliResult<ChainSpec> {
    match scheme {
        Scheme::MinFailure | Scheme::SuccessOnly => {
            if c_flag.is_some() {
                return Err(CliError::Param(
                    "--c applies to the flip-flop schemes only".into(),
                ));
            }
            let t = cfg.get_opt("t", t)?;
            let q1b = cfg.get_opt("q1b", q1b)?;
            let q1c = cfg.get_opt("q1c", q1c)?;
            let custom = match (t, q1b, q1c) {
                (None, None, None) => None,
                (Some(t), Some(q1b), Some(q1c)) => Some((t, q1b, q1c)),
                _ => {
                    return Err(CliError::Param(
                        "a custom strategy needs all of t, q1b and q1c".into(),
                    ))
                }
            };
            Ok(ChainSpec {
                scheme,
                c: eta1,
                custom,
            })
        }
        Scheme::FlipFlop | Scheme::FlipFlopSingle => {
            if t.is_some() || q1b.is_some() || q1c.is_some() {
                return Err(CliError::Param(
                    "--t/--q1b/--q1c apply to the min-failure and success-only \
                     schemes only"
                        .into(),
                ));
            }
            let c = cfg.get("c", c_flag, eta1)?;
            Ok(ChainSpec {
                scheme,
                c,
                custom: None,
            })
        }
    }
}

/// A finished Monte-Carlo run with everything the reports need.
struct Execution {
    ledger: TrialLedger,
    /// JSON description of the operating point (strategy or `c`).
    operating_point: Value,
    /// Analytic reference values keyed by their statistics field.
    analytic: Vec<(&'static str, f64)>,
    /// Stage unitaries, when requested and defined for the scheme.
    unitaries: Option<Value>,
}

fn execute(
    problem: &DiscriminationProblem,
    spec: &ChainSpec,
    trials: u64,
    seed: u64,
    want_unitaries: bool,
) -> CliResult<Execution> {
    let (eta1, eta2) = (problem.eta1(), problem.eta2());
    match spec.scheme {
        Scheme::MinFailure | Scheme::SuccessOnly => {
            let strategy = match spec.custom {
                Some((t, q1b, q1c)) => SequentialStrategy::new(problem, t, q1b, q1c)?,
                None => match spec.scheme {
                    Scheme::MinFailure => optimize_minfail_success(problem)?.strategy,
                    _ => optimize_success_only(problem)?.strategy,
                },
            };
            let ledger = run_sequential(problem, &strategy, trials, seed)?;
            let analytic = vec![
                ("p_ss", joint_success(problem, &strategy)),
                ("p_ff", joint_failure(problem, &strategy)),
                (
                    "bob_success",
                    eta1 * strategy.p_bob(1) + eta2 * strategy.p_bob(2),
                ),
                (
                    "charlie_success",
                    eta1 * strategy.p_charlie(1) + eta2 * strategy.p_charlie(2),
                ),
            ];
            let unitaries = if want_unitaries {
                Some(json!({
                    "bob": unitary_json(&build_bob_unitary(problem, &strategy)?),
                    "charlie": unitary_json(&build_charlie_unitary(problem, &strategy)?),
                }))
            } else {
                None
            };
            Ok(Execution {
                ledger,
                operating_point: json!({ "strategy": strategy }),
                analytic,
                unitaries,
            })
        }
        Scheme::FlipFlop => {
            let ff = FlipFlopStrategy::new(spec.c)?;
            let ledger = run_flipflop_sequential(problem, &ff, trials, seed)?;
            let s = problem.s();
            // Each stage of the chain dilutes its setup to the
            // intermediate overlap √s, so a conclusive draw happens with
            // probability 1 − s per setup that can identify the prepared
            // state; the setups are drawn independently per observer.
            let marginal = (eta1 * (1.0 - ff.c()) + eta2 * ff.c()) * (1.0 - s);
            let analytic = vec![
                ("p_ss", ff_sequential_joint(problem, &ff)),
                ("p_ff", ff_sequential_failure(problem, &ff)),
                ("bob_success", marginal),
                ("charlie_success", marginal),
            ];
            let unitaries = if want_unitaries {
                let t = s.sqrt();
                let setup1 = SequentialStrategy::new(problem, t, 1.0, 1.0)?;
                let setup2 = SequentialStrategy::new(problem, t, s, s)?;
                Some(json!({
                    "setup1": {
                        "bob": unitary_json(&build_bob_unitary(problem, &setup1)?),
                        "charlie": unitary_json(&build_charlie_unitary(problem, &setup1)?),
                    },
                    "setup2": {
                        "bob": unitary_json(&build_bob_unitary(problem, &setup2)?),
                        "charlie": unitary_json(&build_charlie_unitary(problem, &setup2)?),
                    },
                }))
            } else {
                None
            };
            Ok(Execution {
                ledger,
                operating_point: json!({ "c": ff.c() }),
                analytic,
                unitaries,
            })
        }
        Scheme::FlipFlopSingle => {
            let ff = FlipFlopStrategy::new(spec.c)?;
            let ledger = run_flipflop_single(problem, &ff, trials, seed);
            let single = ff_single(problem, &ff);
            Ok(Execution {
                ledger,
                operating_point: json!({ "c": ff.c(), "single": single }),
                analytic: vec![("bob_success", single.p_succ)],
                // The projective setups act on the bare qubit; there is no
                // ancilla dilation to dump.
                unitaries: None,
            })
        }
    }
}

/// Row-major `[re, im]` serialization of one stage unitary.
fn unitary_json(stage: &StageUnitary) -> Value {
    let matrix = stage.matrix();
    let mut entries = Vec::with_capacity(36);
    for row in 0..6 {
        for col in 0..6 {
            let z = matrix[(row, col)];
            entries.push(json!([z.re, z.im]));
        }
    }
    json!({
        "role": stage.role().as_str(),
        "dim": 6,
        "layout": "row-major",
        "entries": entries,
        "unitarity_defect": stage.unitarity_defect(),
    })
}

fn estimate_for(stats: &SimulationStats, name: &str) -> Option<Estimate> {
    match name {
        "p_ss" => Some(stats.p_ss),
        "p_ff" => Some(stats.p_ff),
        "bob_success" => Some(stats.bob_success),
        "charlie_success" => Some(stats.charlie_success),
        _ => None,
    }
}

/// Standardized deviation of an estimate from its reference. Degenerate
/// estimates (zero standard error) score 0 when exact and ∞ (serialized as
/// `null`) otherwise.
fn z_score(estimate: Estimate, reference: f64) -> f64 {
    let diff = estimate.value - reference;
    if estimate.std_err > 0.0 {
        diff / estimate.std_err
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn write_ledger(path: &Path, ledger: &TrialLedger) -> CliResult<()> {
    let file = File::create(path)
        .map_err(|err| CliError::Runtime(format!("creating {}: {err}", path.display())))?;
    let mut writer = BufWriter::new(file);
    ledger
        .write_csv(&mut writer)
        .and_then(|()| writer.flush())
        .map_err(|err| CliError::Runtime(format!("writing {}: {err}", path.display())))
}

/// Shared parameter resolution for `simulate` and `qkd`.
#[allow(clippy::too_many_arguments)]
fn resolve_run(
    problem_args: &ProblemArgs,
    scheme_flag: Option<Scheme>,
    c: Option<f64>,
    t: Option<f64>,
    q1b: Option<f64>,
    q1c: Option<f64>,
    trials_flag: Option<u64>,
    seed_flag: Option<u64>,
    cfg: &FileConfig,
) -> CliResult<(DiscriminationProblem, ChainSpec, u64, u64)> {
    let s = cfg.get("s", problem_args.s, 0.25)?;
    let eta1 = cfg.get("eta1", problem_args.eta1, 0.5)?;
    let scheme = cfg.get("scheme", scheme_flag, Scheme::MinFailure)?;
    let trials = cfg.get("trials", trials_flag, 100_000)?;
    let seed = cfg.get("seed", seed_flag, 7)?;
    if trials == 0 {
        return Err(CliError::Param("trials must be at least 1".into()));
    }
    let problem = DiscriminationProblem::new(s, eta1)?;
    let spec = resolve_chain(scheme, c, t, q1b, q1c, cfg, eta1)?;
    Ok((problem, spec, trials, seed))
}

pub fn run_simulate(args: &SimulateArgs, cfg: &FileConfig) -> CliResult<()> {
    let (problem, spec, trials, seed) = resolve_run(
        &args.problem,
        args.scheme,
        args.c,
        args.t,
        args.q1b,
        args.q1c,
        args.trials,
        args.seed,
        cfg,
    )?;
    let execution = execute(&problem, &spec, trials, seed, args.dump_unitaries.is_some())?;
    let stats = empirical_stats(&execution.ledger);
    let mut analytic = serde_json::Map::new();
    let mut z_scores = serde_json::Map::new();
    for &(name, reference) in &execution.analytic {
        analytic.insert(name.to_string(), json!(reference));
        if let Some(estimate) = estimate_for(&stats, name) {
            z_scores.insert(name.to_string(), json!(z_score(estimate, reference)));
        }
    }
    let report = json!({
        "problem": problem,
        "scheme": spec.scheme.as_str(),
        "operating_point": execution.operating_point,
        "trials": trials,
        "seed": seed,
        "stats": stats,
        "analytic": Value::Object(analytic),
        "z_scores": Value::Object(z_scores),
    });
    if let Some(path) = &args.out_ledger {
        write_ledger(path, &execution.ledger)?;
    }
    if let Some(path) = &args.dump_unitaries {
        match &execution.unitaries {
            Some(unitaries) => write_text(Some(path), &json_pretty(unitaries))?,
            None => {
                return Err(CliError::Param(
                    "the flip-flop-single scheme has no stage unitaries to dump".into(),
                ))
            }
        }
    }
    write_text(args.out_stats.as_deref(), &json_pretty(&report))
}

fn key_summary(key: &Key) -> Value {
    json!({
        "rate": key.rate,
        "balance": key.balance,
        "n_conclusive": key.n_conclusive(),
    })
}

pub fn run_qkd(args: &QkdArgs, cfg: &FileConfig) -> CliResult<()> {
    let (problem, spec, trials, seed) = resolve_run(
        &args.problem,
        args.scheme,
        args.c,
        args.t,
        args.q1b,
        args.q1c,
        args.trials,
        args.seed,
        cfg,
    )?;
    let execution = execute(&problem, &spec, trials, seed, false)?;
    let keys = sift_keys(&execution.ledger);
    let key_text = format!("{}\n{}\n{}\n", keys.ab.bits, keys.ac.bits, keys.abc.bits);
    let summary = json!({
        "problem": problem,
        "scheme": spec.scheme.as_str(),
        "operating_point": execution.operating_point,
        "trials": trials,
        "seed": seed,
        "keys": {
            "ab": key_summary(&keys.ab),
            "ac": key_summary(&keys.ac),
            "abc": key_summary(&keys.abc),
        },
    });
    write_text(args.out_keys.as_deref(), &key_text)?;
    write_text(args.out_summary.as_deref(), &json_pretty(&summary))
}
