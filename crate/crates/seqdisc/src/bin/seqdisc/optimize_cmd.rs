//! `optimize`: a scheme's best working point and its information content.
//!
//! The report is JSON. For the POVM-based schemes it carries the optimizer
//! (strategy, success and failure probabilities, regime, method) and five
//! information quantities evaluated there: the guessing information and the
//! conclusive-round information of the first observer, the conclusive-round
//! information of the second observer, the both-conclusive information
//! shared by the two observers, and (for equal priors) the minimum-error
//! benchmark of a single observer. The flip-flop report instead carries the
//! information-maximizing mixing probability and the key-balanced point
//! `c = η₁`.

use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use seqdisc::info::{
    helstrom_mi, mi_ff_ab, mi_ff_bc, mi_guessing, mi_usd_bc, mi_usd_observer, optimize_mi_ff_ab,
};
use seqdisc::model::{DiscriminationProblem, OptimizationResult};
use seqdisc::optimize::{
    ff_sequential_failure, ff_sequential_joint, ff_single, optimize_minfail_success,
    optimize_success_only, FlipFlopStrategy,
};

use crate::config::FileConfig;
use crate::{json_pretty, write_text, CliResult, ProblemArgs, Scheme};

/// Arguments of `optimize`.
#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Scheme to optimize.
    #[arg(long, value_enum)]
    pub scheme: Option<Scheme>,
    /// Also evaluate the flip-flop quantities at this mixing probability.
    #[arg(long)]
    pub c: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

pub fn run(args: &OptimizeArgs, cfg: &FileConfig) -> CliResult<()> {
    let s = cfg.get("s", args.problem.s, 0.25)?;
    let eta1 = cfg.get("eta1", args.problem.eta1, 0.5)?;
    let scheme = cfg.get("scheme", args.scheme, Scheme::MinFailure)?;
    let problem = DiscriminationProblem::new(s, eta1)?;
    let report = match scheme {
        Scheme::MinFailure | Scheme::SuccessOnly if args.c.is_some() => {
            return Err(crate::CliError::Param(format!(
                "--c applies to the flip-flop schemes only, not {}",
                scheme.as_str()
            )));
        }
        Scheme::MinFailure => povm_report(&problem, scheme, optimize_minfail_success(&problem)?)?,
        Scheme::SuccessOnly => povm_report(&problem, scheme, optimize_success_only(&problem)?)?,
        Scheme::FlipFlop | Scheme::FlipFlopSingle => {
            ff_report(&problem, cfg.get_opt("c", args.c)?)?
        }
    };
    write_text(args.output.as_deref(), &json_pretty(&report))
}

/// Minimum-error benchmark, or `null` for unequal priors where this report
/// does not provide it.
fn helstrom_value(problem: &DiscriminationProblem) -> Value {
    match helstrom_mi(problem) {
        Ok(value) => json!(value),
        Err(_) => Value::Null,
    }
}

/// Report for the POVM-based schemes.
fn povm_report(
    problem: &DiscriminationProblem,
    scheme: Scheme,
    result: OptimizationResult,
) -> CliResult<Value> {
    let strategy = &result.strategy;
    let information = json!({
        "guessing_ab": mi_guessing(problem, strategy.q1b(), strategy.q2b())?,
        "usd_ab": mi_usd_observer(problem, strategy.q1b(), strategy.q2b())?,
        "usd_ac": mi_usd_observer(problem, strategy.q1c(), strategy.q2c())?,
        "usd_bc": mi_usd_bc(problem, strategy).mi,
        "helstrom_ab": helstrom_value(problem),
    });
    Ok(json!({
        "problem": problem,
        "scheme": scheme.as_str(),
        "result": result,
        "information": information,
    }))
}

/// Report for the flip-flop family: the information-optimal mixing
/// probability, the key-balanced point, and optionally a user-supplied `c`.
fn ff_report(problem: &DiscriminationProblem, c_flag: Option<f64>) -> CliResult<Value> {
    let best = optimize_mi_ff_ab(problem);
    let best_ff = FlipFlopStrategy::new(best.arg)?;
    let c_balanced = problem.eta1();
    let balanced = FlipFlopStrategy::new(c_balanced)?;
    // The two-observer chain needs a nonzero intermediate overlap, so the
    // second-observer information is undefined for orthogonal preparations.
    let bc_balanced = if problem.s() > 0.0 {
        json!(mi_ff_bc(problem, &balanced, problem.s().sqrt())?)
    } else {
        Value::Null
    };
    let at_c = match c_flag {
        None => Value::Null,
        Some(c) => {
            let ff = FlipFlopStrategy::new(c)?;
            json!({
                "c": c,
                "single": ff_single(problem, &ff),
                "sequential_joint": ff_sequential_joint(problem, &ff),
                "sequential_failure": ff_sequential_failure(problem, &ff),
                "info_ab": mi_ff_ab(problem, &ff),
            })
        }
    };
    Ok(json!({
        "problem": problem,
        "scheme": "flip-flop",
        "result": {
            "info_ab_max": best,
            "single_at_info_max": ff_single(problem, &best_ff),
            "c_balanced": c_balanced,
            "sequential_joint_at_balanced": ff_sequential_joint(problem, &balanced),
            "sequential_failure_at_balanced": ff_sequential_failure(problem, &balanced),
            "info_bc_at_balanced": bc_balanced,
        },
        "information": {
            "ff_ab_max": best.mi,
            "ff_bc_balanced": bc_balanced,
            "helstrom_ab": helstrom_value(problem),
        },
        "at_c": at_c,
    }))
}
