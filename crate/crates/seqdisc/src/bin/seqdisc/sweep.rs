//! `sweep`: one-parameter CSV grids of the headline quantities.
//!
//! Axes and their columns:
//!
//! * `s` / `eta1` — per-point optima of every scheme:
//!   `p_ff_min,p_ss_min_failure,regime_min_failure,p_ss_max,regime_success_only,
//!   i_usd_ab_max,i_usd_bc_max,i_ff_ab_max`.
//! * `q1b` — the symmetric two-observer family `q1b = q1c`, `t = √s`:
//!   joint success and both-conclusive information.
//! * `q1` — the lone-observer family `q2 = s²/q1`: guessing and
//!   conclusive-round information.
//! * `c` — the flip-flop mixing probability: single and sequential success,
//!   sequential failure, and both information quantities.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use seqdisc::info::{
    mi_ff_ab, mi_ff_bc, mi_guessing, mi_usd_ab, mi_usd_bc, optimize_mi_ff_ab, optimize_mi_usd_ab,
    optimize_mi_usd_bc,
};
use seqdisc::model::{DiscriminationProblem, SequentialStrategy};
use seqdisc::optimize::{
    ff_sequential_failure, ff_sequential_joint, ff_single, optimize_minfail_success,
    optimize_success_only, symmetric_joint_success, FlipFlopStrategy,
};

use crate::config::FileConfig;
use crate::{fmt_num, write_text, CliError, CliResult, ProblemArgs};

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Preparation overlap; rows carry the per-overlap optima.
    S,
    /// Prior of state 1; rows carry the per-prior optima.
    Eta1,
    /// Symmetric two-observer failure parameter `q1b = q1c` at `t = √s`.
    Q1b,
    /// Lone-observer failure probability on state 1, with `q2 = s²/q1`.
    Q1,
    /// Flip-flop mixing probability.
    C,
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, String> {
        <Axis as ValueEnum>::from_str(raw, true)
    }
}

/// Arguments of `sweep`.
#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Parameter to sweep.
    #[arg(long, value_enum)]
    pub axis: Option<Axis>,
    /// Lower end of the sweep range (axis-specific default).
    #[arg(long)]
    pub from: Option<f64>,
    /// Upper end of the sweep range (axis-specific default).
    #[arg(long)]
    pub to: Option<f64>,
    /// Number of grid points (at least 2).
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

/// Closed uniform grid with exact endpoints.
pub fn closed_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn default_range(axis: Axis, s: f64) -> (f64, f64) {
    match axis {
        Axis::S => (0.05, 0.95),
        Axis::Eta1 => (0.05, 0.95),
        Axis::Q1b => (s, 1.0),
        Axis::Q1 => (s * s, 1.0),
        Axis::C => (0.0, 1.0),
    }
}

pub fn run(args: &SweepArgs, cfg: &FileConfig) -> CliResult<()> {
    let axis = cfg
        .get_opt("axis", args.axis)?
        .ok_or_else(|| CliError::Param("sweep needs --axis (s, eta1, q1b, q1 or c)".into()))?;
    let s = cfg.get("s", args.problem.s, 0.25)?;
    let eta1 = cfg.get("eta1", args.problem.eta1, 0.5)?;
    let resolution = cfg.get("resolution", args.resolution, 401)?;
    if resolution < 2 {
        return Err(CliError::Param(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let (lo_default, hi_default) = default_range(axis, s);
    let lo = cfg.get("from", args.from, lo_default)?;
    let hi = cfg.get("to", args.to, hi_default)?;
    // The negation keeps NaN endpoints on the error path.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lo < hi) {
        return Err(CliError::Param(format!(
            "empty sweep range: from = {lo} is not below to = {hi}"
        )));
    }
    let grid = closed_grid(lo, hi, resolution);
    let csv = match axis {
        Axis::S | Axis::Eta1 => sweep_optima(axis, &grid, s, eta1)?,
        Axis::Q1b => sweep_symmetric(&DiscriminationProblem::new(s, eta1)?, &grid)?,
        Axis::Q1 => sweep_observer(&DiscriminationProblem::new(s, eta1)?, &grid)?,
        Axis::C => sweep_flipflop(&DiscriminationProblem::new(s, eta1)?, &grid)?,
    };
    write_text(args.output.as_deref(), &csv)
}

/// Per-point optima of every scheme, varying either `s` or `eta1`.
fn sweep_optima(axis: Axis, grid: &[f64], s_fixed: f64, eta1_fixed: f64) -> CliResult<String> {
    let label = if matches!(axis, Axis::S) { "s" } else { "eta1" };
    let mut out = format!(
        "{label},p_ff_min,p_ss_min_failure,regime_min_failure,p_ss_max,\
         regime_success_only,i_usd_ab_max,i_usd_bc_max,i_ff_ab_max\n"
    );
    for &x in grid {
        let (s, eta1) = match axis {
            Axis::S => (x, eta1_fixed),
            _ => (s_fixed, x),
        };
        let problem = DiscriminationProblem::new(s, eta1)?;
        let minfail = optimize_minfail_success(&problem)?;
        let success = optimize_success_only(&problem)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt_num(x),
            fmt_num(minfail.p_ff),
            fmt_num(minfail.p_ss),
            minfail.regime,
            fmt_num(success.p_ss),
            success.regime,
            fmt_num(optimize_mi_usd_ab(&problem).mi),
            fmt_num(optimize_mi_usd_bc(&problem).mi),
            fmt_num(optimize_mi_ff_ab(&problem).mi),
        ));
    }
    Ok(out)
}

/// The symmetric two-observer family `q1b = q1c = q` at `t = √s`.
fn sweep_symmetric(problem: &DiscriminationProblem, grid: &[f64]) -> CliResult<String> {
    if problem.s() <= 0.0 {
        return Err(CliError::Param(
            "the q1b sweep needs s > 0: the symmetric family sits at the \
             intermediate overlap √s, which degenerates for orthogonal \
             preparations"
                .into(),
        ));
    }
    let t = problem.s().sqrt();
    let mut out = String::from("q1b,p_ss,i_usd_bc\n");
    for &q in grid {
        let strategy = SequentialStrategy::new(problem, t, q, q)?;
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_num(q),
            fmt_num(symmetric_joint_success(problem, q)),
            fmt_num(mi_usd_bc(problem, &strategy).mi),
        ));
    }
    Ok(out)
}

/// The lone-observer family `q2 = s²/q1`.
fn sweep_observer(problem: &DiscriminationProblem, grid: &[f64]) -> CliResult<String> {
    let s2 = problem.s() * problem.s();
    let mut out = String::from("q1,i_guessing,i_usd_ab\n");
    for &q1 in grid {
        // q1 = 0 is only reachable for s = 0, where the partner failure
        // probability is 0 as well.
        let q2 = if q1 > 0.0 { s2 / q1 } else { 0.0 };
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_num(q1),
            fmt_num(mi_guessing(problem, q1, q2)?),
            fmt_num(mi_usd_ab(problem, q1)?.mi),
        ));
    }
    Ok(out)
}

/// The flip-flop family over the mixing probability `c`.
fn sweep_flipflop(problem: &DiscriminationProblem, grid: &[f64]) -> CliResult<String> {
    if problem.s() <= 0.0 {
        return Err(CliError::Param(
            "the c sweep needs s > 0: the two-observer flip-flop chain has no \
             intermediate overlap for orthogonal preparations"
                .into(),
        ));
    }
    let t = problem.s().sqrt();
    let mut out = String::from(
        "c,p_single_success,p_sequential_joint,p_sequential_failure,i_ff_ab,i_ff_bc\n",
    );
    for &c in grid {
        let ff = FlipFlopStrategy::new(c)?;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_num(c),
            fmt_num(ff_single(problem, &ff).p_succ),
            fmt_num(ff_sequential_joint(problem, &ff)),
            fmt_num(ff_sequential_failure(problem, &ff)),
            fmt_num(mi_ff_ab(problem, &ff).mi),
            fmt_num(mi_ff_bc(problem, &ff, t)?),
        ));
    }
    Ok(out)
}
