//! `figure`: the CSV datasets behind the nine standard figures.
//!
//! * `fig1` — `s,q1b,p_ss`: joint success along the symmetric family
//!   (`q1b = q1c`, `t = √s`) for s ∈ {0.1, 0.2, 0.25, 0.4}, equal priors.
//! * `fig2` — `s,p_ss_interior,p_ss_boundary,p_ss_opt`: the interior
//!   candidate (1−√s)², the one-sided boundary ½(1−s)², and the true
//!   optimum at equal priors; one row sits at the exact crossover overlap.
//! * `fig3` — `q1b,q2b,p_ss_equal,p_ss_third,product`: joint success over
//!   the failure square for equal priors and for η₁ = 1/3, plus the
//!   constraint product `q1b·q2b` whose level sets are the reachable curves.
//! * `fig4` — `eta1,s_c`: crossover overlap versus prior.
//! * `fig5` — `s,q1,i_guessing,i_usd_ab`: lone-observer information along
//!   `q2 = s²/q1` for s ∈ {0.1, 0.25, 0.4, 0.7}, equal priors.
//! * `fig6` — `eta1,s,i_usd_ab_max,q1_opt,offset`: optimized lone-observer
//!   conclusive information, its maximizer, and `s − q1_opt` for
//!   η₁ ∈ {1/2, 1/3, 1/4}.
//! * `fig7` — `s,q1b,i_usd_bc`: both-conclusive information along the
//!   symmetric family for s ∈ {0.1, 0.25, 0.4, 0.7}, equal priors.
//! * `fig8` — `eta1,s,i_usd_bc_max,q1b_opt,offset`: optimized
//!   both-conclusive information, its maximizer, and `√s − q1b_opt`.
//! * `fig9` — `s,i_helstrom,i_boundary_guessing,i_usd_max,i_ff_max`: the
//!   single-observer information hierarchy at equal priors.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use seqdisc::info::{
    helstrom_mi_overlap, mi_guessing, mi_usd_ab, mi_usd_bc, optimize_mi_ff_ab, optimize_mi_usd_ab,
    optimize_mi_usd_bc,
};
use seqdisc::model::{DiscriminationProblem, SequentialStrategy};
use seqdisc::optimize::{critical_overlap, optimize_success_only, symmetric_joint_success};

use crate::config::FileConfig;
use crate::sweep::closed_grid;
use crate::{fmt_num, write_text, CliError, CliResult};

/// Identifier of a standard figure dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

/// Arguments of `figure`.
#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Which dataset to emit (fig1 through fig9).
    #[arg(value_enum)]
    pub id: FigureId,
    /// Grid points per axis (at least 2).
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

/// Uniform grid on `[lo, hi)`, excluding the upper endpoint.
fn half_open_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

/// Overlaps of the per-curve figures.
const OVERLAP_SET: [f64; 4] = [0.1, 0.25, 0.4, 0.7];
/// Priors of the optimized-information figures.
const PRIOR_SET: [f64; 3] = [0.5, 1.0 / 3.0, 0.25];

pub fn run(args: &FigureArgs, cfg: &FileConfig) -> CliResult<()> {
    let n = cfg.get("resolution", args.resolution, 401)?;
    if n < 2 {
        return Err(CliError::Param(format!(
            "resolution must be at least 2, got {n}"
        )));
    }
    let csv = match args.id {
        FigureId::Fig1 => fig1(n)?,
        FigureId::Fig2 => fig2(n)?,
        FigureId::Fig3 => fig3(n),
        FigureId::Fig4 => fig4(n)?,
        FigureId::Fig5 => fig5(n)?,
        FigureId::Fig6 => fig6(n)?,
        FigureId::Fig7 => fig7(n)?,
        FigureId::Fig8 => fig8(n)?,
        FigureId::Fig9 => fig9(n)?,
    };
    write_text(args.output.as_deref(), &csv)
}

fn fig1(n: usize) -> CliResult<String> {
    let mut out = String::from("s,q1b,p_ss\n");
    for &s in &[0.1, 0.2, 0.25, 0.4] {
        let problem = DiscriminationProblem::new(s, 0.5)?;
        for q in closed_grid(s, 1.0, n) {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_num(s),
                fmt_num(q),
                fmt_num(symmetric_joint_success(&problem, q)),
            ));
        }
    }
    Ok(out)
}

fn fig2(n: usize) -> CliResult<String> {
    let mut overlaps = half_open_grid(0.0, 1.0, n);
    // A row at the exact crossover keeps the equality of the two candidate
    // curves visible in the dataset itself.
    overlaps.push(critical_overlap(0.5)?);
    overlaps.sort_by(f64::total_cmp);
    let mut out = String::from("s,p_ss_interior,p_ss_boundary,p_ss_opt\n");
    for &s in &overlaps {
        let interior = (1.0 - s.sqrt()).powi(2);
        let boundary = 0.5 * (1.0 - s) * (1.0 - s);
        // Orthogonal preparations are told apart with certainty.
        let opt = if s == 0.0 {
            1.0
        } else {
            optimize_success_only(&DiscriminationProblem::new(s, 0.5)?)?.p_ss
        };
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_num(s),
            fmt_num(interior),
            fmt_num(boundary),
            fmt_num(opt),
        ));
    }
    Ok(out)
}

fn fig3(n: usize) -> String {
    let grid = closed_grid(0.0, 1.0, n);
    let mut out = String::with_capacity(n * n * 110);
    out.push_str("q1b,q2b,p_ss_equal,p_ss_third,product\n");
    for &a in &grid {
        for &b in &grid {
            let equal = 0.5 * ((1.0 - a).powi(2) + (1.0 - b).powi(2));
            let third = (1.0 - a).powi(2) / 3.0 + 2.0 * (1.0 - b).powi(2) / 3.0;
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_num(a),
                fmt_num(b),
                fmt_num(equal),
                fmt_num(third),
                fmt_num(a * b),
            ));
        }
    }
    out
}

fn fig4(n: usize) -> CliResult<String> {
    let mut out = String::from("eta1,s_c\n");
    for eta1 in closed_grid(0.05, 0.95, n) {
        out.push_str(&format!(
            "{},{}\n",
            fmt_num(eta1),
            fmt_num(critical_overlap(eta1)?),
        ));
    }
    Ok(out)
}

fn fig5(n: usize) -> CliResult<String> {
    let mut out = String::from("s,q1,i_guessing,i_usd_ab\n");
    for &s in &OVERLAP_SET {
        let problem = DiscriminationProblem::new(s, 0.5)?;
        for q1 in closed_grid(s * s, 1.0, n) {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_num(s),
                fmt_num(q1),
                fmt_num(mi_guessing(&problem, q1, s * s / q1)?),
                fmt_num(mi_usd_ab(&problem, q1)?.mi),
            ));
        }
    }
    Ok(out)
}

fn fig6(n: usize) -> CliResult<String> {
    let mut out = String::from("eta1,s,i_usd_ab_max,q1_opt,offset\n");
    for &eta1 in &PRIOR_SET {
        for s in half_open_grid(0.0, 1.0, n) {
            let best = optimize_mi_usd_ab(&DiscriminationProblem::new(s, eta1)?);
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_num(eta1),
                fmt_num(s),
                fmt_num(best.mi),
                fmt_num(best.arg),
                fmt_num(s - best.arg),
            ));
        }
    }
    Ok(out)
}

fn fig7(n: usize) -> CliResult<String> {
    let mut out = String::from("s,q1b,i_usd_bc\n");
    for &s in &OVERLAP_SET {
        let problem = DiscriminationProblem::new(s, 0.5)?;
        let t = s.sqrt();
        for q in closed_grid(s, 1.0, n) {
            let strategy = SequentialStrategy::new(&problem, t, q, q)?;
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_num(s),
                fmt_num(q),
                fmt_num(mi_usd_bc(&problem, &strategy).mi),
            ));
        }
    }
    Ok(out)
}

fn fig8(n: usize) -> CliResult<String> {
    let mut out = String::from("eta1,s,i_usd_bc_max,q1b_opt,offset\n");
    for &eta1 in &PRIOR_SET {
        for s in half_open_grid(0.0, 1.0, n) {
            let best = optimize_mi_usd_bc(&DiscriminationProblem::new(s, eta1)?);
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_num(eta1),
                fmt_num(s),
                fmt_num(best.mi),
                fmt_num(best.arg),
                fmt_num(s.sqrt() - best.arg),
            ));
        }
    }
    Ok(out)
}

fn fig9(n: usize) -> CliResult<String> {
    let mut out = String::from("s,i_helstrom,i_boundary_guessing,i_usd_max,i_ff_max\n");
    for s in half_open_grid(0.0, 1.0, n) {
        let problem = DiscriminationProblem::new(s, 0.5)?;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_num(s),
            fmt_num(helstrom_mi_overlap(s)?),
            fmt_num(mi_guessing(&problem, 1.0, s * s)?),
            fmt_num(optimize_mi_usd_ab(&problem).mi),
            fmt_num(optimize_mi_ff_ab(&problem).mi),
        ));
    }
    Ok(out)
}
