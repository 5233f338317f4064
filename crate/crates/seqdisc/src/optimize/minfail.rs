//! Minimum joint failure probability and the strategy attaining it.
//!
//! Because the derived failure probabilities obey `q2b·q2c = s²/(q1b·q1c)`,
//! the joint failure probability depends on the strategy only through the
//! product `x = q1b·q1c`:
//!
//! ```text
//! P_ff(x) = η₁·x + η₂·s²/x,    x ∈ [s², 1].
//! ```
//!
//! Its unconstrained minimizer `x* = s·√(η₂/η₁)` may fall outside the
//! admissible interval, which splits the minimum into three prior regimes:
//!
//! | regime                         | product `x` | minimum `P_ff` |
//! |--------------------------------|-------------|----------------|
//! | `η₁ < s²/(1+s²)` (low prior)   | `1`         | `η₁ + η₂s²`    |
//! | middle                         | `s·√(η₂/η₁)`| `2√(η₁η₂)·s`   |
//! | `η₁ > 1/(1+s²)` (high prior)   | `s²`        | `η₂ + η₁s²`    |
//!
//! In the clamped regimes the optimal measurement never identifies the rare
//! state: with `x = 1` both observers always fail on state 1, with `x = s²`
//! always on state 2.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DiscriminationProblem, Method, OptimizationResult, Regime, SequentialStrategy};

use super::joint_success;

/// The minimum joint failure probability and where it sits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FailureOptimum {
    /// Product `q1b·q1c` at the optimum.
    pub q_product: f64,
    /// Minimum joint failure probability.
    pub p_ff: f64,
    /// Prior regime selecting the branch ([`Regime::LowPrior`],
    /// [`Regime::Middle`] or [`Regime::HighPrior`]).
    pub regime: Regime,
}

/// Minimum of the joint failure probability over all strategies.
///
/// Pure closed forms; the seams `η₁ = s²/(1+s²)` and `η₁ = 1/(1+s²)` are
/// assigned to the middle branch, whose values agree with the adjacent
/// branch there.
pub fn min_joint_failure(problem: &DiscriminationProblem) -> FailureOptimum {
    let s = problem.s();
    let (eta1, eta2) = (problem.eta1(), problem.eta2());
    let s2 = s * s;
    if eta1 < s2 / (1.0 + s2) {
        FailureOptimum {
            q_product: 1.0,
            p_ff: eta1 + eta2 * s2,
            regime: Regime::LowPrior,
        }
    } else if eta1 > 1.0 / (1.0 + s2) {
        FailureOptimum {
            q_product: s2,
            p_ff: eta2 + eta1 * s2,
            regime: Regime::HighPrior,
        }
    } else {
        FailureOptimum {
            q_product: s * (eta2 / eta1).sqrt(),
            p_ff: 2.0 * (eta1 * eta2).sqrt() * s,
            regime: Regime::Middle,
        }
    }
}

/// Strategy that attains the minimum joint failure probability while
/// maximizing the joint success probability.
///
/// The optimum sits at intermediate overlap `t = √s` with the failure
/// product split evenly, `q1b = q1c = √x`; the reported `p_ff` is the
/// closed-form bound from [`min_joint_failure`]. Requires `s > 0`: for
/// orthogonal preparations the optimal `t = √s` degenerates and there is
/// no failure tradeoff to begin with.
pub fn optimize_minfail_success(problem: &DiscriminationProblem) -> Result<OptimizationResult> {
    let s = problem.s();
    if s <= 0.0 {
        return Err(Error::ConstraintViolation(
            "orthogonal preparations (s = 0) are discriminated perfectly; \
             the failure-minimizing construction t = √s degenerates"
                .into(),
        ));
    }
    let failure = min_joint_failure(problem);
    let q = failure.q_product.sqrt();
    let strategy = SequentialStrategy::new(problem, s.sqrt(), q, q)?;
    Ok(OptimizationResult {
        strategy,
        p_ss: joint_success(problem, &strategy),
        p_ff: failure.p_ff,
        regime: failure.regime,
        method: Method::ClosedForm,
    })
}
