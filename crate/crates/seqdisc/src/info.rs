//! Mutual-information figures of merit for every link of the chain.
//!
//! Each observer's three-outcome measurement turns the prepared-state random
//! variable `X ∈ {1, 2}` (priors `η₁`, `η₂`) into an outcome variable
//! `Y ∈ {1, 2, ?}`.  Two information measures appear:
//!
//! - **Guessing information** ([`mi_guessing`]): the mutual information
//!   `I(X;Y) = H(η₁) − Q·H(η₁q₁/Q)` of the full three-symbol channel, where
//!   `Q = η₁q₁ + η₂q₂` is the total inconclusive probability. Conclusive
//!   outcomes identify the state exactly, so only the inconclusive branch
//!   leaves residual entropy.
//! - **Conclusive-round information** (the `mi_usd_*` and `mi_ff_*`
//!   functions): the entropy `H(C₁)` of the state distribution *given a
//!   conclusive outcome*, weighted by the probability of obtaining one.
//!   This measures how many bits each conclusive event is worth on average
//!   and is the quantity the sequential protocol trades between observers.
//!
//! Links covered: Alice↔Bob alone ([`mi_usd_ab`]), any single observer in
//! the chain ([`mi_usd_observer`]), the both-conclusive Bob↔Charlie channel
//! ([`mi_usd_bc`]), and the flip-flop variants ([`mi_ff_ab`], [`mi_ff_bc`])
//! in which each observer applies one of two deterministic two-outcome
//! setups.  [`helstrom_mi`] supplies the minimum-error (Helstrom)
//! accessible-information benchmark that upper-bounds them all.
//!
//! All entropies and informations are in bits.

use crate::error::{Error, Result};
use crate::model::{DiscriminationProblem, SequentialStrategy};
use crate::optimize::{joint_success, FlipFlopStrategy};
use crate::search::{brent_max, polish_interior_max};
use crate::tol;
use serde::Serialize;

/// Shannon entropy of a binary distribution `(p, 1−p)` in bits.
///
/// Uses the convention `0·log 0 = 0`, so both endpoints return exactly `0`,
/// and `p = 1/2` returns exactly `1`.
///
/// # Errors
///
/// [`Error::OutOfRange`] if `p` is not in `[0, 1]`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(term(p) + term(1.0 - p))
}

/// Information carried by the conclusive branch of one measurement channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelReport {
    /// Probability that the channel delivers a conclusive symbol.
    pub p_success: f64,
    /// Posterior probability of state 1 given a conclusive outcome.
    pub confidence1: f64,
    /// Conclusive-round information `p_success · H(confidence1)` in bits.
    pub mi: f64,
    /// Strategy parameter the report was evaluated at (`q1`, `q1b`, or `c`).
    pub arg: f64,
}

/// Builds a [`ChannelReport`] from the total conclusive probability and the
/// part of it contributed by state 1.  A channel that never concludes
/// carries zero information.
fn conclusive_report(p_success: f64, share1: f64, arg: f64) -> ChannelReport {
    if p_success <= 0.0 {
        return ChannelReport {
            p_success: 0.0,
            confidence1: 0.0,
            mi: 0.0,
            arg,
        };
    }
    let confidence1 = (share1 / p_success).clamp(0.0, 1.0);
    let entropy = binary_entropy(confidence1).expect("confidence clamped to [0, 1]");
    ChannelReport {
        p_success,
        confidence1,
        mi: p_success * entropy,
        arg,
    }
}

/// Validates that a conditional failure probability lies in `[0, 1]`.
fn check_unit_interval(what: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            what,
            value,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Validates the measurement existence condition `q1·q2 ≥ s²`.
fn check_failure_product(s: f64, q1: f64, q2: f64) -> Result<()> {
    if q1 * q2 < s * s - tol::CONSTRAINT {
        return Err(Error::ConstraintViolation(format!(
            "failure product q1*q2 = {} is below s^2 = {}; no unambiguous \
             measurement attains it",
            q1 * q2,
            s * s
        )));
    }
    Ok(())
}

/// Mutual information of the three-symbol channel when inconclusive rounds
/// are kept as an explicit symbol (equivalently, resolved by a Bayesian
/// guess): `I = H(η₁) − Q·H(η₁q₁/Q)` with `Q = η₁q₁ + η₂q₂`.
///
/// `q1` and `q2` are the conditional failure probabilities of the two
/// states.  When the measurement never fails (`Q = 0`, possible only for
/// orthogonal states) the full prior entropy is recovered.
///
/// # Errors
///
/// [`Error::OutOfRange`] if either failure probability leaves `[0, 1]`;
/// [`Error::ConstraintViolation`] if `q1·q2 < s²`, which no measurement on
/// states of overlap `s` can realize.
pub fn mi_guessing(problem: &DiscriminationProblem, q1: f64, q2: f64) -> Result<f64> {
    check_unit_interval("q1", q1)?;
    check_unit_interval("q2", q2)?;
    check_failure_product(problem.s(), q1, q2)?;
    let eta1 = problem.eta1();
    let prior_entropy = binary_entropy(eta1).expect("priors validated on construction");
    let q_bar = eta1 * q1 + problem.eta2() * q2;
    if q_bar <= 0.0 {
        return Ok(prior_entropy);
    }
    let posterior = (eta1 * q1 / q_bar).clamp(0.0, 1.0);
    let residual = binary_entropy(posterior).expect("posterior clamped to [0, 1]");
    Ok(prior_entropy - q_bar * residual)
}

/// Conclusive-round information between Alice and a lone observer who uses
/// the extremal failure pair `(q1, q2 = s²/q1)`.
///
/// On that family the post-measurement states are parallel after success, so
/// the single parameter `q1` spans every undisturbed trade-off between
/// identifying state 1 and state 2.  For orthogonal states (`s = 0`) the
/// partner failure probability is taken to be `0`.
///
/// # Errors
///
/// [`Error::ConstraintViolation`] if `q1` is outside `[s², 1]`, where the
/// partner probability would leave `[0, 1]`.
pub fn mi_usd_ab(problem: &DiscriminationProblem, q1: f64) -> Result<ChannelReport> {
    let s = problem.s();
    let s2 = s * s;
    if !(s2 - tol::CONSTRAINT..=1.0 + tol::CONSTRAINT).contains(&q1) {
        return Err(Error::ConstraintViolation(format!(
            "q1 = {q1} is outside [s^2, 1] = [{s2}, 1]; the partner failure \
             probability q2 = s^2/q1 would leave [0, 1]"
        )));
    }
    let q1 = q1.clamp(s2, 1.0);
    let q2 = if s == 0.0 { 0.0 } else { s2 / q1 };
    let p_success = problem.eta1() * (1.0 - q1) + problem.eta2() * (1.0 - q2);
    Ok(conclusive_report(
        p_success,
        problem.eta1() * (1.0 - q1),
        q1,
    ))
}

/// Maximizes [`mi_usd_ab`] over `q1 ∈ [s², 1]`.
///
/// For equal priors the stationarity condition is solved exactly by
/// `q1 = s` (both states equally likely to fail), giving `mi = 1 − s`; that
/// point is returned directly.  Otherwise a bracketed search plus a
/// gradient polish locates the interior maximum, which exists for every
/// `0 < s < 1` because the information vanishes at both ends of the range.
pub fn optimize_mi_usd_ab(problem: &DiscriminationProblem) -> ChannelReport {
    let s = problem.s();
    if problem.equal_priors() {
        return mi_usd_ab(problem, s).expect("q1 = s always admissible");
    }
    let s2 = s * s;
    let objective = |q: f64| {
        mi_usd_ab(problem, q)
            .expect("search stays inside [s^2, 1]")
            .mi
    };
    let (q_brent, _) = brent_max(objective, s2, 1.0, tol::SEARCH_PARAM, tol::SEARCH_MAX_ITER);
    let q_opt = polish_interior_max(objective, s2, 1.0, q_brent);
    mi_usd_ab(problem, q_opt).expect("polished point stays inside [s^2, 1]")
}

/// Conclusive-round information between Alice and one observer inside the
/// chain, for an arbitrary admissible failure pair `(q1_obs, q2_obs)`.
///
/// Unlike [`mi_usd_ab`] the two failure probabilities are independent here,
/// subject only to the existence condition `q1_obs·q2_obs ≥ s²`; this is
/// the form needed for Bob or Charlie individually, whose pairs are tied to
/// the intermediate overlap rather than to each other.  A fully failing
/// observer (`q1_obs = q2_obs = 1`) extracts zero information.
///
/// # Errors
///
/// [`Error::OutOfRange`] if either probability leaves `[0, 1]`;
/// [`Error::ConstraintViolation`] if the product drops below `s²`.
pub fn mi_usd_observer(problem: &DiscriminationProblem, q1_obs: f64, q2_obs: f64) -> Result<f64> {
    check_unit_interval("q1_obs", q1_obs)?;
    check_unit_interval("q2_obs", q2_obs)?;
    check_failure_product(problem.s(), q1_obs, q2_obs)?;
    let p_success = problem.eta1() * (1.0 - q1_obs) + problem.eta2() * (1.0 - q2_obs);
    Ok(conclusive_report(p_success, problem.eta1() * (1.0 - q1_obs), q1_obs).mi)
}

/// Conclusive-round information of the Bob↔Charlie channel: the information
/// both sequential observers hold about the preparation when *both* of their
/// outcomes are conclusive.
///
/// The joint-success probability weights the entropy of the both-conclusive
/// posterior `η₁·p1b·p1c / P_ss`.  A strategy that can never doubly succeed
/// carries zero information.
pub fn mi_usd_bc(problem: &DiscriminationProblem, strategy: &SequentialStrategy) -> ChannelReport {
    let p_ss = joint_success(problem, strategy);
    let share1 = problem.eta1() * strategy.p_bob(1) * strategy.p_charlie(1);
    conclusive_report(p_ss, share1, strategy.q1b())
}

/// Maximizes [`mi_usd_bc`] over the symmetric strategy family `t = √s`,
/// `q1c = q1b = q` with `q ∈ [s, 1]`.
///
/// On that family both observers share the failure pair `(q, s/q)`, the
/// family on which the joint-success optimum itself lives, so the single
/// parameter `q` spans the relevant trade-off.  For equal priors the
/// maximum sits at `q = √s` with value `(1 − √s)²`.
pub fn optimize_mi_usd_bc(problem: &DiscriminationProblem) -> ChannelReport {
    let s = problem.s();
    let (eta1, eta2) = (problem.eta1(), problem.eta2());
    let report_at = |q: f64| {
        let miss1 = 1.0 - q;
        let q2 = if s == 0.0 { 0.0 } else { s / q };
        let miss2 = 1.0 - q2;
        let share1 = eta1 * miss1 * miss1;
        let p_ss = share1 + eta2 * miss2 * miss2;
        conclusive_report(p_ss, share1, q)
    };
    let objective = |q: f64| report_at(q).mi;
    let (q_brent, _) = brent_max(objective, s, 1.0, tol::SEARCH_PARAM, tol::SEARCH_MAX_ITER);
    let q_opt = polish_interior_max(objective, s, 1.0, q_brent);
    report_at(q_opt)
}

/// Conclusive-round information between Alice and a lone flip-flop observer.
///
/// With probability `c` the observer runs the deterministic setup that can
/// only identify state 2, with probability `1 − c` the one that can only
/// identify state 1; either setup concludes with probability `1 − s²` on
/// its identifiable state.  Conclusive outcomes still never err, so the
/// report has the same shape as the optimal-measurement one.
pub fn mi_ff_ab(problem: &DiscriminationProblem, ff: &FlipFlopStrategy) -> ChannelReport {
    let c = ff.c();
    let conclusive = 1.0 - problem.s() * problem.s();
    let share1 = problem.eta1() * (1.0 - c) * conclusive;
    let p_success = (problem.eta1() * (1.0 - c) + problem.eta2() * c) * conclusive;
    conclusive_report(p_success, share1, c)
}

/// Maximizes [`mi_ff_ab`] over the mixing probability `c ∈ [0, 1]`.
///
/// Both pure setups (`c = 0` or `1`) are worthless — a channel that can
/// only ever print one symbol carries no information — so the maximum is
/// interior.  For equal priors it sits at `c = 1/2` with value `(1 − s²)/2`,
/// returned exactly.
pub fn optimize_mi_ff_ab(problem: &DiscriminationProblem) -> ChannelReport {
    if problem.equal_priors() {
        let ff = FlipFlopStrategy::new(0.5).expect("1/2 is admissible");
        return mi_ff_ab(problem, &ff);
    }
    let objective = |c: f64| {
        let ff = FlipFlopStrategy::new(c).expect("search stays inside [0, 1]");
        mi_ff_ab(problem, &ff).mi
    };
    let (c_brent, _) = brent_max(objective, 0.0, 1.0, tol::SEARCH_PARAM, tol::SEARCH_MAX_ITER);
    let c_opt = polish_interior_max(objective, 0.0, 1.0, c_brent);
    let ff = FlipFlopStrategy::new(c_opt).expect("polished point stays inside [0, 1]");
    mi_ff_ab(problem, &ff)
}

/// Conclusive-round information of the Bob↔Charlie channel when both
/// observers independently flip-flop with the same mixing probability `c`
/// and the chain runs at intermediate overlap `t`.
///
/// Both observers conclude on the same preparation only when they pick the
/// setup matching it, so the joint-success probability is
/// `(1 − s²/t²)(1 − t²)·A` with `A = η₁(1−c)² + η₂c²`, and the
/// both-conclusive posterior of state 1 is `η₁(1−c)²/A` independently of
/// `t`.  At the balanced point `c = η₁`, `t² = s` this reduces to
/// `η₁η₂(1−s)²·H(η₂)`.
///
/// # Errors
///
/// [`Error::ConstraintViolation`] if `t² < s` (Bob would disturb more than
/// a deterministic setup allows) or `t > 1`.
pub fn mi_ff_bc(problem: &DiscriminationProblem, ff: &FlipFlopStrategy, t: f64) -> Result<f64> {
    let s = problem.s();
    // The negation keeps a NaN overlap on the error path.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(t > 0.0) || t * t < s - tol::CONSTRAINT || t > 1.0 + tol::CONSTRAINT {
        return Err(Error::ConstraintViolation(format!(
            "flip-flop chain needs s <= t^2 <= 1, got t = {t} at s = {s}"
        )));
    }
    let t2 = (t * t).clamp(s.max(f64::MIN_POSITIVE), 1.0);
    let c = ff.c();
    let share_weight = problem.eta1() * (1.0 - c) * (1.0 - c);
    let weight = share_weight + problem.eta2() * c * c;
    let conclusive = (1.0 - s * s / t2) * (1.0 - t2);
    Ok(conclusive_report(conclusive * weight, conclusive * share_weight, c).mi)
}

/// Accessible information of the minimum-error (Helstrom) measurement for
/// equal priors, as a function of the overlap alone:
/// `I = 1 − H(p_e)` with error probability `p_e = (1 − √(1 − s²))/2`.
///
/// Orthogonal states give one full bit; identical states (`s = 1`, admitted
/// here although no discrimination problem can be built for it) give zero.
///
/// # Errors
///
/// [`Error::OutOfRange`] if `s` is not in `[0, 1]`.
pub fn helstrom_mi_overlap(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            min: 0.0,
            max: 1.0,
        });
    }
    let p_error = 0.5 * (1.0 - (1.0 - s * s).sqrt());
    Ok(1.0 - binary_entropy(p_error).expect("p_error in [0, 1/2]"))
}

/// Accessible information of the minimum-error (Helstrom) measurement for
/// `problem`, the benchmark that upper-bounds every unambiguous and
/// flip-flop information curve.
///
/// # Errors
///
/// [`Error::UnsupportedPriors`] unless the priors are equal to within
/// 1e-12; the closed form implemented here is the equal-prior one.
pub fn helstrom_mi(problem: &DiscriminationProblem) -> Result<f64> {
    if !problem.equal_priors() {
        return Err(Error::UnsupportedPriors {
            eta1: problem.eta1(),
        });
    }
    helstrom_mi_overlap(problem.s())
}
