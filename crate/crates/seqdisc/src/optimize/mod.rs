//! Optimal strategies for the sequential discrimination chain.
//!
//! Two figures of merit compete:
//!
//! - the joint failure probability `P_ff = η₁·q1b·q1c + η₂·q2b·q2c`, which
//!   depends on the strategy only through the product `q1b·q1c` and has a
//!   three-branch closed-form minimum ([`min_joint_failure`]);
//! - the joint success probability `P_ss = η₁·p1b·p1c + η₂·p2b·p2c`, whose
//!   unconstrained maximum is an interior stationary point of a quartic or a
//!   one-state boundary face, with a critical overlap separating the two
//!   ([`optimize_success_only`], [`critical_overlap`]).
//!
//! Flip-flop strategies — each observer drawing one of two projective
//! setups at random — trade optimality for implementability and are covered
//! by [`ff_single`], [`ff_sequential_joint`] and [`ff_sequential_failure`].
//! [`grid_oracle`] provides an independent brute-force check of every
//! closed-form optimum.

mod flipflop;
mod grid;
mod minfail;
mod success;

pub use flipflop::{
    ff_sequential_failure, ff_sequential_joint, ff_single, FlipFlopSingle, FlipFlopStrategy,
};
pub use grid::grid_oracle;
pub use minfail::{min_joint_failure, optimize_minfail_success, FailureOptimum};
pub use success::{
    critical_overlap, optimize_success_only, quartic_physical_roots, symmetric_joint_success,
    PhysicalRoot, QuarticRootReport, RootClass,
};

use crate::model::{DiscriminationProblem, SequentialStrategy};

/// Joint probability that both observers conclusively identify the prepared
/// state. `strategy` must have been built for the same `problem`.
pub fn joint_success(problem: &DiscriminationProblem, strategy: &SequentialStrategy) -> f64 {
    problem.eta1() * strategy.p_bob(1) * strategy.p_charlie(1)
        + problem.eta2() * strategy.p_bob(2) * strategy.p_charlie(2)
}

/// Joint probability that both observers stay inconclusive. `strategy` must
/// have been built for the same `problem`.
pub fn joint_failure(problem: &DiscriminationProblem, strategy: &SequentialStrategy) -> f64 {
    problem.eta1() * strategy.q1b() * strategy.q1c()
        + problem.eta2() * strategy.q2b() * strategy.q2c()
}

/// Joint success probability straight from the free triple `(t, q1b, q1c)`,
/// bypassing strategy construction. Used by the grid oracle and by tests as
/// an independent evaluation path.
pub(crate) fn p_ss_direct(s: f64, eta1: f64, t: f64, q1b: f64, q1c: f64) -> f64 {
    let q2b = if s == 0.0 {
        0.0
    } else {
        (s * s) / (t * t * q1b)
    };
    let q2c = (t * t) / q1c;
    eta1 * (1.0 - q1b) * (1.0 - q1c) + (1.0 - eta1) * (1.0 - q2b) * (1.0 - q2c)
}
