//! Flip-flop strategies: random switching between two projective setups.
//!
//! Instead of the optimal three-outcome measurement, an observer can draw
//! one of two projective setups at random. Setup 1's inconclusive direction
//! is the state-1 ray, so it never identifies state 1; setup 2 mirrors it.
//! The flipping rate `c` is the probability of drawing setup 1.
//!
//! A lone observer then sees setup failure pairs `(1, s²)` and `(s², 1)`.
//! In the sequential chain the same construction is applied per stage at
//! intermediate overlap `t = √s`, where each stage has failure product `s`
//! and pairs `(1, s)` / `(s, 1)`; Bob and Charlie flip independently with
//! the same rate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::DiscriminationProblem;

/// Random switching between the two one-state projective setups with
/// probability `c` for setup 1 (the one that never identifies state 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlipFlopStrategy {
    c: f64,
}

impl FlipFlopStrategy {
    /// Validates the flipping rate `c ∈ [0, 1]`.
    pub fn new(c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) || !c.is_finite() {
            return Err(Error::OutOfRange {
                what: "c",
                value: c,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self { c })
    }

    /// Probability of drawing setup 1.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Failure pairs `(q1, q2)` of the two setups for a stage whose failure
    /// product `q1·q2` equals `product` (`s²` for a lone observer, `s` per
    /// stage of the sequential chain at `t = √s`).
    pub fn setup_failures(product: f64) -> [(f64, f64); 2] {
        [(1.0, product), (product, 1.0)]
    }

    /// Setup-averaged failure probabilities `(q̄1, q̄2)` for a stage with
    /// the given failure product.
    pub fn average_failures(&self, product: f64) -> (f64, f64) {
        (
            self.c + (1.0 - self.c) * product,
            self.c * product + (1.0 - self.c),
        )
    }
}

/// Setup-averaged performance of a lone flip-flop observer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlipFlopSingle {
    /// Average failure probability on state 1: `c + (1−c)s²`.
    pub q1: f64,
    /// Average failure probability on state 2: `1 − c + c·s²`.
    pub q2: f64,
    /// Average success probability `[η₁(1−c) + η₂c]·(1−s²)`.
    pub p_succ: f64,
}

/// Lone-observer flip-flop figures of merit.
///
/// The average failure product `q̄1·q̄2 = s² + c(1−c)(1−s²)²` exceeds the
/// optimal `s²` unless `c` is 0 or 1, which is the price of the projective
/// implementation.
pub fn ff_single(problem: &DiscriminationProblem, ff: &FlipFlopStrategy) -> FlipFlopSingle {
    let s2 = problem.s() * problem.s();
    let (q1, q2) = ff.average_failures(s2);
    let c = ff.c();
    FlipFlopSingle {
        q1,
        q2,
        p_succ: (problem.eta1() * (1.0 - c) + problem.eta2() * c) * (1.0 - s2),
    }
}

/// Joint success probability of the sequential flip-flop chain,
/// `[(1−c)²η₁ + c²η₂]·(1−s)²`.
///
/// A convex parabola in `c`: largest at `c = 0` when state 1 is the more
/// likely one (`c = 1` otherwise), smallest at `c = η₁` where it equals
/// `η₁η₂(1−s)²`.
pub fn ff_sequential_joint(problem: &DiscriminationProblem, ff: &FlipFlopStrategy) -> f64 {
    let c = ff.c();
    let one_minus_s = 1.0 - problem.s();
    ((1.0 - c) * (1.0 - c) * problem.eta1() + c * c * problem.eta2()) * one_minus_s * one_minus_s
}

/// Joint failure probability of the sequential flip-flop chain.
///
/// The two observers flip independently, so each state fails jointly with
/// the square of its stage-averaged failure probability:
/// `η₁(c + (1−c)s)² + η₂(cs + 1 − c)²`.
pub fn ff_sequential_failure(problem: &DiscriminationProblem, ff: &FlipFlopStrategy) -> f64 {
    let (q1, q2) = ff.average_failures(problem.s());
    problem.eta1() * q1 * q1 + problem.eta2() * q2 * q2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::brent_max;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flipping_rate_is_validated() {
        assert!(FlipFlopStrategy::new(0.0).is_ok());
        assert!(FlipFlopStrategy::new(1.0).is_ok());
        for bad in [-0.01, 1.01, f64::NAN] {
            assert!(matches!(
                FlipFlopStrategy::new(bad),
                Err(Error::OutOfRange { what: "c", .. })
            ));
        }
    }

    #[test]
    fn setup_tables() {
        assert_eq!(
            FlipFlopStrategy::setup_failures(0.3),
            [(1.0, 0.3), (0.3, 1.0)]
        );
        let ff = FlipFlopStrategy::new(0.3).unwrap();
        let (q1, q2) = ff.average_failures(0.25);
        assert!((q1 - 0.475).abs() < 1e-15);
        assert!((q2 - 0.775).abs() < 1e-15);
    }

    #[test]
    fn single_observer_reference_points() {
        // Orthogonal states with a fair coin: every setup succeeds unless
        // it points at the prepared state.
        let orth = DiscriminationProblem::new(0.0, 0.5).unwrap();
        let fair = FlipFlopStrategy::new(0.5).unwrap();
        let report = ff_single(&orth, &fair);
        assert_eq!((report.q1, report.q2, report.p_succ), (0.5, 0.5, 0.5));

        let problem = DiscriminationProblem::new(0.4, 0.5).unwrap();
        let report = ff_single(&problem, &fair);
        assert!((report.p_succ - 0.42).abs() < 1e-15);
    }

    #[test]
    fn single_observer_failure_product_is_suboptimal_between_the_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let s = rng.gen_range(0.0..0.99);
            let c = rng.gen_range(0.0..=1.0);
            let problem = DiscriminationProblem::new(s, 0.5).unwrap();
            let ff = FlipFlopStrategy::new(c).unwrap();
            let report = ff_single(&problem, &ff);
            let s2 = s * s;
            let expected = s2 + c * (1.0 - c) * (1.0 - s2) * (1.0 - s2);
            assert!((report.q1 * report.q2 - expected).abs() < 1e-12);
            assert!(report.q1 * report.q2 >= s2 - 1e-12);
        }
    }

    #[test]
    fn sequential_joint_reference_points() {
        let biased = DiscriminationProblem::new(0.25, 0.7).unwrap();
        let keep2 = FlipFlopStrategy::new(0.0).unwrap();
        assert!((ff_sequential_joint(&biased, &keep2) - 0.39375).abs() < 1e-15);

        let equal = DiscriminationProblem::new(0.25, 0.5).unwrap();
        let fair = FlipFlopStrategy::new(0.5).unwrap();
        assert!((ff_sequential_joint(&equal, &fair) - 0.140625).abs() < 1e-15);

        let skewed = FlipFlopStrategy::new(0.3).unwrap();
        assert!((ff_sequential_joint(&equal, &skewed) - 0.163125).abs() < 1e-15);
        assert!((ff_sequential_failure(&equal, &skewed) - 0.413125).abs() < 1e-15);
    }

    #[test]
    fn sequential_joint_vertex_sits_at_the_prior() {
        // Convex parabola in c with minimum η₁η₂(1−s)² at c = η₁.
        for (s, eta1) in [(0.3, 0.35), (0.25, 0.5), (0.1, 0.8)] {
            let problem = DiscriminationProblem::new(s, eta1).unwrap();
            let objective =
                |c: f64| ff_sequential_joint(&problem, &FlipFlopStrategy::new(c).unwrap());
            let (c_min, value) = brent_max(|c| -objective(c), 0.0, 1.0, 1e-10, 200);
            let vertex = eta1 * (1.0 - eta1) * (1.0 - s) * (1.0 - s);
            assert!(
                (c_min - eta1).abs() < 1e-6,
                "vertex at {c_min}, want {eta1}"
            );
            assert!((-value - vertex).abs() < 1e-10);
        }
    }

    #[test]
    fn sequential_joint_mirror_symmetry() {
        // c = 1 with priors (η₁, η₂) mirrors c = 0 with priors swapped.
        let p = DiscriminationProblem::new(0.2, 0.7).unwrap();
        let p_swapped = DiscriminationProblem::new(0.2, 0.3).unwrap();
        let all1 = FlipFlopStrategy::new(1.0).unwrap();
        let all2 = FlipFlopStrategy::new(0.0).unwrap();
        assert!(
            (ff_sequential_joint(&p, &all1) - ff_sequential_joint(&p_swapped, &all2)).abs() < 1e-15
        );
        assert!(
            (ff_sequential_failure(&p, &all1) - ff_sequential_failure(&p_swapped, &all2)).abs()
                < 1e-15
        );
    }
}
