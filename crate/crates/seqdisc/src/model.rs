//! Problem and strategy types for the two-observer discrimination chain.
//!
//! A [`DiscriminationProblem`] fixes what Alice does: the overlap `s` of the
//! two preparations and the prior `η₁` of state 1. A [`SequentialStrategy`]
//! fixes what the observers do, through the free triple `(t, q1b, q1c)`:
//!
//! - `t` — overlap of Bob's post-measurement states |φ₁⟩, |φ₂⟩,
//! - `q1b`, `q1c` — failure (inconclusive) probabilities of Bob and Charlie
//!   conditioned on state 1.
//!
//! The remaining failure probabilities are not free. Requiring that Bob's
//! measurement map |ψᵢ⟩ to |φᵢ⟩ while admitting a unitary dilation forces
//! `s/t = √(q1b·q2b)`, and likewise Charlie's unambiguous measurement of the
//! pair with overlap `t` forces `t = √(q1c·q2c)`. Multiplying both:
//! `q1b·q2b·q1c·q2c = s²` independently of `t`.

use nalgebra::Vector2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// A pure qubit state as a complex amplitude pair.
pub type Qubit = Vector2<Complex64>;

/// Inner product `⟨a|b⟩` with the physics convention (conjugate on the left).
pub fn inner(a: &Qubit, b: &Qubit) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Alice's side of the protocol: two preparations with overlap `s ∈ [0, 1)`
/// and prior `η₁ ∈ (0, 1)` for state 1 (state 2 has `η₂ = 1 − η₁`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationProblem {
    s: f64,
    eta1: f64,
}

impl DiscriminationProblem {
    /// Builds a problem after validating `0 ≤ s < 1` and `0 < eta1 < 1`.
    pub fn new(s: f64, eta1: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&s) || !s.is_finite() {
            return Err(Error::OutOfRange {
                what: "s",
                value: s,
                min: 0.0,
                max: 1.0,
            });
        }
        if !(eta1 > 0.0 && eta1 < 1.0) {
            return Err(Error::OutOfRange {
                what: "eta1",
                value: eta1,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self { s, eta1 })
    }

    /// Overlap `⟨ψ₁|ψ₂⟩` of the two preparations.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Prior probability of state 1.
    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    /// Prior probability of state 2.
    pub fn eta2(&self) -> f64 {
        1.0 - self.eta1
    }

    /// Whether the priors are equal to within [`tol::UNITARY`].
    pub fn equal_priors(&self) -> bool {
        (self.eta1 - 0.5).abs() <= tol::UNITARY
    }

    /// The two preparations in the canonical real embedding.
    pub fn states(&self) -> StatePair {
        StatePair::embed(self.s).expect("overlap validated at construction")
    }
}

/// A pair of pure qubit states with a fixed real overlap.
///
/// The canonical embedding used throughout the crate is
/// `|ψ₁,₂⟩ = cos θ |0⟩ ± sin θ |1⟩` with `θ = ½·arccos(overlap)`, which makes
/// both amplitudes real and the pair symmetric about |0⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePair {
    psi1: Qubit,
    psi2: Qubit,
    overlap: f64,
}

impl StatePair {
    /// Canonical real embedding of a pair with the given overlap in `[0, 1]`.
    ///
    /// `overlap = 1` is allowed and yields the degenerate pair
    /// |ψ₁⟩ = |ψ₂⟩ = |0⟩ (useful for fully inconclusive intermediate stages).
    pub fn embed(overlap: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&overlap) || !overlap.is_finite() {
            return Err(Error::OutOfRange {
                what: "overlap",
                value: overlap,
                min: 0.0,
                max: 1.0,
            });
        }
        let theta = 0.5 * overlap.acos();
        let (sin, cos) = theta.sin_cos();
        let re = |x: f64| Complex64::new(x, 0.0);
        Ok(Self {
            psi1: Vector2::new(re(cos), re(sin)),
            psi2: Vector2::new(re(cos), re(-sin)),
            overlap,
        })
    }

    /// Builds a pair from explicit amplitudes, validating that both vectors
    /// are normalized and that their inner product is real and in `[0, 1]`
    /// (all to within [`tol::UNITARY`]).
    pub fn from_vectors(psi1: Qubit, psi2: Qubit) -> Result<Self> {
        for (name, v) in [("psi1", &psi1), ("psi2", &psi2)] {
            let norm = inner(v, v).re.sqrt();
            if (norm - 1.0).abs() > tol::UNITARY {
                return Err(Error::ConstraintViolation(format!(
                    "{name} is not normalized: |norm - 1| = {:.3e}",
                    (norm - 1.0).abs()
                )));
            }
        }
        let ip = inner(&psi1, &psi2);
        if ip.im.abs() > tol::UNITARY {
            return Err(Error::ConstraintViolation(format!(
                "inner product has imaginary part {:.3e}",
                ip.im
            )));
        }
        if !(-tol::UNITARY..=1.0 + tol::UNITARY).contains(&ip.re) {
            return Err(Error::OutOfRange {
                what: "overlap",
                value: ip.re,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self {
            psi1,
            psi2,
            overlap: ip.re.clamp(0.0, 1.0),
        })
    }

    /// State 1 amplitudes.
    pub fn psi1(&self) -> &Qubit {
        &self.psi1
    }

    /// State 2 amplitudes.
    pub fn psi2(&self) -> &Qubit {
        &self.psi2
    }

    /// State by 1-based index (1 or 2).
    pub fn state(&self, index: u8) -> &Qubit {
        match index {
            1 => &self.psi1,
            2 => &self.psi2,
            _ => panic!("state index must be 1 or 2, got {index}"),
        }
    }

    /// Real overlap `⟨ψ₁|ψ₂⟩`.
    pub fn overlap(&self) -> f64 {
        self.overlap
    }
}

/// Failure-probability assignment for both observers.
///
/// Constructed from the free triple `(t, q1b, q1c)`; the derived entries are
/// `q2b = s²/(t²·q1b)` and `q2c = t²/q1c`. Admissible box (all checks with
/// [`tol::CONSTRAINT`] slack, then clamped):
///
/// - `s ≤ t ≤ 1` and `t > 0`,
/// - `s²/t² ≤ q1b ≤ 1`,
/// - `t² ≤ q1c ≤ 1`.
///
/// The upper bounds keep the derived entries valid probabilities; the lower
/// bounds are the same condition applied to the partner state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequentialStrategy {
    t: f64,
    q1b: f64,
    q2b: f64,
    q1c: f64,
    q2c: f64,
}

impl SequentialStrategy {
    /// Validates the free triple against `problem` and fills in the derived
    /// failure probabilities.
    pub fn new(problem: &DiscriminationProblem, t: f64, q1b: f64, q1c: f64) -> Result<Self> {
        let s = problem.s();
        if !(s - tol::CONSTRAINT..=1.0 + tol::CONSTRAINT).contains(&t) || !t.is_finite() {
            return Err(Error::OutOfRange {
                what: "t",
                value: t,
                min: s,
                max: 1.0,
            });
        }
        let t = t.clamp(s, 1.0);
        if t <= 0.0 {
            // Only reachable for s = 0; the derived q2b would be 0/0.
            return Err(Error::ConstraintViolation(
                "t = 0 leaves the intermediate overlap undefined; use t > 0".into(),
            ));
        }
        for (name, q) in [("q1b", q1b), ("q1c", q1c)] {
            if !(-tol::CONSTRAINT..=1.0 + tol::CONSTRAINT).contains(&q) || !q.is_finite() {
                return Err(Error::OutOfRange {
                    what: name,
                    value: q,
                    min: 0.0,
                    max: 1.0,
                });
            }
        }
        let q1b_min = (s * s) / (t * t);
        if q1b < q1b_min - tol::CONSTRAINT {
            return Err(Error::ConstraintViolation(format!(
                "q1b = {q1b} below s²/t² = {q1b_min}; the partner failure probability q2b would exceed 1"
            )));
        }
        let q1c_min = t * t;
        if q1c < q1c_min - tol::CONSTRAINT {
            return Err(Error::ConstraintViolation(format!(
                "q1c = {q1c} below t² = {q1c_min}; the partner failure probability q2c would exceed 1"
            )));
        }
        let q1b = q1b.clamp(q1b_min, 1.0);
        let q1c = q1c.clamp(q1c_min, 1.0);
        let q2b = if s == 0.0 {
            0.0
        } else {
            (s * s) / (t * t * q1b)
        };
        let q2c = (t * t) / q1c;
        Ok(Self {
            t,
            q1b,
            q2b,
            q1c,
            q2c,
        })
    }

    /// Overlap of Bob's post-measurement states.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Bob's failure probability on state 1.
    pub fn q1b(&self) -> f64 {
        self.q1b
    }

    /// Bob's failure probability on state 2 (derived).
    pub fn q2b(&self) -> f64 {
        self.q2b
    }

    /// Charlie's failure probability on state 1.
    pub fn q1c(&self) -> f64 {
        self.q1c
    }

    /// Charlie's failure probability on state 2 (derived).
    pub fn q2c(&self) -> f64 {
        self.q2c
    }

    /// Bob's success probability on state `i` (1-based).
    pub fn p_bob(&self, i: u8) -> f64 {
        match i {
            1 => 1.0 - self.q1b,
            2 => 1.0 - self.q2b,
            _ => panic!("state index must be 1 or 2, got {i}"),
        }
    }

    /// Charlie's success probability on state `i` (1-based).
    pub fn p_charlie(&self, i: u8) -> f64 {
        match i {
            1 => 1.0 - self.q1c,
            2 => 1.0 - self.q2c,
            _ => panic!("state index must be 1 or 2, got {i}"),
        }
    }

    /// Bob's failure probability on state `i` (1-based).
    pub fn q_bob(&self, i: u8) -> f64 {
        1.0 - self.p_bob(i)
    }

    /// Charlie's failure probability on state `i` (1-based).
    pub fn q_charlie(&self, i: u8) -> f64 {
        1.0 - self.p_charlie(i)
    }
}

/// Location of an optimum in parameter space.
///
/// The failure-minimizing family is classified by the prior: below
/// `s²/(1+s²)` (low), above `1/(1+s²)` (high), or between (middle). The
/// success-maximizing family is classified by whether the optimum is an
/// interior stationary point or sits on the face where only one state is
/// ever identified (`BoundaryState1` = only state 1 identified, and so on).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Interior stationary point of the success probability.
    #[serde(rename = "INTERIOR")]
    Interior,
    /// Only state 1 is ever identified (`q2b = q2c = 1`).
    #[serde(rename = "BOUNDARY_STATE1")]
    BoundaryState1,
    /// Only state 2 is ever identified (`q1b = q1c = 1`).
    #[serde(rename = "BOUNDARY_STATE2")]
    BoundaryState2,
    /// `η₁ < s²/(1+s²)`: the optimal measurement never identifies state 1.
    #[serde(rename = "REGIME_LOW_PRIOR")]
    LowPrior,
    /// `s²/(1+s²) ≤ η₁ ≤ 1/(1+s²)`: both states are identified.
    #[serde(rename = "REGIME_MIDDLE")]
    Middle,
    /// `η₁ > 1/(1+s²)`: the optimal measurement never identifies state 2.
    #[serde(rename = "REGIME_HIGH_PRIOR")]
    HighPrior,
}

impl Regime {
    /// Stable machine-readable name (same spelling as the serde form).
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Interior => "INTERIOR",
            Regime::BoundaryState1 => "BOUNDARY_STATE1",
            Regime::BoundaryState2 => "BOUNDARY_STATE2",
            Regime::LowPrior => "REGIME_LOW_PRIOR",
            Regime::Middle => "REGIME_MIDDLE",
            Regime::HighPrior => "REGIME_HIGH_PRIOR",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How an optimum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Evaluated from an exact closed-form expression.
    #[serde(rename = "closed-form")]
    ClosedForm,
    /// Obtained by solving a polynomial root problem.
    #[serde(rename = "root-solve")]
    RootSolve,
    /// Obtained by exhaustive grid search.
    #[serde(rename = "grid")]
    Grid,
}

impl Method {
    /// Stable machine-readable name (same spelling as the serde form).
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::RootSolve => "root-solve",
            Method::Grid => "grid",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An optimal strategy together with its figures of merit and the method
/// that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    /// The optimizing strategy.
    pub strategy: SequentialStrategy,
    /// Joint success probability (both observers conclusive and correct).
    pub p_ss: f64,
    /// Joint failure probability (both observers inconclusive).
    pub p_ff: f64,
    /// Where the optimum sits.
    pub regime: Regime,
    /// How it was computed.
    pub method: Method,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_validates_ranges() {
        assert!(DiscriminationProblem::new(0.0, 0.5).is_ok());
        assert!(DiscriminationProblem::new(0.999, 0.001).is_ok());
        assert!(matches!(
            DiscriminationProblem::new(1.0, 0.5),
            Err(Error::OutOfRange { what: "s", .. })
        ));
        assert!(matches!(
            DiscriminationProblem::new(-0.1, 0.5),
            Err(Error::OutOfRange { what: "s", .. })
        ));
        assert!(matches!(
            DiscriminationProblem::new(0.3, 0.0),
            Err(Error::OutOfRange { what: "eta1", .. })
        ));
        assert!(matches!(
            DiscriminationProblem::new(0.3, 1.0),
            Err(Error::OutOfRange { what: "eta1", .. })
        ));
        assert!(matches!(
            DiscriminationProblem::new(f64::NAN, 0.5),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn embed_orthogonal_pair_is_hadamard_like() {
        let pair = StatePair::embed(0.0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((pair.psi1()[0].re - r).abs() < 1e-15);
        assert!((pair.psi1()[1].re - r).abs() < 1e-15);
        assert!((pair.psi2()[0].re - r).abs() < 1e-15);
        assert!((pair.psi2()[1].re + r).abs() < 1e-15);
    }

    #[test]
    fn embed_reproduces_overlap() {
        // Dense sweep of the full range, including the degenerate endpoint.
        for k in 0..=1000 {
            let s = k as f64 / 1000.0;
            let pair = StatePair::embed(s).unwrap();
            let ip = inner(pair.psi1(), pair.psi2());
            assert!(ip.im.abs() < 1e-15);
            assert!(
                (ip.re - s).abs() < tol::UNITARY,
                "overlap drift at s={s}: {}",
                (ip.re - s).abs()
            );
            for v in [pair.psi1(), pair.psi2()] {
                assert!((inner(v, v).re - 1.0).abs() < tol::UNITARY);
            }
        }
    }

    #[test]
    fn embed_rejects_out_of_range() {
        assert!(matches!(
            StatePair::embed(-0.01),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            StatePair::embed(1.01),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn from_vectors_checks_norm_and_phase() {
        let good = StatePair::embed(0.4).unwrap();
        let rebuilt = StatePair::from_vectors(*good.psi1(), *good.psi2()).unwrap();
        assert!((rebuilt.overlap() - 0.4).abs() < tol::UNITARY);

        let unnormalized = Vector2::new(Complex64::new(0.9, 0.0), Complex64::new(0.1, 0.0));
        assert!(matches!(
            StatePair::from_vectors(unnormalized, *good.psi2()),
            Err(Error::ConstraintViolation(_))
        ));

        // A relative phase makes the inner product complex.
        let phased = Vector2::new(good.psi2()[0], good.psi2()[1] * Complex64::i());
        assert!(matches!(
            StatePair::from_vectors(*good.psi1(), phased),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn strategy_derives_partner_failures() {
        let problem = DiscriminationProblem::new(0.3, 0.5).unwrap();
        let strat = SequentialStrategy::new(&problem, 0.6, 0.5, 0.72).unwrap();
        assert!((strat.q2b() - 0.5).abs() < 1e-15);
        assert!((strat.q2c() - 0.5).abs() < 1e-15);
        assert!((strat.p_bob(1) - 0.5).abs() < 1e-15);
        assert!((strat.p_charlie(2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn strategy_product_identity() {
        // q1b·q2b·q1c·q2c = s² for every admissible triple.
        let problem = DiscriminationProblem::new(0.35, 0.4).unwrap();
        let s2 = 0.35f64 * 0.35;
        for &t in &[0.35, 0.5, 0.7, 1.0] {
            for &a in &[0.0, 0.3, 0.9, 1.0] {
                let q1b = (s2 / (t * t)) * (1.0 - a) + a;
                for &b in &[0.0, 0.4, 1.0] {
                    let q1c = t * t * (1.0 - b) + b;
                    let st = SequentialStrategy::new(&problem, t, q1b, q1c).unwrap();
                    let product = st.q1b() * st.q2b() * st.q1c() * st.q2c();
                    assert!(
                        (product - s2).abs() < tol::CONSTRAINT,
                        "product {product} != {s2} at t={t}, q1b={q1b}, q1c={q1c}"
                    );
                }
            }
        }
    }

    #[test]
    fn strategy_accepts_degenerate_t_equal_one() {
        // t = 1 is a legal fully-inconclusive intermediate overlap.
        let problem = DiscriminationProblem::new(0.3, 0.5).unwrap();
        let strat = SequentialStrategy::new(&problem, 1.0, 1.0, 1.0).unwrap();
        assert!((strat.q2b() - 0.09).abs() < 1e-15);
        assert!((strat.q2c() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn strategy_rejects_t_zero_when_s_zero() {
        let problem = DiscriminationProblem::new(0.0, 0.5).unwrap();
        assert!(matches!(
            SequentialStrategy::new(&problem, 0.0, 0.5, 0.5),
            Err(Error::ConstraintViolation(_))
        ));
        // Positive t is fine for orthogonal preparations.
        let strat = SequentialStrategy::new(&problem, 0.5, 0.5, 0.5).unwrap();
        assert_eq!(strat.q2b(), 0.0);
        assert!((strat.q2c() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn strategy_bound_violations() {
        let problem = DiscriminationProblem::new(0.4, 0.5).unwrap();
        assert!(matches!(
            SequentialStrategy::new(&problem, 0.3, 0.9, 0.9),
            Err(Error::OutOfRange { what: "t", .. })
        ));
        assert!(matches!(
            SequentialStrategy::new(&problem, 0.8, 1.2, 0.9),
            Err(Error::OutOfRange { what: "q1b", .. })
        ));
        // In [0,1] but below the joint lower bound s²/t².
        assert!(matches!(
            SequentialStrategy::new(&problem, 0.5, 0.3, 0.9),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(matches!(
            SequentialStrategy::new(&problem, 0.5, 0.9, 0.1),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn strategy_clamps_tolerable_violations() {
        let problem = DiscriminationProblem::new(0.4, 0.5).unwrap();
        let eps = 0.5 * tol::CONSTRAINT;
        let strat = SequentialStrategy::new(&problem, 0.4 - eps, 1.0 + eps, 1.0 + eps).unwrap();
        assert_eq!(strat.t(), 0.4);
        assert_eq!(strat.q1b(), 1.0);
        assert_eq!(strat.q1c(), 1.0);
    }

    #[test]
    fn regime_and_method_names_are_stable() {
        assert_eq!(Regime::LowPrior.to_string(), "REGIME_LOW_PRIOR");
        assert_eq!(Regime::BoundaryState2.to_string(), "BOUNDARY_STATE2");
        assert_eq!(Method::ClosedForm.to_string(), "closed-form");
        let json = serde_json::to_string(&Regime::Middle).unwrap();
        assert_eq!(json, "\"REGIME_MIDDLE\"");
    }
}
