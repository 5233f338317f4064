//! Explicit unitary realizations of both observers' measurements.
//!
//! Each three-outcome measurement is implemented the way a lab would build
//! it: couple the qubit to a three-level ancilla prepared in a fixed state,
//! evolve the pair under a 6×6 unitary, then projectively measure the
//! ancilla.  Ancilla basis: |0⟩ = inconclusive, |1⟩ = "state 1", |2⟩ =
//! "state 2"; the composite basis is ordered qubit-major, index
//! `3·qubit + ancilla`, and the ancilla always starts in |0⟩.
//!
//! Bob's unitary maps each preparation |ψᵢ⟩|0⟩ to
//! `√p_ib |φᵢ⟩|i⟩ + √q_ib |φᵢ⟩|0⟩`: success and failure branches share the
//! same post-measurement qubit state |φᵢ⟩ (overlap `t`), which is what lets
//! Charlie extract unambiguous information afterwards regardless of Bob's
//! outcome.  Charlie's unitary maps |φᵢ⟩|0⟩ to
//! `√p_ic |θᵢ⟩|i⟩ + √q_ic |θ₀⟩|0⟩` with a common failure state |θ₀⟩ — after
//! him nobody measures, so his post-states need not preserve anything.
//!
//! The action above fixes the unitary on a two-dimensional subspace only;
//! [`build_bob_unitary`] and [`build_charlie_unitary`] complete it
//! deterministically, so identical strategies always produce bit-identical
//! matrices.  [`measure_stage`] samples one ancilla outcome and returns the
//! collapsed qubit for handing to the next stage.

use nalgebra::{Matrix6, Vector6};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DiscriminationProblem, Qubit, SequentialStrategy, StatePair};
use crate::tol;

/// A 6-dimensional complex vector on the qubit ⊗ ancilla space.
type Composite = Vector6<Complex64>;

/// Which observer a stage unitary implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StageRole {
    /// First observer; must preserve unambiguous distinguishability.
    #[serde(rename = "BOB")]
    Bob,
    /// Second (final) observer.
    #[serde(rename = "CHARLIE")]
    Charlie,
}

impl StageRole {
    /// Stable uppercase name, as used in transcripts.
    pub fn as_str(self) -> &'static str {
        match self {
            StageRole::Bob => "BOB",
            StageRole::Charlie => "CHARLIE",
        }
    }
}

impl std::fmt::Display for StageRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One observer's measurement as a concrete 6×6 unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct StageUnitary {
    matrix: Matrix6<Complex64>,
    role: StageRole,
}

impl StageUnitary {
    /// The matrix, ordered qubit-major (`index = 3·qubit + ancilla`).
    pub fn matrix(&self) -> &Matrix6<Complex64> {
        &self.matrix
    }

    /// Which observer this stage implements.
    pub fn role(&self) -> StageRole {
        self.role
    }

    /// Largest entry magnitude of `U†U − I`; zero for a perfect unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.matrix.adjoint() * self.matrix;
        let mut defect = 0.0f64;
        for row in 0..6 {
            for col in 0..6 {
                let expect = if row == col {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                defect = defect.max((gram[(row, col)] - expect).norm());
            }
        }
        defect
    }
}

/// Result of measuring the ancilla after one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageOutcome {
    /// Ancilla outcome: 0 = inconclusive, 1 = "state 1", 2 = "state 2".
    pub outcome: u8,
    /// Renormalized qubit state left behind for the next stage.
    pub qubit_out: Qubit,
}

/// Embeds a qubit state into the composite space with a fixed ancilla level.
fn tensor(qubit: &Qubit, ancilla: usize) -> Composite {
    let mut v = Composite::zeros();
    v[ancilla] = qubit[0];
    v[3 + ancilla] = qubit[1];
    v
}

/// Extends the partial action `domain[k] ↦ image[k]` to a full unitary.
///
/// The domain pair is orthonormalized by Gram–Schmidt and the *same*
/// coefficients are applied to the image pair — legitimate because the two
/// Gram matrices coincide for any valid strategy — so the returned matrix
/// maps each domain vector to its image exactly (to rounding).  Both
/// orthonormal sets are then completed over the standard basis in fixed
/// index order, skipping candidates whose residual drops below
/// [`tol::GS_RESIDUAL_FLOOR`], which makes the completion deterministic.
fn extend_isometry(domain: &[Composite; 2], image: &[Composite; 2]) -> Matrix6<Complex64> {
    let mut sources: Vec<Composite> = Vec::with_capacity(6);
    let mut targets: Vec<Composite> = Vec::with_capacity(6);
    for (a, w) in domain.iter().zip(image.iter()) {
        let mut a = *a;
        let mut w = *w;
        for (basis_a, basis_w) in sources.iter().zip(targets.iter()) {
            let overlap = basis_a.dotc(&a);
            a -= basis_a * overlap;
            w -= basis_w * overlap;
        }
        let norm = a.norm();
        if norm < tol::GS_RESIDUAL_FLOOR {
            continue;
        }
        sources.push(a / Complex64::new(norm, 0.0));
        targets.push(w / Complex64::new(norm, 0.0));
    }
    complete_basis(&mut sources);
    complete_basis(&mut targets);
    let mut unitary = Matrix6::zeros();
    for (a, w) in sources.iter().zip(targets.iter()) {
        unitary += w * a.adjoint();
    }
    unitary
}

/// Completes an orthonormal set to a full basis of the composite space by
/// projecting standard basis vectors in index order; candidates that are
/// numerically inside the current span are skipped.
fn complete_basis(basis: &mut Vec<Composite>) {
    for index in 0..6 {
        if basis.len() == 6 {
            break;
        }
        let mut candidate = Composite::zeros();
        candidate[index] = Complex64::new(1.0, 0.0);
        // Two projection sweeps keep the completed set orthogonal to working
        // precision even when the candidate is nearly in the span.
        for _ in 0..2 {
            for member in basis.iter() {
                let overlap = member.dotc(&candidate);
                candidate -= member * overlap;
            }
        }
        let norm = candidate.norm();
        if norm >= tol::GS_RESIDUAL_FLOOR {
            basis.push(candidate / Complex64::new(norm, 0.0));
        }
    }
    debug_assert_eq!(basis.len(), 6, "composite basis completion fell short");
}

/// Scales a qubit state by a real amplitude into the composite space.
fn branch(qubit: &Qubit, ancilla: usize, amplitude: f64) -> Composite {
    tensor(qubit, ancilla) * Complex64::new(amplitude, 0.0)
}

/// Builds the first observer's unitary for a strategy.
///
/// Action on the preparations: `|ψᵢ⟩|0⟩ ↦ √p_ib |φᵢ⟩|i⟩ + √q_ib |φᵢ⟩|0⟩`,
/// where |φ₁⟩, |φ₂⟩ is the canonical pair with overlap `t`.
///
/// # Errors
///
/// None beyond those already raised when constructing the strategy; the
/// signature keeps `Result` because the post-state embedding is validated.
pub fn build_bob_unitary(
    problem: &DiscriminationProblem,
    strategy: &SequentialStrategy,
) -> Result<StageUnitary> {
    let pre = problem.states();
    let post = StatePair::embed(strategy.t())?;
    let domain = [tensor(pre.state(1), 0), tensor(pre.state(2), 0)];
    let image = [
        branch(post.state(1), 1, strategy.p_bob(1).sqrt())
            + branch(post.state(1), 0, strategy.q_bob(1).sqrt()),
        branch(post.state(2), 2, strategy.p_bob(2).sqrt())
            + branch(post.state(2), 0, strategy.q_bob(2).sqrt()),
    ];
    Ok(StageUnitary {
        matrix: extend_isometry(&domain, &image),
        role: StageRole::Bob,
    })
}

/// Builds the second observer's unitary for a strategy.
///
/// Action on the intermediate states: `|φᵢ⟩|0⟩ ↦ √p_ic |θᵢ⟩|i⟩ +
/// √q_ic |θ₀⟩|0⟩`.  Success leaves the fixed qubit state |0⟩ (nothing runs
/// after this stage), failure leaves the symmetric combination
/// `(|φ₁⟩ + |φ₂⟩)/‖·‖` for both inputs — a common failure state is exactly
/// what makes the failure branch carry no which-state information.
///
/// # Errors
///
/// None beyond those already raised when constructing the strategy.
pub fn build_charlie_unitary(
    problem: &DiscriminationProblem,
    strategy: &SequentialStrategy,
) -> Result<StageUnitary> {
    let _ = problem;
    let pre = StatePair::embed(strategy.t())?;
    let success: Qubit = Qubit::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let mut failure: Qubit = pre.state(1) + pre.state(2);
    failure /= Complex64::new(failure.norm(), 0.0);
    let domain = [tensor(pre.state(1), 0), tensor(pre.state(2), 0)];
    let image = [
        branch(&success, 1, strategy.p_charlie(1).sqrt())
            + branch(&failure, 0, strategy.q_charlie(1).sqrt()),
        branch(&success, 2, strategy.p_charlie(2).sqrt())
            + branch(&failure, 0, strategy.q_charlie(2).sqrt()),
    ];
    Ok(StageUnitary {
        matrix: extend_isometry(&domain, &image),
        role: StageRole::Charlie,
    })
}

/// Probability of each ancilla outcome when `qubit_in` enters the stage.
///
/// Entry `j` is the squared norm of the ancilla-sector-`j` block of
/// `U(qubit_in ⊗ |0⟩)`.
pub fn sector_probabilities(stage: &StageUnitary, qubit_in: &Qubit) -> [f64; 3] {
    let out = stage.matrix * tensor(qubit_in, 0);
    let mut probs = [0.0f64; 3];
    for (sector, prob) in probs.iter_mut().enumerate() {
        *prob = out[sector].norm_sqr() + out[3 + sector].norm_sqr();
    }
    probs
}

/// Runs one stage on a qubit: applies the unitary, samples the ancilla
/// outcome from the caller's random stream (one uniform draw), and returns
/// the outcome with the renormalized post-measurement qubit.
///
/// # Errors
///
/// [`Error::NumericalDegeneracy`] if the sampled sector has numerically
/// vanished — possible only when rounding pushes the draw into a branch of
/// probability below [`tol::SECTOR_NORM_FLOOR`]².
pub fn measure_stage<R: Rng + ?Sized>(
    stage: &StageUnitary,
    qubit_in: &Qubit,
    rng: &mut R,
) -> Result<StageOutcome> {
    let out = stage.matrix * tensor(qubit_in, 0);
    let mut probs = [0.0f64; 3];
    for (sector, prob) in probs.iter_mut().enumerate() {
        *prob = out[sector].norm_sqr() + out[3 + sector].norm_sqr();
    }
    let draw: f64 = rng.gen();
    let mut cumulative = 0.0f64;
    let mut sector = None;
    for (j, prob) in probs.iter().enumerate() {
        cumulative += prob;
        if draw < cumulative {
            sector = Some(j);
            break;
        }
    }
    // A draw at or beyond the accumulated total (the probabilities sum to 1
    // only up to rounding) falls back to the last branch that exists.
    let sector = sector.unwrap_or_else(|| {
        (0..3)
            .rev()
            .find(|&j| probs[j].sqrt() >= tol::SECTOR_NORM_FLOOR)
            .unwrap_or(0)
    });
    let norm = probs[sector].sqrt();
    if norm < tol::SECTOR_NORM_FLOOR {
        return Err(Error::NumericalDegeneracy(format!(
            "sampled ancilla sector {sector} has norm {norm:.3e}; the branch \
             does not exist for this input"
        )));
    }
    let scale = Complex64::new(1.0 / norm, 0.0);
    let qubit_out = Qubit::new(out[sector] * scale, out[3 + sector] * scale);
    Ok(StageOutcome {
        outcome: sector as u8,
        qubit_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::inner;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn problem(s: f64, eta1: f64) -> DiscriminationProblem {
        DiscriminationProblem::new(s, eta1).unwrap()
    }

    fn strategy(p: &DiscriminationProblem, t: f64, q1b: f64, q1c: f64) -> SequentialStrategy {
        SequentialStrategy::new(p, t, q1b, q1c).unwrap()
    }

    /// Admissible random strategy for a random problem.
    fn random_instance(rng: &mut ChaCha8Rng) -> (DiscriminationProblem, SequentialStrategy) {
        let s = rng.gen_range(0.0..0.9);
        let eta1 = rng.gen_range(0.05..0.95);
        let p = problem(s, eta1);
        let t = rng.gen_range(s.max(1e-3)..1.0);
        let q1b = rng.gen_range(s * s / (t * t)..1.0);
        let q1c = rng.gen_range(t * t..1.0);
        let strat = strategy(&p, t, q1b, q1c);
        (p, strat)
    }

    #[test]
    fn bob_interior_sector_probabilities() {
        // Equal-prior failure optimum at s = 0.25: every branch is a coin.
        let p = problem(0.25, 0.5);
        let strat = strategy(&p, 0.5, 0.5, 0.5);
        let bob = build_bob_unitary(&p, &strat).unwrap();
        let states = p.states();
        let probs1 = sector_probabilities(&bob, states.state(1));
        assert!((probs1[0] - 0.5).abs() < 1e-12, "{probs1:?}");
        assert!((probs1[1] - 0.5).abs() < 1e-12);
        assert!(probs1[2] < 1e-24);
        let probs2 = sector_probabilities(&bob, states.state(2));
        assert!((probs2[0] - 0.5).abs() < 1e-12);
        assert!(probs2[1] < 1e-24);
        assert!((probs2[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn charlie_interior_sector_probabilities() {
        let p = problem(0.25, 0.5);
        let strat = strategy(&p, 0.5, 0.5, 0.5);
        let charlie = build_charlie_unitary(&p, &strat).unwrap();
        let mid = StatePair::embed(0.5).unwrap();
        let probs = sector_probabilities(&charlie, mid.state(1));
        assert!((probs[0] - 0.5).abs() < 1e-12, "{probs:?}");
        assert!((probs[1] - 0.5).abs() < 1e-12);
        assert!(probs[2] < 1e-24);
    }

    #[test]
    fn defined_action_is_reproduced_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let (p, strat) = random_instance(&mut rng);
            let bob = build_bob_unitary(&p, &strat).unwrap();
            let pre = p.states();
            let post = StatePair::embed(strat.t()).unwrap();
            for i in [1u8, 2u8] {
                let got = bob.matrix() * tensor(pre.state(i), 0);
                let want = branch(post.state(i), i as usize, strat.p_bob(i).sqrt())
                    + branch(post.state(i), 0, strat.q_bob(i).sqrt());
                assert!((got - want).norm() < 1e-12, "state {i}: {:?}", strat);
            }
        }
    }

    #[test]
    fn boundary_strategy_never_identifies_state_one() {
        let p = problem(0.25, 0.5);
        let strat = strategy(&p, 0.5, 1.0, 0.5);
        let bob = build_bob_unitary(&p, &strat).unwrap();
        let states = p.states();
        let probs = sector_probabilities(&bob, states.state(1));
        assert!(probs[1] < 1e-24, "{probs:?}");
        assert!((probs[0] - 1.0).abs() < 1e-12);

        // The single surviving branch is deterministic and leaves |φ₁⟩.
        let post = StatePair::embed(0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..64 {
            let outcome = measure_stage(&bob, states.state(1), &mut rng).unwrap();
            assert_eq!(outcome.outcome, 0);
            let fidelity = inner(&outcome.qubit_out, post.state(1)).norm();
            assert!((fidelity - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fully_inconclusive_charlie_is_permitted() {
        // t = 1 forces q1c = q2c = 1: Charlie's stage exists but always
        // returns "don't know".
        let p = problem(0.25, 0.5);
        let strat = strategy(&p, 1.0, 0.0625, 1.0);
        let charlie = build_charlie_unitary(&p, &strat).unwrap();
        assert!(charlie.unitarity_defect() < 1e-12);
        let mid = StatePair::embed(1.0).unwrap();
        let probs = sector_probabilities(&charlie, mid.state(1));
        assert!((probs[0] - 1.0).abs() < 1e-12, "{probs:?}");
    }

    #[test]
    fn unitarity_defect_small_for_random_strategies() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let (p, strat) = random_instance(&mut rng);
            let bob = build_bob_unitary(&p, &strat).unwrap();
            let charlie = build_charlie_unitary(&p, &strat).unwrap();
            assert!(
                bob.unitarity_defect() < tol::UNITARY,
                "bob defect {} for {:?}",
                bob.unitarity_defect(),
                strat
            );
            assert!(
                charlie.unitarity_defect() < tol::UNITARY,
                "charlie defect {} for {:?}",
                charlie.unitarity_defect(),
                strat
            );
        }
    }

    #[test]
    fn no_misidentification_for_random_strategies() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let (p, strat) = random_instance(&mut rng);
            let bob = build_bob_unitary(&p, &strat).unwrap();
            let states = p.states();
            assert!(sector_probabilities(&bob, states.state(1))[2] < 1e-24);
            assert!(sector_probabilities(&bob, states.state(2))[1] < 1e-24);
            let charlie = build_charlie_unitary(&p, &strat).unwrap();
            let mid = StatePair::embed(strat.t()).unwrap();
            assert!(sector_probabilities(&charlie, mid.state(1))[2] < 1e-24);
            assert!(sector_probabilities(&charlie, mid.state(2))[1] < 1e-24);
        }
    }

    #[test]
    fn sector_probabilities_close_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let (p, strat) = random_instance(&mut rng);
            let bob = build_bob_unitary(&p, &strat).unwrap();
            let states = p.states();
            for i in [1, 2] {
                let probs = sector_probabilities(&bob, states.state(i));
                let total: f64 = probs.iter().sum();
                assert!((total - 1.0).abs() < 1e-12, "total = {total}");
            }
        }
    }

    #[test]
    fn bob_post_state_is_outcome_independent() {
        // Success and failure leave the same qubit state, so the next
        // observer cannot tell whether this one succeeded.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let (p, strat) = random_instance(&mut rng);
            let bob = build_bob_unitary(&p, &strat).unwrap();
            let states = p.states();
            let post = StatePair::embed(strat.t()).unwrap();
            for i in [1u8, 2u8] {
                let mut draw_rng = ChaCha8Rng::seed_from_u64(101);
                for _ in 0..16 {
                    let out = measure_stage(&bob, states.state(i), &mut draw_rng).unwrap();
                    assert_ne!(out.outcome, 3 - i, "misidentification");
                    let fidelity = inner(&out.qubit_out, post.state(i)).norm();
                    assert!(
                        (fidelity - 1.0).abs() < 1e-12,
                        "outcome {} fidelity {fidelity}",
                        out.outcome
                    );
                }
            }
        }
    }

    #[test]
    fn outcome_frequencies_track_probabilities() {
        let p = problem(0.25, 0.5);
        let strat = strategy(&p, 0.5, 0.5, 0.5);
        let bob = build_bob_unitary(&p, &strat).unwrap();
        let states = p.states();
        let n = 100_000u32;
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        let mut counts = [0u32; 3];
        for _ in 0..n {
            let out = measure_stage(&bob, states.state(1), &mut rng).unwrap();
            counts[out.outcome as usize] += 1;
        }
        assert_eq!(counts[2], 0);
        let freq = f64::from(counts[1]) / f64::from(n);
        // p = 1/2: five standard errors of the binomial frequency.
        let bound = 5.0 * (0.25 / f64::from(n)).sqrt();
        assert!((freq - 0.5).abs() < bound, "freq = {freq}");
    }

    #[test]
    fn construction_is_deterministic() {
        let p = problem(0.37, 0.42);
        let strat = strategy(&p, 0.7, 0.5, 0.6);
        let bob_a = build_bob_unitary(&p, &strat).unwrap();
        let bob_b = build_bob_unitary(&p, &strat).unwrap();
        assert_eq!(bob_a.matrix(), bob_b.matrix());
        let charlie_a = build_charlie_unitary(&p, &strat).unwrap();
        let charlie_b = build_charlie_unitary(&p, &strat).unwrap();
        assert_eq!(charlie_a.matrix(), charlie_b.matrix());
    }

    #[test]
    fn defect_detects_broken_matrices() {
        let identity = StageUnitary {
            matrix: Matrix6::identity(),
            role: StageRole::Bob,
        };
        assert_eq!(identity.unitarity_defect(), 0.0);

        let mut broken = Matrix6::<Complex64>::identity();
        for row in 0..6 {
            broken[(row, 2)] = Complex64::new(0.0, 0.0);
        }
        let broken = StageUnitary {
            matrix: broken,
            role: StageRole::Charlie,
        };
        assert!(broken.unitarity_defect() >= 1.0);
    }

    #[test]
    fn orthogonal_preparations_are_supported() {
        let p = problem(0.0, 0.5);
        let strat = strategy(&p, 0.5, 0.3, 0.5);
        let bob = build_bob_unitary(&p, &strat).unwrap();
        assert!(bob.unitarity_defect() < tol::UNITARY);
        let states = p.states();
        let probs = sector_probabilities(&bob, states.state(1));
        assert!((probs[0] - 0.3).abs() < 1e-12, "{probs:?}");
        assert!((probs[1] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn role_names_are_stable() {
        assert_eq!(StageRole::Bob.to_string(), "BOB");
        assert_eq!(StageRole::Charlie.as_str(), "CHARLIE");
    }
}
