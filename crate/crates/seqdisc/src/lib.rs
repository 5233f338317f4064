//! Sequential unambiguous discrimination of two nonorthogonal qubit states.
//!
//! A sender (Alice) prepares one of two pure qubit states |ψ₁⟩, |ψ₂⟩ with
//! real overlap `s = ⟨ψ₁|ψ₂⟩` and prior probabilities `η₁`, `η₂ = 1 − η₁`.
//! The qubit is handed to a first observer (Bob) and then to a second
//! (Charlie). Each observer performs unambiguous state discrimination (USD):
//! a three-outcome measurement that either identifies the prepared state with
//! certainty or returns an explicit "don't know". Bob must measure gently
//! enough that Charlie can still extract unambiguous information from the
//! post-measurement states.
//!
//! The crate provides:
//!
//! - [`model`] — problem and strategy types. A strategy is the parameter
//!   triple `(t, q1b, q1c)`: the overlap of Bob's post-measurement states and
//!   the conditional failure probabilities of both observers, with the
//!   remaining failure probabilities fixed by the no-signalling constraints
//!   `s/t = √(q1b·q2b)` and `t = √(q1c·q2c)`.
//! - [`optimize`] — closed-form and numeric optima: the minimum joint failure
//!   probability with its three prior regimes, the maximum joint success
//!   probability (a quartic root problem with an interior/boundary
//!   transition at a critical overlap), flip-flop strategies, and a
//!   brute-force grid oracle for cross-checking.
//! - [`info`] — mutual-information figures of merit for each link of the
//!   chain (Alice↔Bob, Alice↔Charlie, Bob↔Charlie), guessing-based and
//!   USD-based, plus the Helstrom accessible-information benchmark.
//! - [`neumark`] — explicit 6×6 unitary dilations (qubit ⊗ three-level
//!   ancilla) realizing both observers' measurements, and a single-stage
//!   sampling primitive.
//! - [`sim`] — seeded Monte-Carlo simulation of the full chain, trial
//!   ledgers, empirical statistics, and key sifting for the
//!   quantum-key-distribution reading of the protocol.
//!
//! # Quick start
//!
//! ```
//! use seqdisc::model::DiscriminationProblem;
//! use seqdisc::optimize;
//!
//! // Equal priors, overlap 0.25.
//! let problem = DiscriminationProblem::new(0.25, 0.5).unwrap();
//!
//! // Strategy attaining the smallest joint failure probability; for equal
//! // priors it fails with probability s and succeeds with (1-√s)².
//! let best = optimize::optimize_minfail_success(&problem).unwrap();
//! assert!((best.p_ff - 0.25).abs() < 1e-12);
//! assert!((best.p_ss - 0.25).abs() < 1e-12);
//! assert!((best.strategy.q1b() - 0.5).abs() < 1e-12);
//!
//! // Dropping the failure constraint moves the best joint success to the
//! // boundary where only one state is ever identified: ½(1-s)².
//! let succ = optimize::optimize_success_only(&problem).unwrap();
//! assert!((succ.p_ss - 0.28125).abs() < 1e-12);
//! ```

pub mod error;
pub mod info;
pub mod model;
pub mod neumark;
pub mod optimize;
pub mod sim;
pub mod tol;

pub(crate) mod search;

pub use error::{Error, Result};
