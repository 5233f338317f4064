//! Seeded Monte-Carlo execution of the full preparation → Bob → Charlie
//! chain, with trial ledgers, empirical statistics, and key sifting.
//!
//! Every trial owns an independent random stream derived from the run seed
//! and the trial index, so runs are reproducible bit-for-bit regardless of
//! how trials are scheduled across threads.  Within a trial the draw order
//! is fixed: preparation, (setup choice,) first-observer outcome, (setup
//! choice,) second-observer outcome.
//!
//! Three run modes mirror the protocols the crate analyzes:
//!
//! - [`run_sequential`] — both observers apply the optimal three-outcome
//!   measurements of a [`SequentialStrategy`], realized through their
//!   dilation unitaries.
//! - [`run_flipflop_sequential`] — both observers independently toss a coin
//!   (probability `c` for setup 1) between the two one-sided boundary
//!   setups at intermediate overlap `t = √s`.
//! - [`run_flipflop_single`] — a lone observer tosses the same coin between
//!   the two projective one-sided measurements; no second observer.
//!
//! [`sift_keys`] turns a ledger into the raw key material of the
//! key-distribution reading — conclusive trials become bits (state 1 ↦ 0,
//! state 2 ↦ 1) and the three-party key keeps the trials where both
//! observers were conclusive.  [`empirical_stats`] reduces a ledger to
//! frequencies with binomial standard errors and plug-in information
//! estimates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::error::Result;
use crate::info::binary_entropy;
use crate::model::{DiscriminationProblem, SequentialStrategy};
use crate::neumark::{build_bob_unitary, build_charlie_unitary, measure_stage, StageUnitary};
use crate::optimize::FlipFlopStrategy;

/// Which measurement an observer ran in a given trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Setup {
    /// The three-outcome measurement of a sequential strategy.
    #[serde(rename = "POVM")]
    Povm,
    /// One-sided setup that can only identify state 2.
    #[serde(rename = "FF1")]
    FlipFlop1,
    /// One-sided setup that can only identify state 1.
    #[serde(rename = "FF2")]
    FlipFlop2,
}

impl Setup {
    /// Stable name used in transcripts and CSV exports.
    pub fn as_str(self) -> &'static str {
        match self {
            Setup::Povm => "POVM",
            Setup::FlipFlop1 => "FF1",
            Setup::FlipFlop2 => "FF2",
        }
    }
}

impl std::fmt::Display for Setup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One simulated trial.  Second-observer fields are `None` for
/// single-observer runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    /// Zero-based trial index, equal to the random stream index.
    pub trial: u64,
    /// Prepared state, 1 or 2.
    pub prepared: u8,
    /// Setup the first observer ran.
    pub bob_setup: Setup,
    /// First observer's outcome: 0 inconclusive, 1 or 2 conclusive.
    pub bob_outcome: u8,
    /// Setup the second observer ran, if the run had one.
    pub charlie_setup: Option<Setup>,
    /// Second observer's outcome, if the run had one.
    pub charlie_outcome: Option<u8>,
}

/// Complete, replayable record of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialLedger {
    /// Seed the run was keyed with; replaying it reproduces `records`.
    seed: u64,
    records: Vec<TrialRecord>,
}

impl TrialLedger {
    /// Seed the run was keyed with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of trials.
    pub fn n(&self) -> u64 {
        self.records.len() as u64
    }

    /// The per-trial records in trial order.
    pub fn records(&self) -> &[TrialRecord] {
        &self.records
    }

    /// Writes the ledger as CSV with header
    /// `trial,prepared,bob_setup,bob_outcome,charlie_setup,charlie_outcome`;
    /// absent second-observer fields are left empty.
    pub fn write_csv<W: Write>(&self, writer: &mut W) -> std::io::Result<()> {
        writeln!(
            writer,
            "trial,prepared,bob_setup,bob_outcome,charlie_setup,charlie_outcome"
        )?;
        for record in &self.records {
            let charlie_setup = record.charlie_setup.map_or("", Setup::as_str);
            let charlie_outcome = record
                .charlie_outcome
                .map_or_else(String::new, |o| o.to_string());
            writeln!(
                writer,
                "{},{},{},{},{},{}",
                record.trial,
                record.prepared,
                record.bob_setup,
                record.bob_outcome,
                charlie_setup,
                charlie_outcome
            )?;
        }
        Ok(())
    }
}

/// The random stream owned by one trial: the run seed selects the key, the
/// trial index selects the stream, so trials are independent and a run can
/// be replayed (or parallelized) in any order.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws the prepared state index (1 or 2) from the priors.
fn draw_prepared(problem: &DiscriminationProblem, rng: &mut ChaCha8Rng) -> u8 {
    if rng.gen::<f64>() < problem.eta1() {
        1
    } else {
        2
    }
}

/// Runs the two-observer chain with both observers applying the
/// three-outcome measurements of `strategy`, `n` trials keyed by `seed`.
///
/// # Errors
///
/// Construction errors from the stage unitaries, and
/// [`crate::Error::NumericalDegeneracy`] if a trial samples a vanished
/// measurement branch (not reachable for valid strategies).
pub fn run_sequential(
    problem: &DiscriminationProblem,
    strategy: &SequentialStrategy,
    n: u64,
    seed: u64,
) -> Result<TrialLedger> {
    let bob = build_bob_unitary(problem, strategy)?;
    let charlie = build_charlie_unitary(problem, strategy)?;
    let states = problem.states();
    let records = (0..n)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let prepared = draw_prepared(problem, &mut rng);
            let after_bob = measure_stage(&bob, states.state(prepared), &mut rng)?;
            let after_charlie = measure_stage(&charlie, &after_bob.qubit_out, &mut rng)?;
            Ok(TrialRecord {
                trial,
                prepared,
                bob_setup: Setup::Povm,
                bob_outcome: after_bob.outcome,
                charlie_setup: Some(Setup::Povm),
                charlie_outcome: Some(after_charlie.outcome),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialLedger { seed, records })
}

/// The four one-sided boundary stages used by the sequential flip-flop:
/// setup 1 never identifies state 1, setup 2 never identifies state 2, and
/// both run at intermediate overlap `t = √s` so the stage failure products
/// are `s` for each observer.
struct FlipFlopStages {
    bob: [StageUnitary; 2],
    charlie: [StageUnitary; 2],
}

fn flipflop_stages(problem: &DiscriminationProblem) -> Result<FlipFlopStages> {
    let t = problem.s().sqrt();
    // Setup 1: q1 pinned to one for both observers (q2 = s follows).
    let setup1 = SequentialStrategy::new(problem, t, 1.0, 1.0)?;
    // Setup 2: q2 pinned to one, i.e. q1 at its lower bound s.
    let setup2 = SequentialStrategy::new(problem, t, problem.s(), problem.s())?;
    Ok(FlipFlopStages {
        bob: [
            build_bob_unitary(problem, &setup1)?,
            build_bob_unitary(problem, &setup2)?,
        ],
        charlie: [
            build_charlie_unitary(problem, &setup1)?,
            build_charlie_unitary(problem, &setup2)?,
        ],
    })
}

/// Draws a flip-flop setup: probability `c` for setup 1.
fn draw_setup(ff: &FlipFlopStrategy, rng: &mut ChaCha8Rng) -> (usize, Setup) {
    if rng.gen::<f64>() < ff.c() {
        (0, Setup::FlipFlop1)
    } else {
        (1, Setup::FlipFlop2)
    }
}

/// Runs the two-observer chain with both observers flip-flopping
/// independently between the two one-sided setups at `t = √s`.
///
/// # Errors
///
/// Construction errors from the boundary stages; in particular orthogonal
/// preparations (`s = 0`) are rejected because the boundary chain would
/// need a fully distinguishing intermediate overlap `t = 0`, which admits
/// no dilation in this family.
pub fn run_flipflop_sequential(
    problem: &DiscriminationProblem,
    ff: &FlipFlopStrategy,
    n: u64,
    seed: u64,
) -> Result<TrialLedger> {
    let stages = flipflop_stages(problem)?;
    let states = problem.states();
    let records = (0..n)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let prepared = draw_prepared(problem, &mut rng);
            let (bob_index, bob_setup) = draw_setup(ff, &mut rng);
            let after_bob =
                measure_stage(&stages.bob[bob_index], states.state(prepared), &mut rng)?;
            let (charlie_index, charlie_setup) = draw_setup(ff, &mut rng);
            let after_charlie = measure_stage(
                &stages.charlie[charlie_index],
                &after_bob.qubit_out,
                &mut rng,
            )?;
            Ok(TrialRecord {
                trial,
                prepared,
                bob_setup,
                bob_outcome: after_bob.outcome,
                charlie_setup: Some(charlie_setup),
                charlie_outcome: Some(after_charlie.outcome),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialLedger { seed, records })
}

/// Runs a lone observer who flip-flops between the two projective
/// one-sided measurements (no ancilla, no second observer): setup 1
/// projects onto {|ψ₁⟩, |ψ₁⊥⟩} and can only identify state 2, setup 2
/// mirrors it.  Each setup concludes on its identifiable state with
/// probability `1 − s²`.
pub fn run_flipflop_single(
    problem: &DiscriminationProblem,
    ff: &FlipFlopStrategy,
    n: u64,
    seed: u64,
) -> TrialLedger {
    let conclusive = 1.0 - problem.s() * problem.s();
    let records = (0..n)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let prepared = draw_prepared(problem, &mut rng);
            let (_, setup) = draw_setup(ff, &mut rng);
            let identifiable = match setup {
                Setup::FlipFlop1 => 2,
                _ => 1,
            };
            // One outcome draw per trial keeps the stream layout uniform.
            let draw: f64 = rng.gen();
            let outcome = if prepared == identifiable && draw < conclusive {
                prepared
            } else {
                0
            };
            TrialRecord {
                trial,
                prepared,
                bob_setup: setup,
                bob_outcome: outcome,
                charlie_setup: None,
                charlie_outcome: None,
            }
        })
        .collect();
    TrialLedger { seed, records }
}

/// A sifted key: the bits, the fraction of all trials that contributed,
/// and the fraction of 1-bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Key {
    /// ASCII bit string, one character per contributing trial.
    pub bits: String,
    /// Contributing trials divided by total trials.
    pub rate: f64,
    /// Fraction of 1-bits (0 for an empty key).
    pub balance: f64,
}

impl Key {
    fn from_bits(bits: String, n_trials: u64) -> Self {
        let ones = bits.bytes().filter(|&b| b == b'1').count();
        let len = bits.len();
        Key {
            rate: if n_trials == 0 {
                0.0
            } else {
                len as f64 / n_trials as f64
            },
            balance: if len == 0 {
                0.0
            } else {
                ones as f64 / len as f64
            },
            bits,
        }
    }

    /// Number of conclusive trials behind the key.
    pub fn n_conclusive(&self) -> usize {
        self.bits.len()
    }
}

/// The three keys of the key-distribution reading of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyBundle {
    /// Trials where the first observer was conclusive.
    pub ab: Key,
    /// Trials where the second observer was conclusive.
    pub ac: Key,
    /// Trials where both observers were conclusive.
    pub abc: Key,
}

/// Sifts a ledger into raw keys: every conclusive outcome contributes the
/// bit of the state it identified (state 1 ↦ 0, state 2 ↦ 1).  Because
/// conclusive outcomes never err, the bits agree with the preparation
/// record; the three-party key keeps exactly the trials present in both
/// single-observer keys.
pub fn sift_keys(ledger: &TrialLedger) -> KeyBundle {
    let n = ledger.n();
    let mut ab = String::new();
    let mut ac = String::new();
    let mut abc = String::new();
    for record in ledger.records() {
        let bob_bit = match record.bob_outcome {
            0 => None,
            outcome => Some(if outcome == 1 { '0' } else { '1' }),
        };
        let charlie_bit = match record.charlie_outcome {
            Some(0) | None => None,
            Some(outcome) => Some(if outcome == 1 { '0' } else { '1' }),
        };
        if let Some(bit) = bob_bit {
            ab.push(bit);
        }
        if let Some(bit) = charlie_bit {
            ac.push(bit);
        }
        if let (Some(bit), Some(_)) = (bob_bit, charlie_bit) {
            abc.push(bit);
        }
    }
    KeyBundle {
        ab: Key::from_bits(ab, n),
        ac: Key::from_bits(ac, n),
        abc: Key::from_bits(abc, n),
    }
}

/// A frequency estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    /// Observed frequency.
    pub value: f64,
    /// `√(p(1−p)/n)`; zero when undefined (`n = 0`) or degenerate.
    pub std_err: f64,
}

impl Estimate {
    fn frequency(hits: u64, n: u64) -> Self {
        if n == 0 {
            return Estimate {
                value: 0.0,
                std_err: 0.0,
            };
        }
        let p = hits as f64 / n as f64;
        Estimate {
            value: p,
            std_err: (p * (1.0 - p) / n as f64).sqrt(),
        }
    }
}

/// Empirical summary of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationStats {
    /// Trial count.
    pub n: u64,
    /// Both observers conclusive (over trials with a second observer).
    pub p_ss: Estimate,
    /// Both observers inconclusive (over trials with a second observer).
    pub p_ff: Estimate,
    /// First observer conclusive, all trials.
    pub bob_success: Estimate,
    /// Second observer conclusive (over trials with a second observer).
    pub charlie_success: Estimate,
    /// First observer conclusive given state 1 was prepared.
    pub bob_success_state1: Estimate,
    /// First observer conclusive given state 2 was prepared.
    pub bob_success_state2: Estimate,
    /// Second observer conclusive given state 1 was prepared.
    pub charlie_success_state1: Estimate,
    /// Second observer conclusive given state 2 was prepared.
    pub charlie_success_state2: Estimate,
    /// Plug-in conclusive-round information of the first observer, bits.
    pub mi_ab: f64,
    /// Plug-in conclusive-round information of the second observer, bits.
    pub mi_ac: f64,
    /// Plug-in both-conclusive information, bits.
    pub mi_bc: f64,
    /// Conclusive outcomes contradicting the preparation (must be zero).
    pub misidentifications: u64,
}

/// Plug-in conclusive-round information: observed conclusive rate times the
/// entropy of the observed conclusive split.
fn plug_in_mi(conclusive_state1: u64, conclusive: u64, n: u64) -> f64 {
    if n == 0 || conclusive == 0 {
        return 0.0;
    }
    let p_success = conclusive as f64 / n as f64;
    let confidence1 = conclusive_state1 as f64 / conclusive as f64;
    p_success * binary_entropy(confidence1.clamp(0.0, 1.0)).expect("frequency in [0, 1]")
}

/// Reduces a ledger to frequencies, standard errors, plug-in information
/// estimates, and the misidentification count.  Deterministic in the
/// ledger contents.
pub fn empirical_stats(ledger: &TrialLedger) -> SimulationStats {
    let n = ledger.n();
    let mut prepared1 = 0u64;
    let mut bob_hit = 0u64;
    let mut bob_hit1 = 0u64;
    let mut bob_hit_given1 = 0u64;
    let mut bob_hit_given2 = 0u64;
    let mut with_charlie = 0u64;
    let mut with_charlie1 = 0u64;
    let mut charlie_hit = 0u64;
    let mut charlie_hit1 = 0u64;
    let mut charlie_hit_given1 = 0u64;
    let mut charlie_hit_given2 = 0u64;
    let mut both_hit = 0u64;
    let mut both_hit1 = 0u64;
    let mut both_miss = 0u64;
    let mut misidentifications = 0u64;
    for record in ledger.records() {
        let state1 = record.prepared == 1;
        if state1 {
            prepared1 += 1;
        }
        let bob_conclusive = record.bob_outcome != 0;
        if bob_conclusive {
            bob_hit += 1;
            if record.bob_outcome == 1 {
                bob_hit1 += 1;
            }
            if record.bob_outcome != record.prepared {
                misidentifications += 1;
            }
            if state1 {
                bob_hit_given1 += 1;
            } else {
                bob_hit_given2 += 1;
            }
        }
        if let Some(charlie_outcome) = record.charlie_outcome {
            with_charlie += 1;
            if state1 {
                with_charlie1 += 1;
            }
            let charlie_conclusive = charlie_outcome != 0;
            if charlie_conclusive {
                charlie_hit += 1;
                if charlie_outcome == 1 {
                    charlie_hit1 += 1;
                }
                if charlie_outcome != record.prepared {
                    misidentifications += 1;
                }
                if state1 {
                    charlie_hit_given1 += 1;
                } else {
                    charlie_hit_given2 += 1;
                }
            }
            if bob_conclusive && charlie_conclusive {
                both_hit += 1;
                if record.bob_outcome == 1 {
                    both_hit1 += 1;
                }
            }
            if !bob_conclusive && !charlie_conclusive {
                both_miss += 1;
            }
        }
    }
    let prepared2 = n - prepared1;
    SimulationStats {
        n,
        p_ss: Estimate::frequency(both_hit, with_charlie),
        p_ff: Estimate::frequency(both_miss, with_charlie),
        bob_success: Estimate::frequency(bob_hit, n),
        charlie_success: Estimate::frequency(charlie_hit, with_charlie),
        bob_success_state1: Estimate::frequency(bob_hit_given1, prepared1),
        bob_success_state2: Estimate::frequency(bob_hit_given2, prepared2),
        charlie_success_state1: Estimate::frequency(charlie_hit_given1, with_charlie1),
        charlie_success_state2: Estimate::frequency(
            charlie_hit_given2,
            with_charlie - with_charlie1,
        ),
        mi_ab: plug_in_mi(bob_hit1, bob_hit, n),
        mi_ac: plug_in_mi(charlie_hit1, charlie_hit, with_charlie),
        mi_bc: plug_in_mi(both_hit1, both_hit, with_charlie),
        misidentifications,
    }
}
