//! C ABI over the `seqdisc` library.
//!
//! Conventions: every function returns a [`SeqdiscStatus`] and writes its
//! result through an out-pointer; null pointers are reported, never
//! dereferenced. Problems are opaque handles created by
//! [`seqdisc_problem_new`] and released by [`seqdisc_problem_free`]. The
//! generated header lives at `include/seqdisc.h`.

use std::ffi::c_char;

use seqdisc::info::{optimize_mi_ff_ab, optimize_mi_usd_ab, optimize_mi_usd_bc, ChannelReport};
use seqdisc::model::{DiscriminationProblem, SequentialStrategy};
use seqdisc::optimize::{
    critical_overlap, min_joint_failure, optimize_minfail_success, optimize_success_only,
};
use seqdisc::sim::{empirical_stats, run_sequential};
use seqdisc::Error;

/// Outcome of every ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqdiscStatus {
    /// The call succeeded and the out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A scalar argument fell outside its admissible interval.
    OutOfRange = 2,
    /// Arguments were individually in range but jointly inconsistent.
    ConstraintViolation = 3,
    /// The requested quantity is only defined for equal priors.
    UnsupportedPriors = 4,
    /// A computation lost all numerical significance.
    NumericalDegeneracy = 5,
    /// No interior/boundary crossing exists for the given prior.
    NoCrossing = 6,
}

impl From<&Error> for SeqdiscStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::OutOfRange { .. } => SeqdiscStatus::OutOfRange,
            Error::ConstraintViolation(_) => SeqdiscStatus::ConstraintViolation,
            Error::UnsupportedPriors { .. } => SeqdiscStatus::UnsupportedPriors,
            Error::NumericalDegeneracy(_) => SeqdiscStatus::NumericalDegeneracy,
            Error::NoCrossing { .. } => SeqdiscStatus::NoCrossing,
        }
    }
}

/// Opaque discrimination problem handle.
pub struct SeqdiscProblem {
    inner: DiscriminationProblem,
}

/// A sequential strategy together with its joint success and failure
/// probabilities.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqdiscOptimum {
    /// Intermediate overlap passed from the first to the second observer.
    pub t: f64,
    /// First observer's failure probability on state 1.
    pub q1b: f64,
    /// First observer's failure probability on state 2.
    pub q2b: f64,
    /// Second observer's failure probability on state 1.
    pub q1c: f64,
    /// Second observer's failure probability on state 2.
    pub q2c: f64,
    /// Probability that both observers conclude.
    pub p_ss: f64,
    /// Probability that both observers fail.
    pub p_ff: f64,
}

/// An information maximum: where it sits and what the channel looks like
/// there.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqdiscInfoPoint {
    /// Maximizing parameter (a failure probability or mixing probability,
    /// depending on the quantity).
    pub arg: f64,
    /// Mutual information in bits at the maximum.
    pub mi: f64,
    /// Probability of a conclusive symbol at the maximum.
    pub p_success: f64,
    /// Posterior weight of state 1 among conclusive symbols.
    pub confidence1: f64,
}

/// Monte-Carlo summary of a simulated measurement chain.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeqdiscSimSummary {
    /// Number of simulated trials.
    pub trials: u64,
    /// Fraction of trials where both observers concluded.
    pub p_ss: f64,
    /// Standard error of `p_ss`.
    pub p_ss_std_err: f64,
    /// Fraction of trials where both observers failed.
    pub p_ff: f64,
    /// Standard error of `p_ff`.
    pub p_ff_std_err: f64,
    /// First observer's conclusive fraction.
    pub bob_success: f64,
    /// Second observer's conclusive fraction.
    pub charlie_success: f64,
    /// Empirical information between the preparation and the first
    /// observer's conclusive outcomes, in bits.
    pub mi_ab: f64,
    /// Same for the second observer.
    pub mi_ac: f64,
    /// Same between the two observers' conclusive outcomes.
    pub mi_bc: f64,
    /// Conclusive outcomes that named the wrong preparation (always zero
    /// for a correctly built chain).
    pub misidentifications: u64,
}

fn info_point(report: &ChannelReport) -> SeqdiscInfoPoint {
    SeqdiscInfoPoint {
        arg: report.arg,
        mi: report.mi,
        p_success: report.p_success,
        confidence1: report.confidence1,
    }
}

fn write_out<T>(out: *mut T, value: T) -> SeqdiscStatus {
    if out.is_null() {
        return SeqdiscStatus::NullPointer;
    }
    unsafe { out.write(value) };
    SeqdiscStatus::Ok
}

unsafe fn problem_ref<'a>(problem: *const SeqdiscProblem) -> Option<&'a DiscriminationProblem> {
    unsafe { problem.as_ref() }.map(|p| &p.inner)
}

/// Creates a problem from the preparation overlap `s ∈ [0, 1)` and the
/// prior `eta1 ∈ (0, 1)` of state 1; writes the handle to `out`.
///
/// # Safety
///
/// `out` must be a valid pointer. The returned handle must be released
/// with [`seqdisc_problem_free`].
#[no_mangle]
pub unsafe extern "C" fn seqdisc_problem_new(
    s: f64,
    eta1: f64,
    out: *mut *mut SeqdiscProblem,
) -> SeqdiscStatus {
    if out.is_null() {
        return SeqdiscStatus::NullPointer;
    }
    match DiscriminationProblem::new(s, eta1) {
        Ok(inner) => write_out(out, Box::into_raw(Box::new(SeqdiscProblem { inner }))),
        Err(err) => SeqdiscStatus::from(&err),
    }
}

/// Releases a handle created by [`seqdisc_problem_new`]; null is a no-op.
///
/// # Safety
///
/// `problem` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_problem_free(problem: *mut SeqdiscProblem) {
    if !problem.is_null() {
        drop(unsafe { Box::from_raw(problem) });
    }
}

/// Reads back the preparation overlap of a problem handle.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_problem_s(
    problem: *const SeqdiscProblem,
    out: *mut f64,
) -> SeqdiscStatus {
    match unsafe { problem_ref(problem) } {
        None => SeqdiscStatus::NullPointer,
        Some(p) => write_out(out, p.s()),
    }
}

/// Reads back the prior of state 1 of a problem handle.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_problem_eta1(
    problem: *const SeqdiscProblem,
    out: *mut f64,
) -> SeqdiscStatus {
    match unsafe { problem_ref(problem) } {
        None => SeqdiscStatus::NullPointer,
        Some(p) => write_out(out, p.eta1()),
    }
}

fn optimum_of(result: &seqdisc::model::OptimizationResult) -> SeqdiscOptimum {
    let strategy = &result.strategy;
    SeqdiscOptimum {
        t: strategy.t(),
        q1b: strategy.q1b(),
        q2b: strategy.q2b(),
        q1c: strategy.q1c(),
        q2c: strategy.q2c(),
        p_ss: result.p_ss,
        p_ff: result.p_ff,
    }
}

/// Strategy minimizing the joint-failure probability, with its success
/// probability.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_optimize_min_failure(
    problem: *const SeqdiscProblem,
    out: *mut SeqdiscOptimum,
) -> SeqdiscStatus {
    let Some(p) = (unsafe { problem_ref(problem) }) else {
        return SeqdiscStatus::NullPointer;
    };
    match optimize_minfail_success(p) {
        Ok(result) => write_out(out, optimum_of(&result)),
        Err(err) => SeqdiscStatus::from(&err),
    }
}

/// Strategy maximizing the joint-success probability. Requires `s > 0`.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_optimize_success_only(
    problem: *const SeqdiscProblem,
    out: *mut SeqdiscOptimum,
) -> SeqdiscStatus {
    let Some(p) = (unsafe { problem_ref(problem) }) else {
        return SeqdiscStatus::NullPointer;
    };
    match optimize_success_only(p) {
        Ok(result) => write_out(out, optimum_of(&result)),
        Err(err) => SeqdiscStatus::from(&err),
    }
}

/// Minimum joint-failure probability alone (no handle needed beyond the
/// problem).
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_min_failure_probability(
    problem: *const SeqdiscProblem,
    out: *mut f64,
) -> SeqdiscStatus {
    match unsafe { problem_ref(problem) } {
        None => SeqdiscStatus::NullPointer,
        Some(p) => write_out(out, min_joint_failure(p).p_ff),
    }
}

/// Overlap below which the interior success-maximizing strategy beats every
/// boundary strategy, for prior `eta1`.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_critical_overlap(eta1: f64, out: *mut f64) -> SeqdiscStatus {
    match critical_overlap(eta1) {
        Ok(value) => write_out(out, value),
        Err(err) => SeqdiscStatus::from(&err),
    }
}

/// Maximum conclusive-round information between the preparation and a lone
/// optimal observer, over that observer's failure probability.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_info_usd_ab_max(
    problem: *const SeqdiscProblem,
    out: *mut SeqdiscInfoPoint,
) -> SeqdiscStatus {
    match unsafe { problem_ref(problem) } {
        None => SeqdiscStatus::NullPointer,
        Some(p) => write_out(out, info_point(&optimize_mi_usd_ab(p))),
    }
}

/// Maximum both-conclusive information shared by the two sequential
/// observers, over the symmetric strategy family.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_info_usd_bc_max(
    problem: *const SeqdiscProblem,
    out: *mut SeqdiscInfoPoint,
) -> SeqdiscStatus {
    match unsafe { problem_ref(problem) } {
        None => SeqdiscStatus::NullPointer,
        Some(p) => write_out(out, info_point(&optimize_mi_usd_bc(p))),
    }
}

/// Maximum information between the preparation and a lone flip-flop
/// observer, over the mixing probability.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_info_ff_ab_max(
    problem: *const SeqdiscProblem,
    out: *mut SeqdiscInfoPoint,
) -> SeqdiscStatus {
    match unsafe { problem_ref(problem) } {
        None => SeqdiscStatus::NullPointer,
        Some(p) => write_out(out, info_point(&optimize_mi_ff_ab(p))),
    }
}

/// Information extracted by the optimal minimum-error measurement of a lone
/// observer; defined for equal priors only.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_helstrom_info(
    problem: *const SeqdiscProblem,
    out: *mut f64,
) -> SeqdiscStatus {
    let Some(p) = (unsafe { problem_ref(problem) }) else {
        return SeqdiscStatus::NullPointer;
    };
    match seqdisc::info::helstrom_mi(p) {
        Ok(value) => write_out(out, value),
        Err(err) => SeqdiscStatus::from(&err),
    }
}

/// Simulates the two-observer chain at the strategy `(t, q1b, q1c)` for
/// `trials` trials under the given seed, and summarizes the outcome record.
///
/// Identical inputs yield identical summaries on every platform and thread
/// count. `trials` must be at least 1.
///
/// # Safety
///
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqdisc_simulate(
    problem: *const SeqdiscProblem,
    t: f64,
    q1b: f64,
    q1c: f64,
    trials: u64,
    seed: u64,
    out: *mut SeqdiscSimSummary,
) -> SeqdiscStatus {
    let Some(p) = (unsafe { problem_ref(problem) }) else {
        return SeqdiscStatus::NullPointer;
    };
    if trials == 0 {
        return SeqdiscStatus::OutOfRange;
    }
    let run = SequentialStrategy::new(p, t, q1b, q1c)
        .and_then(|strategy| run_sequential(p, &strategy, trials, seed));
    match run {
        Err(err) => SeqdiscStatus::from(&err),
        Ok(ledger) => {
            let stats = empirical_stats(&ledger);
            write_out(
                out,
                SeqdiscSimSummary {
                    trials,
                    p_ss: stats.p_ss.value,
                    p_ss_std_err: stats.p_ss.std_err,
                    p_ff: stats.p_ff.value,
                    p_ff_std_err: stats.p_ff.std_err,
                    bob_success: stats.bob_success.value,
                    charlie_success: stats.charlie_success.value,
                    mi_ab: stats.mi_ab,
                    mi_ac: stats.mi_ac,
                    mi_bc: stats.mi_bc,
                    misidentifications: stats.misidentifications,
                },
            )
        }
    }
}

/// Static name of a status code, e.g. `"SEQDISC_STATUS_OK"`.
#[no_mangle]
pub extern "C" fn seqdisc_status_name(status: SeqdiscStatus) -> *const c_char {
    let name = match status {
        SeqdiscStatus::Ok => c"SEQDISC_STATUS_OK",
        SeqdiscStatus::NullPointer => c"SEQDISC_STATUS_NULL_POINTER",
        SeqdiscStatus::OutOfRange => c"SEQDISC_STATUS_OUT_OF_RANGE",
        SeqdiscStatus::ConstraintViolation => c"SEQDISC_STATUS_CONSTRAINT_VIOLATION",
        SeqdiscStatus::UnsupportedPriors => c"SEQDISC_STATUS_UNSUPPORTED_PRIORS",
        SeqdiscStatus::NumericalDegeneracy => c"SEQDISC_STATUS_NUMERICAL_DEGENERACY",
        SeqdiscStatus::NoCrossing => c"SEQDISC_STATUS_NO_CROSSING",
    };
    name.as_ptr()
}
