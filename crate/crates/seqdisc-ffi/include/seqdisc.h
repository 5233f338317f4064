#ifndef SEQDISC_H
#define SEQDISC_H

/* Generated by cbindgen from the seqdisc-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of every ABI call.
typedef enum SeqdiscStatus {
  // The call succeeded and the out-parameters are valid.
  SEQDISC_STATUS_OK = 0,
  // A required pointer argument was null.
  SEQDISC_STATUS_NULL_POINTER = 1,
  // A scalar argument fell outside its admissible interval.
  SEQDISC_STATUS_OUT_OF_RANGE = 2,
  // Arguments were individually in range but jointly inconsistent.
  SEQDISC_STATUS_CONSTRAINT_VIOLATION = 3,
  // The requested quantity is only defined for equal priors.
  SEQDISC_STATUS_UNSUPPORTED_PRIORS = 4,
  // A computation lost all numerical significance.
  SEQDISC_STATUS_NUMERICAL_DEGENERACY = 5,
  // No interior/boundary crossing exists for the given prior.
  SEQDISC_STATUS_NO_CROSSING = 6,
} SeqdiscStatus;

// Opaque discrimination problem handle.
typedef struct SeqdiscProblem SeqdiscProblem;

// A sequential strategy together with its joint success and failure
// probabilities.
typedef struct SeqdiscOptimum {
  // Intermediate overlap passed from the first to the second observer.
  double t;
  // First observer's failure probability on state 1.
  double q1b;
  // First observer's failure probability on state 2.
  double q2b;
  // Second observer's failure probability on state 1.
  double q1c;
  // Second observer's failure probability on state 2.
  double q2c;
  // Probability that both observers conclude.
  double p_ss;
  // Probability that both observers fail.
  double p_ff;
} SeqdiscOptimum;

// An information maximum: where it sits and what the channel looks like
// there.
typedef struct SeqdiscInfoPoint {
  // Maximizing parameter (a failure probability or mixing probability,
  // depending on the quantity).
  double arg;
  // Mutual information in bits at the maximum.
  double mi;
  // Probability of a conclusive symbol at the maximum.
  double p_success;
  // Posterior weight of state 1 among conclusive symbols.
  double confidence1;
} SeqdiscInfoPoint;

// Monte-Carlo summary of a simulated measurement chain.
typedef struct SeqdiscSimSummary {
  // Number of simulated trials.
  uint64_t trials;
  // Fraction of trials where both observers concluded.
  double p_ss;
  // Standard error of `p_ss`.
  double p_ss_std_err;
  // Fraction of trials where both observers failed.
  double p_ff;
  // Standard error of `p_ff`.
  double p_ff_std_err;
  // First observer's conclusive fraction.
  double bob_success;
  // Second observer's conclusive fraction.
  double charlie_success;
  // Empirical information between the preparation and the first
  // observer's conclusive outcomes, in bits.
  double mi_ab;
  // Same for the second observer.
  double mi_ac;
  // Same between the two observers' conclusive outcomes.
  double mi_bc;
  // Conclusive outcomes that named the wrong preparation (always zero
  // for a correctly built chain).
  uint64_t misidentifications;
} SeqdiscSimSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a problem from the preparation overlap `s ∈ [0, 1)` and the
// prior `eta1 ∈ (0, 1)` of state 1; writes the handle to `out`.
//
// # Safety
//
// `out` must be a valid pointer. The returned handle must be released
// with [`seqdisc_problem_free`].
enum SeqdiscStatus seqdisc_problem_new(double s, double eta1, struct SeqdiscProblem **out);

// Releases a handle created by [`seqdisc_problem_new`]; null is a no-op.
//
// # Safety
//
// `problem` must be null or a handle not yet freed.
void seqdisc_problem_free(struct SeqdiscProblem *problem);

// Reads back the preparation overlap of a problem handle.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_problem_s(const struct SeqdiscProblem *problem, double *out);

// Reads back the prior of state 1 of a problem handle.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_problem_eta1(const struct SeqdiscProblem *problem, double *out);

// Strategy minimizing the joint-failure probability, with its success
// probability.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_optimize_min_failure(const struct SeqdiscProblem *problem,
                                                struct SeqdiscOptimum *out);

// Strategy maximizing the joint-success probability. Requires `s > 0`.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_optimize_success_only(const struct SeqdiscProblem *problem,
                                                 struct SeqdiscOptimum *out);

// Minimum joint-failure probability alone (no handle needed beyond the
// problem).
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_min_failure_probability(const struct SeqdiscProblem *problem,
                                                   double *out);

// Overlap below which the interior success-maximizing strategy beats every
// boundary strategy, for prior `eta1`.
//
// # Safety
//
// `out` must be a valid pointer.
enum SeqdiscStatus seqdisc_critical_overlap(double eta1, double *out);

// Maximum conclusive-round information between the preparation and a lone
// optimal observer, over that observer's failure probability.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_info_usd_ab_max(const struct SeqdiscProblem *problem,
                                           struct SeqdiscInfoPoint *out);

// Maximum both-conclusive information shared by the two sequential
// observers, over the symmetric strategy family.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_info_usd_bc_max(const struct SeqdiscProblem *problem,
                                           struct SeqdiscInfoPoint *out);

// Maximum information between the preparation and a lone flip-flop
// observer, over the mixing probability.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_info_ff_ab_max(const struct SeqdiscProblem *problem,
                                          struct SeqdiscInfoPoint *out);

// Information extracted by the optimal minimum-error measurement of a lone
// observer; defined for equal priors only.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_helstrom_info(const struct SeqdiscProblem *problem, double *out);

// Simulates the two-observer chain at the strategy `(t, q1b, q1c)` for
// `trials` trials under the given seed, and summarizes the outcome record.
//
// Identical inputs yield identical summaries on every platform and thread
// count. `trials` must be at least 1.
//
// # Safety
//
// `problem` must be a live handle and `out` a valid pointer.
enum SeqdiscStatus seqdisc_simulate(const struct SeqdiscProblem *problem,
                                    double t,
                                    double q1b,
                                    double q1c,
                                    uint64_t trials,
                                    uint64_t seed,
                                    struct SeqdiscSimSummary *out);

// Static name of a status code, e.g. `"SEQDISC_STATUS_OK"`.
const char *seqdisc_status_name(enum SeqdiscStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEQDISC_H */
