/* Exercises the generated header against the static library: handle
 * lifecycle, closed-form optima, information maxima, simulation, and the
 * error paths. Exits nonzero on the first failed check. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "seqdisc.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__,     \
                    #cond);                                             \
            return 1;                                                   \
        }                                                               \
    } while (0)

#define CHECK_CLOSE(got, want, tol)                                     \
    do {                                                                \
        double g_ = (got), w_ = (want);                                 \
        if (!(fabs(g_ - w_) < (tol))) {                                 \
            fprintf(stderr, "FAIL %s:%d: %s = %.17g, want %.17g\n",     \
                    __FILE__, __LINE__, #got, g_, w_);                  \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main(void) {
    SeqdiscProblem *problem = NULL;
    CHECK(seqdisc_problem_new(0.25, 0.5, &problem) == SEQDISC_STATUS_OK);
    CHECK(problem != NULL);

    double s = 0.0, eta1 = 0.0;
    CHECK(seqdisc_problem_s(problem, &s) == SEQDISC_STATUS_OK);
    CHECK(seqdisc_problem_eta1(problem, &eta1) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(s, 0.25, 1e-15);
    CHECK_CLOSE(eta1, 0.5, 1e-15);

    /* Equal priors, s between s^2/(1+s^2) and 1/(1+s^2): the minimum
     * joint-failure probability is 2*sqrt(eta1*eta2)*s = s. */
    double p_ff = 0.0;
    CHECK(seqdisc_min_failure_probability(problem, &p_ff) ==
          SEQDISC_STATUS_OK);
    CHECK_CLOSE(p_ff, 0.25, 1e-12);

    SeqdiscOptimum opt;
    CHECK(seqdisc_optimize_min_failure(problem, &opt) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(opt.t, 0.5, 1e-12); /* t = sqrt(s) */
    CHECK_CLOSE(opt.q1b * opt.q2b * opt.q1c * opt.q2c, 0.25 * 0.25, 1e-12);
    CHECK_CLOSE(opt.p_ff, 0.25, 1e-12);

    /* s = 0.25 <= 3 - 2*sqrt(2) fails, so the boundary family wins:
     * p_ss = (1 - s)^2 / 2. */
    SeqdiscOptimum best;
    CHECK(seqdisc_optimize_success_only(problem, &best) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(best.p_ss, 0.5 * 0.75 * 0.75, 1e-9);

    double s_c = 0.0;
    CHECK(seqdisc_critical_overlap(0.5, &s_c) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(s_c, 3.0 - 2.0 * sqrt(2.0), 1e-9);

    /* Equal-prior information maxima in closed form. */
    SeqdiscInfoPoint info;
    CHECK(seqdisc_info_usd_ab_max(problem, &info) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(info.mi, 1.0 - 0.25, 1e-9);
    CHECK_CLOSE(info.arg, 0.25, 1e-9);
    CHECK(seqdisc_info_usd_bc_max(problem, &info) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(info.mi, 0.25, 1e-9); /* (1 - sqrt(s))^2 */
    CHECK_CLOSE(info.arg, 0.5, 1e-9);
    CHECK(seqdisc_info_ff_ab_max(problem, &info) == SEQDISC_STATUS_OK);
    CHECK_CLOSE(info.mi, 0.5 * (1.0 - 0.0625), 1e-9);
    CHECK_CLOSE(info.arg, 0.5, 1e-9);

    double helstrom = 0.0;
    CHECK(seqdisc_helstrom_info(problem, &helstrom) == SEQDISC_STATUS_OK);
    CHECK(helstrom > info.mi); /* beats every unambiguous scheme here */

    /* Simulation at the minimum-failure point: exact per-trial record
     * keeping means frequencies land close to the analytic values. */
    SeqdiscSimSummary sim;
    CHECK(seqdisc_simulate(problem, opt.t, opt.q1b, opt.q1c, 200000, 7,
                           &sim) == SEQDISC_STATUS_OK);
    CHECK(sim.trials == 200000);
    CHECK(sim.misidentifications == 0);
    CHECK(fabs(sim.p_ff - opt.p_ff) < 5.0 * sim.p_ff_std_err + 1e-9);
    CHECK(fabs(sim.p_ss - opt.p_ss) < 5.0 * sim.p_ss_std_err + 1e-9);
    CHECK(sim.mi_ab > 0.0 && sim.mi_ab < 1.0);

    /* Determinism across calls. */
    SeqdiscSimSummary again;
    CHECK(seqdisc_simulate(problem, opt.t, opt.q1b, opt.q1c, 200000, 7,
                           &again) == SEQDISC_STATUS_OK);
    CHECK(memcmp(&sim, &again, sizeof sim) == 0);

    /* Error paths. */
    SeqdiscProblem *bad = NULL;
    CHECK(seqdisc_problem_new(1.5, 0.5, &bad) == SEQDISC_STATUS_OUT_OF_RANGE);
    CHECK(bad == NULL);
    CHECK(seqdisc_problem_new(0.25, 0.5, NULL) ==
          SEQDISC_STATUS_NULL_POINTER);
    CHECK(seqdisc_problem_s(NULL, &s) == SEQDISC_STATUS_NULL_POINTER);
    CHECK(seqdisc_simulate(problem, 0.5, 0.5, 0.5, 0, 7, &sim) ==
          SEQDISC_STATUS_OUT_OF_RANGE);
    CHECK(seqdisc_simulate(problem, 0.9, 0.01, 0.5, 100, 7, &sim) ==
          SEQDISC_STATUS_CONSTRAINT_VIOLATION); /* q1b below s^2/t^2 */

    SeqdiscProblem *skewed = NULL;
    CHECK(seqdisc_problem_new(0.25, 0.3, &skewed) == SEQDISC_STATUS_OK);
    CHECK(seqdisc_helstrom_info(skewed, &helstrom) ==
          SEQDISC_STATUS_UNSUPPORTED_PRIORS);
    seqdisc_problem_free(skewed);

    CHECK(strcmp(seqdisc_status_name(SEQDISC_STATUS_OK),
                 "SEQDISC_STATUS_OK") == 0);
    CHECK(strcmp(seqdisc_status_name(SEQDISC_STATUS_NO_CROSSING),
                 "SEQDISC_STATUS_NO_CROSSING") == 0);

    seqdisc_problem_free(problem);
    seqdisc_problem_free(NULL);

    puts("smoke ok");
    return 0;
}
