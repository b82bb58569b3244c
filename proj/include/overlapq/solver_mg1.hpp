#pragma once

#include "overlapq/overlap.hpp"

namespace overlapq {

// E[exp(-s (S-A)^+)] for exponential interarrivals under FGM dependence:
//   (l/(l-s)) phi(s) - (s/(l-s)) phi(l)
//     + s theta [ g(l)/(l-s) - l g(s)/((2l-s)(l-s)) - g(2l)/(2l-s) ].
// The written form is singular at s = l and s = 2l but the function is
// analytic there; evaluation near those points goes through the removable-
// singularity policy.
LstEvaluator make_splus_mg1(const QueueModel& model);
Complex splus_lst(const QueueModel& model, Complex s);

// Waiting-time transform.  theta != 0: finds tau1, solves the 2x2 boundary
// system from the s -> 0 limit and the numerator-vanishing condition at
// tau1, and cross-checks the solution against the closed forms
//   w(l)  = 2 (1-rho)(l - tau1)  / (tau1 (theta g(l) - phi(l))),
//   w(2l) = 2 (1-rho)(2l - tau1) / (tau1 theta g(2l)).
// theta = 0 makes that system singular and takes the classical reduction
//   w(s) = (1-rho) s / (s - l (1 - phi(s))),   w(l) = (1-rho)/phi(l).
SolvedWaiting solve_waiting(const QueueModel& model);

double waiting_mean(const SolvedWaiting& sol);

// Law of the maximum overlap time: waiting transform times the splus part.
OverlapLaw max_overlap(const QueueModel& model);

// Law of the minimum adjacent overlap time: w(s) * r(s) with
// r(s) = 1 + P(S > A) - E[exp(-s(S-A)) 1(S>A)] = 2 - splus(s).
OverlapLaw min_overlap(const QueueModel& model);

// 1 - phi(l) + theta (g(l) - g(2l)), range-checked against [0, 1].
double prob_s_gt_a(const QueueModel& model);

// The printed closed-form mean of the maximum overlap contains internally
// inconsistent symbols in its dependence correction term; it is evaluated
// literally here, next to the derivative-based mean, as a diagnostic only.
struct MeanFormulaDiagnostic {
    double formula_value;
    double derivative_value;
    double discrepancy;
};
MeanFormulaDiagnostic mean_max_formula_diagnostic(const QueueModel& model);
MeanFormulaDiagnostic mean_max_formula_diagnostic(const QueueModel& model,
                                                  const SolvedWaiting& sol,
                                                  double derivative_mean);

}  // namespace overlapq
