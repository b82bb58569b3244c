#pragma once

#include <complex>
#include <functional>

#include "overlapq/queue_model.hpp"

namespace overlapq {

// Adaptive Gauss-Kronrod (G7, K15) on [a, b] to an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_intervals = 4000);

// E[exp(-s (S-A)^+)] by two-dimensional adaptive quadrature over the joint
// density, truncated where the tail mass is below 1e-12.  Independent of
// the transform algebra; serves as the oracle for every closed-form
// splus evaluator.  Supports all three families (the proportional family
// integrates per atom over the (S, J) density).
std::complex<double> splus_by_quadrature(const QueueModel& model, std::complex<double> s,
                                         double abs_tol = 1e-9);

// P(S > A) by the same quadrature route.
double prob_s_gt_a_by_quadrature(const QueueModel& model, double abs_tol = 1e-9);

// E[exp(-s (S-A)) 1(S > A)] by quadrature (restriction to the overshoot
// event without the positive-part clamp).
std::complex<double> overshoot_transform_by_quadrature(const QueueModel& model,
                                                       std::complex<double> s,
                                                       double abs_tol = 1e-9);

}  // namespace overlapq
