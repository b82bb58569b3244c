#pragma once

#include <utility>

#include "overlapq/overlap.hpp"

namespace overlapq {

// E[exp(-s (S-A)^+)] for A = Omega S + J: mixture over the atoms of the
// single-rate form with the service argument scaled by abar = 1 - a.
LstEvaluator make_splus_prop(const QueueModel& model);
Complex splus_lst_prop(const QueueModel& model, Complex s);

// Waiting-time transform for the proportional family.  theta != 0 solves
// the 2x2 system (normalization + numerator vanishing at tau1) for
// w(l), w(2l); theta = 0 reduces to the single-unknown branch.
SolvedWaiting solve_waiting_prop(const QueueModel& model);

// (maximum, minimum) overlap laws: w * splus and w * (2 - splus).
std::pair<OverlapLaw, OverlapLaw> overlap_laws_prop(const QueueModel& model);

double prob_s_gt_a_prop(const QueueModel& model);

}  // namespace overlapq
