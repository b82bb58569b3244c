#pragma once

#include <optional>

#include "overlapq/overlap.hpp"
#include "overlapq/solver_erlang.hpp"
#include "overlapq/solver_mg1.hpp"
#include "overlapq/solver_prop.hpp"

namespace overlapq {

// One-stop analytic solution of a model: waiting, maximum- and minimum-
// overlap laws, P(S > A), and solver diagnostics, solving each model once.
struct Analysis {
    QueueModel model;
    double rho;
    SolvedWaiting waiting;
    OverlapLaw max_law;
    OverlapLaw min_law;
    LstEvaluator splus;
    double splus_mean;
    double p_s_gt_a;
    std::optional<MeanFormulaDiagnostic> formula_diagnostic;  // Mg1 family only
    std::optional<SignResolution> sign_resolution;            // Erlang family only
};

Analysis analyze(const QueueModel& model);

}  // namespace overlapq
