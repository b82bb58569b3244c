#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "overlapq/queue_model.hpp"
#include "overlapq/roots.hpp"

namespace overlapq {

using LstEvaluator = std::function<Complex(Complex)>;

enum class OverlapKind { Waiting, MaxOverlap, MinOverlap, SplusPart };

// A solved steady-state law given by its Laplace-Stieltjes transform,
// evaluable on Re(s) >= 0, plus its mean.  Immutable; safe to evaluate
// concurrently.
struct OverlapLaw {
    OverlapKind kind;
    LstEvaluator lst;
    double mean = 0.0;
};

// Solved waiting-time transform with boundary unknowns and diagnostics.
// For the Mg1 / Proportional families the boundary holds (w(l), w(2l));
// for Erlang arrivals it holds the derivative values of w at l (orders
// 0..n-1) followed by those at 2l (orders 0..2n-2).
struct SolvedWaiting {
    QueueModel model;
    RootSet roots;
    std::vector<double> boundary;
    LstEvaluator lst;
    double mean = 0.0;
    double system_residual = 0.0;
    double condition_number = 1.0;

    Complex tau1() const { return roots.roots.front(); }
};

}  // namespace overlapq
