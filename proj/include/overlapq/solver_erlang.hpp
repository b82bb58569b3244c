#pragma once

#include <Eigen/Dense>
#include <memory>

#include "overlapq/overlap.hpp"
#include "overlapq/rational.hpp"

namespace overlapq {

// Outcome of resolving the ambiguous sign in the printed splus transform
// for Erlang arrivals.  Both sign variants of the single-rate dependence
// block are checked against the two-dimensional quadrature oracle at five
// reference points; exactly one may pass.
struct SignResolution {
    int chosen_sign = -1;        // -1: derivation-consistent, +1: printed
    double err_minus = 0.0;      // max |variant - oracle| over the reference points
    double err_plus = 0.0;
    bool ambiguous = false;      // false when theta = 0 (variants coincide)
};

// E[exp(-s (S-A)^+)] for Erlang(n, l) interarrivals.  Construction resolves
// the sign variant against the quadrature oracle (tolerance 1e-6) and
// throws OracleMismatch if neither variant matches.
class ErlangSplus {
public:
    explicit ErlangSplus(const QueueModel& model);
    Complex operator()(Complex s) const;
    const SignResolution& resolution() const { return resolution_; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    SignResolution resolution_;
};

LstEvaluator make_splus_erlang(const QueueModel& model);
Complex splus_lst_erlang(const QueueModel& model, Complex s);

// Boundary system for the 3n-1 unknowns
//   w^(k)(l), k = 0..n-1  and  w^(k)(2l), k = 0..2n-2:
// one row per characteristic root (conjugate pairs split into real and
// imaginary parts so the system stays real; repeated roots contribute
// higher-order derivative rows), plus the normalization row encoding
// RHS'(0) = B'(0), i.e. w(0) = 1.
struct LinearSystem {
    struct RowTag {
        enum class Kind { RootReal, RootImag, RootDerivative, Normalization };
        Kind kind;
        Complex root;          // meaningful for root rows
        int derivative_order;  // 0 for plain root rows
    };
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    std::vector<RowTag> tags;
    RootSet roots;
    bool ill_conditioned = false;
    double condition_estimate = 1.0;
};

LinearSystem assemble_system(const QueueModel& model);

SolvedWaiting solve_waiting_erlang(const QueueModel& model);

// Evaluate the waiting transform from a given boundary vector (layout as in
// SolvedWaiting::boundary).  The solved evaluator is the cached fast path;
// this entry point exists for diagnostics and tests.
Complex waiting_lst_erlang(const QueueModel& model, const std::vector<double>& boundary,
                           Complex s);

OverlapLaw max_overlap_erlang(const QueueModel& model);
OverlapLaw min_overlap_erlang(const QueueModel& model);

// P(S > A) from the large-s limit of the splus transform, in closed form.
double prob_s_gt_a_erlang(const QueueModel& model);

}  // namespace overlapq
