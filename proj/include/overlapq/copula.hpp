#pragma once

#include <utility>

#include "overlapq/rng.hpp"

namespace overlapq {

// Dependence parameter of the FGM copula, valid on [-1, 1].
struct Theta {
    double value;
    explicit Theta(double v);
};

struct UnitPair {
    double u1;
    double u2;
};

// C(u1,u2) = u1 u2 (1 + theta (1-u1)(1-u2)).
double fgm_cdf(const UnitPair& u, Theta theta);

// c(u1,u2) = 1 + theta (1-2u1)(1-2u2); nonnegative on the unit square for
// |theta| <= 1.
double fgm_density(const UnitPair& u, Theta theta);

// Inverse of the conditional cdf C(u2 | u1) at v.  With b = theta (1-2 u1)
// the conditional cdf is (1+b) u2 - b u2^2; the root is taken in the
// rationalized form 2v / ((1+b) + sqrt((1+b)^2 - 4 b v)) which stays stable
// as b -> 0.  |b| < 1e-12 falls back to the independence branch u2 = v.
double fgm_conditional_inverse(double u1, double v, Theta theta);

// One pair distributed per the copula, by conditional inversion.
UnitPair sample_pair(Theta theta, RngStream& rng);

// (Kendall tau, Spearman rho) = (2 theta / 9, theta / 3).
std::pair<double, double> rank_correlations(Theta theta);

class QueueModel;

// FGM joint density of (service, interarrival) at (y, x):
//   f_S(y) f_A(x) + theta * f_S(y)(1 - 2 F_S(y)) * f_A(x)(2(1 - F_A(x)) - 1).
// Defined for the renewal families (Mg1 / Erlang); the proportional family
// has no such closed pair density and raises a capability error.
double joint_density_sa(double y, double x, const QueueModel& model);

}  // namespace overlapq
