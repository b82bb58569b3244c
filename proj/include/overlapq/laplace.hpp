#pragma once

#include <vector>

#include "overlapq/overlap.hpp"

namespace overlapq {

// Recovered distribution function on a time grid.
struct CdfGrid {
    std::vector<double> t;
    std::vector<double> f;
    double atom_at_zero = 0.0;  // large-s probe of the transform
    double max_clip = 0.0;      // largest monotonicity/range adjustment applied
};

// F(t) from the transform of the law via Euler-summation inversion of
// lst(s)/s: 33 transform evaluations per point, binomial averaging over the
// last 16 partial sums, discretization parameter set for ~1e-8 absolute
// error.  The contour stays in Re(s) > 0, which is all the waiting/overlap
// evaluators guarantee.  Small ripple is clipped to keep F monotone in
// [0, 1]; clip sizes are recorded.
CdfGrid invert_cdf(const LstEvaluator& lst, const std::vector<double>& t_grid,
                   double scale = 1.0);

}  // namespace overlapq
