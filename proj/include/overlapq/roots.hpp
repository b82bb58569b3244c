#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "overlapq/characteristic.hpp"
#include "overlapq/polynomial.hpp"
#include "overlapq/queue_model.hpp"

namespace overlapq {

// Roots with positive real part of a characteristic function, together with
// the independent verification of their count.
struct RootSet {
    std::vector<Complex> roots;
    std::vector<int> multiplicities;
    int verified_count = 0;  // winding-number count, with multiplicity
    std::vector<double> residuals;

    int total_multiplicity() const {
        int t = 0;
        for (int m : multiplicities) t += m;
        return t;
    }
};

// All roots of a polynomial as eigenvalues of its companion matrix.
std::vector<Complex> companion_roots(const Polynomial& p);

// Number of zeros (with multiplicity) of f strictly inside the contour made
// of the vertical segment Re(s) = eps, |Im(s)| <= radius and the right
// semicircle |s| = radius, computed as the winding number of f along the
// contour.  Steps are refined until the phase increment per step is below
// pi/4.  Throws ContourTooClose when a zero sits (numerically) on the
// contour; the caller should perturb the radius.
int winding_count(const std::function<Complex(Complex)>& f, double radius, double eps = 0.0);

// Roots of the characteristic function with Re > 1e-9, deduplicated at
// relative tolerance 1e-8 with multiplicities, verified against `expected`
// and against the winding-number count of the zero-deflated cleared
// polynomial.  Throws RootCountMismatch when either count disagrees.
RootSet find_positive_roots(const CharacteristicFunction& cf, int expected);

// The unique positive-real-part characteristic root of an Mg1-family model.
Complex find_tau1(const QueueModel& model);

}  // namespace overlapq
