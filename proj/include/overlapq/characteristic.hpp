#pragma once

#include <functional>

#include "overlapq/polynomial.hpp"
#include "overlapq/queue_model.hpp"
#include "overlapq/rational.hpp"

namespace overlapq {

// Denominator of the waiting-time transform, in two equivalent forms:
// an evaluable function analytic on Re(s) >= 0 (all poles sit in the open
// left half plane) and a denominator-cleared polynomial whose zeros on
// Re(s) > 0 are exactly the characteristic roots.  D(0) = 0 structurally
// for every family (stability pins the zero root).
struct CharacteristicFunction {
    std::function<Complex(Complex)> evaluate;
    Polynomial cleared;
    double scale;                 // characteristic magnitude of s (lambda-based)
    double default_radius;        // initial contour radius for verification
    int expected_positive_roots;  // predicted count in the right half plane
};

// (2l - s)(l - s) - l (2l - s) phi(s) + theta s l g(s).
CharacteristicFunction mg1_characteristic(const QueueModel& model);

// (l-s)^n (2l-s)^{2n-1}
//   - l^n [ (2l-s)^{2n-1} phi(s)
//           + theta g(s) (2 sum_i C(n+i-1,i) l^i (l-s)^n (2l-s)^{n-1-i}
//                         - (2l-s)^{2n-1}) ].
// Carries 3n-2 roots in the right half plane.
CharacteristicFunction erlang_characteristic(const QueueModel& model);

// (l-s)(2l-s) - sum_i p_i [ l (2l-s) phi(abar_i s) - theta l s g(abar_i s) ].
CharacteristicFunction prop_characteristic(const QueueModel& model);

// Classical independent-input bracket for Erlang arrivals,
// (l-s)^n - l^n phi(s) cleared; n-1 roots in the right half plane.  Used by
// the theta = 0 branch, where the doubled-rate block of the full
// characteristic degenerates into a multiple root at 2l.
CharacteristicFunction erlang_independent_characteristic(const QueueModel& model);

}  // namespace overlapq
