#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace overlapq {

// First derivative at x0 from central differences with steps h, h/2, h/4
// and two Richardson extrapolation levels.
template <typename F>
double richardson_derivative(F&& f, double x0, double h) {
    auto central = [&](double step) { return (f(x0 + step) - f(x0 - step)) / (2.0 * step); };
    const double d0 = central(h);
    const double d1 = central(h / 2.0);
    const double d2 = central(h / 4.0);
    const double r1 = (4.0 * d1 - d0) / 3.0;
    const double r2 = (4.0 * d2 - d1) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

// Evaluation policy for transforms whose written form has removable
// singularities (e.g. at s = lambda and s = 2 lambda).  Near such a point
// the raw expression loses all precision to cancellation, so the value is
// recovered from four points on a small circle around s: their average
// equals the analytic value up to O(r^4).
class RemovableSingularityPolicy {
public:
    RemovableSingularityPolicy(std::vector<std::complex<double>> points, double scale)
        : points_(std::move(points)), near_(1e-6 * scale), radius_(1e-3 * scale) {}

    template <typename F>
    std::complex<double> operator()(F&& raw, std::complex<double> s) const {
        if (!too_close(s)) return raw(s);
        const std::complex<double> i(0.0, 1.0);
        std::complex<double> acc(0.0);
        std::complex<double> dir(1.0);
        for (int k = 0; k < 4; ++k) {
            acc += raw(s + radius_ * dir);
            dir *= i;
        }
        return acc / 4.0;
    }

    bool too_close(std::complex<double> s) const {
        for (const auto& p : points_)
            if (std::abs(s - p) < near_) return true;
        return false;
    }

private:
    std::vector<std::complex<double>> points_;
    double near_;
    double radius_;
};

}  // namespace overlapq
