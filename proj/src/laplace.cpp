#include "overlapq/laplace.hpp"

#include <cmath>

#include "overlapq/errors.hpp"

namespace overlapq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kEulerM = 16;  // binomial averaging order
constexpr int kEulerN = 16;  // plain partial sums before averaging
constexpr double kA = 18.4;  // discretization parameter, error ~ exp(-A)

double euler_point(const LstEvaluator& lst, double t) {
    // Partial sums of the alternating trapezoid series for lst(s)/s at t.
    const int terms = kEulerN + kEulerM + 1;  // 33 transform evaluations
    std::vector<double> partial(terms);
    const double base = kA / (2.0 * t);
    Complex q0 = lst(Complex(base)) / base;
    if (!std::isfinite(q0.real()))
        throw EvaluationFailure("invert_cdf: transform evaluation failed on the contour");
    double sum = 0.5 * q0.real();
    partial[0] = sum;
    for (int k = 1; k < terms; ++k) {
        const Complex s(base, k * kPi / t);
        const Complex q = lst(s) / s;
        if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
            throw EvaluationFailure("invert_cdf: transform evaluation failed on the contour");
        sum += (k % 2 ? -1.0 : 1.0) * q.real();
        partial[k] = sum;
    }
    // Binomial average of partial sums n .. n+m.
    double acc = 0.0;
    double coef = 1.0;  // C(m, j) built incrementally
    double denom = std::pow(2.0, kEulerM);
    for (int j = 0; j <= kEulerM; ++j) {
        acc += coef * partial[kEulerN + j];
        coef = coef * (kEulerM - j) / (j + 1);
    }
    return std::exp(kA / 2.0) / t * (acc / denom);
}

}  // namespace

CdfGrid invert_cdf(const LstEvaluator& lst, const std::vector<double>& t_grid, double scale) {
    CdfGrid out;
    out.t = t_grid;
    out.f.reserve(t_grid.size());
    out.atom_at_zero = lst(Complex(1e6 * std::max(1.0, scale))).real();

    double prev = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw ValidationError("invert_cdf: grid must be strictly positive");
        double v = euler_point(lst, t);
        const double raw = v;
        v = std::min(std::max(v, prev), 1.0);  // clip into [prev, 1]
        out.max_clip = std::max(out.max_clip, std::abs(v - raw));
        out.f.push_back(v);
        prev = v;
    }
    return out;
}

}  // namespace overlapq
