#include "overlapq/copula.hpp"

#include <cmath>

#include "overlapq/errors.hpp"
#include "overlapq/queue_model.hpp"

namespace overlapq {

Theta::Theta(double v) : value(v) {
    if (!(v >= -1.0 && v <= 1.0)) throw ValidationError("theta must lie in [-1, 1]");
}

namespace {
void check_unit(const UnitPair& u) {
    if (!(u.u1 >= 0.0 && u.u1 <= 1.0 && u.u2 >= 0.0 && u.u2 <= 1.0))
        throw ValidationError("copula arguments must lie in the unit square");
}
}  // namespace

double fgm_cdf(const UnitPair& u, Theta theta) {
    check_unit(u);
    return u.u1 * u.u2 * (1.0 + theta.value * (1.0 - u.u1) * (1.0 - u.u2));
}

double fgm_density(const UnitPair& u, Theta theta) {
    check_unit(u);
    return 1.0 + theta.value * (1.0 - 2.0 * u.u1) * (1.0 - 2.0 * u.u2);
}

double fgm_conditional_inverse(double u1, double v, Theta theta) {
    const double b = theta.value * (1.0 - 2.0 * u1);
    if (std::abs(b) < 1e-12) return v;
    const double onepb = 1.0 + b;
    const double disc = onepb * onepb - 4.0 * b * v;
    return 2.0 * v / (onepb + std::sqrt(disc));
}

UnitPair sample_pair(Theta theta, RngStream& rng) {
    const double u1 = rng.next();
    const double v = rng.next();
    return {u1, fgm_conditional_inverse(u1, v, theta)};
}

std::pair<double, double> rank_correlations(Theta theta) {
    return {2.0 * theta.value / 9.0, theta.value / 3.0};
}

double joint_density_sa(double y, double x, const QueueModel& model) {
    if (x < 0.0 || y < 0.0) throw ValidationError("joint_density_sa: negative argument");
    if (model.family() == QueueModel::Family::Proportional)
        throw ValidationError(
            "joint_density_sa: proportional family has no closed joint density of (S, A)");
    const DistributionSpec& s = model.service();
    const DistributionSpec a = model.arrival_marginal();
    const double base = s.pdf(y) * a.pdf(x);
    const double kernel_s = s.pdf(y) * (1.0 - 2.0 * s.cdf(y));
    const double kernel_a = a.pdf(x) * (1.0 - 2.0 * a.cdf(x));
    return base + model.theta() * kernel_s * kernel_a;
}

}  // namespace overlapq
