#include "overlapq/quadrature.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "overlapq/errors.hpp"

namespace overlapq {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

template <typename T>
double magnitude(T v) {
    return std::abs(v);
}

template <typename T, typename F>
std::pair<T, double> gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T kron = kKronrodWeights[7] * f(mid);
    T gauss = kGaussWeights[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const T fsum = f(mid - dx) + f(mid + dx);
        kron += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, magnitude<T>(kron - gauss)};
}

template <typename T, typename F>
T adaptive(const F& f, double a, double b, double abs_tol, int max_intervals) {
    struct Piece {
        double a, b, tol;
    };
    std::vector<Piece> stack{{a, b, abs_tol}};
    T total{};
    int used = 0;
    while (!stack.empty()) {
        const Piece p = stack.back();
        stack.pop_back();
        auto [v, err] = gk15<T>(f, p.a, p.b);
        if (err <= p.tol || ++used >= max_intervals) {
            total += v;
        } else {
            const double mid = 0.5 * (p.a + p.b);
            stack.push_back({p.a, mid, 0.5 * p.tol});
            stack.push_back({mid, p.b, 0.5 * p.tol});
        }
    }
    return total;
}

using Cplx = std::complex<double>;

// Upper truncation point with tail mass below 1e-12 for both marginals.
double truncation(const DistributionSpec& d) { return d.quantile(1.0 - 1e-13) * 1.05 + 1.0; }

struct JointSpec {
    // weight * density over (y in [0, ty], x in [0, tx]), with the overlap
    // boundary at x = bar_a * y.
    double weight;
    double bar_a;
    std::function<double(double, double)> density;
    double ty, tx;
};

std::vector<JointSpec> joint_pieces(const QueueModel& model) {
    std::vector<JointSpec> out;
    const DistributionSpec s = model.service();
    const double ty = truncation(s);
    if (model.family() == QueueModel::Family::Proportional) {
        const DistributionSpec j = DistributionSpec::exponential(model.lambda());
        const double tx = truncation(j);
        const double theta = model.theta();
        for (const auto& at : model.atoms()) {
            auto dens = [s, j, theta](double y, double x) {
                const double base = s.pdf(y) * j.pdf(x);
                return base + theta * s.pdf(y) * (1.0 - 2.0 * s.cdf(y)) * j.pdf(x) *
                                  (1.0 - 2.0 * j.cdf(x));
            };
            out.push_back({at.p, 1.0 - at.a, dens, ty, tx});
        }
    } else {
        const DistributionSpec a = model.arrival_marginal();
        const double tx = truncation(a);
        const double theta = model.theta();
        auto dens = [s, a, theta](double y, double x) {
            const double base = s.pdf(y) * a.pdf(x);
            return base + theta * s.pdf(y) * (1.0 - 2.0 * s.cdf(y)) * a.pdf(x) *
                              (1.0 - 2.0 * a.cdf(x));
        };
        out.push_back({1.0, 1.0, dens, ty, tx});
    }
    return out;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals) {
    return adaptive<double>(f, a, b, abs_tol, max_intervals);
}

// All three oracle integrals share the same structure: integrate
// e^{-s * clamp(bar_a*y - x)} (or its restriction) against the pair density.
namespace {

Cplx oracle_integral(const QueueModel& model, Cplx s, double abs_tol, bool positive_part,
                     bool indicator_only) {
    Cplx total(0.0);
    for (const auto& piece : joint_pieces(model)) {
        const double inner_tol = abs_tol / (8.0 * std::max(1.0, piece.ty));
        auto outer = [&](double y) -> Cplx {
            const double split = piece.bar_a * y;
            auto on_event = [&](double x) -> Cplx {
                if (indicator_only) return piece.density(y, x);
                return std::exp(-s * (split - x)) * piece.density(y, x);
            };
            Cplx acc = adaptive<Cplx>(on_event, 0.0, std::min(split, piece.tx), inner_tol, 2000);
            if (positive_part && !indicator_only && split < piece.tx) {
                auto off_event = [&](double x) -> Cplx { return piece.density(y, x); };
                acc += adaptive<Cplx>(off_event, split, piece.tx, inner_tol, 2000);
            }
            return acc;
        };
        total += piece.weight * adaptive<Cplx>(outer, 0.0, piece.ty, abs_tol / 2.0, 4000);
    }
    return total;
}

}  // namespace

Cplx splus_by_quadrature(const QueueModel& model, Cplx s, double abs_tol) {
    return oracle_integral(model, s, abs_tol, true, false);
}

double prob_s_gt_a_by_quadrature(const QueueModel& model, double abs_tol) {
    return oracle_integral(model, Cplx(0.0), abs_tol, false, true).real();
}

Cplx overshoot_transform_by_quadrature(const QueueModel& model, Cplx s, double abs_tol) {
    return oracle_integral(model, s, abs_tol, false, false);
}

}  // namespace overlapq
