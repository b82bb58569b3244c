#include "overlapq/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "overlapq/errors.hpp"

namespace overlapq {

std::vector<Complex> companion_roots(const Polynomial& p) {
    const int d = p.degree();
    if (d < 1) return {};
    const auto& c = p.coeffs();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) m(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("companion_roots: eigenvalue iteration failed");
    std::vector<Complex> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = solver.eigenvalues()(i);
    return roots;
}

namespace {

// Accumulated phase change of f along the parameterized path, bisecting
// until each step turns by less than pi/4.
double phase_change(const std::function<Complex(Complex)>& f,
                    const std::function<Complex(double)>& path, double& min_abs,
                    double& max_abs) {
    struct Node {
        double t;
        Complex z, fz;
    };
    constexpr int kInitial = 64;
    constexpr int kMaxDepth = 48;

    double total = 0.0;
    auto probe = [&](double t) {
        const Complex z = path(t);
        const Complex fz = f(z);
        const double a = std::abs(fz);
        min_abs = std::min(min_abs, a);
        max_abs = std::max(max_abs, a);
        return Node{t, z, fz};
    };

    std::function<void(const Node&, const Node&, int)> refine = [&](const Node& a,
                                                              const Node& b, int depth) {
        if (a.fz == Complex(0.0) || b.fz == Complex(0.0))
            throw ContourTooClose("winding_count: exact zero sampled on contour");
        const double step = std::arg(b.fz / a.fz);
        if (std::abs(step) < 3.14159265358979323846 / 4.0) {
            total += step;
            return;
        }
        if (depth >= kMaxDepth)
            throw ContourTooClose("winding_count: phase step not resolvable, zero near contour");
        const Node mid = probe(0.5 * (a.t + b.t));
        refine(a, mid, depth + 1);
        refine(mid, b, depth + 1);
    };

    Node prev = probe(0.0);
    for (int i = 1; i <= kInitial; ++i) {
        Node next = probe(static_cast<double>(i) / kInitial);
        refine(prev, next, 0);
        prev = next;
    }
    return total;
}

}  // namespace

int winding_count(const std::function<Complex(Complex)>& f, double radius, double eps) {
    if (!(radius > 0.0)) throw ValidationError("winding_count: radius must be positive");
    const double yspan = std::sqrt(std::max(radius * radius - eps * eps, 0.0));
    const double phi0 = std::atan2(yspan, eps);

    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    // Counterclockwise: right semicircle from -i yspan through +radius to
    // +i yspan, then down the segment Re = eps.
    auto arc = [&](double t) {
        const double ang = -phi0 + 2.0 * phi0 * t;
        return Complex(radius * std::cos(ang), radius * std::sin(ang));
    };
    auto segment = [&](double t) { return Complex(eps, yspan * (1.0 - 2.0 * t)); };

    double total = phase_change(f, arc, min_abs, max_abs);
    total += phase_change(f, segment, min_abs, max_abs);

    if (min_abs < 1e-12 * max_abs)
        throw ContourTooClose("winding_count: |f| nearly vanishes on the contour");
    const double turns = total / (2.0 * 3.14159265358979323846);
    const long rounded = std::lround(turns);
    if (std::abs(turns - static_cast<double>(rounded)) > 1e-3)
        throw NumericalError("winding_count: accumulated phase is not close to a multiple of 2 pi");
    return static_cast<int>(rounded);
}

namespace {

double local_residual(const std::function<Complex(Complex)>& f, Complex s) {
    const double h = 1e-7 * (1.0 + std::abs(s));
    const Complex d = (f(s + h) - f(s - h)) / (2.0 * h);
    return std::abs(f(s)) / (1.0 + std::abs(d));
}

}  // namespace

RootSet find_positive_roots(const CharacteristicFunction& cf, int expected) {
    // The zero root at s = 0 is structural; divide it out before counting.
    const Polynomial deflated = cf.cleared.deflate_at_zero(1e-7);
    std::vector<Complex> all = companion_roots(deflated);

    std::vector<Complex> kept;
    for (const auto& r : all)
        if (r.real() > 1e-9) kept.push_back(r);

    // One guarded Newton step on the evaluable form; keep it only when it
    // actually reduces the residual (clustered roots resist polishing).
    for (auto& r : kept) {
        const double h = 1e-7 * (1.0 + std::abs(r));
        const Complex d = (cf.evaluate(r + h) - cf.evaluate(r - h)) / (2.0 * h);
        if (std::abs(d) == 0.0) continue;
        const Complex candidate = r - cf.evaluate(r) / d;
        if (candidate.real() > 1e-9 &&
            std::abs(cf.evaluate(candidate)) <= std::abs(cf.evaluate(r)))
            r = candidate;
    }

    std::sort(kept.begin(), kept.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    RootSet rs;
    for (const auto& r : kept) {
        if (!rs.roots.empty() &&
            std::abs(r - rs.roots.back()) < 1e-8 * (1.0 + std::abs(r))) {
            ++rs.multiplicities.back();
        } else {
            rs.roots.push_back(r);
            rs.multiplicities.push_back(1);
        }
    }
    for (const auto& r : rs.roots)
        rs.residuals.push_back(local_residual(cf.evaluate, r));

    // Independent count by the argument principle on the deflated
    // polynomial.  The default radius grows on contour trouble, capped by
    // the coefficient-based bound on all polynomial roots.
    const double hard_cap = 1.1 * deflated.root_bound() + cf.scale;
    double max_mod = 0.0;
    for (const auto& r : rs.roots) max_mod = std::max(max_mod, std::abs(r));
    double radius = std::min(std::max(cf.default_radius, 1.25 * max_mod), hard_cap);
    auto poly_eval = [&deflated](Complex s) { return deflated(s); };
    int verified = -1;
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            verified = winding_count(poly_eval, radius);
            break;
        } catch (const ContourTooClose&) {
            if (attempt == 3 || radius >= hard_cap) throw;
            radius = std::min(2.0 * radius, hard_cap);
        }
    }
    rs.verified_count = verified;

    const int found = rs.total_multiplicity();
    if (found != expected || verified != expected) {
        std::ostringstream os;
        os << "characteristic root count mismatch: filter found " << found
           << ", winding count " << verified << ", expected " << expected;
        throw RootCountMismatch(os.str(), found, verified);
    }
    return rs;
}

Complex find_tau1(const QueueModel& model) {
    if (model.family() == QueueModel::Family::Erlang && model.stages() > 1)
        throw ValidationError("find_tau1: defined for single-root families");
    const CharacteristicFunction cf = model.family() == QueueModel::Family::Proportional
                                          ? prop_characteristic(model)
                                          : mg1_characteristic(model);
    return find_positive_roots(cf, 1).roots.front();
}

}  // namespace overlapq
