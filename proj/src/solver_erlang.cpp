#include "overlapq/solver_erlang.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "overlapq/errors.hpp"
#include "overlapq/numeric.hpp"
#include "overlapq/quadrature.hpp"
#include "overlapq/solver_mg1.hpp"

namespace overlapq {

namespace {

double binom(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void require_erlang(const QueueModel& model) {
    if (model.family() != QueueModel::Family::Erlang)
        throw ValidationError("this solver handles the Erlang-arrivals family");
}

// Shared assembly pieces for the functional equation of w.
//
// The right-hand side is linear in the boundary unknowns with rational
// coefficient functions.  With c_k(s) = (-l)^k/k! - (l/(l-s))^n (s-l)^k/k!
// and d_k_i(s) = 2^-(n+i) (-2l)^k/k! - (l/(2l-s))^(n+i) (s-2l)^k/k!, the
// coefficient of w^(j)(l) is sum_k c_k(s) C(k,k-j) [phi^(k-j)(l) - theta
// g^(k-j)(l)] and the coefficient of w^(j)(2l) is
// 2 theta sum_i C(n+i-1,i) sum_k d_k_i(s) C(k,k-j) g^(k-j)(2l).
struct ErlangParts {
    double l, theta;
    int n;
    RationalTransform phi, g;
    std::vector<double> phi_l, g_l, g_2l;  // derivative values at l / 2l
    std::vector<RationalTransform> coef_l;   // per unknown w^(j)(l)
    std::vector<RationalTransform> coef_2l;  // per unknown w^(j)(2l)
    RationalTransform bracket;               // B(s), vanishing at 0

    explicit ErlangParts(const QueueModel& model)
        : l(model.lambda()), theta(model.theta()), n(model.stages()),
          phi(lst(model.service())), g(g_transform(model.service())) {
        auto reals = [](const std::vector<Complex>& v) {
            std::vector<double> out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
            return out;
        };
        phi_l = reals(phi.derivatives_at(l, n - 1));
        g_l = reals(g.derivatives_at(l, n - 1));
        g_2l = reals(g.derivatives_at(2.0 * l, 2 * n - 2));

        const Polynomial lms = Polynomial::linear(l, -1.0);        // l - s
        const Polynomial tlms = Polynomial::linear(2.0 * l, -1.0); // 2l - s

        // coef_l[j] over denominator (l-s)^(n-j)
        for (int j = 0; j < n; ++j) {
            Polynomial num = Polynomial::constant(0.0);
            for (int k = j; k < n; ++k) {
                const double w = binom(k, k - j) * (phi_l[k - j] - theta * g_l[k - j]);
                const double alpha = std::pow(-l, k) / factorial(k);
                const double beta = std::pow(l, n) * (k % 2 ? -1.0 : 1.0) / factorial(k);
                num = num + w * (alpha * lms.pow(n - j) - beta * lms.pow(k - j));
            }
            coef_l.emplace_back(num, lms.pow(n - j));
        }

        // coef_2l[j] over denominator (2l-s)^(2n-1-j)
        for (int j = 0; j <= 2 * n - 2; ++j) {
            Polynomial num = Polynomial::constant(0.0);
            for (int i = 0; i < n; ++i) {
                for (int k = std::max(j, 0); k <= n + i - 1; ++k) {
                    if (k < j) continue;
                    const double w =
                        2.0 * theta * binom(n + i - 1, i) * binom(k, k - j) * g_2l[k - j];
                    if (w == 0.0) continue;
                    const double alpha =
                        std::pow(-2.0 * l, k) / (std::pow(2.0, n + i) * factorial(k));
                    const double beta =
                        std::pow(l, n + i) * (k % 2 ? -1.0 : 1.0) / factorial(k);
                    num = num + w * (alpha * tlms.pow(2 * n - 1 - j) -
                                     beta * tlms.pow(n - 1 - i + k - j));
                }
            }
            coef_2l.emplace_back(num, tlms.pow(2 * n - 1 - j));
        }

        // B(s) = 1 - (l/(l-s))^n phi(s)
        //          - theta g(s) [2 sum_i C(n+i-1,i)(l/(2l-s))^(n+i) - (l/(l-s))^n]
        const RationalTransform lpow(Polynomial::constant(std::pow(l, n)), lms.pow(n));
        Polynomial geom_num = Polynomial::constant(0.0);
        for (int i = 0; i < n; ++i)
            geom_num = geom_num +
                       (2.0 * binom(n + i - 1, i) * std::pow(l, n + i)) * tlms.pow(n - 1 - i);
        const RationalTransform geom(geom_num, tlms.pow(2 * n - 1));
        bracket = RationalTransform::constant(1.0) - lpow * phi -
                  Complex(theta) * (g * (geom - lpow));
    }

    // RHS(s; x), the numerator of the waiting transform.
    Complex rhs_value(Complex s, const std::vector<double>& x) const {
        Complex acc(0.0);
        for (int j = 0; j < n; ++j) acc += coef_l[j](s) * x[j];
        for (int j = 0; j <= 2 * n - 2; ++j) acc += coef_2l[j](s) * x[n + j];
        return acc;
    }
};

// theta = 0 reduction: only the w^(k)(l) unknowns survive, against the
// classical independent-input bracket 1 - (l/(l-s))^n phi(s).
struct ErlangIndependentParts {
    double l;
    int n;
    RationalTransform phi;
    std::vector<double> phi_l;
    std::vector<RationalTransform> coef_l;
    RationalTransform bracket;

    explicit ErlangIndependentParts(const QueueModel& model)
        : l(model.lambda()), n(model.stages()), phi(lst(model.service())) {
        auto vals = phi.derivatives_at(l, n - 1);
        for (auto v : vals) phi_l.push_back(v.real());
        const Polynomial lms = Polynomial::linear(l, -1.0);
        for (int j = 0; j < n; ++j) {
            Polynomial num = Polynomial::constant(0.0);
            for (int k = j; k < n; ++k) {
                const double w = binom(k, k - j) * phi_l[k - j];
                const double alpha = std::pow(-l, k) / factorial(k);
                const double beta = std::pow(l, n) * (k % 2 ? -1.0 : 1.0) / factorial(k);
                num = num + w * (alpha * lms.pow(n - j) - beta * lms.pow(k - j));
            }
            coef_l.emplace_back(num, lms.pow(n - j));
        }
        const RationalTransform lpow(Polynomial::constant(std::pow(l, n)), lms.pow(n));
        bracket = RationalTransform::constant(1.0) - lpow * phi;
    }
};

// Split the root list into representative rows: real roots give one row per
// derivative order, one member of each conjugate pair gives a real and an
// imaginary row per order.
struct RootRow {
    Complex root;
    int order;
    bool imag_part;
};

std::vector<RootRow> plan_root_rows(const RootSet& roots) {
    std::vector<RootRow> rows;
    std::vector<bool> used(roots.roots.size(), false);
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        if (used[i]) continue;
        const Complex r = roots.roots[i];
        const double tol = 1e-7 * (1.0 + std::abs(r));
        if (std::abs(r.imag()) <= tol) {
            for (int d = 0; d < roots.multiplicities[i]; ++d)
                rows.push_back({Complex(r.real(), 0.0), d, false});
            used[i] = true;
            continue;
        }
        // find conjugate partner
        std::size_t partner = i;
        for (std::size_t j = i + 1; j < roots.roots.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(std::conj(r) - roots.roots[j]) <= tol &&
                roots.multiplicities[j] == roots.multiplicities[i]) {
                partner = j;
                break;
            }
        }
        if (partner == i)
            throw NumericalError(
                "assemble_system: complex root without conjugate partner");
        used[i] = used[partner] = true;
        for (int d = 0; d < roots.multiplicities[i]; ++d) {
            rows.push_back({r, d, false});
            rows.push_back({r, d, true});
        }
    }
    return rows;
}

void row_equilibrate(Eigen::MatrixXd& m, Eigen::VectorXd& b) {
    for (int r = 0; r < m.rows(); ++r) {
        const double scale = std::max(m.row(r).cwiseAbs().maxCoeff(), 1e-300);
        m.row(r) /= scale;
        b(r) /= scale;
    }
}

}  // namespace

LinearSystem assemble_system(const QueueModel& model) {
    require_erlang(model);
    model.require_stable();
    if (theta_is_zero(model.theta()))
        throw SingularSystem(
            "assemble_system: theta = 0 degenerates the doubled-rate block; "
            "use the independent-input branch");
    const ErlangParts parts(model);
    const int n = parts.n;
    const int unknowns = 3 * n - 1;

    const CharacteristicFunction cf = erlang_characteristic(model);
    LinearSystem sys;
    sys.roots = find_positive_roots(cf, 3 * n - 2);

    const std::vector<RootRow> rows = plan_root_rows(sys.roots);
    if (static_cast<int>(rows.size()) != 3 * n - 2)
        throw NumericalError("assemble_system: root rows do not match expected count");

    sys.matrix.resize(unknowns, unknowns);
    sys.rhs.resize(unknowns);
    int r = 0;
    for (const auto& row : rows) {
        for (int j = 0; j < unknowns; ++j) {
            const RationalTransform& coef =
                j < n ? parts.coef_l[j] : parts.coef_2l[j - n];
            const Complex v = coef.derivatives_at(row.root, row.order)[row.order];
            sys.matrix(r, j) = row.imag_part ? v.imag() : v.real();
        }
        sys.rhs(r) = 0.0;
        LinearSystem::RowTag tag;
        tag.root = row.root;
        tag.derivative_order = row.order;
        tag.kind = row.order > 0 ? LinearSystem::RowTag::Kind::RootDerivative
                   : row.imag_part ? LinearSystem::RowTag::Kind::RootImag
                                   : LinearSystem::RowTag::Kind::RootReal;
        sys.tags.push_back(tag);
        ++r;
    }

    // Normalization: both RHS and B vanish at 0, so w(0) = 1 becomes
    // RHS'(0) = B'(0), assembled from exact derivatives.
    for (int j = 0; j < unknowns; ++j) {
        const RationalTransform& coef = j < n ? parts.coef_l[j] : parts.coef_2l[j - n];
        sys.matrix(r, j) = coef.derivatives_at(Complex(0.0), 1)[1].real();
    }
    sys.rhs(r) = parts.bracket.derivatives_at(Complex(0.0), 1)[1].real();
    sys.tags.push_back({LinearSystem::RowTag::Kind::Normalization, Complex(0.0), 0});

    row_equilibrate(sys.matrix, sys.rhs);
    const auto svd = sys.matrix.jacobiSvd();
    sys.condition_estimate =
        svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    sys.ill_conditioned = sys.condition_estimate > 1e12;
    return sys;
}

namespace {

SolvedWaiting solve_erlang_general(const QueueModel& model) {
    LinearSystem sys = assemble_system(model);
    const ErlangParts parts(model);
    const int n = parts.n;

    const Eigen::VectorXd x = sys.matrix.fullPivLu().solve(sys.rhs);
    const double residual = (sys.matrix * x - sys.rhs).norm();
    if (residual > 1e-8 * (1.0 + sys.rhs.norm()))
        throw NumericalError("solve_waiting_erlang: boundary system residual too large");

    SolvedWaiting sol{model, sys.roots, {}, {}, 0.0, residual, sys.condition_estimate};
    sol.boundary.assign(x.data(), x.data() + x.size());

    // Sign pattern of derivatives of a completely monotone transform.
    for (int j = 0; j < n; ++j)
        if (((j % 2) ? -1.0 : 1.0) * sol.boundary[j] < -1e-10)
            throw NumericalError("solve_waiting_erlang: boundary sign pattern violated at l");
    for (int j = 0; j <= 2 * n - 2; ++j)
        if (((j % 2) ? -1.0 : 1.0) * sol.boundary[n + j] < -1e-10)
            throw NumericalError("solve_waiting_erlang: boundary sign pattern violated at 2l");

    // Normalization residual: limit of RHS/B at 0 with the solved vector.
    const double b1 = parts.bracket.derivatives_at(Complex(0.0), 1)[1].real();
    double r1 = 0.0;
    for (int j = 0; j < 3 * n - 1; ++j) {
        const RationalTransform& coef = j < n ? parts.coef_l[j] : parts.coef_2l[j - n];
        r1 += coef.derivatives_at(Complex(0.0), 1)[1].real() * sol.boundary[j];
    }
    if (std::abs(r1 / b1 - 1.0) > 1e-9)
        throw NumericalError("solve_waiting_erlang: w(0) != 1 after solve");

    const double l = parts.l;
    auto parts_ptr = std::make_shared<const ErlangParts>(model);
    std::vector<double> xv = sol.boundary;
    std::vector<Complex> special{Complex(0.0), Complex(l), Complex(2.0 * l)};
    for (const auto& rt : sys.roots.roots) special.push_back(rt);
    const RemovableSingularityPolicy policy(special, std::max(1.0, l));
    auto raw = [parts_ptr, xv](Complex s) {
        return parts_ptr->rhs_value(s, xv) / parts_ptr->bracket(s);
    };
    sol.lst = [raw, policy](Complex s) {
        if (s == Complex(0.0)) return Complex(1.0);
        return policy(raw, s);
    };
    const double h = 1e-3 * std::max(1.0, l);
    sol.mean = -richardson_derivative(
        [&sol](double s) { return sol.lst(Complex(s)).real(); }, 0.0, h);
    return sol;
}

SolvedWaiting solve_erlang_independent(const QueueModel& model) {
    const ErlangIndependentParts parts(model);
    const int n = parts.n;
    const CharacteristicFunction cf = erlang_independent_characteristic(model);
    RootSet roots = find_positive_roots(cf, n - 1);

    const std::vector<RootRow> rows = plan_root_rows(roots);
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd b(n);
    int r = 0;
    for (const auto& row : rows) {
        for (int j = 0; j < n; ++j) {
            const Complex v = parts.coef_l[j].derivatives_at(row.root, row.order)[row.order];
            m(r, j) = row.imag_part ? v.imag() : v.real();
        }
        b(r) = 0.0;
        ++r;
    }
    for (int j = 0; j < n; ++j)
        m(r, j) = parts.coef_l[j].derivatives_at(Complex(0.0), 1)[1].real();
    b(r) = parts.bracket.derivatives_at(Complex(0.0), 1)[1].real();
    row_equilibrate(m, b);

    const Eigen::VectorXd x = m.fullPivLu().solve(b);
    const double residual = (m * x - b).norm();
    const auto svd = m.jacobiSvd();
    const double cond =
        svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);

    // Exact rational form of w: numerator / bracket, as one quotient; used
    // to fill the doubled-rate derivative block exactly.
    RationalTransform num(Polynomial::constant(0.0), Polynomial::constant(1.0));
    for (int j = 0; j < n; ++j)
        num = num + Complex(x(j)) * parts.coef_l[j];
    const RationalTransform w_rational(num.num() * parts.bracket.den(),
                                       num.den() * parts.bracket.num());

    SolvedWaiting sol{model, roots, {}, {}, 0.0, residual, cond};
    sol.boundary.assign(x.data(), x.data() + x.size());
    const auto derivs_2l = w_rational.derivatives_at(Complex(2.0 * parts.l), 2 * n - 2);
    for (const auto& v : derivs_2l) sol.boundary.push_back(v.real());

    const double l = parts.l;
    auto parts_ptr = std::make_shared<const ErlangIndependentParts>(model);
    std::vector<double> xv(x.data(), x.data() + x.size());
    std::vector<Complex> special{Complex(0.0), Complex(l)};
    for (const auto& rt : roots.roots) special.push_back(rt);
    const RemovableSingularityPolicy policy(special, std::max(1.0, l));
    auto raw = [parts_ptr, xv, n](Complex s) {
        Complex acc(0.0);
        for (int j = 0; j < n; ++j) acc += parts_ptr->coef_l[j](s) * xv[j];
        return acc / parts_ptr->bracket(s);
    };
    sol.lst = [raw, policy](Complex s) {
        if (s == Complex(0.0)) return Complex(1.0);
        return policy(raw, s);
    };
    const double h = 1e-3 * std::max(1.0, l);
    sol.mean = -richardson_derivative(
        [&sol](double s) { return sol.lst(Complex(s)).real(); }, 0.0, h);
    return sol;
}

}  // namespace

SolvedWaiting solve_waiting_erlang(const QueueModel& model) {
    require_erlang(model);
    model.require_stable();
    if (theta_is_zero(model.theta())) return solve_erlang_independent(model);
    return solve_erlang_general(model);
}

Complex waiting_lst_erlang(const QueueModel& model, const std::vector<double>& boundary,
                           Complex s) {
    require_erlang(model);
    const ErlangParts parts(model);
    if (boundary.size() != static_cast<std::size_t>(3 * parts.n - 1))
        throw ValidationError("waiting_lst_erlang: boundary vector has wrong length");
    if (s == Complex(0.0)) return Complex(1.0);
    std::vector<Complex> special{Complex(0.0), Complex(parts.l), Complex(2.0 * parts.l)};
    const RemovableSingularityPolicy policy(special, std::max(1.0, parts.l));
    auto raw = [&parts, &boundary](Complex z) {
        return parts.rhs_value(z, boundary) / parts.bracket(z);
    };
    return policy(raw, s);
}

// --- splus transform ------------------------------------------------------

struct ErlangSplus::Impl {
    double l, theta;
    int n;
    RationalTransform phi, g;
    std::vector<double> phi_l, g_l, g_2l;
    int sign = -1;

    explicit Impl(const QueueModel& model)
        : l(model.lambda()), theta(model.theta()), n(model.stages()),
          phi(lst(model.service())), g(g_transform(model.service())) {
        auto reals = [](const std::vector<Complex>& v) {
            std::vector<double> out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
            return out;
        };
        phi_l = reals(phi.derivatives_at(l, n - 1));
        g_l = reals(g.derivatives_at(l, n - 1));
        g_2l = reals(g.derivatives_at(2.0 * l, 2 * n - 2));
    }

    Complex value(Complex s, int sgn) const {
        const Complex lr = l / (l - s);
        const Complex tlr = l / (2.0 * l - s);
        const Complex lpow = std::pow(lr, n);

        auto c_k = [&](int k) {
            return std::pow(-l, k) / factorial(k) -
                   lpow * std::pow(s - l, k) / factorial(k);
        };
        Complex acc = lpow * phi(s);
        for (int k = 0; k < n; ++k) acc += c_k(k) * phi_l[k];

        Complex block(0.0);
        Complex geom(0.0);
        for (int i = 0; i < n; ++i) {
            const double cb = binom(n + i - 1, i);
            geom += 2.0 * cb * std::pow(tlr, n + i);
            Complex inner(0.0);
            for (int k = 0; k <= n + i - 1; ++k) {
                const Complex dk = std::pow(-2.0 * l, k) /
                                       (std::pow(2.0, n + i) * factorial(k)) -
                                   std::pow(tlr, n + i) * std::pow(s - 2.0 * l, k) /
                                       factorial(k);
                inner += dk * g_2l[k];
            }
            block += 2.0 * cb * inner;
        }
        block += g(s) * (geom + static_cast<double>(sgn) * lpow);
        for (int k = 0; k < n; ++k)
            block += static_cast<double>(sgn) * c_k(k) * g_l[k];
        return acc + theta * block;
    }
};

ErlangSplus::ErlangSplus(const QueueModel& model) {
    require_erlang(model);
    auto impl = std::make_shared<Impl>(model);
    if (theta_is_zero(model.theta())) {
        resolution_ = {-1, 0.0, 0.0, false};
    } else {
        // Reference points; real, away from the removable points l and 2l.
        const double scale = std::max(1.0, model.lambda());
        const std::vector<double> pts{0.1 * scale, 0.45 * scale, 0.9 * scale, 1.7 * scale,
                                      2.6 * scale};
        double err_minus = 0.0, err_plus = 0.0;
        for (double p : pts) {
            const Complex oracle = splus_by_quadrature(model, Complex(p), 1e-8);
            err_minus = std::max(err_minus,
                                 std::abs(impl->value(Complex(p), -1) - oracle));
            err_plus = std::max(err_plus, std::abs(impl->value(Complex(p), +1) - oracle));
        }
        const bool minus_ok = err_minus < 1e-6;
        const bool plus_ok = err_plus < 1e-6;
        if (minus_ok == plus_ok) {
            std::ostringstream os;
            os << "splus sign resolution: " << (minus_ok ? "both variants match"
                                                         : "neither variant matches")
               << " the quadrature oracle (err-=" << err_minus << ", err+=" << err_plus
               << ")";
            throw OracleMismatch(os.str());
        }
        impl->sign = minus_ok ? -1 : +1;
        resolution_ = {impl->sign, err_minus, err_plus, true};
    }
    impl_ = impl;
}

Complex ErlangSplus::operator()(Complex s) const {
    if (s == Complex(0.0)) return Complex(1.0);
    const auto impl = impl_;
    const RemovableSingularityPolicy policy(
        {Complex(impl->l), Complex(2.0 * impl->l)}, std::max(1.0, impl->l));
    return policy([&](Complex z) { return impl->value(z, impl->sign); }, s);
}

LstEvaluator make_splus_erlang(const QueueModel& model) {
    ErlangSplus sp(model);
    return [sp](Complex s) { return sp(s); };
}

Complex splus_lst_erlang(const QueueModel& model, Complex s) {
    return ErlangSplus(model)(s);
}

OverlapLaw max_overlap_erlang(const QueueModel& model) {
    const SolvedWaiting sol = solve_waiting_erlang(model);
    const LstEvaluator splus = make_splus_erlang(model);
    const double h = 1e-3 * std::max(1.0, model.lambda());
    const double splus_mean = -richardson_derivative(
        [&splus](double s) { return splus(Complex(s)).real(); }, 0.0, h);
    auto w = sol.lst;
    return {OverlapKind::MaxOverlap, [w, splus](Complex s) { return w(s) * splus(s); },
            sol.mean + splus_mean};
}

OverlapLaw min_overlap_erlang(const QueueModel& model) {
    const SolvedWaiting sol = solve_waiting_erlang(model);
    const LstEvaluator splus = make_splus_erlang(model);
    auto w = sol.lst;
    auto law = [w, splus](Complex s) { return w(s) * (2.0 - splus(s)); };
    if (std::abs(law(Complex(0.0)) - 1.0) > 1e-9)
        throw NumericalError("min_overlap_erlang: law does not normalize at 0");
    const double h = 1e-3 * std::max(1.0, model.lambda());
    const double mean = -richardson_derivative(
        [&law](double s) { return law(Complex(s)).real(); }, 0.0, h);
    return {OverlapKind::MinOverlap, law, mean};
}

double prob_s_gt_a_erlang(const QueueModel& model) {
    require_erlang(model);
    const int n = model.stages();
    const double l = model.lambda();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());
    const auto phi_l = phi.derivatives_at(l, n - 1);
    const auto g_l = g.derivatives_at(l, n - 1);
    const auto g_2l = g.derivatives_at(2.0 * l, 2 * n - 2);

    // Large-s limit of the splus transform: the exponential block vanishes
    // and only the constant parts of the coefficient functions survive.
    double splus_inf = 0.0;
    for (int k = 0; k < n; ++k)
        splus_inf += std::pow(-l, k) / factorial(k) * phi_l[k].real();
    double block = 0.0;
    for (int i = 0; i < n; ++i) {
        double inner = 0.0;
        for (int k = 0; k <= n + i - 1; ++k)
            inner += std::pow(-2.0 * l, k) / (std::pow(2.0, n + i) * factorial(k)) *
                     g_2l[k].real();
        block += 2.0 * binom(n + i - 1, i) * inner;
    }
    for (int k = 0; k < n; ++k)
        block -= std::pow(-l, k) / factorial(k) * g_l[k].real();
    splus_inf += model.theta() * block;
    const double p = 1.0 - splus_inf;
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw RangeViolation("prob_s_gt_a_erlang: value outside [0, 1]");
    return std::min(std::max(p, 0.0), 1.0);
}

}  // namespace overlapq
