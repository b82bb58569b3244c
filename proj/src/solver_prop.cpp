#include "overlapq/solver_prop.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "overlapq/errors.hpp"
#include "overlapq/numeric.hpp"

namespace overlapq {

namespace {

void require_prop(const QueueModel& model) {
    if (model.family() != QueueModel::Family::Proportional)
        throw ValidationError("this solver handles the proportional family");
}

struct PropParts {
    double l, theta;
    RationalTransform phi, g;
    std::vector<double> p, abar;
    std::vector<double> phi_al, g_al, g_2al;  // phi(abar l), g(abar l), g(2 abar l)
    double c1 = 0.0;                          // sum p_i (theta g(abar_i l) - phi(abar_i l))
    double c2 = 0.0;                          // sum p_i g(2 abar_i l)

    explicit PropParts(const QueueModel& model)
        : l(model.lambda()), theta(model.theta()), phi(lst(model.service())),
          g(g_transform(model.service())) {
        for (const auto& at : model.atoms()) {
            p.push_back(at.p);
            abar.push_back(1.0 - at.a);
            phi_al.push_back(phi(abar.back() * l).real());
            g_al.push_back(g(abar.back() * l).real());
            g_2al.push_back(g(2.0 * abar.back() * l).real());
            c1 += at.p * (theta * g_al.back() - phi_al.back());
            c2 += at.p * g_2al.back();
        }
    }

    Complex splus_raw(Complex s) const {
        Complex acc(0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double ab = abar[i];
            acc += p[i] * ((l / (l - s)) * phi(ab * s) - (s / (l - s)) * phi_al[i] +
                           s * theta *
                               (g_al[i] / (l - s) - g_2al[i] / (2.0 * l - s) -
                                l * g(ab * s) / ((2.0 * l - s) * (l - s))));
        }
        return acc;
    }

    // (l-s) B(s): denominator of the theta = 0 reduction.
    Complex indep_denominator(Complex s) const {
        Complex acc = l - s;
        for (std::size_t i = 0; i < p.size(); ++i) acc -= p[i] * l * phi(abar[i] * s);
        return acc;
    }
};

double lst_mean(const LstEvaluator& f, double lambda) {
    const double h = 1e-3 * std::max(1.0, lambda);
    return -richardson_derivative([&f](double s) { return f(Complex(s)).real(); }, 0.0, h);
}

}  // namespace

LstEvaluator make_splus_prop(const QueueModel& model) {
    require_prop(model);
    auto parts = std::make_shared<const PropParts>(model);
    const RemovableSingularityPolicy policy(
        {Complex(parts->l), Complex(2.0 * parts->l)}, std::max(1.0, parts->l));
    return [parts, policy](Complex s) {
        return policy([&](Complex z) { return parts->splus_raw(z); }, s);
    };
}

Complex splus_lst_prop(const QueueModel& model, Complex s) {
    return make_splus_prop(model)(s);
}

SolvedWaiting solve_waiting_prop(const QueueModel& model) {
    require_prop(model);
    model.require_stable();
    const double l = model.lambda();
    const double theta = model.theta();
    const double rho = model.utilization();
    auto parts = std::make_shared<const PropParts>(model);

    const CharacteristicFunction cf = prop_characteristic(model);
    SolvedWaiting sol{model, find_positive_roots(cf, 1), {}, {}, 0.0, 0.0, 1.0};

    if (theta_is_zero(theta)) {
        double phi_sum = 0.0;
        for (std::size_t i = 0; i < parts->p.size(); ++i)
            phi_sum += parts->p[i] * parts->phi_al[i];
        const double w_l = (1.0 - rho) / phi_sum;
        auto raw = [parts, phi_sum, w_l](Complex s) {
            return -s * phi_sum * w_l / parts->indep_denominator(s);
        };
        const RemovableSingularityPolicy policy({Complex(0.0)}, std::max(1.0, l));
        sol.lst = [raw, policy](Complex s) {
            if (s == Complex(0.0)) return Complex(1.0);
            return policy(raw, s);
        };
        sol.boundary = {w_l, sol.lst(Complex(2.0 * l)).real()};
    } else {
        const Complex tau1 = sol.tau1();
        if (std::abs(tau1.imag()) > 1e-9 * (1.0 + std::abs(tau1)))
            throw NumericalError("solve_waiting_prop: single characteristic root not real");
        const double t1 = tau1.real();
        const double c1 = parts->c1, c2 = parts->c2;

        Eigen::Matrix2d a;
        a << 2.0 * c1, -theta * c2,
            (2.0 * l - t1) * c1, -theta * (l - t1) * c2;
        Eigen::Vector2d b(-2.0 * (1.0 - rho), 0.0);
        if (std::abs(a.determinant()) < 1e-14 * a.cwiseAbs().maxCoeff())
            throw SingularSystem("solve_waiting_prop: boundary system singular");
        const Eigen::Vector2d x = a.fullPivLu().solve(b);
        sol.system_residual = (a * x - b).norm();
        const auto svd = a.jacobiSvd();
        sol.condition_number = svd.singularValues()(0) / svd.singularValues()(1);

        const double w_l_closed = 2.0 * (1.0 - rho) * (l - t1) / (t1 * c1);
        const double w_2l_closed = 2.0 * (1.0 - rho) * (2.0 * l - t1) / (t1 * theta * c2);
        if (std::abs(x(0) - w_l_closed) > 1e-9 * (1.0 + std::abs(x(0))) ||
            std::abs(x(1) - w_2l_closed) > 1e-9 * (1.0 + std::abs(x(1))))
            throw NumericalError("solve_waiting_prop: closed-form boundary check failed");

        sol.boundary = {x(0), x(1)};
        const double w_l = x(0), w_2l = x(1);
        auto dfun = cf.evaluate;
        auto raw = [l, theta, c1, c2, w_l, w_2l, dfun](Complex s) {
            const Complex num =
                s * (c1 * (2.0 * l - s) * w_l - theta * c2 * (l - s) * w_2l);
            return num / dfun(s);
        };
        const RemovableSingularityPolicy policy({Complex(0.0), Complex(t1)},
                                                std::max(1.0, l));
        sol.lst = [raw, policy](Complex s) {
            if (s == Complex(0.0)) return Complex(1.0);
            return policy(raw, s);
        };
    }

    for (double v : sol.boundary)
        if (!(v > 0.0 && v <= 1.0 + 1e-9))
            throw NumericalError("solve_waiting_prop: boundary value escaped (0, 1]");
    if (std::abs(sol.lst(Complex(0.0)) - 1.0) > 1e-9)
        throw NumericalError("solve_waiting_prop: w(0) != 1");

    sol.mean = lst_mean(sol.lst, l);
    return sol;
}

std::pair<OverlapLaw, OverlapLaw> overlap_laws_prop(const QueueModel& model) {
    const SolvedWaiting sol = solve_waiting_prop(model);
    const LstEvaluator splus = make_splus_prop(model);
    const double splus_mean = lst_mean(splus, model.lambda());
    auto w = sol.lst;
    OverlapLaw max_law{OverlapKind::MaxOverlap,
                       [w, splus](Complex s) { return w(s) * splus(s); },
                       sol.mean + splus_mean};
    auto min_lst = [w, splus](Complex s) { return w(s) * (2.0 - splus(s)); };
    if (std::abs(min_lst(Complex(0.0)) - 1.0) > 1e-9)
        throw NumericalError("overlap_laws_prop: minimum law does not normalize at 0");
    OverlapLaw min_law{OverlapKind::MinOverlap, min_lst, lst_mean(min_lst, model.lambda())};
    return {max_law, min_law};
}

double prob_s_gt_a_prop(const QueueModel& model) {
    require_prop(model);
    const PropParts parts(model);
    double p = 0.0;
    for (std::size_t i = 0; i < parts.p.size(); ++i)
        p += parts.p[i] *
             (1.0 - parts.phi_al[i] + parts.theta * (parts.g_al[i] - parts.g_2al[i]));
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw RangeViolation("prob_s_gt_a_prop: value outside [0, 1]");
    return std::min(std::max(p, 0.0), 1.0);
}

}  // namespace overlapq
