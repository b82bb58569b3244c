#include "overlapq/solver_mg1.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "overlapq/errors.hpp"
#include "overlapq/numeric.hpp"

namespace overlapq {

namespace {

void require_mg1(const QueueModel& model) {
    if (model.family() != QueueModel::Family::Mg1)
        throw ValidationError("this solver handles the Mg1 family");
}

double lst_mean(const LstEvaluator& f, double lambda) {
    const double h = 1e-3 * std::max(1.0, lambda);
    return -richardson_derivative([&f](double s) { return f(Complex(s)).real(); }, 0.0, h);
}

}  // namespace

LstEvaluator make_splus_mg1(const QueueModel& model) {
    require_mg1(model);
    const double l = model.lambda();
    const double theta = model.theta();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());
    const double phi_l = phi(l).real();
    const double g_l = g(l).real();
    const double g_2l = g(2.0 * l).real();

    auto raw = [l, theta, phi, g, phi_l, g_l, g_2l](Complex s) {
        return (l / (l - s)) * phi(s) - (s / (l - s)) * phi_l +
               s * theta *
                   (g_l / (l - s) - l * g(s) / ((2.0 * l - s) * (l - s)) - g_2l / (2.0 * l - s));
    };
    const RemovableSingularityPolicy policy({Complex(l), Complex(2.0 * l)}, std::max(1.0, l));
    return [raw, policy](Complex s) { return policy(raw, s); };
}

Complex splus_lst(const QueueModel& model, Complex s) { return make_splus_mg1(model)(s); }

SolvedWaiting solve_waiting(const QueueModel& model) {
    require_mg1(model);
    model.require_stable();
    const double l = model.lambda();
    const double theta = model.theta();
    const double rho = model.utilization();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());
    const double phi_l = phi(l).real();
    const double g_l = g(l).real();
    const double g_2l = g(2.0 * l).real();

    const CharacteristicFunction cf = mg1_characteristic(model);
    SolvedWaiting sol{model, find_positive_roots(cf, 1), {}, {}, 0.0, 0.0, 1.0};

    if (theta_is_zero(theta)) {
        // The 2x2 system is singular (the w(2l) coefficient vanishes); the
        // classical single-unknown reduction applies.
        const double w_l = (1.0 - rho) / phi_l;
        auto raw = [l, rho, phi](Complex s) {
            return (1.0 - rho) * s / (s - l * (1.0 - phi(s)));
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
            throw NumericalError("solve_waiting: single characteristic root is not real");
        const double t1 = tau1.real();

        const double c = theta * g_l - phi_l;
        Eigen::Matrix2d a;
        a << 2.0 * c, -theta * g_2l,
            (2.0 * l - t1) * c, -theta * (l - t1) * g_2l;
        Eigen::Vector2d b(-2.0 * (1.0 - rho), 0.0);
        if (std::abs(a.determinant()) < 1e-14 * a.cwiseAbs().maxCoeff())
            throw SingularSystem("solve_waiting: boundary system is numerically singular");
        const Eigen::Vector2d x = a.fullPivLu().solve(b);
        sol.system_residual = (a * x - b).norm();
        const auto svd = a.jacobiSvd();
        sol.condition_number = svd.singularValues()(0) / svd.singularValues()(1);

        // Closed forms for the same two unknowns.
        const double w_l_closed = 2.0 * (1.0 - rho) * (l - t1) / (t1 * c);
        const double w_2l_closed = 2.0 * (1.0 - rho) * (2.0 * l - t1) / (t1 * theta * g_2l);
        if (std::abs(x(0) - w_l_closed) > 1e-9 * (1.0 + std::abs(x(0))) ||
            std::abs(x(1) - w_2l_closed) > 1e-9 * (1.0 + std::abs(x(1))))
            throw NumericalError("solve_waiting: closed-form boundary check failed");

        sol.boundary = {x(0), x(1)};
        const double w_l = x(0), w_2l = x(1);
        auto dfun = cf.evaluate;
        auto raw = [l, theta, c, g_2l, w_l, w_2l, dfun](Complex s) {
            const Complex num =
                s * (c * (2.0 * l - s) * w_l - theta * g_2l * (l - s) * w_2l);
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
            throw NumericalError("solve_waiting: boundary value escaped (0, 1]");
    if (std::abs(sol.lst(Complex(0.0)) - 1.0) > 1e-9)
        throw NumericalError("solve_waiting: w(0) != 1");

    sol.mean = lst_mean(sol.lst, l);
    return sol;
}

double waiting_mean(const SolvedWaiting& sol) { return sol.mean; }

OverlapLaw max_overlap(const QueueModel& model) {
    const SolvedWaiting sol = solve_waiting(model);
    const LstEvaluator splus = make_splus_mg1(model);
    const double splus_mean = lst_mean(splus, model.lambda());
    auto w = sol.lst;
    return {OverlapKind::MaxOverlap,
            [w, splus](Complex s) { return w(s) * splus(s); },
            sol.mean + splus_mean};
}

OverlapLaw min_overlap(const QueueModel& model) {
    const SolvedWaiting sol = solve_waiting(model);
    const LstEvaluator splus = make_splus_mg1(model);
    auto w = sol.lst;
    auto law = [w, splus](Complex s) { return w(s) * (2.0 - splus(s)); };
    if (std::abs(law(Complex(0.0)) - 1.0) > 1e-9)
        throw NumericalError("min_overlap: law does not normalize at 0");
    return {OverlapKind::MinOverlap, law, lst_mean(law, model.lambda())};
}

double prob_s_gt_a(const QueueModel& model) {
    require_mg1(model);
    const double l = model.lambda();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());
    const double p =
        1.0 - phi(l).real() + model.theta() * (g(l).real() - g(2.0 * l).real());
    if (p < -1e-9 || p > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "prob_s_gt_a: value " << p << " outside [0, 1]";
        throw RangeViolation(os.str());
    }
    return std::min(std::max(p, 0.0), 1.0);
}

MeanFormulaDiagnostic mean_max_formula_diagnostic(const QueueModel& model) {
    return mean_max_formula_diagnostic(model, solve_waiting(model),
                                       max_overlap(model).mean);
}

MeanFormulaDiagnostic mean_max_formula_diagnostic(const QueueModel& model,
                                                  const SolvedWaiting& sol,
                                                  double derivative_mean) {
    const double l = model.lambda();
    const double theta = model.theta();
    const double rho = model.utilization();
    const double es = model.service().moment(1);
    const double es2 = model.service().moment(2);
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());
    const double phi_l = phi(l).real();
    const double g_l = g(l).real();
    const double g_2l = g(2.0 * l).real();
    const double gp0 = g.derivative(1)(Complex(0.0)).real();
    const double w_l = sol.boundary[0];
    const double w_2l = sol.boundary[1];

    // Printed dependence correction, taken literally (its mixed g'(0) /
    // g*'(0) and omega / w symbols are read as g*'(0) and w).
    const double big =
        (g_2l * w_2l * (1.0 - rho - l * theta * gp0 + l * l * es2) +
         2.0 * l * w_l * (g_l * (theta * gp0 + l * es2) - theta * gp0 * phi_l)) /
        (4.0 * l * (1.0 - rho) * (1.0 - rho));
    const double correction = big + (g_2l - 2.0 * g_l) / (2.0 * l);
    const double formula =
        l * es2 / (2.0 * (1.0 - rho)) + es - (1.0 - phi_l) / l + theta * correction;
    return {formula, derivative_mean, std::abs(formula - derivative_mean)};
}

}  // namespace overlapq
