#include "overlapq/characteristic.hpp"

#include <cmath>

#include "overlapq/errors.hpp"

namespace overlapq {

namespace {

double binom(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// p(a * s): substitute a scaled argument into a polynomial.
Polynomial scale_argument(const Polynomial& p, double a) {
    std::vector<Complex> c = p.coeffs();
    double f = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] *= f;
        f *= a;
    }
    return Polynomial(std::move(c));
}

RationalTransform scale_argument(const RationalTransform& r, double a) {
    return RationalTransform(scale_argument(r.num(), a), scale_argument(r.den(), a));
}

}  // namespace

CharacteristicFunction mg1_characteristic(const QueueModel& model) {
    model.require_stable();
    const double l = model.lambda();
    const double theta = model.theta();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());

    const Polynomial two_l_minus_s = Polynomial::linear(2.0 * l, -1.0);
    const Polynomial l_minus_s = Polynomial::linear(l, -1.0);
    const RationalTransform d =
        RationalTransform(two_l_minus_s * l_minus_s, Polynomial::constant(1.0)) -
        Complex(l) * RationalTransform(two_l_minus_s * phi.num(), phi.den()) +
        Complex(theta * l) * RationalTransform(Polynomial::identity() * g.num(), g.den());

    auto eval = [l, theta, phi, g](Complex s) {
        return (2.0 * l - s) * (l - s) - l * (2.0 * l - s) * phi(s) + theta * s * l * g(s);
    };
    return {eval, d.num(), std::max(1.0, l), 20.0 * l, 1};
}

CharacteristicFunction erlang_characteristic(const QueueModel& model) {
    model.require_stable();
    const double l = model.lambda();
    const int n = model.stages();
    const double theta = model.theta();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());

    const Polynomial lms = Polynomial::linear(l, -1.0);        // l - s
    const Polynomial tlms = Polynomial::linear(2.0 * l, -1.0); // 2l - s
    const Polynomial lms_n = lms.pow(n);
    const Polynomial tlms_2n1 = tlms.pow(2 * n - 1);

    // 2 sum_i C(n+i-1, i) l^i (l-s)^n (2l-s)^{n-1-i} - (2l-s)^{2n-1}
    Polynomial bracket = -tlms_2n1;
    for (int i = 0; i < n; ++i) {
        const double coef = 2.0 * binom(n + i - 1, i) * std::pow(l, i);
        bracket = bracket + coef * (lms_n * tlms.pow(n - 1 - i));
    }

    const double l_n = std::pow(l, n);
    const RationalTransform d =
        RationalTransform(lms_n * tlms_2n1, Polynomial::constant(1.0)) -
        Complex(l_n) * RationalTransform(tlms_2n1 * phi.num(), phi.den()) -
        Complex(l_n * theta) * RationalTransform(bracket * g.num(), g.den());

    auto eval = [l, n, theta, phi, g, l_n](Complex s) {
        const Complex lms_v = l - s;
        const Complex tlms_v = 2.0 * l - s;
        Complex bracket_v = -std::pow(tlms_v, 2 * n - 1);
        for (int i = 0; i < n; ++i)
            bracket_v += 2.0 * binom(n + i - 1, i) * std::pow(l, i) * std::pow(lms_v, n) *
                         std::pow(tlms_v, n - 1 - i);
        return std::pow(lms_v, n) * std::pow(tlms_v, 2 * n - 1) -
               l_n * (std::pow(tlms_v, 2 * n - 1) * phi(s) + theta * g(s) * bracket_v);
    };
    return {eval, d.num(), std::max(1.0, l), 10.0 * (n + 1) * l, 3 * n - 2};
}

CharacteristicFunction prop_characteristic(const QueueModel& model) {
    model.require_stable();
    const double l = model.lambda();
    const double theta = model.theta();
    const RationalTransform phi = lst(model.service());
    const RationalTransform g = g_transform(model.service());

    const Polynomial two_l_minus_s = Polynomial::linear(2.0 * l, -1.0);
    const Polynomial l_minus_s = Polynomial::linear(l, -1.0);
    RationalTransform d(two_l_minus_s * l_minus_s, Polynomial::constant(1.0));
    for (const auto& at : model.atoms()) {
        const double abar = 1.0 - at.a;
        const RationalTransform phi_a = scale_argument(phi, abar);
        const RationalTransform g_a = scale_argument(g, abar);
        d = d - Complex(at.p * l) * RationalTransform(two_l_minus_s * phi_a.num(), phi_a.den()) +
            Complex(at.p * theta * l) *
                RationalTransform(Polynomial::identity() * g_a.num(), g_a.den());
    }

    const auto atoms = model.atoms();
    auto eval = [l, theta, phi, g, atoms](Complex s) {
        Complex acc = (2.0 * l - s) * (l - s);
        for (const auto& at : atoms) {
            const double abar = 1.0 - at.a;
            acc -= at.p * (l * (2.0 * l - s) * phi(abar * s) - theta * l * s * g(abar * s));
        }
        return acc;
    };
    return {eval, d.num(), std::max(1.0, l), 20.0 * l, 1};
}

CharacteristicFunction erlang_independent_characteristic(const QueueModel& model) {
    model.require_stable();
    const double l = model.lambda();
    const int n = model.stages();
    const RationalTransform phi = lst(model.service());
    const Polynomial lms_n = Polynomial::linear(l, -1.0).pow(n);
    const double l_n = std::pow(l, n);

    const RationalTransform d =
        RationalTransform(lms_n * phi.den() - l_n * phi.num(), phi.den());
    auto eval = [l, n, phi, l_n](Complex s) {
        return std::pow(l - s, n) - l_n * phi(s);
    };
    return {eval, d.num(), std::max(1.0, l), 10.0 * (n + 1) * l, n - 1};
}

}  // namespace overlapq
