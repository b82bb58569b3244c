#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "overlapq/distribution.hpp"
#include "overlapq/quadrature.hpp"

using namespace overlapq;

namespace {

// Finite-difference oracle for transform derivatives (5-point stencil).
Complex fd_derivative(const RationalTransform& t, Complex s, double h) {
    return (-t(s + 2.0 * h) + 8.0 * t(s + h) - 8.0 * t(s - h) + t(s - 2.0 * h)) /
           (12.0 * h);
}

}  // namespace

TEST_CASE("polynomial arithmetic and evaluation") {
    const Polynomial p({1.0, 2.0, 3.0});  // 1 + 2s + 3s^2
    CHECK(p(Complex(2.0)).real() == doctest::Approx(17.0));
    CHECK(p.degree() == 2);

    const Polynomial q = Polynomial::linear(1.0, -1.0);  // 1 - s
    const Polynomial prod = p * q;
    CHECK(prod(Complex(0.5)).real() ==
          doctest::Approx(p(Complex(0.5)).real() * 0.5));

    const Polynomial d = p.derivative();
    CHECK(d(Complex(1.0)).real() == doctest::Approx(8.0));

    CHECK(Polynomial({0.0, 1.0, 2.0}).deflate_at_zero().degree() == 1);
    CHECK_THROWS_AS(Polynomial({1.0, 1.0}).deflate_at_zero(), NumericalError);
}

TEST_CASE("rational transform derivatives match finite differences") {
    const DistributionSpec d = DistributionSpec::erlang(2, 1.5);
    const RationalTransform phi = lst(d);
    for (Complex s : {Complex(0.1), Complex(1.0), Complex(2.0, 1.0)}) {
        for (int k = 1; k <= 3; ++k) {
            const RationalTransform dk = transform_derivative(phi, k);
            const RationalTransform dk1 = transform_derivative(phi, k - 1);
            const Complex fd = fd_derivative(dk1, s, 1e-4);
            CHECK(std::abs(dk(s) - fd) <= 1e-6 * (1.0 + std::abs(dk(s))));
        }
    }
    SUBCASE("order zero is the identity") {
        const RationalTransform same = transform_derivative(phi, 0);
        CHECK(std::abs(same(Complex(0.7)) - phi(Complex(0.7))) < 1e-14);
    }
}

TEST_CASE("laplace transforms of the supported service laws") {
    SUBCASE("exponential") {
        const auto phi = lst(DistributionSpec::exponential(1.0));
        CHECK(phi(Complex(0.5)).real() == doctest::Approx(2.0 / 3.0));
        CHECK(phi(Complex(0.0)).real() == doctest::Approx(1.0));
    }
    SUBCASE("erlang") {
        const auto phi = lst(DistributionSpec::erlang(2, 2.0));
        CHECK(phi(Complex(2.0)).real() == doctest::Approx(0.25));
    }
    SUBCASE("normalization at zero for every kind") {
        for (const auto& d :
             {DistributionSpec::exponential(0.7), DistributionSpec::erlang(3, 2.2),
              DistributionSpec::hyperexponential({0.3, 0.7}, {1.0, 4.0})}) {
            CHECK(std::abs(lst(d)(Complex(0.0)) - 1.0) < 1e-12);
            CHECK(std::abs(g_transform(d)(Complex(0.0))) < 1e-12);
        }
    }
}

TEST_CASE("dependence kernel transform") {
    SUBCASE("exponential closed form") {
        const auto g = g_transform(DistributionSpec::exponential(1.0));
        // 2mu/(s+2mu) - mu/(s+mu) at s = 0.5
        CHECK(g(Complex(0.5)).real() == doctest::Approx(2.0 / 2.5 - 1.0 / 1.5));
        CHECK(std::abs(g(Complex(0.0))) < 1e-14);
    }
    SUBCASE("matches quadrature of the defining integral") {
        for (const auto& d :
             {DistributionSpec::erlang(2, 1.0), DistributionSpec::exponential(2.0),
              DistributionSpec::hyperexponential({0.4, 0.6}, {0.8, 3.0})}) {
            const auto g = g_transform(d);
            const double t_hi = d.quantile(1.0 - 1e-13) * 1.1 + 1.0;
            for (double s : {0.25, 1.0, 2.5}) {
                const double oracle = integrate(
                    [&](double y) {
                        return std::exp(-s * y) * d.pdf(y) * (1.0 - 2.0 * d.cdf(y));
                    },
                    0.0, t_hi, 1e-11);
                CHECK(g(Complex(s)).real() == doctest::Approx(oracle).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("transform derivatives at zero give moments") {
    for (const auto& d :
         {DistributionSpec::exponential(1.0), DistributionSpec::erlang(2, 2.0),
          DistributionSpec::hyperexponential({0.5, 0.5}, {1.0, 3.0})}) {
        const auto phi = lst(d);
        const double m1 = -transform_derivative(phi, 1)(Complex(0.0)).real();
        const double m2 = transform_derivative(phi, 2)(Complex(0.0)).real();
        CHECK(m1 == doctest::Approx(d.moment(1)).epsilon(1e-10));
        CHECK(m2 == doctest::Approx(d.moment(2)).epsilon(1e-10));
    }
    SUBCASE("exponential second derivative is the second moment") {
        const auto phi = lst(DistributionSpec::exponential(1.0));
        CHECK(transform_derivative(phi, 2)(Complex(0.0)).real() == doctest::Approx(2.0));
        CHECK(transform_derivative(phi, 1)(Complex(0.0)).real() == doctest::Approx(-1.0));
    }
}

TEST_CASE("density, distribution and quantile functions") {
    SUBCASE("exponential closed forms") {
        const auto d = DistributionSpec::exponential(1.0);
        CHECK(d.cdf(std::log(2.0)) == doctest::Approx(0.5));
        CHECK(d.quantile(0.5) == doctest::Approx(std::log(2.0)));
    }
    SUBCASE("erlang cdf against integrated pdf") {
        const auto d = DistributionSpec::erlang(2, 1.0);
        for (double y : {0.5, 1.0, 3.0}) {
            const double num =
                integrate([&](double x) { return d.pdf(x); }, 0.0, y, 1e-12);
            CHECK(d.cdf(y) == doctest::Approx(num).epsilon(1e-10));
        }
    }
    SUBCASE("quantile round trip") {
        for (const auto& d :
             {DistributionSpec::erlang(3, 2.0),
              DistributionSpec::hyperexponential({0.2, 0.8}, {0.5, 2.0})}) {
            for (double p : {1e-6, 0.01, 0.5, 0.99, 0.999999}) {
                CHECK(d.cdf(d.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
            }
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(DistributionSpec::exponential(0.0), ValidationError);
        CHECK_THROWS_AS(DistributionSpec::erlang(0, 1.0), ValidationError);
        CHECK_THROWS_AS(DistributionSpec::hyperexponential({0.5, 0.4}, {1.0, 2.0}),
                        ValidationError);
        CHECK_THROWS_AS(DistributionSpec::exponential(1.0).quantile(1.0),
                        ValidationError);
    }
}
