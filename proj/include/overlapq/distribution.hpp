#pragma once

#include <string>
#include <vector>

#include "overlapq/exp_poly.hpp"
#include "overlapq/rational.hpp"

namespace overlapq {

// Parametric service/arrival law with closed-form density, distribution
// function, quantile, moments, and exactly rational Laplace-Stieltjes
// transform.  Restricted to laws whose density is a finite mix of
// y^j exp(-a y) terms; this keeps every transform in this project rational,
// which the root finders rely on.
class DistributionSpec {
public:
    enum class Kind { Exponential, Erlang, Hyperexponential };

    static DistributionSpec exponential(double rate);
    static DistributionSpec erlang(int shape, double rate);
    static DistributionSpec hyperexponential(std::vector<double> weights,
                                             std::vector<double> rates);

    Kind kind() const { return kind_; }
    double rate() const { return rates_[0]; }
    int shape() const { return shape_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& rates() const { return rates_; }

    double pdf(double y) const;
    double cdf(double y) const;
    // Inverse cdf; bracketed Newton to |F(y)-p| <= 1e-12 where no closed
    // form exists.
    double quantile(double p) const;
    // Raw moment, r in {1, 2}.
    double moment(int r) const;
    double mean() const { return moment(1); }

    // Density and survival function as exponential polynomials.
    ExpPoly pdf_exp_poly() const;
    ExpPoly survival_exp_poly() const;

    // The dependence kernel f(y) * (1 - 2 F(y)) = 2 f(y) (1-F(y)) - f(y).
    ExpPoly dependence_kernel() const { return 2.0 * (pdf_exp_poly() * survival_exp_poly()) - pdf_exp_poly(); }

    std::string describe() const;

private:
    DistributionSpec(Kind k, int shape, std::vector<double> weights, std::vector<double> rates);

    Kind kind_;
    int shape_;
    std::vector<double> weights_;
    std::vector<double> rates_;
};

// phi(s) = E[exp(-s X)], exactly rational; phi(0) = 1.
RationalTransform lst(const DistributionSpec& d);

// Laplace transform of the dependence kernel f (1 - 2F); vanishes at 0.
RationalTransform g_transform(const DistributionSpec& d);

// Exact k-th derivative of a rational transform.
inline RationalTransform transform_derivative(const RationalTransform& t, int k) {
    return t.derivative(k);
}

}  // namespace overlapq
