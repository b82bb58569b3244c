#include "overlapq/distribution.hpp"

#include <cmath>
#include <sstream>

#include "overlapq/errors.hpp"

namespace overlapq {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Regularized lower incomplete gamma at integer shape:
// P(Erlang(k, mu) <= y) = 1 - exp(-mu y) * sum_{j<k} (mu y)^j / j!.
double erlang_cdf(int k, double mu, double y) {
    if (y <= 0.0) return 0.0;
    const double x = mu * y;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < k; ++j) {
        term *= x / j;
        sum += term;
    }
    return -std::expm1(-x + std::log(sum));
}

}  // namespace

DistributionSpec::DistributionSpec(Kind k, int shape, std::vector<double> weights,
                                   std::vector<double> rates)
    : kind_(k), shape_(shape), weights_(std::move(weights)), rates_(std::move(rates)) {}

DistributionSpec DistributionSpec::exponential(double rate) {
    if (!(rate > 0.0)) throw ValidationError("exponential: rate must be positive");
    return DistributionSpec(Kind::Exponential, 1, {1.0}, {rate});
}

DistributionSpec DistributionSpec::erlang(int shape, double rate) {
    if (shape < 1) throw ValidationError("erlang: shape must be >= 1");
    if (!(rate > 0.0)) throw ValidationError("erlang: rate must be positive");
    return DistributionSpec(Kind::Erlang, shape, {1.0}, {rate});
}

DistributionSpec DistributionSpec::hyperexponential(std::vector<double> weights,
                                                    std::vector<double> rates) {
    if (weights.empty() || weights.size() != rates.size())
        throw ValidationError("hyperexponential: weights and rates must be nonempty and match");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("hyperexponential: weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("hyperexponential: weights must sum to 1");
    for (double r : rates)
        if (!(r > 0.0)) throw ValidationError("hyperexponential: rates must be positive");
    return DistributionSpec(Kind::Hyperexponential, 1, std::move(weights), std::move(rates));
}

double DistributionSpec::pdf(double y) const {
    if (y < 0.0) throw ValidationError("pdf: negative argument");
    switch (kind_) {
        case Kind::Exponential:
            return rates_[0] * std::exp(-rates_[0] * y);
        case Kind::Erlang: {
            const double mu = rates_[0];
            if (y == 0.0) return shape_ == 1 ? mu : 0.0;
            return std::exp(shape_ * std::log(mu) + (shape_ - 1) * std::log(y) - mu * y) /
                   factorial(shape_ - 1);
        }
        case Kind::Hyperexponential: {
            double acc = 0.0;
            for (std::size_t i = 0; i < rates_.size(); ++i)
                acc += weights_[i] * rates_[i] * std::exp(-rates_[i] * y);
            return acc;
        }
    }
    return 0.0;
}

double DistributionSpec::cdf(double y) const {
    if (y < 0.0) throw ValidationError("cdf: negative argument");
    switch (kind_) {
        case Kind::Exponential:
            return -std::expm1(-rates_[0] * y);
        case Kind::Erlang:
            return erlang_cdf(shape_, rates_[0], y);
        case Kind::Hyperexponential: {
            double acc = 0.0;
            for (std::size_t i = 0; i < rates_.size(); ++i)
                acc += weights_[i] * -std::expm1(-rates_[i] * y);
            return acc;
        }
    }
    return 0.0;
}

double DistributionSpec::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0)) throw ValidationError("quantile: p must be in [0,1)");
    if (p == 0.0) return 0.0;
    if (kind_ == Kind::Exponential) return -std::log1p(-p) / rates_[0];

    // Bracketed Newton on the cdf.  The slowest exponential tail dominates,
    // which gives a safe upper bracket.
    double rate_min = rates_[0];
    for (double r : rates_) rate_min = std::min(rate_min, r);
    double hi = (-std::log1p(-p) + shape_ + 5.0) / rate_min;
    while (cdf(hi) < p) hi *= 2.0;
    double lo = 0.0;
    double y = mean() * (p + 0.5);  // crude but inside the bracket after clamping
    y = std::min(std::max(y, 1e-12 * hi), hi);
    for (int it = 0; it < 200; ++it) {
        const double f = cdf(y) - p;
        if (std::abs(f) <= 1e-12) return y;
        if (f > 0.0) hi = y; else lo = y;
        const double d = pdf(y);
        double next = d > 0.0 ? y - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        y = next;
    }
    return y;
}

double DistributionSpec::moment(int r) const {
    if (r < 1 || r > 2) throw ValidationError("moment: r must be 1 or 2");
    switch (kind_) {
        case Kind::Exponential:
            return r == 1 ? 1.0 / rates_[0] : 2.0 / (rates_[0] * rates_[0]);
        case Kind::Erlang: {
            const double mu = rates_[0];
            return r == 1 ? shape_ / mu : shape_ * (shape_ + 1.0) / (mu * mu);
        }
        case Kind::Hyperexponential: {
            double acc = 0.0;
            for (std::size_t i = 0; i < rates_.size(); ++i)
                acc += weights_[i] * (r == 1 ? 1.0 / rates_[i] : 2.0 / (rates_[i] * rates_[i]));
            return acc;
        }
    }
    return 0.0;
}

ExpPoly DistributionSpec::pdf_exp_poly() const {
    std::vector<ExpPoly::Term> t;
    switch (kind_) {
        case Kind::Exponential:
            t.push_back({rates_[0], 0, rates_[0]});
            break;
        case Kind::Erlang:
            t.push_back({std::pow(rates_[0], shape_) / factorial(shape_ - 1), shape_ - 1,
                         rates_[0]});
            break;
        case Kind::Hyperexponential:
            for (std::size_t i = 0; i < rates_.size(); ++i)
                t.push_back({weights_[i] * rates_[i], 0, rates_[i]});
            break;
    }
    return ExpPoly(std::move(t));
}

ExpPoly DistributionSpec::survival_exp_poly() const {
    std::vector<ExpPoly::Term> t;
    switch (kind_) {
        case Kind::Exponential:
            t.push_back({1.0, 0, rates_[0]});
            break;
        case Kind::Erlang:
            for (int j = 0; j < shape_; ++j)
                t.push_back({std::pow(rates_[0], j) / factorial(j), j, rates_[0]});
            break;
        case Kind::Hyperexponential:
            for (std::size_t i = 0; i < rates_.size(); ++i)
                t.push_back({weights_[i], 0, rates_[i]});
            break;
    }
    return ExpPoly(std::move(t));
}

std::string DistributionSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Exponential:
            os << "exponential(rate=" << rates_[0] << ")";
            break;
        case Kind::Erlang:
            os << "erlang(shape=" << shape_ << ", rate=" << rates_[0] << ")";
            break;
        case Kind::Hyperexponential:
            os << "hyperexponential(m=" << rates_.size() << ")";
            break;
    }
    return os.str();
}

RationalTransform lst(const DistributionSpec& d) { return d.pdf_exp_poly().laplace(); }

RationalTransform g_transform(const DistributionSpec& d) {
    return d.dependence_kernel().laplace();
}

}  // namespace overlapq
