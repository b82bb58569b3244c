#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "overlapq/rational.hpp"

namespace overlapq {

// Finite combination of terms c * y^j * exp(-a*y) on [0, inf).  Densities
// and survival functions of the supported service laws all have this form,
// and the family is closed under products, which is what makes the
// dependence kernel f_S(y) * (1 - 2 F_S(y)) exactly Laplace-transformable.
class ExpPoly {
public:
    struct Term {
        double coef;
        int power;    // j >= 0
        double rate;  // a > 0
    };

    ExpPoly() = default;
    explicit ExpPoly(std::vector<Term> terms) : terms_(std::move(terms)) { combine(); }

    const std::vector<Term>& terms() const { return terms_; }

    double operator()(double y) const {
        double acc = 0.0;
        for (const auto& t : terms_) acc += t.coef * std::pow(y, t.power) * std::exp(-t.rate * y);
        return acc;
    }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
        std::vector<Term> t = a.terms_;
        t.insert(t.end(), b.terms_.begin(), b.terms_.end());
        return ExpPoly(std::move(t));
    }
    friend ExpPoly operator*(double k, const ExpPoly& p) {
        std::vector<Term> t = p.terms_;
        for (auto& x : t) x.coef *= k;
        return ExpPoly(std::move(t));
    }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-1.0) * b; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        std::vector<Term> t;
        t.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_)
                t.push_back({x.coef * y.coef, x.power + y.power, x.rate + y.rate});
        return ExpPoly(std::move(t));
    }

    // Laplace transform: term c y^j e^(-ay) maps to c * j! / (s+a)^(j+1).
    // Terms sharing a rate are put over one power of (s+a); distinct rates
    // combine over the product denominator.  All denominator roots are at
    // s = -a < 0.
    RationalTransform laplace() const {
        if (terms_.empty()) return RationalTransform::constant(0.0);
        std::map<double, std::vector<Term>> groups;
        for (const auto& t : terms_) groups[t.rate].push_back(t);

        RationalTransform acc = RationalTransform::constant(0.0);
        for (const auto& [rate, ts] : groups) {
            int jmax = 0;
            for (const auto& t : ts) jmax = std::max(jmax, t.power);
            const Polynomial base = Polynomial::linear(rate, 1.0);  // s + a
            Polynomial num = Polynomial::constant(0.0);
            for (const auto& t : ts) {
                double fact = 1.0;
                for (int i = 2; i <= t.power; ++i) fact *= i;
                num = num + (t.coef * fact) * base.pow(jmax - t.power);
            }
            acc = acc + RationalTransform(num, base.pow(jmax + 1));
        }
        return acc;
    }

private:
    void combine() {
        std::map<std::pair<int, double>, double> merged;
        for (const auto& t : terms_) merged[{t.power, t.rate}] += t.coef;
        terms_.clear();
        for (const auto& [key, coef] : merged)
            if (coef != 0.0) terms_.push_back({coef, key.first, key.second});
    }

    std::vector<Term> terms_;
};

}  // namespace overlapq
