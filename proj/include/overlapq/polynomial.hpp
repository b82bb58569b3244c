#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "overlapq/errors.hpp"

namespace overlapq {

using Complex = std::complex<double>;

// Dense polynomial in the monomial basis, coefficient of s^k at index k.
// Degrees stay small here (a few dozen at most), so no fancy bases.
class Polynomial {
public:
    Polynomial() : coeffs_{Complex(0.0)} {}
    explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
        trim();
    }
    Polynomial(std::initializer_list<Complex> coeffs)
        : Polynomial(std::vector<Complex>(coeffs)) {}

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    // a0 + a1*s
    static Polynomial linear(Complex a0, Complex a1) { return Polynomial({a0, a1}); }
    static Polynomial identity() { return Polynomial({Complex(0.0), Complex(1.0)}); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    bool is_zero(double tol = 0.0) const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m <= tol;
    }

    Complex operator()(Complex s) const {
        Complex acc(0.0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial();
        std::vector<Complex> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * static_cast<double>(k);
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(Complex k, const Polynomial& p) {
        std::vector<Complex> c(p.coeffs_);
        for (auto& x : c) x *= k;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& p, Complex k) { return k * p; }
    Polynomial operator-() const { return Complex(-1.0) * *this; }

    Polynomial pow(int e) const {
        Polynomial acc = Polynomial::constant(1.0);
        for (int i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    // Exact division by s.  The constant coefficient must already be a
    // numerical zero (analytically-zero constant terms survive only as
    // roundoff); it is checked against `tol` relative to the coefficient
    // scale and dropped.
    Polynomial deflate_at_zero(double tol = 1e-9) const {
        const double scale = max_abs_coeff();
        if (std::abs(coeffs_[0]) > tol * scale)
            throw NumericalError("deflate_at_zero: constant coefficient is not a numerical zero");
        if (coeffs_.size() == 1) return Polynomial();
        std::vector<Complex> c(coeffs_.begin() + 1, coeffs_.end());
        return Polynomial(std::move(c));
    }

    // Cauchy bound: every root has modulus < 1 + max |c_k / c_d|.
    double root_bound() const {
        const int d = degree();
        if (d < 1) return 0.0;
        const double lead = std::abs(coeffs_[d]);
        double m = 0.0;
        for (int k = 0; k < d; ++k) m = std::max(m, std::abs(coeffs_[k]) / lead);
        return 1.0 + m;
    }

private:
    // Drop trailing coefficients that are pure roundoff relative to the
    // largest one, so degree() reflects the effective degree.
    void trim() {
        double scale = max_abs_coeff();
        const double tol = scale * 1e-14;
        while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= tol) coeffs_.pop_back();
    }

    std::vector<Complex> coeffs_;
};

}  // namespace overlapq
