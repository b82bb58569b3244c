#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "overlapq/errors.hpp"
#include "overlapq/polynomial.hpp"

namespace overlapq {

// Ratio of two polynomials.  Used for Laplace-Stieltjes transforms of the
// supported service laws and everything assembled from them; all poles of
// such transforms live in the open left half plane, so evaluation on
// Re(s) >= 0 is always safe.
//
// No gcd simplification is attempted: spurious common factors only ever
// introduce numerator zeros that coincide with denominator zeros (left half
// plane), which downstream root filters discard anyway.
class RationalTransform {
public:
    RationalTransform() : num_(Polynomial::constant(0.0)), den_(Polynomial::constant(1.0)) {}
    RationalTransform(Polynomial num, Polynomial den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw ValidationError("RationalTransform: zero denominator");
    }

    static RationalTransform constant(Complex c) {
        return RationalTransform(Polynomial::constant(c), Polynomial::constant(1.0));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    Complex operator()(Complex s) const { return num_(s) / den_(s); }

    friend RationalTransform operator+(const RationalTransform& a, const RationalTransform& b) {
        return RationalTransform(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalTransform operator-(const RationalTransform& a, const RationalTransform& b) {
        return RationalTransform(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalTransform operator*(const RationalTransform& a, const RationalTransform& b) {
        return RationalTransform(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalTransform operator*(Complex k, const RationalTransform& a) {
        return RationalTransform(k * a.num_, a.den_);
    }
    RationalTransform operator-() const { return RationalTransform(-num_, den_); }

    // k-th derivative, kept in the form N_k / D^(k+1) via
    //   d/ds [N/D^(j+1)] = (N' D - (j+1) N D') / D^(j+2),
    // so numerator degree grows linearly in k instead of doubling.
    RationalTransform derivative(int k = 1) const {
        if (k < 0) throw ValidationError("derivative order must be nonnegative");
        if (k > kMaxOrder) throw ValidationError("derivative order exceeds guard (64)");
        Polynomial n = num_;
        const Polynomial dprime = den_.derivative();
        for (int j = 0; j < k; ++j) {
            n = n.derivative() * den_ - static_cast<double>(j + 1) * Complex(1.0) * (n * dprime);
            if (n.degree() > kMaxDegree)
                throw NumericalError("derivative: numerator degree exceeded cap");
        }
        Polynomial dpow = den_.pow(k + 1);
        return RationalTransform(std::move(n), std::move(dpow));
    }

    // Values of the 0th..kmax-th derivatives at a point, sharing the
    // recurrence work across orders.
    std::vector<Complex> derivatives_at(Complex s, int kmax) const {
        std::vector<Complex> out;
        out.reserve(kmax + 1);
        Polynomial n = num_;
        const Polynomial dprime = den_.derivative();
        const Complex dval = den_(s);
        Complex dpow = dval;
        for (int j = 0; j <= kmax; ++j) {
            out.push_back(n(s) / dpow);
            n = n.derivative() * den_ - static_cast<double>(j + 1) * Complex(1.0) * (n * dprime);
            if (n.degree() > kMaxDegree)
                throw NumericalError("derivatives_at: numerator degree exceeded cap");
            dpow *= dval;
        }
        return out;
    }

    static constexpr int kMaxOrder = 64;
    static constexpr int kMaxDegree = 4096;

private:
    Polynomial num_;
    Polynomial den_;
};

}  // namespace overlapq
