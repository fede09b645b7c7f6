#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "holoq/poly.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Rational function num/den over Q[z], kept in canonical reduced form:
/// gcd(num, den) = 1 and den is a primitive integer polynomial with positive
/// leading coefficient. Equality is then plain coefficient equality.
class RatFun {
public:
    RatFun() : num_(), den_(Poly(1L)) {}
    RatFun(const Rational& c) : num_(Poly(c)), den_(Poly(1L)) {}
    RatFun(const Poly& p) : num_(p), den_(Poly(1L)) {}
    RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
        reduce();
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    bool finite_at_zero() const { return !den_.coeff(0).is_zero(); }
    Rational eval_zero() const {
        if (!finite_at_zero()) throw std::domain_error("RatFun: pole at 0");
        return num_.coeff(0) / den_.coeff(0);
    }
    Rational eval(const Rational& x) const {
        const Rational d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RatFun: pole at evaluation point");
        return num_.eval(x) / d;
    }

    RatFun derivative() const {
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Power-series coefficients c_0..c_order at 0; requires den(0) != 0.
    std::vector<Rational> series(std::size_t order) const {
        if (!finite_at_zero()) throw std::domain_error("RatFun: pole at 0, no power series");
        const Rational d0_inv = inverse(den_.coeff(0));
        std::vector<Rational> c(order + 1);
        for (std::size_t n = 0; n <= order; ++n) {
            Rational acc = num_.coeff(n);
            const std::size_t imax = std::min<std::size_t>(n, static_cast<std::size_t>(std::max<long>(den_.degree(), 0)));
            for (std::size_t i = 1; i <= imax; ++i) acc -= den_.coeff(i) * c[n - i];
            c[n] = acc * d0_inv;
        }
        return c;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a) {
        RatFun r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

private:
    Poly num_, den_;

    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly(1L);
            return;
        }
        const Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        Rational scale = content(den_);
        if (den_.leading().sign() < 0) scale = -scale;
        const Rational inv = inverse(scale);
        num_ = inv * num_;
        den_ = inv * den_;
    }
};

/// Laurent-polynomial view of a RatFun whose denominator is a monomial c*z^k.
/// Returns {lowest exponent, highest exponent}; requires a monomial denominator.
inline std::pair<long, long> laurent_window(const RatFun& f) {
    if (f.is_zero()) return {0, 0};
    const Poly& d = f.den();
    if (d.ord() != d.degree())
        throw std::domain_error("laurent_window: denominator is not a monomial");
    const long k = d.degree();
    return {f.num().ord() - k, f.num().degree() - k};
}

/// Coefficient of z^t in a Laurent-polynomial RatFun (monomial denominator).
inline Rational laurent_coeff(const RatFun& f, long t) {
    if (f.is_zero()) return Rational();
    const Poly& d = f.den();
    if (d.ord() != d.degree())
        throw std::domain_error("laurent_coeff: denominator is not a monomial");
    const long k = d.degree();
    const long idx = t + k;
    if (idx < 0) return Rational();
    return f.num().coeff(static_cast<std::size_t>(idx)) / d.leading();
}

}  // namespace holoq
