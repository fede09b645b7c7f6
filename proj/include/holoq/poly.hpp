#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoq/primes.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Dense univariate polynomial over Q. Index = degree; the coefficient of
/// highest degree is nonzero unless the polynomial is zero (empty storage).
/// The variable name is carried by the surrounding context, not the value.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    Poly(long c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const Rational& coeff, std::size_t deg) {
        Poly p;
        if (coeff.is_zero()) return p;
        p.c_.assign(deg + 1, Rational());
        p.c_[deg] = coeff;
        return p;
    }
    static Poly variable() { return monomial(Rational(1L), 1); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    /// Order of vanishing at 0; -1 for the zero polynomial.
    long ord() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<long>(i);
        return -1;
    }

    const Rational& coeff(std::size_t i) const {
        static const Rational zero;
        return i < c_.size() ? c_[i] : zero;
    }
    const Rational& leading() const {
        if (is_zero()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    void set_coeff(std::size_t i, const Rational& v) {
        if (i >= c_.size()) {
            if (v.is_zero()) return;
            c_.resize(i + 1, Rational());
        }
        c_[i] = v;
        trim();
    }

    Rational eval(const Rational& x) const {
        Rational acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        Poly r;
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = Rational(Int(static_cast<long>(i))) * c_[i];
        r.trim();
        return r;
    }

    /// Composition with z -> z + a (exact Taylor shift).
    Poly taylor_shift(const Rational& a) const {
        Poly r = *this;
        if (r.c_.size() <= 1 || a.is_zero()) return r;
        std::size_t n = r.c_.size();
        for (std::size_t k = 0; k + 1 < n; ++k)
            for (std::size_t j = n - 1; j-- > k;) r.c_[j] += a * r.c_[j + 1];
        r.trim();
        return r;
    }

    /// Multiplication by z^k.
    Poly mul_monomial(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.c_.assign(c_.size() + k, Rational());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    /// Exact division by z^k; requires ord() >= k.
    Poly div_monomial(std::size_t k) const {
        if (k == 0 || is_zero()) return *this;
        if (ord() < static_cast<long>(k)) throw std::domain_error("Poly: not divisible by z^k");
        Poly r;
        r.c_.assign(c_.begin() + static_cast<long>(k), c_.end());
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const Rational& s, const Poly& a) {
        Poly r;
        if (s.is_zero() || a.is_zero()) return r;
        r.c_.resize(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = s * a.c_[i];
        return r;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    std::vector<Rational> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

inline Poly pow(const Poly& base, unsigned long e) {
    Poly r(1L);
    Poly b = base;
    while (e > 0) {
        if (e & 1UL) r = r * b;
        b = b * b;
        e >>= 1UL;
    }
    return r;
}

/// Euclidean division over Q[z]: a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly q;
    Poly r = a;
    const Rational lead_inv = inverse(b.leading());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        const Rational factor = r.leading() * lead_inv;
        q.set_coeff(shift, factor);
        r -= Poly::monomial(factor, shift) * b;
    }
    return {q, r};
}

/// Positive content: the unique c > 0 with f = c * (primitive integer polynomial).
inline Rational content(const Poly& f) {
    if (f.is_zero()) return Rational();
    Int num_gcd(0L);
    Int den_lcm(1L);
    for (const auto& c : f.coeffs()) {
        if (c.is_zero()) continue;
        num_gcd = gcd(num_gcd, c.num());
        den_lcm = lcm(den_lcm, c.den());
    }
    return Rational(num_gcd, den_lcm);
}

/// f / content(f): primitive integer coefficients, sign of f preserved.
inline Poly primitive_part(const Poly& f) {
    if (f.is_zero()) return f;
    return inverse(content(f)) * f;
}

/// Monic gcd over Q[z]; gcd(0, 0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        if (!r.is_zero()) r = primitive_part(r);  // keeps coefficient growth flat
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return inverse(x.leading()) * x;
}

namespace detail {

inline std::vector<Int> divisors_of(const Int& n) {
    std::vector<Int> divs{Int(1L)};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t sz = divs.size();
        Int pk(1L);
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace detail

/// All rational roots of f with multiplicity (rational-root theorem on the
/// primitive integer form, exact synthetic division). The flag is true iff
/// the multiplicities sum to deg f, i.e. f splits over Q.
inline std::pair<std::vector<Rational>, bool> rational_roots(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    const long total_deg = f.degree();
    std::vector<Rational> roots;

    Poly g = primitive_part(f);
    // roots at 0
    const long e0 = g.ord();
    for (long i = 0; i < e0; ++i) roots.push_back(Rational());
    if (e0 > 0) g = g.div_monomial(static_cast<std::size_t>(e0));

    if (g.degree() >= 1) {
        const std::vector<Int> us = detail::divisors_of(g.coeff(0).num());
        const std::vector<Int> vs = detail::divisors_of(g.leading().num());
        for (const auto& u : us) {
            for (const auto& v : vs) {
                if (!gcd(u, v).is_one()) continue;  // candidates in lowest terms only
                for (int s : {1, -1}) {
                    Rational r(s == 1 ? u : -u, v);
                    while (g.degree() >= 1 && g.eval(r).is_zero()) {
                        roots.push_back(r);
                        auto [q, rem] = divmod(g, Poly(std::vector<Rational>{-r, Rational(1L)}));
                        g = std::move(q);
                    }
                }
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    return {roots, static_cast<long>(roots.size()) == total_deg};
}

}  // namespace holoq
