#pragma once

#include <gmp.h>

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace holoq {

/// Arbitrary-precision signed integer, value semantics over GMP's mpz_t.
class Int {
public:
    Int() { mpz_init(z_); }
    Int(long v) { mpz_init_set_si(z_, v); }
    Int(unsigned long v) { mpz_init_set_ui(z_, v); }
    Int(int v) : Int(static_cast<long>(v)) {}

    explicit Int(const std::string& s) {
        if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("Int: malformed integer literal '" + s + "'");
        }
    }

    Int(const Int& o) { mpz_init_set(z_, o.z_); }
    Int(Int&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Int& operator=(const Int& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Int() { mpz_clear(z_); }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    bool odd() const { return mpz_odd_p(z_) != 0; }

    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("Int: value does not fit in long");
        return mpz_get_si(z_);
    }
    unsigned long to_ulong() const {
        if (!mpz_fits_ulong_p(z_)) throw std::overflow_error("Int: value does not fit in unsigned long");
        return mpz_get_ui(z_);
    }

    std::string str() const {
        char* p = mpz_get_str(nullptr, 10, z_);
        std::string s(p);
        std::free(p);
        return s;
    }

    Int& operator+=(const Int& b) { mpz_add(z_, z_, b.z_); return *this; }
    Int& operator-=(const Int& b) { mpz_sub(z_, z_, b.z_); return *this; }
    Int& operator*=(const Int& b) { mpz_mul(z_, z_, b.z_); return *this; }

    friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.z_, a.z_, b.z_); return r; }
    friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.z_, a.z_, b.z_); return r; }
    friend Int operator-(const Int& a) { Int r; mpz_neg(r.z_, a.z_); return r; }
    friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.z_, a.z_, b.z_); return r; }
    friend Int operator%(const Int& a, const Int& b) { Int r; mpz_tdiv_r(r.z_, a.z_, b.z_); return r; }

    /// Quotient a/b when b exactly divides a.
    friend Int divexact(const Int& a, const Int& b) {
        Int r;
        mpz_divexact(r.z_, a.z_, b.z_);
        return r;
    }

    friend Int abs(const Int& a) { Int r; mpz_abs(r.z_, a.z_); return r; }
    friend Int gcd(const Int& a, const Int& b) { Int r; mpz_gcd(r.z_, a.z_, b.z_); return r; }
    friend Int lcm(const Int& a, const Int& b) { Int r; mpz_lcm(r.z_, a.z_, b.z_); return r; }
    friend Int pow(const Int& a, unsigned long e) { Int r; mpz_pow_ui(r.z_, a.z_, e); return r; }
    friend bool divisible(const Int& a, const Int& b) { return mpz_divisible_p(a.z_, b.z_) != 0; }

    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Int& a) { return os << a.str(); }

private:
    mpz_t z_;
};

/// Exact rational number, always stored reduced with positive denominator.
/// Zero is canonically 0/1.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rational(int v) : Rational(static_cast<long>(v)) {}
    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        mpq_init(q_);
        mpq_set_si(q_, num, 1);
        mpq_t d;
        mpq_init(d);
        mpq_set_si(d, den, 1);
        mpq_div(q_, q_, d);
        mpq_clear(d);
    }
    Rational(const Int& num, const Int& den) {
        if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    explicit Rational(const Int& num) {
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
    }

    /// Parses "p/q" or "p". Sign belongs to the numerator.
    explicit Rational(const std::string& s) {
        mpq_init(q_);
        if (s.empty() || mpq_set_str(q_, s.c_str(), 10) != 0 || mpz_sgn(mpq_denref(q_)) == 0) {
            mpq_clear(q_);
            throw std::invalid_argument("Rational: malformed rational literal '" + s + "'");
        }
        mpq_canonicalize(q_);
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    mpq_srcptr raw() const { return q_; }

    Int num() const {
        Int r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    Int den() const {
        Int r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    std::string str() const {
        char* p = mpq_get_str(nullptr, 10, q_);
        std::string s(p);
        std::free(p);
        return s;
    }

    Rational& operator+=(const Rational& b) { mpq_add(q_, q_, b.q_); return *this; }
    Rational& operator-=(const Rational& b) { mpq_sub(q_, q_, b.q_); return *this; }
    Rational& operator*=(const Rational& b) { mpq_mul(q_, q_, b.q_); return *this; }
    Rational& operator/=(const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        mpq_div(q_, q_, b.q_);
        return *this;
    }

    friend Rational operator+(const Rational& a, const Rational& b) { Rational r; mpq_add(r.q_, a.q_, b.q_); return r; }
    friend Rational operator-(const Rational& a, const Rational& b) { Rational r; mpq_sub(r.q_, a.q_, b.q_); return r; }
    friend Rational operator-(const Rational& a) { Rational r; mpq_neg(r.q_, a.q_); return r; }
    friend Rational operator*(const Rational& a, const Rational& b) { Rational r; mpq_mul(r.q_, a.q_, b.q_); return r; }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }

    friend Rational abs(const Rational& a) { Rational r; mpq_abs(r.q_, a.q_); return r; }
    friend Rational inverse(const Rational& a) {
        if (a.is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        mpq_inv(r.q_, a.q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

private:
    mpq_t q_;
};

}  // namespace holoq
