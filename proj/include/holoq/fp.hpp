#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace holoq {
namespace fp {

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1ULL) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1ULL;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("invmod: zero is not invertible");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::domain_error("invmod: argument shares a factor with the modulus");
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p)) : static_cast<std::uint64_t>(t);
}

}  // namespace fp

/// Dense polynomial over F_p, trailing coefficient nonzero. The modulus rides
/// with the value; binary operations require matching moduli.
class PolyFp {
public:
    PolyFp() : p_(0) {}
    explicit PolyFp(std::uint64_t p) : p_(p) {}
    PolyFp(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static PolyFp constant(std::uint64_t p, std::uint64_t v) {
        PolyFp f(p);
        if (v % p != 0) f.c_.push_back(v % p);
        return f;
    }

    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    PolyFp derivative() const {
        PolyFp r(p_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = fp::mulmod(c_[i], i % p_, p_);
        r.trim();
        return r;
    }

    std::uint64_t eval(std::uint64_t x) const {
        std::uint64_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = fp::addmod(fp::mulmod(acc, x, p_), c_[i], p_);
        return acc;
    }

    friend PolyFp operator+(const PolyFp& a, const PolyFp& b) {
        const std::uint64_t p = merged_modulus(a, b);
        PolyFp r(p);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = fp::addmod(r.c_[i], b.c_[i], p);
        r.trim();
        return r;
    }
    friend PolyFp operator-(const PolyFp& a, const PolyFp& b) {
        const std::uint64_t p = merged_modulus(a, b);
        PolyFp r(p);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = fp::submod(r.c_[i], b.c_[i], p);
        r.trim();
        return r;
    }
    friend PolyFp operator*(const PolyFp& a, const PolyFp& b) {
        const std::uint64_t p = merged_modulus(a, b);
        PolyFp r(p);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            unsigned __int128 carry;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                carry = static_cast<unsigned __int128>(a.c_[i]) * b.c_[j] + r.c_[i + j];
                r.c_[i + j] = static_cast<std::uint64_t>(carry % p);
            }
        }
        r.trim();
        return r;
    }

    PolyFp scaled(std::uint64_t s) const {
        PolyFp r(p_);
        s %= p_;
        if (s == 0) return r;
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = fp::mulmod(c_[i], s, p_);
        return r;
    }

    friend bool operator==(const PolyFp& a, const PolyFp& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const PolyFp& a, const PolyFp& b) { return !(a == b); }

private:
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    // a default-constructed value acts as the zero of any modulus
    static std::uint64_t merged_modulus(const PolyFp& a, const PolyFp& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0) return a.p_;
        if (a.p_ != b.p_) throw std::invalid_argument("PolyFp: mixed moduli");
        return a.p_;
    }
};

/// Euclidean division over F_p[z].
inline std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
    if (b.is_zero()) throw std::domain_error("PolyFp: division by zero polynomial");
    const std::uint64_t p = b.modulus();
    const std::uint64_t lead_inv = fp::invmod(b.leading(), p);
    std::vector<std::uint64_t> rem(a.coeffs());
    std::vector<std::uint64_t> quo;
    const long db = b.degree();
    if (a.degree() >= db) quo.assign(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    for (long d = a.degree(); d >= db; --d) {
        const std::uint64_t top = rem[static_cast<std::size_t>(d)];
        if (top == 0) continue;
        const std::uint64_t f = fp::mulmod(top, lead_inv, p);
        quo[static_cast<std::size_t>(d - db)] = f;
        for (long i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(d - db + i)] =
                fp::submod(rem[static_cast<std::size_t>(d - db + i)],
                           fp::mulmod(f, b.coeff(static_cast<std::size_t>(i)), p), p);
    }
    return {PolyFp(p, std::move(quo)), PolyFp(p, std::move(rem))};
}

inline PolyFp divexact(const PolyFp& a, const PolyFp& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("PolyFp: inexact division");
    return q;
}

/// Monic gcd over F_p[z]; gcd(0, 0) = 0.
inline PolyFp gcd(const PolyFp& a, const PolyFp& b) {
    PolyFp x = a, y = b;
    while (!y.is_zero()) {
        PolyFp r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.scaled(fp::invmod(x.leading(), x.modulus()));
}

inline bool divides(const PolyFp& b, const PolyFp& a) {
    if (a.is_zero()) return true;
    return divmod(a, b).second.is_zero();
}

}  // namespace holoq
