#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "holoq/rational.hpp"

namespace holoq {

/// Closed prime interval [p_min, p_max]; both bounds >= 2.
struct PrimeWindow {
    unsigned long p_min = 2;
    unsigned long p_max = 2;

    PrimeWindow() = default;
    PrimeWindow(unsigned long lo, unsigned long hi) : p_min(lo), p_max(hi) {
        if (lo < 2 || hi < lo) throw std::invalid_argument("PrimeWindow: need 2 <= p_min <= p_max");
    }
};

/// Deterministic sieve of Eratosthenes.
inline std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<unsigned long> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (unsigned long p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (unsigned long m = p * p; m <= n; m += p) comp[m] = true;
    }
    return out;
}

inline std::vector<unsigned long> primes_in(const PrimeWindow& w) {
    std::vector<unsigned long> out;
    for (unsigned long p : primes_up_to(w.p_max))
        if (p >= w.p_min) out.push_back(p);
    return out;
}

/// Trial division; exact for any 64-bit input.
inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (unsigned long d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Largest e with p^e <= n (0 when n < p).
inline long floor_log(unsigned long n, unsigned long p) {
    long e = 0;
    unsigned long pk = p;
    while (pk <= n) {
        ++e;
        if (pk > n / p) break;
        pk *= p;
    }
    return e;
}

/// lcm{1, 2, ..., n} as prod_{p <= n} p^floor(log_p n). D_0 = D_1 = 1.
inline Int Dn(unsigned long n) {
    Int d(1L);
    for (unsigned long p : primes_up_to(n)) d *= pow(Int(p), static_cast<unsigned long>(floor_log(n, p)));
    return d;
}

/// p-adic valuation of a nonzero integer.
inline long vp(const Int& x, unsigned long p) {
    if (x.is_zero()) throw std::domain_error("vp: valuation of zero is +infinity");
    if (p < 2 || !is_prime(p)) throw std::domain_error("vp: modulus must be prime");
    Int r;
    Int pz(p);
    return static_cast<long>(mpz_remove(r.raw(), x.raw(), pz.raw()));
}

/// p-adic valuation of a nonzero rational: vp(num) - vp(den).
inline long vp(const Rational& x, unsigned long p) {
    if (x.is_zero()) throw std::domain_error("vp: valuation of zero is +infinity");
    if (p < 2 || !is_prime(p)) throw std::domain_error("vp: modulus must be prime");
    Int r;
    Int pz(p);
    long vn = static_cast<long>(mpz_remove(r.raw(), x.num().raw(), pz.raw()));
    long vd = static_cast<long>(mpz_remove(r.raw(), x.den().raw(), pz.raw()));
    return vn - vd;
}

/// Full factorization by trial division (sieve primes first, then odd
/// candidates). Intended for desk-scale inputs; runs to completion exactly.
inline std::map<Int, unsigned long> factorize(const Int& n_in) {
    if (n_in.is_zero()) throw std::domain_error("factorize: zero input");
    std::map<Int, unsigned long> fac;
    Int n = abs(n_in);
    if (n.is_one()) return fac;

    auto strip = [&](const Int& p) {
        unsigned long e = 0;
        while (divisible(n, p)) {
            n = divexact(n, p);
            ++e;
        }
        if (e > 0) fac[p] = e;
    };

    strip(Int(2L));
    Int d(3L);
    while (!n.is_one()) {
        // d exceeds sqrt(n): remainder is prime
        if (d * d > n) {
            fac[n] += 1;
            break;
        }
        strip(d);
        d += Int(2L);
    }
    return fac;
}

/// Least positive integer delta with delta * x integral for every x supplied.
inline Int lcm_denominators(const std::vector<Rational>& xs) {
    Int d(1L);
    for (const auto& x : xs) d = lcm(d, x.den());
    return d;
}

}  // namespace holoq
