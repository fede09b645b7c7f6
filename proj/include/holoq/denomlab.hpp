#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "holoq/primes.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Range-stamped record of the divisibility claim
/// delta_n | D_{bn+b0}^s * C^(n+1) for all n <= N.
struct DenomCertificate {
    unsigned long s = 0;
    unsigned long b = 1;
    unsigned long b0 = 0;
    Int C = Int(1L);
    long N = 0;
    bool pass = false;
    struct Witness {
        long n = 0;
        Int p;
        long deficit = 0;  // how far v_p(a_n) + s v_p(D) + (n+1) v_p(C) falls below 0
    };
    std::optional<Witness> witness;
};

/// delta_n = least positive integer clearing the denominators of a_0..a_n.
inline std::vector<Int> delta_sequence(const std::vector<Rational>& coeffs) {
    std::vector<Int> out;
    out.reserve(coeffs.size());
    Int d(1L);
    for (const auto& a : coeffs) {
        d = lcm(d, a.den());
        out.push_back(d);
    }
    return out;
}

namespace detail {

/// Primes dividing any denominator among a_0..a_N, by trial division of the
/// running lcm, plus the prime factors of C.
inline std::vector<unsigned long> certify_candidate_primes(const std::vector<Rational>& coeffs,
                                                           long N, const Int& C) {
    Int delta(1L);
    for (long n = 0; n <= N; ++n) delta = lcm(delta, coeffs[static_cast<std::size_t>(n)].den());
    delta *= abs(C);
    std::vector<unsigned long> out;
    for (const auto& [p, e] : factorize(delta))
        out.push_back(p.to_ulong());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Exact per-prime check of D_{bn+b0}^s * C^(n+1) * a_n in Z for every n <= N.
/// On failure the witness is the lexicographically smallest (n, p).
inline DenomCertificate certify(const std::vector<Rational>& coeffs, unsigned long s,
                                unsigned long b, unsigned long b0, const Int& C, long N) {
    if (b < 1) throw std::invalid_argument("certify: b must be >= 1");
    if (C.sign() <= 0) throw std::invalid_argument("certify: C must be positive");
    if (static_cast<long>(coeffs.size()) < N + 1)
        throw std::invalid_argument("certify: fewer than N+1 coefficients supplied");

    DenomCertificate cert;
    cert.s = s;
    cert.b = b;
    cert.b0 = b0;
    cert.C = C;
    cert.N = N;
    cert.pass = true;

    const std::vector<unsigned long> primes = detail::certify_candidate_primes(coeffs, N, C);
    for (long n = 0; n <= N && cert.pass; ++n) {
        const Rational& a = coeffs[static_cast<std::size_t>(n)];
        if (a.is_zero() || a.is_integer()) continue;
        const unsigned long dn_arg = b * static_cast<unsigned long>(n) + b0;
        for (unsigned long p : primes) {
            if (!divisible(a.den(), Int(static_cast<long>(p)))) continue;
            const long margin = vp(a, p) + static_cast<long>(s) * floor_log(dn_arg, p) +
                                (n + 1) * (divisible(C, Int(static_cast<long>(p))) ? vp(C, p) : 0);
            if (margin < 0) {
                cert.pass = false;
                cert.witness = DenomCertificate::Witness{n, Int(static_cast<long>(p)), -margin};
                break;
            }
        }
    }
    return cert;
}

/// Least s <= cap with v_p(a_n) + s v_p(D_{bn+b0}) >= 0 for every window prime
/// and every n <= N. nullopt when no such s exists up to the cap.
inline std::optional<unsigned long> infer_s(const std::vector<Rational>& coeffs, unsigned long b,
                                            unsigned long b0, long N, const PrimeWindow& window,
                                            unsigned long cap = 8) {
    if (static_cast<long>(coeffs.size()) < N + 1)
        throw std::invalid_argument("infer_s: fewer than N+1 coefficients supplied");
    unsigned long s = 0;
    for (unsigned long p : primes_in(window)) {
        for (long n = 0; n <= N; ++n) {
            const Rational& a = coeffs[static_cast<std::size_t>(n)];
            if (a.is_zero()) continue;
            if (!divisible(a.den(), Int(static_cast<long>(p)))) continue;
            const long v = vp(a, p);
            if (v >= 0) continue;
            const long dv = floor_log(b * static_cast<unsigned long>(n) + b0, p);
            if (dv == 0) return std::nullopt;  // no power of D can absorb this prime
            const unsigned long needed = static_cast<unsigned long>((-v + dv - 1) / dv);
            s = std::max(s, needed);
            if (s > cap) return std::nullopt;
        }
    }
    return s;
}

/// Smallest product over the supplied primes making certify pass on the range:
/// C = prod p^e_p with e_p = max(0, max_n ceil((-v_p(a_n) - s v_p(D_{bn+b0}))/(n+1))).
inline Int infer_C(const std::vector<Rational>& coeffs, unsigned long s, unsigned long b,
                   unsigned long b0, long N, const std::vector<unsigned long>& small_primes) {
    if (static_cast<long>(coeffs.size()) < N + 1)
        throw std::invalid_argument("infer_C: fewer than N+1 coefficients supplied");
    Int C(1L);
    for (unsigned long p : small_primes) {
        long e = 0;
        for (long n = 0; n <= N; ++n) {
            const Rational& a = coeffs[static_cast<std::size_t>(n)];
            if (a.is_zero()) continue;
            if (!divisible(a.den(), Int(static_cast<long>(p)))) continue;
            const long need = -vp(a, p) - static_cast<long>(s) * floor_log(b * static_cast<unsigned long>(n) + b0, p);
            if (need <= 0) continue;
            e = std::max(e, (need + n) / (n + 1));  // ceil(need / (n+1))
        }
        if (e > 0) C *= pow(Int(static_cast<long>(p)), static_cast<unsigned long>(e));
    }
    return C;
}

/// Per-index p-adic valuations; zero coefficients carry no value (infinite).
struct ValuationProfile {
    unsigned long p = 0;
    std::vector<std::optional<long>> values;
};

inline ValuationProfile valuation_profile(const std::vector<Rational>& coeffs, unsigned long p,
                                          long N) {
    if (!is_prime(p)) throw std::domain_error("valuation_profile: p must be prime");
    if (static_cast<long>(coeffs.size()) < N + 1)
        throw std::invalid_argument("valuation_profile: fewer than N+1 coefficients supplied");
    ValuationProfile prof;
    prof.p = p;
    for (long n = 0; n <= N; ++n) {
        const Rational& a = coeffs[static_cast<std::size_t>(n)];
        if (a.is_zero())
            prof.values.push_back(std::nullopt);
        else
            prof.values.push_back(vp(a, p));
    }
    return prof;
}

}  // namespace holoq
