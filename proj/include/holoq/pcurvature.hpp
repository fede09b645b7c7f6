#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holoq/diffop.hpp"
#include "holoq/fp.hpp"
#include "holoq/matrix.hpp"
#include "holoq/parallel.hpp"
#include "holoq/primes.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Companion system of L reduced mod p, in the standard gauge
/// X' = G(z) X with X = (y, y', ..., y^(mu-1)): G = numerators / den.
struct ModPSystem {
    unsigned long p = 0;
    std::size_t size = 0;
    Matrix<PolyFp> numerators;
    PolyFp den;
};

namespace detail {

inline PolyFp reduce_poly_mod(const Poly& f, unsigned long p, const Int& den_lcm) {
    std::vector<std::uint64_t> c;
    const Int pz(static_cast<long>(p));
    for (long i = 0; i <= f.degree(); ++i) {
        const Rational& q = f.coeff(static_cast<std::size_t>(i));
        // q * den_lcm is an integer by construction
        const Int scaled = divexact(q.num() * den_lcm, q.den());
        Int r = scaled % pz;
        if (r.sign() < 0) r += pz;
        c.push_back(r.to_ulong());
    }
    return PolyFp(p, std::move(c));
}

}  // namespace detail

/// Reduction of L mod p. Bad primes (dividing the cleared leading
/// coefficient's content or the coefficient denominators) are rejected.
inline ModPSystem reduce_system(const DiffOp& L, unsigned long p) {
    if (!is_prime(p)) throw std::domain_error("reduce_system: p must be prime");
    const std::size_t mu = L.order();

    Int den_lcm(1L);
    for (const auto& b : L.coeffs)
        for (const auto& c : b.coeffs()) den_lcm = lcm(den_lcm, c.den());
    if (divisible(den_lcm, Int(static_cast<long>(p))))
        throw std::domain_error("reduce_system: bad prime " + std::to_string(p) +
                                " divides the denominator content of the coefficients");

    const PolyFp d = detail::reduce_poly_mod(L.leading(), p, den_lcm);
    if (d.is_zero())
        throw std::domain_error("reduce_system: bad prime " + std::to_string(p) +
                                " divides the content of the leading coefficient");

    Matrix<PolyFp> num(mu, mu, PolyFp(p));
    for (std::size_t i = 0; i + 1 < mu; ++i) num.at(i, i + 1) = d;
    for (std::size_t j = 0; j < mu; ++j) {
        const PolyFp bj = detail::reduce_poly_mod(L.coeffs[j], p, den_lcm);
        num.at(mu - 1, j) = num.at(mu - 1, j) - bj;
    }
    return ModPSystem{p, mu, std::move(num), d};
}

/// G_p as numerators over a power of the system denominator.
struct PCurvature {
    Matrix<PolyFp> num;
    PolyFp den_base;
    unsigned long den_power = 0;
};

/// Naive O(p) iteration G_1 = G, G_{k+1} = G_k' + G_k G, with the common
/// d-power denominator divided out whenever possible. Numerator degrees are
/// checked against the linear growth bound at every step.
inline PCurvature p_curvature(const ModPSystem& m) {
    const unsigned long p = m.p;
    const std::size_t mu = m.size;
    const PolyFp& d = m.den;

    Matrix<PolyFp> num = m.numerators;
    unsigned long e = 1;
    const PolyFp dprime = d.derivative();

    long base_deg = 0;
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) base_deg = std::max(base_deg, num.at(i, j).degree());
    const long step_growth = std::max<long>(d.degree() - 1, base_deg);

    for (unsigned long k = 1; k < p; ++k) {
        Matrix<PolyFp> next(mu, mu, PolyFp(p));
        const PolyFp e_dprime = dprime.scaled(e % p);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                PolyFp acc = num.at(i, j).derivative() * d - e_dprime * num.at(i, j);
                for (std::size_t t = 0; t < mu; ++t)
                    acc = acc + num.at(i, t) * m.numerators.at(t, j);
                next.at(i, j) = std::move(acc);
            }
        num = std::move(next);
        ++e;

        long max_deg = 0;
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) max_deg = std::max(max_deg, num.at(i, j).degree());
        if (max_deg > base_deg + static_cast<long>(k) * step_growth)
            throw std::logic_error("p_curvature: numerator degree exceeded the linear growth bound");

        while (e > 0) {
            bool all_div = true;
            for (std::size_t i = 0; i < mu && all_div; ++i)
                for (std::size_t j = 0; j < mu && all_div; ++j)
                    all_div = divides(d, num.at(i, j));
            if (!all_div) break;
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t j = 0; j < mu; ++j) num.at(i, j) = divexact(num.at(i, j), d);
            --e;
        }
    }
    return PCurvature{std::move(num), d, e};
}

/// Characteristic polynomial of a matrix over F_p[z] by the division-free
/// Samuelson-Berkowitz recursion. Returns monic coefficients c_0..c_n with
/// det(Y I - A) = sum_i c_i Y^(n-i), c_0 = 1.
inline std::vector<PolyFp> berkowitz_charpoly(const Matrix<PolyFp>& a, unsigned long p) {
    const std::size_t n = a.rows();
    const PolyFp one = PolyFp::constant(p, 1);
    std::vector<PolyFp> v{one};
    for (std::size_t k = 1; k <= n; ++k) {
        // Toeplitz column for the k-th principal minor
        std::vector<PolyFp> q(k + 1, PolyFp(p));
        q[0] = one;
        q[1] = PolyFp(p) - a.at(k - 1, k - 1);
        if (k >= 2) {
            std::vector<PolyFp> s(k - 1);
            for (std::size_t i = 0; i + 1 < k; ++i) s[i] = a.at(i, k - 1);
            for (std::size_t step = 2; step <= k; ++step) {
                PolyFp dot(p);
                for (std::size_t i = 0; i + 1 < k; ++i) dot = dot + a.at(k - 1, i) * s[i];
                q[step] = PolyFp(p) - dot;
                if (step == k) break;
                std::vector<PolyFp> s_next(k - 1, PolyFp(p));
                for (std::size_t i = 0; i + 1 < k; ++i) {
                    PolyFp acc(p);
                    for (std::size_t j = 0; j + 1 < k; ++j) acc = acc + a.at(i, j) * s[j];
                    s_next[i] = std::move(acc);
                }
                s = std::move(s_next);
            }
        }
        std::vector<PolyFp> v_next(k + 1, PolyFp(p));
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = 0; j < v.size() && j <= i; ++j)
                v_next[i] = v_next[i] + q[i - j] * v[j];
        v = std::move(v_next);
    }
    return v;
}

struct PCurvatureReport {
    unsigned long p = 0;
    enum class Status { nilpotent, non_nilpotent, skipped } status = Status::skipped;
    long charpoly_nonzero_terms = -1;
    std::string reason;
};

/// Per-prime nilpotence verdicts over a window; bad primes are recorded as
/// skipped with the obstruction. The verdict reads the characteristic
/// polynomial of G_p: nilpotent iff it is X^mu over F_p(z). Primes are
/// processed independently (up to `jobs` at a time), reported in order.
inline std::vector<PCurvatureReport> nilpotence_report(const DiffOp& L, const PrimeWindow& window,
                                                       unsigned jobs = 1) {
    const std::vector<unsigned long> primes = primes_in(window);
    std::vector<PCurvatureReport> reports(primes.size());
    parallel_for_indices(primes.size(), jobs, [&](std::size_t idx) {
        const unsigned long p = primes[idx];
        PCurvatureReport rep;
        rep.p = p;
        try {
            const ModPSystem m = reduce_system(L, p);
            const PCurvature pc = p_curvature(m);
            // charpoly(G_p) = X^mu iff charpoly of the numerator matrix is Y^mu
            const std::vector<PolyFp> cp = berkowitz_charpoly(pc.num, p);
            long nonzero = 0;
            for (std::size_t i = 1; i < cp.size(); ++i)
                if (!cp[i].is_zero()) ++nonzero;
            rep.charpoly_nonzero_terms = nonzero;
            rep.status = nonzero == 0 ? PCurvatureReport::Status::nilpotent
                                      : PCurvatureReport::Status::non_nilpotent;
        } catch (const std::domain_error& e) {
            rep.status = PCurvatureReport::Status::skipped;
            rep.reason = e.what();
        }
        reports[idx] = std::move(rep);
    });
    return reports;
}

}  // namespace holoq
