#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holoq/diffop.hpp"
#include "holoq/poly.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Linear recurrence sum_d q_d(n) v_{n+d} = 0, valid for every integer
/// n >= n_start under the convention v_m = 0 for m < 0. The shifts d run
/// over a finite set with nonzero polynomials at both ends.
struct Recurrence {
    std::string variable = "n";
    std::map<long, Poly> q;
    long n_start = 0;

    long d_min() const { return q.begin()->first; }
    long d_max() const { return q.rbegin()->first; }
};

inline Recurrence make_recurrence(std::map<long, Poly> q, long n_start = 0, std::string variable = "n") {
    for (auto it = q.begin(); it != q.end();)
        it = it->second.is_zero() ? q.erase(it) : std::next(it);
    if (q.empty()) throw std::invalid_argument("Recurrence: no nonzero coefficients");
    return Recurrence{std::move(variable), std::move(q), n_start};
}

/// Initial values for unrolling: base values for indices the relation cannot
/// reach, patch values for indices where the leading coefficient vanishes.
struct InitialData {
    std::map<long, Rational> base;
    std::map<long, Rational> patch;

    const Rational* find(long idx) const {
        if (auto it = base.find(idx); it != base.end()) return &it->second;
        if (auto it = patch.find(idx); it != patch.end()) return &it->second;
        return nullptr;
    }
};

/// The recurrence satisfied by the Taylor coefficients of every solution of
/// L: with B_i = sum_j b_{i,j} z^j, the coefficient of z^n in L(sum v_m z^m)
/// is sum_d q_d(n) v_{n+d} with q_d(n) = sum_i b_{i,i-d} (n+d)(n+d-1)...(n+d-i+1).
inline Recurrence to_recurrence(const DiffOp& L) {
    std::map<long, Poly> q;
    for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
        const Poly& bi = L.coeffs[i];
        if (bi.is_zero()) continue;
        const Poly ff = falling_factorial(i);
        for (long j = 0; j <= bi.degree(); ++j) {
            const Rational& b = bi.coeff(static_cast<std::size_t>(j));
            if (b.is_zero()) continue;
            const long d = static_cast<long>(i) - j;
            q[d] += b * ff.taylor_shift(Rational(d));
        }
    }
    return make_recurrence(std::move(q), 0, "n");
}

/// Equivalent recurrence re-indexed so that the lowest shift is 0 (the
/// paper-style form sum_{j=0}^k q_j(n) V_{n+j} = 0).
inline Recurrence reindexed(const Recurrence& r) {
    const long dmin = r.d_min();
    if (dmin == 0) return r;
    std::map<long, Poly> q;
    for (const auto& [d, p] : r.q) q[d - dmin] = p.taylor_shift(Rational(-dmin));
    return Recurrence{r.variable, std::move(q), r.n_start + dmin};
}

/// Canonical comparable form: lowest shift 0, common polynomial factor and
/// rational content divided out, leading coefficient of the highest shift
/// positive.
inline Recurrence normalized(const Recurrence& r) {
    Recurrence out = reindexed(r);
    Poly g;
    for (const auto& [d, p] : out.q) g = gcd(g, p);
    if (g.degree() > 0)
        for (auto& [d, p] : out.q) p = divmod(p, g).first;

    Int num_gcd(0L);
    Int den_lcm(1L);
    for (const auto& [d, p] : out.q) {
        const Rational c = content(p);
        num_gcd = gcd(num_gcd, c.num());
        den_lcm = lcm(den_lcm, c.den());
    }
    Rational scale = inverse(Rational(num_gcd, den_lcm));
    if (out.q.rbegin()->second.leading().sign() < 0) scale = -scale;
    for (auto& [d, p] : out.q) p = scale * p;
    return out;
}

/// Equality of the defining relation modulo scaling (the coefficient
/// polynomials only; the validity range is not part of the relation).
inline bool equal_normalized(const Recurrence& a, const Recurrence& b) {
    return normalized(a).q == normalized(b).q;
}

/// Inverse of to_recurrence: the differential operator whose Taylor-coefficient
/// relation is r. When every q_d is constant the relation is first multiplied
/// by (n+1), which does not change its solution set on n >= 0.
inline DiffOp to_operator(const Recurrence& r) {
    long max_deg = 0;
    for (const auto& [d, p] : r.q) max_deg = std::max(max_deg, p.degree());

    std::map<long, Poly> q(r.q.begin(), r.q.end());
    if (max_deg == 0) {
        const Poly n_plus_1(std::vector<Rational>{Rational(1L), Rational(1L)});
        for (auto& [d, p] : q) p = p * n_plus_1;
    }

    const long dmax = q.rbegin()->first;
    ThetaForm t;
    for (const auto& [d, p] : q) t.terms[dmax - d] += p.taylor_shift(Rational(-d));
    for (auto it = t.terms.begin(); it != t.terms.end();)
        it = it->second.is_zero() ? t.terms.erase(it) : std::next(it);
    return canonical(from_theta_form(t, "z"));
}

namespace detail {

/// Integer-cleared coefficient row: all q_d scaled by one common factor.
struct ClearedRecurrence {
    std::vector<long> shifts;
    std::vector<std::vector<Int>> coeffs;  // per shift, dense in n

    Int eval(std::size_t which, const Int& n) const {
        const auto& c = coeffs[which];
        Int acc(0L);
        for (std::size_t i = c.size(); i-- > 0;) {
            acc *= n;
            acc += c[i];
        }
        return acc;
    }
};

inline ClearedRecurrence clear_content(const Recurrence& r) {
    Int den_lcm(1L);
    for (const auto& [d, p] : r.q)
        for (const auto& c : p.coeffs()) den_lcm = lcm(den_lcm, c.den());
    ClearedRecurrence out;
    for (const auto& [d, p] : r.q) {
        out.shifts.push_back(d);
        std::vector<Int> row;
        for (long i = 0; i <= p.degree(); ++i) {
            const Rational& c = p.coeff(static_cast<std::size_t>(i));
            row.push_back(divexact(c.num() * den_lcm, c.den()));
        }
        out.coeffs.push_back(std::move(row));
    }
    return out;
}

}  // namespace detail

/// Exact forward unrolling of v_0..v_N. Base values must cover every index
/// the relation cannot derive; patch values must cover every index whose
/// deriving row has a vanishing leading coefficient.
inline std::vector<Rational> unroll(const Recurrence& r, const InitialData& init, long N) {
    if (N < 0) throw std::invalid_argument("unroll: N must be >= 0");
    const long dmax = r.d_max();
    const detail::ClearedRecurrence cleared = detail::clear_content(r);
    const std::size_t lead_pos = cleared.shifts.size() - 1;

    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(N) + 1);
    auto value_at = [&](long idx) -> Rational {
        if (idx < 0) return Rational();
        return v[static_cast<std::size_t>(idx)];
    };

    // indices below n_start + dmax are unreachable by the relation
    std::vector<long> missing_base;
    for (long t = 0; t <= std::min(N, r.n_start + dmax - 1); ++t)
        if (!init.find(t)) missing_base.push_back(t);
    if (!missing_base.empty()) {
        std::ostringstream os;
        os << "unroll: insufficient initial data; missing base indices";
        for (long t : missing_base) os << ' ' << t;
        throw std::domain_error(os.str());
    }

    for (long t = 0; t <= N; ++t) {
        const long n = t - dmax;
        const Rational* given = init.find(t);
        if (n < r.n_start) {
            v.push_back(*given);
            continue;
        }

        const Int n_int(n);
        const Int lead = cleared.eval(lead_pos, n_int);
        Rational partial;  // sum over the non-leading shifts
        for (std::size_t w = 0; w < lead_pos; ++w)
            partial += Rational(cleared.eval(w, n_int)) * value_at(n + cleared.shifts[w]);

        if (lead.is_zero()) {
            // the row degenerates into a constraint on already-known values
            if (!partial.is_zero()) {
                std::ostringstream os;
                os << "unroll: relation inconsistent at n = " << n << " (singular leading coefficient)";
                throw std::domain_error(os.str());
            }
            if (!given) {
                std::ostringstream os;
                os << "unroll: singular index without patch value: index " << t;
                throw std::domain_error(os.str());
            }
            v.push_back(*given);
            continue;
        }

        const Rational derived = -partial / Rational(lead);
        if (given && *given != derived) {
            std::ostringstream os;
            os << "unroll: initial data inconsistent at index " << t << " (sequence is not a solution)";
            throw std::domain_error(os.str());
        }
        v.push_back(derived);
    }
    return v;
}

/// The polynomial image L(sum coeffs_n z^n), computed exactly from the
/// coefficient rows that the supplied prefix determines. Enough terms are
/// required to pin down the image of a genuine recurrence solution.
inline Poly residual(const DiffOp& L, const std::vector<Rational>& coeffs) {
    const Recurrence r = to_recurrence(L);
    const long dmax = r.d_max();
    long deg_bound = 0;
    for (const auto& b : L.coeffs) deg_bound = std::max(deg_bound, b.degree());
    const long needed = deg_bound + static_cast<long>(L.order()) + dmax + 1;
    if (static_cast<long>(coeffs.size()) < needed) {
        std::ostringstream os;
        os << "residual: insufficient coefficients, need at least " << needed
           << " terms, got " << coeffs.size();
        throw std::domain_error(os.str());
    }

    const detail::ClearedRecurrence cleared = detail::clear_content(r);
    Int den_lcm(1L);
    for (const auto& [d, p] : r.q)
        for (const auto& c : p.coeffs()) den_lcm = lcm(den_lcm, c.den());
    const Rational unscale(Int(1L), den_lcm);

    const long m_max = static_cast<long>(coeffs.size()) - 1 - dmax;
    Poly p;
    for (long m = 0; m <= m_max; ++m) {
        const Int m_int(m);
        Rational row;
        for (std::size_t w = 0; w < cleared.shifts.size(); ++w) {
            const long idx = m + cleared.shifts[w];
            if (idx < 0 || idx >= static_cast<long>(coeffs.size())) continue;
            row += Rational(cleared.eval(w, m_int)) * coeffs[static_cast<std::size_t>(idx)];
        }
        p.set_coeff(static_cast<std::size_t>(m), row * unscale);
    }
    return p;
}

}  // namespace holoq
