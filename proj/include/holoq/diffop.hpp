#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holoq/poly.hpp"
#include "holoq/primes.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Linear differential operator B_mu(z) (d/dz)^mu + ... + B_0(z) with
/// polynomial coefficients over Q. coeffs[i] = B_i; B_mu != 0, mu >= 1.
struct DiffOp {
    std::string variable = "z";
    std::vector<Poly> coeffs;

    std::size_t order() const { return coeffs.size() - 1; }
    const Poly& leading() const { return coeffs.back(); }
};

inline DiffOp make_diffop(std::vector<Poly> coeffs, std::string variable = "z") {
    if (coeffs.size() < 2) throw std::invalid_argument("DiffOp: order must be >= 1");
    if (coeffs.back().is_zero()) throw std::invalid_argument("DiffOp: leading coefficient must be nonzero");
    return DiffOp{std::move(variable), std::move(coeffs)};
}

/// z^mu * L written as sum_j z^j c_j(theta), theta = z d/dz.
/// Monomials stand to the left of the theta-polynomials.
struct ThetaForm {
    std::map<long, Poly> terms;  // j -> c_j(theta), c_j != 0
};

/// theta(theta-1)...(theta-i+1); the empty product is 1.
inline Poly falling_factorial(std::size_t i) {
    Poly r(1L);
    for (std::size_t k = 0; k < i; ++k)
        r *= Poly(std::vector<Rational>{Rational(-static_cast<long>(k)), Rational(1L)});
    return r;
}

/// Coefficients gamma_k with c = sum_k gamma_k * theta(theta-1)...(theta-k+1).
inline std::vector<Rational> falling_basis_coeffs(const Poly& c) {
    std::vector<Rational> gamma;
    Poly g = c;
    long k = 0;
    while (!g.is_zero()) {
        const Rational gk = g.eval(Rational(k));
        gamma.push_back(gk);
        Poly num = g - Poly(gk);
        if (num.is_zero()) break;
        g = divmod(num, Poly(std::vector<Rational>{Rational(-k), Rational(1L)})).first;
        ++k;
    }
    return gamma;
}

inline ThetaForm to_theta_form(const DiffOp& L) {
    const std::size_t mu = L.order();
    ThetaForm t;
    for (std::size_t i = 0; i <= mu; ++i) {
        const Poly& bi = L.coeffs[i];
        if (bi.is_zero()) continue;
        const Poly ff = falling_factorial(i);
        for (long j = 0; j <= bi.degree(); ++j) {
            const Rational& b = bi.coeff(static_cast<std::size_t>(j));
            if (b.is_zero()) continue;
            const long m = static_cast<long>(mu) - static_cast<long>(i) + j;
            t.terms[m] += b * ff;
        }
    }
    for (auto it = t.terms.begin(); it != t.terms.end();)
        it = it->second.is_zero() ? t.terms.erase(it) : std::next(it);
    return t;
}

inline DiffOp from_theta_form(const ThetaForm& t, std::string variable = "z") {
    std::vector<Poly> coeffs(1);
    for (const auto& [m, c] : t.terms) {
        if (m < 0) throw std::domain_error("from_theta_form: negative monomial exponent");
        const std::vector<Rational> gamma = falling_basis_coeffs(c);
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            if (gamma[k].is_zero()) continue;
            if (coeffs.size() <= k) coeffs.resize(k + 1);
            coeffs[k] += Poly::monomial(gamma[k], static_cast<std::size_t>(m) + k);
        }
    }
    while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.size() < 2 || coeffs.back().is_zero())
        throw std::domain_error("from_theta_form: result is not an operator of order >= 1");
    return DiffOp{std::move(variable), std::move(coeffs)};
}

/// Canonical representative of L modulo left multiplication by c * z^e:
/// common content removed, common z-power stripped, leading coefficient of
/// B_mu positive.
inline DiffOp canonical(const DiffOp& L) {
    Int num_gcd(0L);
    Int den_lcm(1L);
    long min_ord = -1;
    for (const auto& b : L.coeffs) {
        if (b.is_zero()) continue;
        const Rational c = content(b);
        num_gcd = gcd(num_gcd, c.num());
        den_lcm = lcm(den_lcm, c.den());
        if (min_ord < 0 || b.ord() < min_ord) min_ord = b.ord();
    }
    Rational scale = inverse(Rational(num_gcd, den_lcm));
    if (L.leading().leading().sign() < 0) scale = -scale;
    DiffOp r = L;
    for (auto& b : r.coeffs) {
        b = scale * b;
        if (!b.is_zero() && min_ord > 0) b = b.div_monomial(static_cast<std::size_t>(min_ord));
    }
    return r;
}

/// Indicial polynomial at 0: the theta-coefficient of the lowest power of z
/// in z^mu * L; its roots are the exponents of L at 0.
inline Poly indicial_polynomial(const DiffOp& L) {
    const ThetaForm t = to_theta_form(L);
    return t.terms.begin()->second;
}

struct ExponentReport {
    bool at_infinity = false;
    Rational point;                   // ignored when at_infinity
    std::vector<Rational> exponents;  // sorted, with multiplicity
    bool all_rational = false;
    bool regular = false;
};

/// Exponent structure of L at 0. `regular` is true iff 0 is an ordinary or
/// regular singular point: ord B_i >= ord B_mu - (mu - i) for every i,
/// i.e. every z^(mu-i) B_i / B_mu is pole-free at 0.
inline ExponentReport exponents_at_zero(const DiffOp& L) {
    const std::size_t mu = L.order();
    ExponentReport rep;
    rep.point = Rational();

    const long lead_ord = L.leading().ord();
    rep.regular = true;
    for (std::size_t i = 0; i < mu; ++i) {
        const Poly& bi = L.coeffs[i];
        if (bi.is_zero()) continue;
        if (bi.ord() < lead_ord - static_cast<long>(mu - i)) {
            rep.regular = false;
            break;
        }
    }

    auto [roots, all_rat] = rational_roots(indicial_polynomial(L));
    rep.exponents = std::move(roots);
    rep.all_rational = all_rat;
    return rep;
}

/// lcm of the denominators of the exponents of L at 0; requires the indicial
/// polynomial to split over Q.
inline unsigned long compute_b(const DiffOp& L) {
    const ExponentReport rep = exponents_at_zero(L);
    if (!rep.all_rational)
        throw std::domain_error("compute_b: operator has non-rational exponents at 0");
    Int b(1L);
    for (const auto& e : rep.exponents) b = lcm(b, e.den());
    return b.to_ulong();
}

/// Operator with coefficients B_i(z + alpha); solutions correspond under
/// z -> z - alpha.
inline DiffOp shift(const DiffOp& L, const Rational& alpha) {
    DiffOp r = L;
    for (auto& b : r.coeffs) b = b.taylor_shift(alpha);
    return r;
}

/// Change of variable z -> 1/z: returns M with M(y(1/z)) = 0 iff L(y(z)) = 0,
/// cleared to polynomial coefficients and canonicalized. The exponents of the
/// result at 0 are the exponents of L at infinity.
inline DiffOp invert(const DiffOp& L) {
    const ThetaForm t = to_theta_form(L);
    const long j_max = t.terms.rbegin()->first;
    ThetaForm flipped;
    for (const auto& [j, c] : t.terms) {
        // theta -> -theta, z^j -> z^(j_max - j)
        Poly cf;
        for (long k = 0; k <= c.degree(); ++k) {
            Rational ck = c.coeff(static_cast<std::size_t>(k));
            if (k % 2 == 1) ck = -ck;
            cf.set_coeff(static_cast<std::size_t>(k), ck);
        }
        flipped.terms[j_max - j] += cf;
    }
    for (auto it = flipped.terms.begin(); it != flipped.terms.end();)
        it = it->second.is_zero() ? flipped.terms.erase(it) : std::next(it);
    return canonical(from_theta_form(flipped, L.variable));
}

/// Pullback under z = x^b: if L annihilates sum a_n z^n, the result
/// annihilates sum a_n x^(bn). Exponents at 0 get multiplied by b.
inline DiffOp pullback_power(const DiffOp& L, unsigned long b) {
    if (b == 0) throw std::invalid_argument("pullback_power: b must be >= 1");
    if (b == 1) return canonical(L);
    const ThetaForm t = to_theta_form(L);
    ThetaForm pulled;
    const Rational inv_b(1L, static_cast<long>(b));
    for (const auto& [j, c] : t.terms) {
        // z^j -> x^(b j), theta_z -> theta_x / b
        Poly cf;
        Rational scale(1L);
        for (long k = 0; k <= c.degree(); ++k) {
            cf.set_coeff(static_cast<std::size_t>(k), c.coeff(static_cast<std::size_t>(k)) * scale);
            scale *= inv_b;
        }
        pulled.terms[j * static_cast<long>(b)] += cf;
    }
    for (auto it = pulled.terms.begin(); it != pulled.terms.end();)
        it = it->second.is_zero() ? pulled.terms.erase(it) : std::next(it);
    return canonical(from_theta_form(pulled, "x"));
}

/// (d/dz)^(k+1) composed on the left of L; annihilates every y with L(y) a
/// polynomial of degree <= k.
inline DiffOp left_compose_derivative(const DiffOp& L, std::size_t k) {
    DiffOp r = L;
    for (std::size_t step = 0; step <= k; ++step) {
        std::vector<Poly> next(r.coeffs.size() + 1);
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
            next[i] += r.coeffs[i].derivative();
            next[i + 1] += r.coeffs[i];
        }
        r.coeffs = std::move(next);
    }
    return r;
}

inline ExponentReport exponents_at(const DiffOp& L, const Rational& alpha) {
    ExponentReport rep = exponents_at_zero(shift(L, alpha));
    rep.point = alpha;
    return rep;
}

inline ExponentReport exponents_at_infinity(const DiffOp& L) {
    ExponentReport rep = exponents_at_zero(invert(L));
    rep.at_infinity = true;
    return rep;
}

inline bool equal_canonical(const DiffOp& a, const DiffOp& b) {
    const DiffOp ca = canonical(a);
    const DiffOp cb = canonical(b);
    return ca.coeffs == cb.coeffs;
}

}  // namespace holoq
