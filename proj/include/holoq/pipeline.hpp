#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holoq/denomlab.hpp"
#include "holoq/diffop.hpp"
#include "holoq/localsystem.hpp"
#include "holoq/primes.hpp"
#include "holoq/recurrence.hpp"

namespace holoq {

/// Consolidated result of the full reduction -> normalization -> valuation
/// analysis with the parameter set (s = mu-1, b, b0, C).
struct TheoremOneReport {
    std::size_t mu = 0;
    unsigned long s = 0;
    unsigned long b = 1;
    unsigned long b0 = 0;
    Int C = Int(1L);
    long N = 0;

    // stage diagnostics
    std::vector<Rational> exponents;
    long shear_steps = 0;
    std::vector<Rational> ell;
    std::vector<CDBoundReport> cd_reports;
    std::vector<unsigned long> cd_primes_checked;
    std::vector<std::pair<unsigned long, std::string>> cd_primes_skipped;
    bool cd_clean = true;
    std::vector<unsigned long> small_primes;

    DenomCertificate certificate;
};

namespace detail {

[[noreturn]] inline void stage_fail(const std::string& stage, const std::string& what) {
    throw std::domain_error("theorem_one_analyze[" + stage + "]: " + what);
}

}  // namespace detail

/// Runs compute_b -> pullback -> companion -> shear -> frobenius -> decompose
/// -> per-prime Christol-Dwork audit -> small-prime C -> certification of
/// coeffs against D_{bn+b0}^(mu-1) C^(n+1). The CD stage is an empirical
/// gate: violations are reported as evidence, the direct certificate is
/// always computed from the valuations themselves.
inline TheoremOneReport theorem_one_analyze(const DiffOp& L, const std::vector<Rational>& coeffs,
                                            long N, const PrimeWindow& window) {
    if (static_cast<long>(coeffs.size()) < N + 1)
        throw std::invalid_argument("theorem_one_analyze: fewer than N+1 coefficients supplied");

    TheoremOneReport rep;
    rep.mu = L.order();
    rep.s = static_cast<unsigned long>(rep.mu) - 1;
    rep.N = N;

    const ExponentReport exp_rep = exponents_at_zero(L);
    if (!exp_rep.all_rational)
        detail::stage_fail("exponents", "operator has non-rational exponents at 0");
    rep.exponents = exp_rep.exponents;
    rep.b = compute_b(L);

    // reduction to integer exponents: operator pullback and coefficient interleaving
    DiffOp Lx = pullback_power(L, rep.b);
    if (Lx.order() != rep.mu) detail::stage_fail("pullback", "pullback changed the order");
    std::vector<Rational> coeffs_x;
    const long Nx = static_cast<long>(rep.b) * N;
    coeffs_x.assign(static_cast<std::size_t>(Nx) + 1, Rational());
    for (long n = 0; n <= N; ++n)
        coeffs_x[static_cast<std::size_t>(n * static_cast<long>(rep.b))] = coeffs[static_cast<std::size_t>(n)];

    try {
        const Poly res = residual(Lx, coeffs_x);
        if (!res.is_zero())
            detail::stage_fail("residual", "coefficients do not solve the (pulled-back) operator");
    } catch (const std::domain_error& e) {
        detail::stage_fail("residual", e.what());
    }

    LocalSystem sys;
    try {
        sys = companion(Lx);
    } catch (const std::domain_error& e) {
        detail::stage_fail("companion", e.what());
    }

    ShearingResult sh;
    try {
        sh = shear(sys);
    } catch (const std::domain_error& e) {
        detail::stage_fail("shear", e.what());
    }
    rep.b0 = static_cast<unsigned long>(sh.b0);
    rep.shear_steps = sh.steps;

    FrobeniusSeries fs;
    try {
        fs = frobenius_series(sh.sheared, static_cast<std::size_t>(Nx + sh.b0));
    } catch (const std::domain_error& e) {
        detail::stage_fail("frobenius", e.what());
    }

    try {
        rep.ell = decompose(Lx, coeffs_x, sh, fs);
    } catch (const std::domain_error& e) {
        detail::stage_fail("decompose", e.what());
    }

    for (unsigned long p : primes_in(window)) {
        try {
            CDBoundReport cd = cd_bound_check(fs, p, static_cast<std::size_t>(Nx));
            if (!cd.violations.empty()) rep.cd_clean = false;
            rep.cd_primes_checked.push_back(p);
            rep.cd_reports.push_back(std::move(cd));
        } catch (const std::domain_error& e) {
            rep.cd_primes_skipped.emplace_back(p, e.what());
        }
    }

    for (unsigned long p : primes_up_to(window.p_min > 0 ? window.p_min - 1 : 0))
        rep.small_primes.push_back(p);
    rep.C = infer_C(coeffs, rep.s, rep.b, rep.b0, N, rep.small_primes);

    rep.certificate = certify(coeffs, rep.s, rep.b, rep.b0, rep.C, N);
    return rep;
}

}  // namespace holoq
