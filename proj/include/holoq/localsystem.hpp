#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoq/diffop.hpp"
#include "holoq/matrix.hpp"
#include "holoq/poly.hpp"
#include "holoq/primes.hpp"
#include "holoq/ratfun.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// First-order system z Y'(z) = A(z) Y(z) with A pole-free at 0.
struct LocalSystem {
    std::size_t size = 0;
    Matrix<RatFun> A;
};

inline QMatrix eval_zero(const Matrix<RatFun>& m) {
    QMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).eval_zero();
    return r;
}

inline Matrix<RatFun> to_ratfun_matrix(const QMatrix& m) {
    Matrix<RatFun> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = RatFun(m.at(i, j));
    return r;
}

inline Matrix<RatFun> ratfun_identity(std::size_t n) { return to_ratfun_matrix(q_identity(n)); }

inline bool is_nilpotent(const QMatrix& m) {
    QMatrix acc = m;
    for (std::size_t k = 1; k < m.rows(); ++k) acc = acc * m;
    return q_is_zero(acc);
}

/// Companion system of L in the z-weighted gauge: L y = 0 iff z Y' = A Y for
/// Y = (y, z y', ..., z^(mu-1) y^(mu-1)). Superdiagonal ones, diagonal
/// 0, 1, ..., mu-2, last row built from a_i(z) = z^(mu-i) B_i(z) / B_mu(z).
inline LocalSystem companion(const DiffOp& L) {
    const ExponentReport rep = exponents_at_zero(L);
    if (!rep.regular)
        throw std::domain_error("companion: 0 is an irregular singular point of the operator");
    const std::size_t mu = L.order();
    Matrix<RatFun> A(mu, mu);
    for (std::size_t i = 0; i + 1 < mu; ++i) {
        A.at(i, i) = RatFun(Rational(static_cast<long>(i)));
        A.at(i, i + 1) = RatFun(Rational(1L));
    }
    for (std::size_t j = 0; j < mu; ++j) {
        const RatFun aj(L.coeffs[j].mul_monomial(mu - j), L.leading());
        if (!aj.finite_at_zero())
            throw std::domain_error("companion: entry with pole at 0 (operator not regular there)");
        A.at(mu - 1, j) = A.at(mu - 1, j) - aj;
    }
    A.at(mu - 1, mu - 1) = A.at(mu - 1, mu - 1) + RatFun(Rational(static_cast<long>(mu) - 1));
    return LocalSystem{mu, std::move(A)};
}

/// Gauge change record: Z = H Y transforms zY' = AY into zZ' = A_[H] Z with
/// A_[H] = zH'H^{-1} + H A H^{-1}. H and H^{-1} are Laurent-polynomial
/// matrices; b0 is the widest z-exponent window over the entries of H^{-1}.
struct ShearingResult {
    Matrix<RatFun> H;
    Matrix<RatFun> H_inv;
    LocalSystem sheared;
    long b0 = 0;
    long steps = 0;
};

namespace detail {

/// Multiplies row i by z^{w_i} (H <- D H) for the diagonal gauge D.
inline void scale_rows_by_monomial(Matrix<RatFun>& m, const std::vector<long>& w) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (w[i] == 0) continue;
        const RatFun f = w[i] > 0
                             ? RatFun(Poly::monomial(Rational(1L), static_cast<std::size_t>(w[i])))
                             : RatFun(Poly(1L), Poly::monomial(Rational(1L), static_cast<std::size_t>(-w[i])));
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = f * m.at(i, j);
    }
}

/// Multiplies column j by z^{w_j} (H <- H D).
inline void scale_cols_by_monomial(Matrix<RatFun>& m, const std::vector<long>& w) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (w[j] == 0) continue;
        const RatFun f = w[j] > 0
                             ? RatFun(Poly::monomial(Rational(1L), static_cast<std::size_t>(w[j])))
                             : RatFun(Poly(1L), Poly::monomial(Rational(1L), static_cast<std::size_t>(-w[j])));
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = f * m.at(i, j);
    }
}

}  // namespace detail

/// Shearing loop: integer eigenvalues of A(0) are pushed to 0, one unit of the
/// top eigenvalue at a time, via constant base changes and diag(z^{-1}, I)
/// gauges; a final scalar z^{-c} gauge removes a common eigenvalue c.
inline ShearingResult shear(const LocalSystem& system) {
    const std::size_t mu = system.size;
    ShearingResult res;
    res.H = ratfun_identity(mu);
    res.H_inv = ratfun_identity(mu);
    res.sheared = system;

    const long guard = 4096;
    for (long iter = 0;; ++iter) {
        if (iter > guard) throw std::logic_error("shear: iteration guard exceeded");
        const QMatrix A0 = eval_zero(res.sheared.A);
        const Poly cp = charpoly(A0);
        auto [roots, all_rational] = rational_roots(cp);
        if (!all_rational)
            throw std::domain_error("shear: characteristic polynomial of A(0) has non-rational roots");
        for (const auto& r : roots)
            if (!r.is_integer())
                throw std::domain_error("shear: non-integer eigenvalue " + r.str() + " of A(0)");

        const bool all_equal = std::all_of(roots.begin(), roots.end(),
                                           [&](const Rational& r) { return r == roots.front(); });
        if (all_equal) {
            const long c = roots.front().num().to_long();
            if (c == 0) break;  // already nilpotent
            // gauge by z^{-c} I: subtracts c from the diagonal
            for (std::size_t i = 0; i < mu; ++i)
                res.sheared.A.at(i, i) = res.sheared.A.at(i, i) - RatFun(Rational(c));
            const std::vector<long> w(mu, -c);
            detail::scale_rows_by_monomial(res.H, w);
            std::vector<long> winv(mu, c);
            detail::scale_cols_by_monomial(res.H_inv, winv);
            ++res.steps;
            break;
        }

        // split off the generalized eigenspace of the largest eigenvalue
        const Rational lambda = roots.back();
        const std::size_t mult =
            static_cast<std::size_t>(std::count(roots.begin(), roots.end(), lambda));
        QMatrix shifted = A0;
        for (std::size_t i = 0; i < mu; ++i) shifted.at(i, i) -= lambda;
        QMatrix shifted_pow = q_identity(mu);
        for (std::size_t k = 0; k < mu; ++k) shifted_pow = shifted_pow * shifted;
        const auto v1 = kernel_basis(shifted_pow);

        Poly complement(1L);
        const Poly lin(std::vector<Rational>{-lambda, Rational(1L)});
        Poly quot = cp;
        for (std::size_t k = 0; k < mult; ++k) quot = divmod(quot, lin).first;
        const auto v2 = kernel_basis(eval_at_matrix(quot, A0));

        if (v1.size() != mult || v1.size() + v2.size() != mu)
            throw std::logic_error("shear: eigenspace split has wrong dimensions");

        QMatrix P(mu, mu);
        std::size_t col = 0;
        for (const auto& v : v1) {
            for (std::size_t i = 0; i < mu; ++i) P.at(i, col) = v[i];
            ++col;
        }
        for (const auto& v : v2) {
            for (std::size_t i = 0; i < mu; ++i) P.at(i, col) = v[i];
            ++col;
        }
        const QMatrix Pinv = q_inverse(P);
        const Matrix<RatFun> Pr = to_ratfun_matrix(P);
        const Matrix<RatFun> Pinvr = to_ratfun_matrix(Pinv);

        res.sheared.A = Pinvr * res.sheared.A * Pr;
        res.H = Pinvr * res.H;
        res.H_inv = res.H_inv * Pr;

        // diag(z^{-1} I_mult, I) gauge: divides the top block's eigenvalue by one
        std::vector<long> w(mu, 0);
        for (std::size_t i = 0; i < mult; ++i) w[i] = -1;
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                const long shift_ij = w[i] - w[j];
                if (shift_ij == 0) continue;
                const RatFun f =
                    shift_ij > 0
                        ? RatFun(Poly::monomial(Rational(1L), static_cast<std::size_t>(shift_ij)))
                        : RatFun(Poly(1L), Poly::monomial(Rational(1L), static_cast<std::size_t>(-shift_ij)));
                res.sheared.A.at(i, j) = f * res.sheared.A.at(i, j);
            }
        for (std::size_t i = 0; i < mult; ++i)
            res.sheared.A.at(i, i) = res.sheared.A.at(i, i) - RatFun(Rational(1L));
        detail::scale_rows_by_monomial(res.H, w);
        std::vector<long> winv(mu, 0);
        for (std::size_t i = 0; i < mult; ++i) winv[i] = 1;
        detail::scale_cols_by_monomial(res.H_inv, winv);
        ++res.steps;
    }

    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            if (!res.sheared.A.at(i, j).finite_at_zero())
                throw std::logic_error("shear: sheared system acquired a pole at 0");
    if (!is_nilpotent(eval_zero(res.sheared.A)))
        throw std::logic_error("shear: residue matrix is not nilpotent after shearing");

    res.b0 = 0;
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            const auto [lo, hi] = laurent_window(res.H_inv.at(i, j));
            res.b0 = std::max({res.b0, std::labs(lo), hi});
        }
    return res;
}

/// Truncated Frobenius solution U(z) z^N of z Z' = A Z at a nilpotent residue
/// N = A(0): U_0 = I and n U_n + U_n N - N U_n = sum_{k=1..n} A_k U_{n-k}.
struct FrobeniusSeries {
    QMatrix residue;
    std::vector<QMatrix> U;         // U[n], n = 0..n_max
    std::vector<QMatrix> A_series;  // A_k, k = 0..n_max
};

inline FrobeniusSeries frobenius_series(const LocalSystem& system, std::size_t n_max) {
    const std::size_t mu = system.size;

    std::vector<QMatrix> A_series(n_max + 1, QMatrix(mu, mu));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            const std::vector<Rational> s = system.A.at(i, j).series(n_max);
            for (std::size_t k = 0; k <= n_max; ++k) A_series[k].at(i, j) = s[k];
        }

    const QMatrix N = A_series[0];
    if (!is_nilpotent(N))
        throw std::domain_error("frobenius_series: A(0) is not nilpotent (shear first)");

    FrobeniusSeries fs;
    fs.residue = N;
    fs.A_series = std::move(A_series);
    fs.U.reserve(n_max + 1);
    fs.U.push_back(q_identity(mu));

    for (std::size_t n = 1; n <= n_max; ++n) {
        QMatrix rhs(mu, mu);
        for (std::size_t k = 1; k <= n; ++k) rhs = rhs + fs.A_series[k] * fs.U[n - k];

        // X = (RHS + N X - X N)/n converges since ad_N is nilpotent
        const Rational inv_n = inverse(Rational(static_cast<long>(n)));
        QMatrix X = inv_n * rhs;
        for (std::size_t it = 0; it <= 2 * mu + 2; ++it) {
            QMatrix next = inv_n * (rhs + N * X - X * N);
            if (next == X) break;
            if (it == 2 * mu + 2)
                throw std::logic_error("frobenius_series: Sylvester iteration did not stabilize");
            X = std::move(next);
        }
        const QMatrix check = Rational(static_cast<long>(n)) * X + X * N - N * X;
        if (!(check == rhs)) throw std::logic_error("frobenius_series: defining relation violated");
        fs.U.push_back(std::move(X));
    }
    return fs;
}

/// Per-prime valuation audit of the Frobenius coefficients against the
/// Christol-Dwork exponent mu-1 + v_p((mu-1)!) + beta_mu, in the form
/// v_p(u_{i,j,n}) >= -exponent * floor(log_p n).
struct CDBoundReport {
    unsigned long p = 0;
    std::size_t mu = 0;
    long beta = 0;
    long exponent = 0;
    struct Violation {
        std::size_t i, j;
        long n;
        long val;
    };
    std::vector<Violation> violations;
};

inline CDBoundReport cd_bound_check(const FrobeniusSeries& fs, unsigned long p, std::size_t n_max) {
    if (!is_prime(p)) throw std::domain_error("cd_bound_check: p must be prime");
    const std::size_t mu = fs.residue.rows();
    if (n_max >= fs.U.size() || n_max >= fs.A_series.size())
        throw std::invalid_argument("cd_bound_check: n_max exceeds the computed series order");

    for (std::size_t k = 0; k <= n_max; ++k)
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                const Rational& a = fs.A_series[k].at(i, j);
                if (!a.is_zero() && vp(a, p) < 0) {
                    std::ostringstream os;
                    os << "cd_bound_check: bad prime for this system: " << p
                       << " divides the denominator of A_" << k << "[" << i << "][" << j << "] = "
                       << a.str();
                    throw std::domain_error(os.str());
                }
            }

    CDBoundReport rep;
    rep.p = p;
    rep.mu = mu;

    Int binom_prod(1L);
    for (unsigned long j = 1; j <= mu; ++j) {
        Int b;
        mpz_bin_uiui(b.raw(), static_cast<unsigned long>(mu), j);
        binom_prod *= b;
    }
    const long beta_raw = binom_prod.is_one() ? 0 : vp(binom_prod, p);
    rep.beta = std::min<long>(static_cast<long>(mu) - 1, beta_raw);

    Int factorial(1L);
    for (unsigned long j = 2; j + 1 <= mu; ++j) factorial *= Int(j);
    rep.exponent = static_cast<long>(mu) - 1 + (factorial.is_one() ? 0 : vp(factorial, p)) + rep.beta;

    for (std::size_t n = 0; n <= n_max; ++n) {
        const long bound = -rep.exponent * floor_log(static_cast<unsigned long>(n), p);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                const Rational& u = fs.U[n].at(i, j);
                if (u.is_zero()) continue;
                const long val = vp(u, p);
                if (val < bound)
                    rep.violations.push_back({i, j, static_cast<long>(n), val});
            }
    }
    return rep;
}

/// Coordinates of the power series g = sum coeffs_n z^n in the local solution
/// basis: solves Y_0 = H^{-1} U(z) z^N * l by matching every (z^m, log^k)
/// coefficient of the first row, then re-verifies the coefficient
/// reconstruction a_n = sum l_i P_{k,i}(0) h_{1,j,t} u_{j,k,n-t}.
inline std::vector<Rational> decompose(const DiffOp& L, const std::vector<Rational>& coeffs,
                                       const ShearingResult& sh, const FrobeniusSeries& fs) {
    const std::size_t mu = L.order();
    const long b0 = sh.b0;
    const long n_terms = static_cast<long>(coeffs.size());
    if (n_terms < static_cast<long>(2 * mu) + b0)
        throw std::domain_error("decompose: insufficient coefficients supplied");
    const long n_max = static_cast<long>(fs.U.size()) - 1;
    if (n_max < n_terms - 1 + b0)
        throw std::domain_error(
            "decompose: Frobenius series too short for the supplied coefficients "
            "(need order >= count + b0)");

    // h[j][t + b0] = coefficient of z^t in (H^{-1})_{1, j+1}
    std::vector<std::vector<Rational>> h(mu, std::vector<Rational>(2 * b0 + 1));
    for (std::size_t j = 0; j < mu; ++j)
        for (long t = -b0; t <= b0; ++t)
            h[j][static_cast<std::size_t>(t + b0)] = laurent_coeff(sh.H_inv.at(0, j), t);

    // powers of the nilpotent residue
    std::vector<QMatrix> Npow{q_identity(mu)};
    for (std::size_t k = 1; k < mu; ++k) Npow.push_back(Npow.back() * fs.residue);

    const long m_lo = -b0;
    const long m_hi = std::min(n_terms - 1, n_max - b0);

    // series[j][k][m - m_lo] = coefficient of z^m log^k/k! in row 1 of H^{-1} U z^N, column j
    std::vector<std::vector<std::vector<Rational>>> series(
        mu, std::vector<std::vector<Rational>>(mu, std::vector<Rational>(static_cast<std::size_t>(m_hi - m_lo + 1))));
    for (std::size_t jp = 0; jp < mu; ++jp)
        for (std::size_t c = 0; c < mu; ++c) {
            // (H^{-1})_{1,jp} * U_{jp,c} as a Laurent series
            std::vector<Rational> prod(static_cast<std::size_t>(m_hi - m_lo + 1));
            for (long m = m_lo; m <= m_hi; ++m) {
                Rational acc;
                for (long t = -b0; t <= b0; ++t) {
                    const long un = m - t;
                    if (un < 0 || un > n_max) continue;
                    const Rational& hv = h[jp][static_cast<std::size_t>(t + b0)];
                    if (hv.is_zero()) continue;
                    acc += hv * fs.U[static_cast<std::size_t>(un)].at(jp, c);
                }
                prod[static_cast<std::size_t>(m - m_lo)] = acc;
            }
            for (std::size_t j = 0; j < mu; ++j)
                for (std::size_t k = 0; k < mu; ++k) {
                    const Rational& w = Npow[k].at(c, j);
                    if (w.is_zero()) continue;
                    auto& target = series[j][k];
                    for (std::size_t idx = 0; idx < prod.size(); ++idx)
                        target[idx] += w * prod[idx];
                }
        }

    // linear system over the unknown coordinates l_1..l_mu
    std::vector<std::vector<Rational>> rows;
    for (std::size_t k = 0; k < mu; ++k)
        for (long m = m_lo; m <= m_hi; ++m) {
            std::vector<Rational> row(mu + 1);
            bool nontrivial = false;
            for (std::size_t j = 0; j < mu; ++j) {
                row[j] = series[j][k][static_cast<std::size_t>(m - m_lo)];
                nontrivial = nontrivial || !row[j].is_zero();
            }
            if (k == 0 && m >= 0) row[mu] = coeffs[static_cast<std::size_t>(m)];
            if (nontrivial || !row[mu].is_zero()) rows.push_back(std::move(row));
        }

    QMatrix aug(rows.size(), mu + 1);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j <= mu; ++j) aug.at(i, j) = rows[i][j];
    const std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == mu)
        throw std::domain_error("decompose: input is not a solution of L");
    if (pivots.size() < mu)
        throw std::domain_error("decompose: insufficient coefficients (underdetermined system)");

    std::vector<Rational> ell(mu);
    for (std::size_t r = 0; r < mu; ++r) ell[pivots[r]] = aug.at(r, mu);

    // Eq-level verification: reconstruct every supplied coefficient through the
    // constant terms P_{k,i}(0) of z^N
    for (long n = 0; n <= m_hi; ++n) {
        Rational recon;
        for (std::size_t i = 0; i < mu; ++i) {
            if (ell[i].is_zero()) continue;
            for (std::size_t k = 0; k < mu; ++k) {
                const Rational& p0 = Npow[0].at(k, i);  // constant term of P_{k,i}
                if (p0.is_zero()) continue;
                for (std::size_t j = 0; j < mu; ++j) {
                    for (long t = -b0; t <= std::min<long>(b0, n); ++t) {
                        const Rational& hv = h[j][static_cast<std::size_t>(t + b0)];
                        if (hv.is_zero()) continue;
                        recon += ell[i] * p0 * hv * fs.U[static_cast<std::size_t>(n - t)].at(j, k);
                    }
                }
            }
        }
        if (recon != coeffs[static_cast<std::size_t>(n)])
            throw std::domain_error("decompose: reconstruction mismatch at index " + std::to_string(n) +
                                    " (input is not a solution of L)");
    }
    return ell;
}

}  // namespace holoq
