// Acceptance suite: every release criterion as an executable check with its
// runtime budget. One line per criterion; exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "holoq/denomlab.hpp"
#include "holoq/diffop.hpp"
#include "holoq/localsystem.hpp"
#include "holoq/pcurvature.hpp"
#include "holoq/pipeline.hpp"
#include "holoq/recurrence.hpp"
#include "oracles.hpp"

using namespace holoq;

namespace {

DiffOp apery_operator() {
    return make_diffop({Poly(std::vector<Rational>{-5, 1}),
                        Poly(std::vector<Rational>{1, -112, 7}),
                        Poly(std::vector<Rational>{0, 3, -153, 6}),
                        Poly(std::vector<Rational>{0, 0, 1, -34, 1})});
}

Recurrence apery_recurrence_eq4() {
    std::map<long, Poly> q;
    q[0] = Poly(std::vector<Rational>{1, 3, 3, 1});
    q[1] = Poly(std::vector<Rational>{-117, -231, -153, -34});
    q[2] = Poly(std::vector<Rational>{8, 12, 6, 1});
    return make_recurrence(std::move(q), 0);
}

Recurrence shifted_recurrence_eq5_alpha1() {
    const Rational a(1);
    const Rational a2 = a * a;
    const Poly n2n3 = Poly(std::vector<Rational>{3, 1}) * Poly(std::vector<Rational>{2, 1});
    std::map<long, Poly> q;
    q[0] = Poly(std::vector<Rational>{1, 3, 3, 1});
    q[1] = Poly(std::vector<Rational>{Rational(5) * a - 39, Rational(6) * a - 51, Rational(2) * a - 17}) *
           Poly(std::vector<Rational>{3, 2});
    q[2] = Poly(std::vector<Rational>{Rational(25) * a2 - Rational(418) * a + 4,
                                      Rational(24) * a2 - Rational(408) * a + 4,
                                      Rational(6) * a2 - Rational(102) * a + 1}) *
           Poly(std::vector<Rational>{2, 1});
    q[3] = Poly(a * (Rational(2) * a2 - Rational(51) * a + 1)) * Poly(std::vector<Rational>{5, 2}) * n2n3;
    q[4] = Poly(a2 * (a2 - Rational(34) * a + 1)) * Poly(std::vector<Rational>{4, 1}) * n2n3;
    return make_recurrence(std::move(q), 0);
}

struct Criterion {
    std::string label;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

bool expect(bool cond, const std::string& msg, std::string& why) {
    if (!cond && why.empty()) why = msg;
    return cond;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"operator->recurrence fidelity (three-term relation)", 1.0, [](std::string& why) {
        const Recurrence got = normalized(to_recurrence(apery_operator()));
        const Recurrence want = normalized(apery_recurrence_eq4());
        bool ok = expect(got.q.size() == 3, "wrong number of shifts", why);
        for (long d = 0; d <= 2 && ok; ++d)
            ok = expect(got.q.at(d) == want.q.at(d), "coefficient mismatch at shift " + std::to_string(d), why);
        return ok;
    }});

    criteria.push_back({"shifted-recurrence fidelity (alpha = 1, four shifts)", 1.0, [](std::string& why) {
        const Recurrence got = normalized(to_recurrence(shift(apery_operator(), Rational(1))));
        const Recurrence want = normalized(shifted_recurrence_eq5_alpha1());
        bool ok = expect(got.q.size() == 5, "wrong number of shifts", why);
        for (long d = 0; d <= 4 && ok; ++d)
            ok = expect(got.q.at(d) == want.q.at(d), "coefficient mismatch at shift " + std::to_string(d), why);
        return ok;
    }});

    criteria.push_back({"integer sequence: oracle match to n=50, delta_n = 1 to n=200", 5.0, [](std::string& why) {
        InitialData init;
        init.base[0] = Rational(1);
        init.base[1] = Rational(5);
        const std::vector<Rational> a = unroll(apery_recurrence_eq4(), init, 200);
        bool ok = true;
        for (unsigned long n = 0; n <= 50 && ok; ++n)
            ok = expect(a[n] == Rational(oracles::apery_a(n)),
                        "binomial-sum oracle mismatch at n = " + std::to_string(n), why);
        const std::vector<Int> deltas = delta_sequence(a);
        for (unsigned long n = 0; n <= 200 && ok; ++n)
            ok = expect(deltas[n].is_one(), "delta_" + std::to_string(n) + " != 1", why);
        return ok;
    }});

    criteria.push_back({"sharpness of the cube: s=3 passes, s=2 fails with witness", 10.0, [](std::string& why) {
        InitialData init;
        init.base[0] = Rational(0);
        init.base[1] = Rational(6);
        const std::vector<Rational> ahat = unroll(apery_recurrence_eq4(), init, 200);
        bool ok = true;
        for (unsigned long n = 0; n <= 10 && ok; ++n)
            ok = expect(ahat[n] == oracles::apery_ahat(n),
                        "formula oracle mismatch at n = " + std::to_string(n), why);
        const DenomCertificate c3 = certify(ahat, 3, 1, 0, Int(1L), 200);
        ok = ok && expect(c3.pass, "s = 3 certificate failed", why);
        const DenomCertificate c2 = certify(ahat, 2, 1, 0, Int(1L), 200);
        ok = ok && expect(!c2.pass, "s = 2 certificate unexpectedly passed", why);
        ok = ok && expect(c2.witness.has_value(), "s = 2 failure carries no witness", why);
        if (ok) {
            const long n = c2.witness->n;
            const unsigned long p = c2.witness->p.to_ulong();
            const long margin = vp(ahat[static_cast<std::size_t>(n)], p) +
                                2 * floor_log(static_cast<unsigned long>(n), p);
            ok = expect(margin < 0 && -margin == c2.witness->deficit, "witness does not witness", why);
        }
        return ok;
    }});

    criteria.push_back({"polylog filtration: infer_s(1/n^k) = k for k = 1, 2, 3", 5.0, [](std::string& why) {
        const PrimeWindow w(5, 97);
        bool ok = true;
        for (unsigned long k = 1; k <= 3 && ok; ++k) {
            std::vector<Rational> li{Rational()};
            for (long n = 1; n <= 300; ++n) li.push_back(Rational(Int(1L), pow(Int(n), k)));
            const auto s = infer_s(li, 1, 0, 300, w);
            ok = expect(s.has_value() && *s == k,
                        "infer_s returned the wrong exponent for k = " + std::to_string(k), why);
        }
        return ok;
    }});

    criteria.push_back({"exponents and b: {0,0,0}, {0,1,2}, lcm of {0,1,1/2} is 2, pullback doubles", 1.0, [](std::string& why) {
        bool ok = expect(exponents_at_zero(apery_operator()).exponents == std::vector<Rational>{0, 0, 0},
                         "exponents at 0 are not {0,0,0}", why);
        ok = ok && expect(exponents_at_zero(shift(apery_operator(), Rational(1))).exponents ==
                              std::vector<Rational>{0, 1, 2},
                          "shifted exponents are not {0,1,2}", why);
        const DiffOp half = make_diffop({Poly(), Poly(), Poly(std::vector<Rational>{0, 0, 3}),
                                         Poly(std::vector<Rational>{0, 0, 0, 2})});
        ok = ok && expect(exponents_at_zero(half).exponents ==
                              std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)},
                          "exponents of the test operator are not {0,1/2,1}", why);
        ok = ok && expect(compute_b(half) == 2, "compute_b != 2", why);
        const ExponentReport pulled = exponents_at_zero(pullback_power(half, 2));
        ok = ok && expect(pulled.exponents == std::vector<Rational>{0, 1, 2},
                          "pullback did not double the exponents", why);
        return ok;
    }});

    criteria.push_back({"shearing contract at the shifted operator", 2.0, [](std::string& why) {
        const LocalSystem sys = companion(shift(apery_operator(), Rational(1)));
        const ShearingResult sh = shear(sys);
        const QMatrix A0 = eval_zero(sh.sheared.A);
        bool ok = expect((A0 * A0 * A0) == QMatrix(3, 3), "A_sheared(0)^3 != 0", why);
        Matrix<RatFun> zHp(3, 3);
        const RatFun z(Poly::variable());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) zHp.at(i, j) = z * sh.H.at(i, j).derivative();
        const Matrix<RatFun> rhs = zHp * sh.H_inv + sh.H * sys.A * sh.H_inv;
        ok = ok && expect(rhs == sh.sheared.A, "conjugation identity violated", why);
        ok = ok && expect((sh.H * sh.H_inv) == ratfun_identity(3), "H * H^{-1} != I", why);
        return ok;
    }});

    criteria.push_back({"Frobenius to n=100 and Christol-Dwork audit over 5..97", 60.0, [](std::string& why) {
        const ShearingResult sh = shear(companion(apery_operator()));
        const FrobeniusSeries fs = frobenius_series(sh.sheared, 100);
        const QMatrix& N = fs.residue;
        bool ok = true;
        for (std::size_t n = 1; n <= 100 && ok; ++n) {
            QMatrix rhs(3, 3);
            for (std::size_t k = 1; k <= n; ++k) rhs = rhs + fs.A_series[k] * fs.U[n - k];
            const QMatrix lhs = Rational(static_cast<long>(n)) * fs.U[n] + fs.U[n] * N - N * fs.U[n];
            ok = expect(lhs == rhs, "Sylvester relation violated at n = " + std::to_string(n), why);
        }
        std::size_t checked = 0;
        for (unsigned long p : primes_in(PrimeWindow(5, 97))) {
            if (!ok) break;
            CDBoundReport rep;
            try {
                rep = cd_bound_check(fs, p, 100);
            } catch (const std::domain_error&) {
                continue;  // precondition filter
            }
            ++checked;
            ok = expect(rep.exponent == 2, "exponent != 2 at p = " + std::to_string(p), why) &&
                 expect(rep.violations.empty(), "valuation violations at p = " + std::to_string(p), why);
        }
        ok = ok && expect(checked == primes_in(PrimeWindow(5, 97)).size(),
                          "some primes in 5..97 were unexpectedly filtered", why);
        return ok;
    }});

    criteria.push_back({"reconstruction through the l/h/u/P(0) sum on 51 terms", 10.0, [](std::string& why) {
        const DiffOp L = apery_operator();
        std::vector<Rational> a;
        for (unsigned long n = 0; n <= 50; ++n) a.push_back(Rational(oracles::apery_a(n)));
        const ShearingResult sh = shear(companion(L));
        const FrobeniusSeries fs = frobenius_series(sh.sheared, 50 + static_cast<std::size_t>(sh.b0));
        try {
            const std::vector<Rational> ell = decompose(L, a, sh, fs);  // verifies every index
            return expect(ell.size() == 3 && ell[0] == Rational(1), "unexpected coordinates", why);
        } catch (const std::domain_error& e) {
            why = e.what();
            return false;
        }
    }});

    criteria.push_back({"p-curvature verdicts: nilpotent on 5..47, non-nilpotent for d/dz - 1", 30.0, [](std::string& why) {
        bool ok = true;
        for (const auto& rep : nilpotence_report(apery_operator(), PrimeWindow(5, 47))) {
            if (rep.status == PCurvatureReport::Status::skipped) continue;
            ok = ok && expect(rep.status == PCurvatureReport::Status::nilpotent,
                              "non-nilpotent at p = " + std::to_string(rep.p), why);
        }
        const DiffOp expm = make_diffop({Poly(-1L), Poly(1L)});
        for (const auto& rep : nilpotence_report(expm, PrimeWindow(2, 20))) {
            ok = ok && expect(rep.status == PCurvatureReport::Status::non_nilpotent,
                              "expected non-nilpotent at p = " + std::to_string(rep.p), why);
        }
        return ok;
    }});

    criteria.push_back({"property suites: D_n identity, valuation laws, bijection, monotonicity", 60.0, [](std::string& why) {
        bool ok = true;
        Int running(1L);
        for (unsigned long n = 2; n <= 500 && ok; ++n) {
            running = lcm(running, Int(n));
            ok = expect(Dn(n) == running, "D_n recurrence identity fails at n = " + std::to_string(n), why);
        }

        oracles::Rng rng;
        const std::vector<unsigned long> ps{2, 3, 5, 7};
        for (int i = 0; i < 2500 && ok; ++i) {
            const Rational x = rng.nonzero_rational(60, 45);
            const Rational y = rng.nonzero_rational(60, 45);
            for (unsigned long p : ps) {
                ok = ok && expect(vp(x * y, p) == vp(x, p) + vp(y, p), "vp multiplicativity fails", why);
                if ((x + y).is_zero()) continue;
                const long vs = vp(x + y, p);
                ok = ok && expect(vs >= std::min(vp(x, p), vp(y, p)), "ultrametric inequality fails", why);
                if (vp(x, p) != vp(y, p))
                    ok = ok && expect(vs == std::min(vp(x, p), vp(y, p)), "ultrametric equality fails", why);
            }
        }

        for (int i = 0; i < 100 && ok; ++i) {
            const DiffOp L = rng.diffop(3, 3);
            ok = expect(equal_canonical(to_operator(to_recurrence(L)), L),
                        "operator/recurrence bijection fails", why);
        }

        for (int i = 0; i < 20 && ok; ++i) {
            std::vector<Rational> coeffs;
            for (int t = 0; t < 25; ++t) coeffs.push_back(rng.rational(30, 20));
            bool passed_before = false;
            for (unsigned long s = 0; s <= 5 && ok; ++s) {
                const bool pass = certify(coeffs, s, 1, 0, Int(6L), 24).pass;
                if (passed_before) ok = expect(pass, "certify monotonicity in s fails", why);
                passed_before = passed_before || pass;
            }
        }
        return ok;
    }});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = criteria[i].run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs <= criteria[i].budget_seconds;
        const bool pass = ok && in_budget;
        std::printf("[%s] %2zu. %s (%.2fs, budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].label.c_str(), secs, criteria[i].budget_seconds,
                    why.empty() ? "" : " — ", why.c_str());
        if (ok && !in_budget) std::printf("       over budget\n");
        if (!pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
