// holoq: exact arithmetic for holonomic series over Q — operators,
// recurrences, local systems and denominator certificates.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holoq/io.hpp"

namespace {

using namespace holoq;

constexpr int kExitOk = 0;
constexpr int kExitExpectationFailed = 1;
constexpr int kExitInputError = 2;

DiffOp load_operator(const std::string& path) {
    return diffop_from_json(parse_json(read_file(path), path), path);
}

Recurrence load_recurrence(const std::string& path) {
    return recurrence_from_json(parse_json(read_file(path), path), path);
}

std::vector<Rational> load_sequence(const std::string& path) {
    return sequence_from_text(read_file(path), path);
}

std::map<long, Rational> parse_assignments(const std::string& text, const std::string& what) {
    std::map<long, Rational> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string piece = text.substr(pos, comma - pos);
        const std::size_t eq = piece.find('=');
        if (eq == std::string::npos)
            throw io_error(what + ": expected entries of the form index=value, got '" + piece + "'");
        try {
            out[std::stol(piece.substr(0, eq))] = Rational(piece.substr(eq + 1));
        } catch (const std::invalid_argument&) {
            throw io_error(what + ": malformed entry '" + piece + "'");
        }
        pos = comma + 1;
    }
    return out;
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump() << "\n";
    else
        std::cout << text;
}

std::string describe_exponents(const ExponentReport& rep, const DiffOp& L) {
    std::ostringstream os;
    for (std::size_t i = 0; i < rep.exponents.size(); ++i)
        os << (i ? ", " : "") << rep.exponents[i].str();
    if (rep.exponents.empty()) os << "(none)";
    const bool singular_at_zero = L.leading().coeff(0).is_zero();
    if (!rep.regular)
        os << " (irregular singular)";
    else if (singular_at_zero)
        os << " (regular singular)";
    else
        os << " (ordinary point)";
    if (!rep.all_rational) os << " [non-rational exponents remain]";
    os << "\n";
    return os.str();
}

std::string describe_recurrence(const Recurrence& r) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, p] : r.q) {
        os << (first ? "" : "  +  ") << "(" << poly_to_string(p, r.variable) << ")*V_{"
           << r.variable << (d >= 0 ? "+" : "") << (d != 0 ? std::to_string(d) : "") << "}";
        first = false;
    }
    os << " = 0   for " << r.variable << " >= " << r.n_start << "\n";
    return os.str();
}

std::string describe_certificate(const DenomCertificate& c) {
    std::ostringstream os;
    os << "claim: delta_n | D_{" << c.b << "n+" << c.b0 << "}^" << c.s << " * " << c.C.str()
       << "^(n+1) for n <= " << c.N << "\n";
    os << "status: " << (c.pass ? "pass" : "fail") << "\n";
    if (c.witness)
        os << "witness: n = " << c.witness->n << ", p = " << c.witness->p.str()
           << ", deficit = " << c.witness->deficit << "\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{
        "holoq — exact toolkit for holonomic series over Q: operator/recurrence\n"
        "algebra, Frobenius solutions, p-adic valuation certificates, p-curvature."};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON on stdout");

    // --- exponents ---
    auto* cmd_exp = app.add_subcommand("exponents", "exponents of an operator at 0, a rational point, or infinity");
    std::string exp_op;
    std::string exp_at;
    bool exp_inf = false;
    cmd_exp->add_option("--op", exp_op, "operator JSON file")->required();
    cmd_exp->add_option("--at", exp_at, "rational point alpha (default 0)");
    cmd_exp->add_flag("--at-infinity", exp_inf, "exponents at infinity");

    // --- recurrence ---
    auto* cmd_rec = app.add_subcommand("recurrence", "coefficient recurrence of an operator");
    std::string rec_op;
    bool rec_raw = false;
    cmd_rec->add_option("--op", rec_op, "operator JSON file")->required();
    cmd_rec->add_flag("--raw", rec_raw, "keep the raw shift range (default: normalized, lowest shift 0)");

    // --- operator ---
    auto* cmd_op = app.add_subcommand("operator", "differential operator of a recurrence");
    std::string op_rec;
    cmd_op->add_option("--rec", op_rec, "recurrence JSON file")->required();

    // --- unroll ---
    auto* cmd_unroll = app.add_subcommand("unroll", "exact terms v_0..v_N of a recurrence");
    std::string un_rec, un_init, un_patch;
    long un_N = 10;
    cmd_unroll->add_option("--rec", un_rec, "recurrence JSON file")->required();
    cmd_unroll->add_option("--init", un_init, "base values, e.g. 0=1,1=5")->required();
    cmd_unroll->add_option("--patch", un_patch, "patch values for singular indices, e.g. 4=7/2");
    cmd_unroll->add_option("--N", un_N, "last index to compute (default 10)");

    // --- residual ---
    auto* cmd_res = app.add_subcommand("residual", "polynomial image L(sum a_n z^n) of a sequence");
    std::string res_op, res_seq;
    cmd_res->add_option("--op", res_op, "operator JSON file")->required();
    cmd_res->add_option("--seq", res_seq, "sequence file")->required();

    // --- shift / invert / pullback ---
    auto* cmd_shift = app.add_subcommand("shift", "operator with coefficients B_i(z + alpha)");
    std::string sh_op, sh_alpha = "0";
    cmd_shift->add_option("--op", sh_op, "operator JSON file")->required();
    cmd_shift->add_option("--alpha", sh_alpha, "rational shift (default 0)");

    auto* cmd_inv = app.add_subcommand("invert", "operator under the change of variable z -> 1/z");
    std::string inv_op;
    cmd_inv->add_option("--op", inv_op, "operator JSON file")->required();

    auto* cmd_pull = app.add_subcommand("pullback", "operator under the change of variable z = x^b");
    std::string pull_op;
    unsigned long pull_b = 1;
    cmd_pull->add_option("--op", pull_op, "operator JSON file")->required();
    cmd_pull->add_option("--b", pull_b, "pullback exponent b >= 1")->required();

    // --- shear ---
    auto* cmd_shear = app.add_subcommand("shear", "shearing of the companion system to a nilpotent residue");
    std::string shear_op;
    cmd_shear->add_option("--op", shear_op, "operator JSON file")->required();

    // --- frobenius ---
    auto* cmd_frob = app.add_subcommand("frobenius", "truncated Frobenius solution U(z) z^N of the sheared system");
    std::string frob_op;
    long frob_n = 10;
    cmd_frob->add_option("--op", frob_op, "operator JSON file")->required();
    cmd_frob->add_option("--n", frob_n, "series order (default 10)");

    // --- cdcheck ---
    auto* cmd_cd = app.add_subcommand("cdcheck", "per-prime valuation audit of the Frobenius coefficients");
    std::string cd_op;
    long cd_n = 50;
    unsigned long cd_pmin = 2, cd_pmax = 47;
    cmd_cd->add_option("--op", cd_op, "operator JSON file")->required();
    cmd_cd->add_option("--n", cd_n, "series order to audit (default 50)");
    cmd_cd->add_option("--pmin", cd_pmin, "smallest prime (default 2)");
    cmd_cd->add_option("--pmax", cd_pmax, "largest prime (default 47)");

    // --- delta ---
    auto* cmd_delta = app.add_subcommand("delta", "running denominators delta_n of a sequence");
    std::string delta_seq;
    long delta_N = -1;
    cmd_delta->add_option("--seq", delta_seq, "sequence file")->required();
    cmd_delta->add_option("--N", delta_N, "last index (default: whole file)");

    // --- certify ---
    auto* cmd_cert = app.add_subcommand("certify", "check delta_n | D_{bn+b0}^s C^(n+1) on a range");
    std::string cert_seq, cert_C = "1", cert_expect;
    unsigned long cert_s = 0, cert_b = 1, cert_b0 = 0;
    long cert_N = -1;
    cmd_cert->add_option("--seq", cert_seq, "sequence file")->required();
    cmd_cert->add_option("--s", cert_s, "exponent of D (default 0)");
    cmd_cert->add_option("--b", cert_b, "index scale b (default 1)");
    cmd_cert->add_option("--b0", cert_b0, "index offset b0 (default 0)");
    cmd_cert->add_option("--C", cert_C, "geometric part C (default 1)");
    cmd_cert->add_option("--N", cert_N, "range (default: whole file)");
    cmd_cert->add_option("--expect", cert_expect, "pass|fail: exit 1 when the status differs")
        ->check(CLI::IsMember({"pass", "fail"}));

    // --- infer ---
    auto* cmd_infer = app.add_subcommand("infer", "least s over a prime window; optionally the small-prime C");
    std::string infer_seq, infer_small;
    unsigned long infer_b = 1, infer_b0 = 0, infer_cap = 8;
    unsigned long infer_pmin = 2, infer_pmax = 97;
    long infer_N = -1;
    cmd_infer->add_option("--seq", infer_seq, "sequence file")->required();
    cmd_infer->add_option("--b", infer_b, "index scale b (default 1)");
    cmd_infer->add_option("--b0", infer_b0, "index offset b0 (default 0)");
    cmd_infer->add_option("--N", infer_N, "range (default: whole file)");
    cmd_infer->add_option("--pmin", infer_pmin, "window start (default 2)");
    cmd_infer->add_option("--pmax", infer_pmax, "window end (default 97)");
    cmd_infer->add_option("--cap", infer_cap, "largest s to consider (default 8)");
    cmd_infer->add_option("--small-primes", infer_small, "comma list, e.g. 2,3: also infer C over these");

    // --- pcurv ---
    auto* cmd_pc = app.add_subcommand("pcurv", "p-curvature nilpotence verdicts over a prime window");
    std::string pc_op, pc_expect;
    unsigned long pc_pmin = 2, pc_pmax = 47;
    cmd_pc->add_option("--op", pc_op, "operator JSON file")->required();
    cmd_pc->add_option("--pmin", pc_pmin, "window start (default 2)");
    cmd_pc->add_option("--pmax", pc_pmax, "window end (default 47)");
    cmd_pc->add_option("--expect", pc_expect, "nilpotent|non-nilpotent: exit 1 when any good prime differs")
        ->check(CLI::IsMember({"nilpotent", "non-nilpotent"}));

    // --- theorem1 ---
    auto* cmd_t1 = app.add_subcommand("theorem1", "full pipeline: reduction, shearing, Frobenius, CD audit, certificate");
    std::string t1_op, t1_seq;
    long t1_N = -1;
    unsigned long t1_pmin = 5, t1_pmax = 97;
    cmd_t1->add_option("--op", t1_op, "operator JSON file")->required();
    cmd_t1->add_option("--seq", t1_seq, "sequence file with the solution coefficients")->required();
    cmd_t1->add_option("--N", t1_N, "range (default: whole file)");
    cmd_t1->add_option("--pmin", t1_pmin, "CD window start (default 5)");
    cmd_t1->add_option("--pmax", t1_pmax, "CD window end (default 97)");

    CLI11_PARSE(app, argc, argv);

    if (cmd_exp->parsed()) {
        const DiffOp L = load_operator(exp_op);
        // reduce every point to 0 of a transformed operator, then describe that
        DiffOp local = L;
        ExponentReport rep;
        if (exp_inf) {
            local = invert(L);
            rep = exponents_at_zero(local);
            rep.at_infinity = true;
        } else if (!exp_at.empty()) {
            const Rational alpha = rational_from_string(exp_at, "--at");
            local = shift(L, alpha);
            rep = exponents_at_zero(local);
            rep.point = alpha;
        } else {
            rep = exponents_at_zero(local);
        }
        emit(exponent_report_to_json(rep), as_json, describe_exponents(rep, local));
        return kExitOk;
    }

    if (cmd_rec->parsed()) {
        const DiffOp L = load_operator(rec_op);
        const Recurrence r = rec_raw ? to_recurrence(L) : normalized(to_recurrence(L));
        emit(recurrence_to_json(r), as_json, describe_recurrence(r));
        return kExitOk;
    }

    if (cmd_op->parsed()) {
        const Recurrence r = load_recurrence(op_rec);
        const DiffOp L = to_operator(r);
        std::ostringstream os;
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
            os << "B_" << i << " = " << poly_to_string(L.coeffs[i], L.variable) << "\n";
        emit(diffop_to_json(L), as_json, os.str());
        return kExitOk;
    }

    if (cmd_unroll->parsed()) {
        const Recurrence r = load_recurrence(un_rec);
        InitialData init;
        init.base = parse_assignments(un_init, "--init");
        init.patch = parse_assignments(un_patch, "--patch");
        const std::vector<Rational> v = unroll(r, init, un_N);
        json arr = json::array();
        for (const auto& x : v) arr.push_back(x.str());
        emit(arr, as_json, sequence_to_text(v));
        return kExitOk;
    }

    if (cmd_res->parsed()) {
        const DiffOp L = load_operator(res_op);
        const Poly p = residual(L, load_sequence(res_seq));
        emit(poly_to_json(p), as_json, poly_to_string(p, L.variable) + "\n");
        return kExitOk;
    }

    if (cmd_shift->parsed()) {
        const DiffOp L = shift(load_operator(sh_op), rational_from_string(sh_alpha, "--alpha"));
        std::ostringstream os;
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
            os << "B_" << i << " = " << poly_to_string(L.coeffs[i], L.variable) << "\n";
        emit(diffop_to_json(L), as_json, os.str());
        return kExitOk;
    }

    if (cmd_inv->parsed()) {
        const DiffOp L = invert(load_operator(inv_op));
        std::ostringstream os;
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
            os << "B_" << i << " = " << poly_to_string(L.coeffs[i], L.variable) << "\n";
        emit(diffop_to_json(L), as_json, os.str());
        return kExitOk;
    }

    if (cmd_pull->parsed()) {
        const DiffOp L = pullback_power(load_operator(pull_op), pull_b);
        std::ostringstream os;
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
            os << "B_" << i << " = " << poly_to_string(L.coeffs[i], L.variable) << "\n";
        emit(diffop_to_json(L), as_json, os.str());
        return kExitOk;
    }

    if (cmd_shear->parsed()) {
        const DiffOp L = load_operator(shear_op);
        const ShearingResult sh = shear(companion(L));
        std::ostringstream os;
        os << "steps: " << sh.steps << "\nb0: " << sh.b0 << "\nA_sheared:\n";
        for (std::size_t i = 0; i < sh.sheared.A.rows(); ++i) {
            os << "  [";
            for (std::size_t j = 0; j < sh.sheared.A.cols(); ++j)
                os << (j ? ", " : " ") << ratfun_to_string(sh.sheared.A.at(i, j), L.variable);
            os << " ]\n";
        }
        emit(shearing_to_json(sh), as_json, os.str());
        return kExitOk;
    }

    if (cmd_frob->parsed()) {
        const DiffOp L = load_operator(frob_op);
        const ShearingResult sh = shear(companion(L));
        const FrobeniusSeries fs = frobenius_series(sh.sheared, static_cast<std::size_t>(frob_n));
        std::ostringstream os;
        os << "residue nilpotent, order " << fs.U.size() - 1 << " series computed\n";
        emit(frobenius_to_json(fs), as_json, os.str());
        return kExitOk;
    }

    if (cmd_cd->parsed()) {
        const DiffOp L = load_operator(cd_op);
        const ShearingResult sh = shear(companion(L));
        const FrobeniusSeries fs = frobenius_series(sh.sheared, static_cast<std::size_t>(cd_n));
        json arr = json::array();
        std::ostringstream os;
        for (unsigned long p : primes_in(PrimeWindow(cd_pmin, cd_pmax))) {
            try {
                const CDBoundReport rep = cd_bound_check(fs, p, static_cast<std::size_t>(cd_n));
                arr.push_back(cd_report_to_json(rep));
                os << "p = " << p << ": exponent " << rep.exponent << ", " << rep.violations.size()
                   << " violation(s)\n";
            } catch (const std::domain_error& e) {
                arr.push_back(json{{"p", p}, {"skipped", e.what()}});
                os << "p = " << p << ": skipped (" << e.what() << ")\n";
            }
        }
        emit(arr, as_json, os.str());
        return kExitOk;
    }

    if (cmd_delta->parsed()) {
        const std::vector<Rational> seq = load_sequence(delta_seq);
        std::vector<Rational> prefix = seq;
        if (delta_N >= 0 && delta_N + 1 < static_cast<long>(seq.size()))
            prefix.assign(seq.begin(), seq.begin() + delta_N + 1);
        const std::vector<Int> deltas = delta_sequence(prefix);
        json arr = json::array();
        std::ostringstream os;
        for (std::size_t n = 0; n < deltas.size(); ++n) {
            arr.push_back(deltas[n].str());
            os << n << "\t" << deltas[n].str() << "\n";
        }
        emit(arr, as_json, os.str());
        return kExitOk;
    }

    if (cmd_cert->parsed()) {
        const std::vector<Rational> seq = load_sequence(cert_seq);
        if (cert_N < 0) cert_N = static_cast<long>(seq.size()) - 1;
        Int C(1L);
        try {
            C = Int(cert_C);
        } catch (const std::invalid_argument& e) {
            throw io_error(std::string("--C: ") + e.what());
        }
        const DenomCertificate cert = certify(seq, cert_s, cert_b, cert_b0, C, cert_N);
        emit(certificate_to_json(cert), as_json, describe_certificate(cert));
        if (!cert_expect.empty() && (cert_expect == "pass") != cert.pass) return kExitExpectationFailed;
        return kExitOk;
    }

    if (cmd_infer->parsed()) {
        const std::vector<Rational> seq = load_sequence(infer_seq);
        if (infer_N < 0) infer_N = static_cast<long>(seq.size()) - 1;
        const auto s = infer_s(seq, infer_b, infer_b0, infer_N, PrimeWindow(infer_pmin, infer_pmax), infer_cap);
        json j;
        std::ostringstream os;
        if (s) {
            j["s"] = *s;
            os << "s = " << *s << "\n";
        } else {
            j["s"] = nullptr;
            os << "s: none up to cap " << infer_cap << "\n";
        }
        if (!infer_small.empty() && s) {
            std::vector<unsigned long> small;
            std::size_t pos = 0;
            while (pos < infer_small.size()) {
                std::size_t comma = infer_small.find(',', pos);
                if (comma == std::string::npos) comma = infer_small.size();
                const std::string piece = infer_small.substr(pos, comma - pos);
                try {
                    small.push_back(std::stoul(piece));
                } catch (...) {
                    throw io_error("--small-primes: malformed entry '" + piece + "'");
                }
                pos = comma + 1;
            }
            const Int C = infer_C(seq, *s, infer_b, infer_b0, infer_N, small);
            j["C"] = C.str();
            os << "C = " << C.str() << "\n";
        }
        emit(j, as_json, os.str());
        return kExitOk;
    }

    if (cmd_pc->parsed()) {
        const DiffOp L = load_operator(pc_op);
        const std::vector<PCurvatureReport> reports = nilpotence_report(L, PrimeWindow(pc_pmin, pc_pmax));
        std::ostringstream os;
        os << "oracle evidence (nilpotence of the p-curvature per prime):\n";
        bool mismatch = false;
        for (const auto& r : reports) {
            os << "p = " << r.p << ": ";
            switch (r.status) {
                case PCurvatureReport::Status::nilpotent: os << "nilpotent"; break;
                case PCurvatureReport::Status::non_nilpotent:
                    os << "non-nilpotent (" << r.charpoly_nonzero_terms << " charpoly terms)";
                    break;
                case PCurvatureReport::Status::skipped: os << "skipped: " << r.reason; break;
            }
            os << "\n";
            if (!pc_expect.empty() && r.status != PCurvatureReport::Status::skipped) {
                const bool want_nil = pc_expect == "nilpotent";
                const bool is_nil = r.status == PCurvatureReport::Status::nilpotent;
                if (want_nil != is_nil) mismatch = true;
            }
        }
        emit(pcurvature_reports_to_json(reports), as_json, os.str());
        return mismatch ? kExitExpectationFailed : kExitOk;
    }

    if (cmd_t1->parsed()) {
        const DiffOp L = load_operator(t1_op);
        const std::vector<Rational> seq = load_sequence(t1_seq);
        if (t1_N < 0) t1_N = static_cast<long>(seq.size()) - 1;
        const TheoremOneReport rep = theorem_one_analyze(L, seq, t1_N, PrimeWindow(t1_pmin, t1_pmax));
        std::ostringstream os;
        os << "mu = " << rep.mu << ", s = " << rep.s << ", b = " << rep.b << ", b0 = " << rep.b0
           << ", C = " << rep.C.str() << "\n";
        os << "shear steps: " << rep.shear_steps << ", CD primes checked: " << rep.cd_primes_checked.size()
           << ", skipped: " << rep.cd_primes_skipped.size() << ", CD clean: " << (rep.cd_clean ? "yes" : "no")
           << "\n";
        os << describe_certificate(rep.certificate);
        emit(theorem_one_to_json(rep), as_json, os.str());
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const holoq::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
}
