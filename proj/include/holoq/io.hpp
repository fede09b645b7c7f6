#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "holoq/denomlab.hpp"
#include "holoq/diffop.hpp"
#include "holoq/localsystem.hpp"
#include "holoq/pcurvature.hpp"
#include "holoq/pipeline.hpp"
#include "holoq/poly.hpp"
#include "holoq/ratfun.hpp"
#include "holoq/rational.hpp"
#include "holoq/recurrence.hpp"

namespace holoq {

using json = nlohmann::json;

/// Input-format error with a human-readable location.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

namespace io_detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace io_detail

inline json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = io_detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream os;
        os << source << ":" << line << ":" << col << ": malformed JSON: " << e.what();
        throw io_error(os.str());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---- rationals and polynomials ----

inline Rational rational_from_string(const std::string& s, const std::string& source = "<input>") {
    try {
        return Rational(s);
    } catch (const std::invalid_argument& e) {
        throw io_error(source + ": " + e.what());
    }
}

inline json poly_to_json(const Poly& p) {
    json a = json::array();
    for (long i = 0; i <= p.degree(); ++i) a.push_back(p.coeff(static_cast<std::size_t>(i)).str());
    return a;
}

inline Poly poly_from_json(const json& a, const std::string& source = "<input>") {
    if (!a.is_array()) throw io_error(source + ": polynomial must be an array of rational strings");
    std::vector<Rational> c;
    for (const auto& x : a) {
        if (!x.is_string()) throw io_error(source + ": polynomial coefficients must be strings");
        c.push_back(rational_from_string(x.get<std::string>(), source));
    }
    return Poly(std::move(c));
}

// ---- operators ----

inline json diffop_to_json(const DiffOp& L) {
    json j;
    j["variable"] = L.variable;
    j["order"] = L.order();
    json cs = json::array();
    for (const auto& b : L.coeffs) cs.push_back(poly_to_json(b));
    j["coefficients"] = std::move(cs);
    return j;
}

inline DiffOp diffop_from_json(const json& j, const std::string& source = "<input>") {
    if (!j.is_object() || !j.contains("coefficients"))
        throw io_error(source + ": operator JSON needs a \"coefficients\" array");
    std::vector<Poly> coeffs;
    for (const auto& c : j["coefficients"]) coeffs.push_back(poly_from_json(c, source));
    std::string var = j.value("variable", std::string("z"));
    if (j.contains("order") && j["order"].get<long>() + 1 != static_cast<long>(coeffs.size()))
        throw io_error(source + ": \"order\" disagrees with the coefficient count");
    try {
        return make_diffop(std::move(coeffs), std::move(var));
    } catch (const std::invalid_argument& e) {
        throw io_error(source + ": " + e.what());
    }
}

// ---- recurrences ----

inline json recurrence_to_json(const Recurrence& r) {
    json j;
    j["variable"] = r.variable;
    json shifts = json::object();
    for (const auto& [d, p] : r.q) shifts[std::to_string(d)] = poly_to_json(p);
    j["shifts"] = std::move(shifts);
    j["n_start"] = r.n_start;
    return j;
}

inline Recurrence recurrence_from_json(const json& j, const std::string& source = "<input>") {
    if (!j.is_object() || !j.contains("shifts"))
        throw io_error(source + ": recurrence JSON needs a \"shifts\" object");
    std::map<long, Poly> q;
    for (const auto& [key, val] : j["shifts"].items()) {
        long d = 0;
        try {
            d = std::stol(key);
        } catch (...) {
            throw io_error(source + ": shift key '" + key + "' is not an integer");
        }
        q[d] = poly_from_json(val, source);
    }
    const long n_start = j.value("n_start", 0L);
    try {
        return make_recurrence(std::move(q), n_start, j.value("variable", std::string("n")));
    } catch (const std::invalid_argument& e) {
        throw io_error(source + ": " + e.what());
    }
}

// ---- sequence files ----

/// One rational per line, line number = index. An optional first line may be
/// a '#' comment; blank lines are rejected.
inline std::vector<Rational> sequence_from_text(const std::string& text,
                                                const std::string& source = "<input>") {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);

    std::vector<Rational> out;
    std::size_t lineno = 0;
    for (const auto& line : lines) {
        ++lineno;
        if (lineno == 1 && !line.empty() && line[0] == '#') continue;
        if (line.empty())
            throw io_error(source + ":" + std::to_string(lineno) + ": blank lines are forbidden in sequence files");
        try {
            out.push_back(Rational(line));
        } catch (const std::invalid_argument&) {
            throw io_error(source + ":" + std::to_string(lineno) + ": malformed rational '" + line + "'");
        }
    }
    return out;
}

inline std::string sequence_to_text(const std::vector<Rational>& seq) {
    std::ostringstream os;
    for (const auto& x : seq) os << x.str() << '\n';
    return os.str();
}

// ---- matrices ----

inline json ratfun_to_json(const RatFun& f) {
    json j;
    j["num"] = poly_to_json(f.num());
    j["den"] = poly_to_json(f.den());
    return j;
}

inline RatFun ratfun_from_json(const json& j, const std::string& source = "<input>") {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw io_error(source + ": rational-function JSON needs \"num\" and \"den\"");
    return RatFun(poly_from_json(j["num"], source), poly_from_json(j["den"], source));
}

inline json ratfun_matrix_to_json(const Matrix<RatFun>& m) {
    json j;
    j["size"] = m.rows();
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t jj = 0; jj < m.cols(); ++jj) row.push_back(ratfun_to_json(m.at(i, jj)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline json qmatrix_to_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- reports ----

inline json certificate_to_json(const DenomCertificate& c) {
    json j;
    j["s"] = c.s;
    j["b"] = c.b;
    j["b0"] = c.b0;
    j["C"] = c.C.str();
    j["N"] = c.N;
    j["status"] = c.pass ? "pass" : "fail";
    if (c.witness) {
        json w;
        w["n"] = c.witness->n;
        w["p"] = c.witness->p.str();
        w["deficit"] = c.witness->deficit;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline json cd_report_to_json(const CDBoundReport& r) {
    json j;
    j["p"] = r.p;
    j["mu"] = r.mu;
    j["beta"] = r.beta;
    j["exponent"] = r.exponent;
    json v = json::array();
    for (const auto& viol : r.violations)
        v.push_back(json::array({viol.i, viol.j, viol.n, viol.val}));
    j["violations"] = std::move(v);
    return j;
}

inline json pcurvature_reports_to_json(const std::vector<PCurvatureReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json j;
        j["p"] = r.p;
        switch (r.status) {
            case PCurvatureReport::Status::nilpotent: j["status"] = "nilpotent"; break;
            case PCurvatureReport::Status::non_nilpotent: j["status"] = "non-nilpotent"; break;
            case PCurvatureReport::Status::skipped: j["status"] = "skipped"; break;
        }
        if (r.status == PCurvatureReport::Status::skipped)
            j["reason"] = r.reason;
        else
            j["reason"] = nullptr;
        if (r.charpoly_nonzero_terms >= 0) j["charpoly_nonzero_terms"] = r.charpoly_nonzero_terms;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline json valuation_profile_to_json(const ValuationProfile& prof) {
    json j;
    j["p"] = prof.p;
    json vals = json::array();
    for (const auto& v : prof.values) {
        if (v)
            vals.push_back(*v);
        else
            vals.push_back(nullptr);
    }
    j["values"] = std::move(vals);
    return j;
}

/// Human-readable polynomial, descending powers: "n^3 + 6*n^2 + 12*n + 8".
inline std::string poly_to_string(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        const Rational mag = abs(c);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        const bool unit = mag.is_one();
        if (i == 0) {
            os << mag.str();
        } else {
            if (!unit) os << mag.str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

inline std::string ratfun_to_string(const RatFun& f, const std::string& var) {
    if (f.den() == Poly(1L)) return poly_to_string(f.num(), var);
    return "(" + poly_to_string(f.num(), var) + ")/(" + poly_to_string(f.den(), var) + ")";
}

inline json exponent_report_to_json(const ExponentReport& rep) {
    json j;
    j["point"] = rep.at_infinity ? json("inf") : json(rep.point.str());
    json es = json::array();
    for (const auto& e : rep.exponents) es.push_back(e.str());
    j["exponents"] = std::move(es);
    j["all_rational"] = rep.all_rational;
    j["regular"] = rep.regular;
    return j;
}

inline json shearing_to_json(const ShearingResult& sh) {
    json j;
    j["b0"] = sh.b0;
    j["steps"] = sh.steps;
    j["H"] = ratfun_matrix_to_json(sh.H);
    j["H_inv"] = ratfun_matrix_to_json(sh.H_inv);
    j["A_sheared"] = ratfun_matrix_to_json(sh.sheared.A);
    return j;
}

inline json frobenius_to_json(const FrobeniusSeries& fs) {
    json j;
    j["residue"] = qmatrix_to_json(fs.residue);
    json us = json::array();
    for (const auto& u : fs.U) us.push_back(qmatrix_to_json(u));
    j["U"] = std::move(us);
    return j;
}

inline json theorem_one_to_json(const TheoremOneReport& rep) {
    json j;
    j["mu"] = rep.mu;
    j["s"] = rep.s;
    j["b"] = rep.b;
    j["b0"] = rep.b0;
    j["C"] = rep.C.str();
    j["N"] = rep.N;
    j["certificate"] = certificate_to_json(rep.certificate);

    json stages;
    json es = json::array();
    for (const auto& e : rep.exponents) es.push_back(e.str());
    stages["exponents"] = std::move(es);
    stages["shear_steps"] = rep.shear_steps;
    json ls = json::array();
    for (const auto& l : rep.ell) ls.push_back(l.str());
    stages["decompose_coordinates"] = std::move(ls);
    json cds = json::array();
    for (const auto& cd : rep.cd_reports) cds.push_back(cd_report_to_json(cd));
    stages["cd_reports"] = std::move(cds);
    stages["cd_primes_checked"] = rep.cd_primes_checked;
    json skips = json::array();
    for (const auto& [p, why] : rep.cd_primes_skipped)
        skips.push_back(json{{"p", p}, {"reason", why}});
    stages["cd_primes_skipped"] = std::move(skips);
    stages["cd_clean"] = rep.cd_clean;
    stages["small_primes"] = rep.small_primes;
    j["stages"] = std::move(stages);
    return j;
}

}  // namespace holoq
