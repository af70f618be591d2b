#ifndef CMC1_IO_HPP
#define CMC1_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "census.hpp"
#include "flatlab.hpp"
#include "frobenius.hpp"
#include "lift.hpp"
#include "moduli.hpp"

namespace cmc1::io {

using json = nlohmann::json;

struct MalformedSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline json to_json(const QPoly& p) {
    json a = json::array();
    for (auto& c : p.coeffs()) a.push_back(c.str());
    return a;
}

inline json to_json(const RationalFunction& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline QPoly poly_from_json(const json& a) {
    if (!a.is_array()) throw MalformedSpec("polynomial must be an array of coefficient strings");
    std::vector<ExactScalar> c;
    for (auto& x : a) {
        if (x.is_string()) c.push_back(ExactScalar::parse(x.get<std::string>()));
        else if (x.is_number_integer()) c.emplace_back(x.get<long>());
        else throw MalformedSpec("coefficient must be a string or an integer");
    }
    return QPoly(std::move(c));
}

inline RationalFunction rf_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num")) throw MalformedSpec("rational function needs {num, den}");
    QPoly den = j.contains("den") ? poly_from_json(j.at("den")) : QPoly(ExactScalar(1));
    if (den.is_zero()) throw MalformedSpec("zero denominator");
    return {poly_from_json(j.at("num")), den};
}

inline json to_json(const moduli::SurfaceSpec& s) {
    json ends = json::array();
    for (auto& e : s.ends) ends.push_back(e.str());
    return {{"genus", s.genus}, {"label", s.label}, {"ends", ends}, {"G", to_json(s.G)}, {"Q", to_json(s.Q)}};
}

/// {genus, ends, G, Q, params, label}; params are carried through untouched.
inline moduli::SurfaceSpec spec_from_json(const json& j) {
    try {
        moduli::SurfaceSpec s;
        s.genus = j.value("genus", 0);
        s.label = j.value("label", std::string());
        for (auto& e : j.at("ends")) s.ends.push_back(SpherePoint::parse(e.get<std::string>()));
        s.G = rf_from_json(j.at("G"));
        s.Q = rf_from_json(j.at("Q"));
        return s;
    } catch (const json::exception& e) {
        throw MalformedSpec(std::string("spec file: ") + e.what());
    } catch (const ParseError& e) {
        throw MalformedSpec(std::string("spec file: ") + e.what());
    }
}

inline moduli::SurfaceSpec read_spec(const std::string& path, json* raw = nullptr) {
    std::ifstream in(path);
    if (!in) throw MalformedSpec("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw MalformedSpec(path + ": " + e.what());
    }
    if (raw) *raw = j;
    return spec_from_json(j);
}

/// 64-bit FNV-1a of the canonical spec serialization.
inline std::string spec_hash(const moduli::SurfaceSpec& s) {
    std::string text = to_json(s).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Serializer with %.17g floats; objects keep nlohmann's sorted key order.
inline void dump17(const json& j, std::ostream& os, int indent = 2, int level = 0) {
    auto pad = [&](int l) { os << '\n' << std::string(static_cast<std::size_t>(indent * l), ' '); };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                pad(level + 1);
                os << json(it.key()).dump() << ": ";
                dump17(it.value(), os, indent, level + 1);
            }
            pad(level);
            os << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) os << ',';
                pad(level + 1);
                dump17(j[k], os, indent, level + 1);
            }
            pad(level);
            os << ']';
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf;
            return;
        }
        default: os << j.dump();
    }
}

inline std::string dump17(const json& j) {
    std::ostringstream os;
    dump17(j, os);
    os << '\n';
    return os.str();
}

inline json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const frobenius::FormVerdict& v, const SpherePoint& end, const RationalFunction& G,
                    const RationalFunction& Q) {
    json j{{"end", end.str()}, {"form", frobenius::name(v.form)}, {"applicable", v.applicable},
           {"gap_class", frobenius::name(v.gap_class)}, {"log_free", v.log_free}};
    j["gap"] = v.gap ? json(v.gap->str()) : json(nullptr);
    if (!v.note.empty()) j["note"] = v.note;
    try {
        auto ode = frobenius::from_form(v.form, G, Q, end);
        auto ind = frobenius::indicial(ode);
        j["lambda1"] = ind.lambda1 ? json(ind.lambda1->str()) : json(nullptr);
        j["lambda2"] = ind.lambda2 ? json(ind.lambda2->str()) : json(nullptr);
        j["log_coeff"] = v.integer_gap ? json(frobenius::log_term(ode).str()) : json(nullptr);
    } catch (const std::exception&) {
        j["lambda1"] = nullptr;
        j["lambda2"] = nullptr;
        j["log_coeff"] = nullptr;
    }
    return j;
}

inline json to_json(const moduli::Analysis& a, const moduli::CurvatureReport& c) {
    json ends = json::array(), umb = json::array();
    for (auto& e : a.ends)
        ends.push_back({{"point", e.point.str()}, {"d", e.d}, {"mu_sharp", e.mu_sharp}, {"slack", e.slack},
                        {"regular_singular", e.regular_singular}});
    for (auto& u : a.umbilics) {
        json x{{"point", u.point.str()}, {"xi", u.xi}};
        if (u.factor) x["factor"] = u.factor->str();
        umb.push_back(x);
    }
    return {{"type", moduli::type_label(a)},
            {"ends", ends},
            {"umbilics", umb},
            {"curvature",
             {{"degG", c.degG},
              {"TA_dual_over_4pi", c.TA_dual_over_4pi},
              {"gauss_bonnet_residual", c.gauss_bonnet_residual},
              {"riemann_roch_residual", c.riemann_roch_residual},
              {"ta_identity_residual", c.ta_identity_residual},
              {"osserman_slack", c.osserman_slack}}}};
}

inline json to_json(const census::CaseRecord& r) {
    json j{{"case_id", r.case_id},
           {"type", r.type_tag},
           {"budget", r.budget == 0 ? "0" : r.budget == 1 ? "4pi" : "8pi"},
           {"reducibility", census::name(r.reducibility)},
           {"verdict", census::name(r.verdict)},
           {"status", r.status}};
    json params = json::object();
    for (auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    if (r.spec) {
        j["spec"] = to_json(*r.spec);
        j["spec_hash"] = spec_hash(*r.spec);
    }
    if (r.secondary_g) j["g"] = to_json(*r.secondary_g);
    if (!r.g_formula.empty()) j["g_formula"] = r.g_formula;
    if (r.designated_end) j["designated_end"] = r.designated_end->str();
    if (!r.citation.empty()) j["citation"] = r.citation;
    if (!r.note.empty()) j["note"] = r.note;
    json cons = json::array();
    for (auto& c : r.constraints) {
        json p = json::array();
        for (auto& x : c.payload) p.push_back(x.str());
        cons.push_back({{"kind", census::name(c.kind)}, {"expression", c.expression}, {"payload", p},
                        {"satisfied", c.satisfied}});
    }
    j["constraints"] = cons;
    json lts = json::array();
    for (auto& lt : r.log_terms) {
        json roots = json::array(), adm = json::array(), iso = json::array();
        for (auto& x : lt.roots) roots.push_back(x.str());
        for (auto& x : lt.admissible) adm.push_back(x.str());
        for (auto& x : lt.isolated)
            iso.push_back({{"center", complex_json(x.center)}, {"radius", x.radius.get_d()}, {"real", x.real}});
        lts.push_back({{"end", lt.end.str()}, {"form", frobenius::name(lt.form)}, {"c", lt.c.str()}, {"roots", roots},
                       {"admissible_roots", adm}, {"isolated_roots", iso}});
    }
    j["log_terms"] = lts;
    json checks = json::array();
    for (auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    return j;
}

inline json to_json(const bryant::Mat& m) {
    json a = json::array();
    for (auto& row : m)
        for (auto v : row) a.push_back(complex_json(v));
    return a;
}

inline json to_json(const bryant::MonodromyReport& rep) {
    json loops = json::array();
    for (auto& L : rep.loops)
        loops.push_back({{"end", L.end},
                         {"base", complex_json(L.base)},
                         {"radius", L.radius},
                         {"rho", to_json(L.rho)},
                         {"deviation", L.deviation},
                         {"sign", L.sign},
                         {"det_residual", L.det_residual},
                         {"eigenphase_gap", bryant::eigenphase_gap(L.rho)}});
    return {{"loops", loops},
            {"class", bryant::name(rep.cls)},
            {"product_deviation", rep.product_deviation},
            {"commutator", rep.commutator},
            {"unimodularity", rep.unimodularity},
            {"max_det_drift_per_length", rep.max_drift_per_length}};
}

inline json to_json(const flatlab::PeriodReport& p) {
    json vals = json::object();
    for (auto& [k, v] : p.values) vals[k] = v;
    return {{"values", vals},
            {"jacobian", {{p.jacobian[0][0], p.jacobian[0][1]}, {p.jacobian[1][0], p.jacobian[1][1]}}},
            {"determinant", p.determinant},
            {"residual", p.residual},
            {"solved_at", {p.solved_at[0], p.solved_at[1]}},
            {"iterations", p.iterations},
            {"converged", p.converged}};
}

inline json to_json(const std::vector<census::TableRow>& rows) {
    json a = json::array();
    for (auto& r : rows) {
        auto triples = [](const std::vector<census::Triple>& t) {
            json x = json::array();
            for (auto& e : t) x.push_back({{"reducibility", e.reducibility}, {"status", e.status}});
            return x;
        };
        a.push_back({{"type", r.type},
                     {"budget", r.budget == 0 ? "0" : r.budget == 1 ? "4pi" : "8pi"},
                     {"reference", triples(r.reference)},
                     {"computed", triples(r.computed)},
                     {"cases", r.cases},
                     {"match", r.matches()}});
    }
    return a;
}

}  // namespace cmc1::io

#endif
