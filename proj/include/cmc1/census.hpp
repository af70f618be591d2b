#ifndef CMC1_CENSUS_HPP
#define CMC1_CENSUS_HPP

#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <thread>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elliptic.hpp"
#include "flatlab.hpp"
#include "frobenius.hpp"
#include "moduli.hpp"
#include "rootiso.hpp"

namespace cmc1::census {

using frobenius::Form;
using cd = std::complex<double>;

struct ConstraintViolation : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Reducibility { irreducible, H1, H3, reducible, unspecified };
enum class Verdict { verified, nonexistent, external, unknown };

inline const char* name(Reducibility r) {
    switch (r) {
        case Reducibility::irreducible: return "irreducible";
        case Reducibility::H1: return "H1";
        case Reducibility::H3: return "H3";
        case Reducibility::reducible: return "reducible";
        default: return "";
    }
}

inline const char* name(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::nonexistent: return "nonexistent";
        case Verdict::external: return "external";
        default: return "unknown";
    }
}

struct ThetaConstraint {
    enum class Kind { equals, sqrt_real_non_integer, sqrt_integer_ge_2, excluded_set };
    Kind kind = Kind::equals;
    std::string expression;
    std::vector<ExactScalar> payload;
    bool satisfied = false;
};

inline const char* name(ThetaConstraint::Kind k) {
    switch (k) {
        case ThetaConstraint::Kind::equals: return "equals";
        case ThetaConstraint::Kind::sqrt_real_non_integer: return "sqrt-real-non-integer";
        case ThetaConstraint::Kind::sqrt_integer_ge_2: return "sqrt-integer-ge-2";
        default: return "excluded-set";
    }
}

/// sqrt(r) in R \ Z, decided exactly.
inline ThetaConstraint sqrt_real_non_integer(const ExactScalar& r, std::string expr) {
    ThetaConstraint c{ThetaConstraint::Kind::sqrt_real_non_integer, std::move(expr), {r}, false};
    if (!r.is_real() || r.sign() <= 0) return c;
    auto s = r.sqrt();
    c.satisfied = !(s && s->is_integer());
    return c;
}

inline ThetaConstraint sqrt_integer_ge_2(const ExactScalar& r, std::string expr) {
    ThetaConstraint c{ThetaConstraint::Kind::sqrt_integer_ge_2, std::move(expr), {r}, false};
    if (!r.is_rational() || r.sign() <= 0) return c;
    auto s = r.sqrt();
    c.satisfied = s && s->is_integer() && (*s - ExactScalar(2)).sign() >= 0;
    return c;
}

inline ThetaConstraint excluded_set(const ExactScalar& x, std::vector<ExactScalar> bad, std::string expr) {
    ThetaConstraint c{ThetaConstraint::Kind::excluded_set, std::move(expr), bad, true};
    for (auto& b : bad)
        if (b == x) c.satisfied = false;
    c.payload.insert(c.payload.begin(), x);
    return c;
}

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// c(theta) at one end in one equation form.
struct LogTermData {
    SpherePoint end;
    Form form = Form::E0;
    ParamScalar c;
    std::vector<ExactScalar> roots;       // distinct rational roots found exactly
    std::vector<ExactScalar> admissible;  // roots with theta outside the excluded set
    std::vector<IsolatedRoot> isolated;   // certified disks for the remaining factor
};

struct CaseRecord {
    std::string case_id;
    std::string type_tag;
    int budget = 2;  // TA(f#) / 4pi
    Reducibility reducibility = Reducibility::unspecified;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<moduli::SurfaceSpec> spec;
    std::optional<RationalFunction> secondary_g;
    std::string g_formula;
    std::optional<SpherePoint> designated_end;
    Verdict verdict = Verdict::unknown;
    std::string status;  // Table 1 annotation
    std::string citation;
    std::string note;
    std::vector<ThetaConstraint> constraints;
    std::vector<LogTermData> log_terms;
    std::vector<Check> checks;

    bool all_passed() const {
        for (auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void add(std::string n, bool ok, std::string detail = {}) { checks.push_back({std::move(n), ok, std::move(detail)}); }
    void param(std::string k, const ExactScalar& v) { params.emplace_back(std::move(k), v.str()); }
    void param(std::string k, std::string v) { params.emplace_back(std::move(k), std::move(v)); }
};

namespace detail {

inline RationalFunction z() { return RationalFunction::z(); }
inline RationalFunction K(const ExactScalar& c) { return RationalFunction(c); }
inline RationalFunction K(long n, long d = 1) { return RationalFunction(ExactScalar::rational(n, d)); }
inline SpherePoint inf() { return SpherePoint::infinity(); }

inline moduli::SurfaceSpec make_spec(const std::string& label, RationalFunction G, RationalFunction Q,
                                     std::vector<SpherePoint> ends) {
    moduli::SurfaceSpec s;
    s.label = label;
    s.G = std::move(G);
    s.Q = std::move(Q);
    s.ends = std::move(ends);
    return s;
}

inline void check_moduli(CaseRecord& rec) {
    try {
        auto a = moduli::analyze(*rec.spec);
        std::string label = moduli::type_label(a);
        rec.add("type", label == rec.type_tag, label);
        auto cr = moduli::curvature_report(0, rec.spec->G.degree(), a.ends, a.umbilics);
        rec.add("curvature identities", cr.gauss_bonnet_residual == 0 && cr.riemann_roch_residual == 0 &&
                                            cr.ta_identity_residual == 0 && cr.osserman_slack >= 0,
                "TA/4pi = " + std::to_string(cr.TA_dual_over_4pi) + ", Osserman slack " +
                    std::to_string(cr.osserman_slack));
        rec.add("dual curvature budget", cr.TA_dual_over_4pi == rec.budget);
    } catch (const std::exception& e) {
        rec.add("moduli analysis", false, e.what());
    }
}

inline void check_schwarzian(CaseRecord& rec) {
    const auto& s = *rec.spec;
    RationalFunction lhs = schwarzian(*rec.secondary_g) - schwarzian(s.G);
    bool ok = lhs == K(2) * s.Q;
    rec.add("S(g) - S(G) = 2Q", ok, ok ? "exact" : "residual " + (lhs - K(2) * s.Q).str());
}

/// Every finite-order end: the three forms agree and are single-valued.
inline void check_h3_ends(CaseRecord& rec) {
    const auto& s = *rec.spec;
    for (auto& e : s.ends) {
        if (differential_order_at(s.Q, 2, e) < -2) continue;
        auto r = frobenius::equivalence_report(s.G, s.Q, e);
        bool sv = true;
        for (auto& v : r.forms) sv = sv && v.single_valued();
        rec.add("end " + e.str() + ": integer gap and log-free in all forms", r.consistent && sv);
    }
}

/// The designated end has a real non-integer gap in all forms; others report their gap.
inline void check_h1_end(CaseRecord& rec, const SpherePoint& end) {
    const auto& s = *rec.spec;
    rec.designated_end = end;
    auto r = frobenius::equivalence_report(s.G, s.Q, end);
    bool ok = r.consistent;
    std::string gap;
    for (auto& v : r.forms) {
        ok = ok && v.gap_class == frobenius::GapClass::real_non_integer;
        if (v.gap) gap = v.gap->str();
    }
    rec.add("end " + end.str() + ": real non-integer gap", ok, "gap " + gap);
    std::string others;
    for (auto& e : s.ends) {
        if (e == end || differential_order_at(s.Q, 2, e) < -2) continue;
        auto v = frobenius::verdict_for(Form::E0, s.G, s.Q, e);
        others += " " + e.str() + (v.single_valued() ? ":integral" : ":non-integral");
    }
    if (!others.empty()) rec.note += "other ends" + others;
}

inline LogTermData theta_log_term(Form f, const frobenius::ThetaFamily& fam, const SpherePoint& end,
                                  std::vector<ExactScalar> excluded = {ExactScalar(0)}) {
    LogTermData lt;
    lt.end = end;
    lt.form = f;
    auto ode = frobenius::from_form_param(f, fam, end);
    lt.c = frobenius::log_term_theta_poly(ode);
    QPoly cp = as_poly(lt.c);
    if (cp.degree() < 1) return lt;
    QPoly rest = squarefree_part(cp);
    for (auto& r : rational_roots(rest)) {
        lt.roots.push_back(r);
        if (std::find(excluded.begin(), excluded.end(), r) == excluded.end()) lt.admissible.push_back(r);
        rest = rest / QPoly::linear(r);
    }
    if (rest.degree() > 0) lt.isolated = isolate_squarefree(rest);
    std::sort(lt.roots.begin(), lt.roots.end(), [](auto& a, auto& b) { return (a - b).sign() < 0; });
    return lt;
}

inline std::string roots_str(const std::vector<ExactScalar>& v) {
    std::string s = "{";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
    return s + "}";
}

inline void finalize(CaseRecord& rec, Verdict target) { rec.verdict = rec.all_passed() ? target : Verdict::unknown; }

/// f', f'', f''' by the Cauchy integral on a circle of radius r.
inline std::array<cd, 3> cauchy_derivatives(const std::function<cd(cd)>& f, cd z0, double r, int N = 64) {
    std::array<cd, 3> d{};
    for (int k = 0; k < N; ++k) {
        cd w = std::polar(1.0, 2 * M_PI * k / N);
        cd v = f(z0 + r * w);
        d[0] += v / w;
        d[1] += v / (w * w);
        d[2] += v / (w * w * w);
    }
    d[0] /= double(N) * r;
    d[1] *= 2.0 / (double(N) * r * r);
    d[2] *= 6.0 / (double(N) * r * r * r);
    return d;
}

}  // namespace detail

// ---------------------------------------------------------------- TA <= 4 pi

enum class FourPiCase { horosphere, enneper_dual, catenoid_cousin, warped_catenoid };

struct FourPiParams {
    ExactScalar theta = 1;  // enneper_dual
    ExactScalar a = 1, b = 1;
    ExactScalar mu = ExactScalar::rational(1, 2);  // catenoid cousin exponent
    long l = 2;                                    // warped exponent
};

inline CaseRecord build_4pi(FourPiCase which, const FourPiParams& P = {}) {
    using namespace detail;
    CaseRecord rec;
    rec.budget = 1;
    switch (which) {
        case FourPiCase::horosphere: {
            rec.case_id = "horosphere";
            rec.type_tag = "O(0)";
            rec.budget = 0;
            rec.reducibility = Reducibility::H3;
            rec.g_formula = "g constant";
            RationalFunction G = K(1);
            rec.add("TA = 4 pi deg G = 0", G.degree() == 0);
            rec.add("Q = 0", true);
            rec.status = "classified^0";
            rec.note = "f and f# are horospheres";
            finalize(rec, Verdict::verified);
            return rec;
        }
        case FourPiCase::enneper_dual: {
            if (P.theta.is_zero()) throw ConstraintViolation("theta must be nonzero");
            rec.case_id = "enneper_dual";
            rec.type_tag = "O(-4)";
            rec.reducibility = Reducibility::H3;
            rec.param("theta", P.theta);
            rec.spec = make_spec("O(-4)", z(), K(P.theta), {inf()});
            rec.g_formula = "tan(sqrt(theta) z)";
            check_moduli(rec);
            // S(g) - S(z) = 2 theta with g from the formula, derivatives by contour integrals
            cd a = std::sqrt(P.theta.to_complex());
            auto g = [a](cd w) { return std::tan(a * w); };
            double worst = 0;
            for (int k = 0; k < 20; ++k) {
                cd z0 = std::polar(0.3 + 0.02 * k, 0.7 * k);
                double pole = std::abs(M_PI / 2.0 / a);
                double r = std::min(0.05, 0.2 * std::abs(pole - std::abs(z0)));
                auto d = cauchy_derivatives(g, z0, r);
                cd S = d[2] / d[0] - 1.5 * (d[1] / d[0]) * (d[1] / d[0]);
                worst = std::max(worst, std::abs(S - 2.0 * P.theta.to_complex()));
            }
            rec.add("S(g) - S(G) = 2Q at 20 samples (numeric)", worst < 1e-10, "max residual " + std::to_string(worst));
            rec.status = "classified";
            finalize(rec, Verdict::verified);
            return rec;
        }
        case FourPiCase::catenoid_cousin: {
            const ExactScalar& mu = P.mu;
            if (!mu.is_real() || mu.sign() <= 0 || mu == ExactScalar(1))
                throw ConstraintViolation("catenoid cousin needs mu in R+ \\ {1}");
            if (P.a.is_zero()) throw ConstraintViolation("a must be nonzero");
            rec.case_id = "catenoid_cousin";
            rec.type_tag = "O(-2,-2)";
            rec.reducibility = mu.is_integer() ? Reducibility::H3 : Reducibility::H1;
            rec.param("a", P.a);
            rec.param("mu", mu);
            ExactScalar th = (ExactScalar(1) - mu * mu) / ExactScalar(4);
            rec.spec = make_spec("O(-2,-2)", z(), K(th) / z().pow(2), {0, inf()});
            rec.g_formula = "a z^mu";
            check_moduli(rec);
            // g''/g' = (mu - 1)/z, S = (g''/g')' - (g''/g')^2 / 2
            RationalFunction L = K(mu - ExactScalar(1)) / z();
            RationalFunction S = L.derivative() - K(1, 2) * L * L;
            rec.add("S(g) - S(G) = 2Q", S == K(2) * rec.spec->Q, "Q = " + rec.spec->Q.str());
            rec.status = "classified";
            finalize(rec, Verdict::verified);
            return rec;
        }
        case FourPiCase::warped_catenoid: {
            if (P.l < 2) throw ConstraintViolation("warped catenoid cousin needs l in Z+ \\ {1}");
            if (P.a.is_zero() || P.b.is_zero()) throw ConstraintViolation("a, b must be nonzero");
            rec.case_id = "warped_catenoid";
            rec.type_tag = "O(-2,-2)";
            rec.reducibility = Reducibility::H3;
            rec.param("a", P.a);
            rec.param("b", P.b);
            rec.param("l", std::to_string(P.l));
            ExactScalar th = ExactScalar(1 - P.l * P.l) / ExactScalar(4);
            rec.spec = make_spec("O(-2,-2)", z(), K(th) / z().pow(2), {0, inf()});
            rec.secondary_g = K(P.a) * z().pow(static_cast<int>(P.l)) + K(P.b);
            rec.g_formula = "a z^l + b";
            check_moduli(rec);
            check_schwarzian(rec);
            check_h3_ends(rec);
            rec.status = "classified";
            finalize(rec, Verdict::verified);
            return rec;
        }
    }
    throw std::invalid_argument("unknown 4pi case");
}

// ---------------------------------------------------------------- closed cases

inline frobenius::ThetaFamily family_o112() {
    using namespace detail;
    return {((z() - K(1)) / z()).pow(2), RationalFunction(), K(1) / (z() * (z() - K(1)))};
}
inline frobenius::ThetaFamily family_o14() {
    using namespace detail;
    return {z().pow(2), RationalFunction(), K(1) / (z() * (z() - K(1)).pow(4))};
}
inline frobenius::ThetaFamily family_o13() {
    using namespace detail;
    return {z().pow(2), RationalFunction(), K(1) / z()};
}
inline frobenius::ThetaFamily family_o122(const ExactScalar& p) {
    using namespace detail;
    return {z().pow(2), RationalFunction(), K(1) / (z() * (z() - K(1)).pow(2) * (z() - K(p)).pow(2))};
}

namespace detail {

/// Closed H3 case: unique admissible theta shared by the listed ends.
inline CaseRecord unique_theta_case(const std::string& id, const std::string& type, const frobenius::ThetaFamily& fam,
                                    const std::vector<SpherePoint>& ends, const std::vector<SpherePoint>& log_ends,
                                    const ExactScalar& expected) {
    CaseRecord rec;
    rec.case_id = id;
    rec.type_tag = type;
    rec.reducibility = Reducibility::H3;
    std::optional<ExactScalar> common;
    bool unique = true;
    for (auto& e : log_ends) {
        auto lt = theta_log_term(Form::E0, fam, e);
        unique = unique && lt.admissible.size() == 1 && lt.isolated.empty();
        if (!lt.admissible.empty()) {
            if (!common) common = lt.admissible[0];
            unique = unique && *common == lt.admissible[0];
        }
        rec.add("end " + e.str() + ": admissible roots of c(theta) = " + roots_str(lt.admissible),
                lt.admissible.size() == 1 && lt.admissible[0] == expected, "c = " + lt.c.str());
        rec.log_terms.push_back(std::move(lt));
    }
    if (!common) throw std::logic_error(id + ": no admissible theta");
    rec.param("theta", *common);
    rec.spec = make_spec(type, fam.G, fam.at(*common), ends);
    check_moduli(rec);
    check_h3_ends(rec);
    rec.status = unique ? "classified^0" : "classified";
    finalize(rec, Verdict::verified);
    return rec;
}

}  // namespace detail

inline CaseRecord o112() {
    auto rec = detail::unique_theta_case("o112", "O(-1,-1,-2)", family_o112(), {0, 1, SpherePoint::infinity()},
                                         {0, 1}, ExactScalar(-2));
    rec.citation = "unique theta = -2";
    return rec;
}

inline CaseRecord o14() {
    auto rec = detail::unique_theta_case("o14", "O(-1,-4)", family_o14(), {0, 1}, {0}, ExactScalar(-4));
    rec.citation = "unique theta = -4";
    return rec;
}

inline CaseRecord o13() {
    using namespace detail;
    CaseRecord rec;
    rec.case_id = "o13";
    rec.type_tag = "O(-1,-3)";
    auto fam = family_o13();
    auto lt = theta_log_term(Form::E0, fam, 0);
    auto ind = frobenius::indicial(frobenius::from_form_param(Form::E0, fam, 0));
    rec.add("indicial roots 3/2, -1/2 at z = 0",
            ind.lambda1 && ind.lambda1->constant() == ExactScalar::rational(3, 2) &&
                ind.lambda2->constant() == ExactScalar::rational(-1, 2));
    rec.add("root set of c(theta) = {0}", lt.roots == std::vector<ExactScalar>{ExactScalar(0)} && lt.isolated.empty(),
            "c = " + lt.c.str());
    rec.add("no admissible theta", lt.admissible.empty());
    rec.log_terms.push_back(std::move(lt));
    rec.spec = make_spec("O(-1,-3)", fam.G, fam.at(1), {0, inf()});
    check_moduli(rec);
    rec.note = "log-term coefficient vanishes only at theta = 0, contradicting theta != 0";
    finalize(rec, Verdict::nonexistent);
    return rec;
}

// ---------------------------------------------------------------- O(-1,-2,-2)

inline CaseRecord o122_h1(const ExactScalar& p) {
    using namespace detail;
    if (!p.is_real()) throw ConstraintViolation("p must be real");
    if (p.is_zero() || p == ExactScalar(1)) throw ConstraintViolation("p must avoid {0, 1}");
    ExactScalar four_over = ExactScalar(4) / (p - ExactScalar(1));
    if (four_over.is_integer()) throw ConstraintViolation("4/(p-1) = " + four_over.str() + " is an integer");
    CaseRecord rec;
    rec.case_id = "o122_h1";
    rec.type_tag = "O(-1,-2,-2)";
    rec.reducibility = Reducibility::H1;
    rec.constraints.push_back(excluded_set(four_over, {}, "4/(p-1) not an integer"));
    rec.param("p", p);
    auto fam = family_o122(p);
    ExactScalar theta = ExactScalar(-2) * p * (p + ExactScalar(1));
    auto lt = theta_log_term(Form::E0, fam, 0);
    rec.add("end 0: admissible roots = {-2p(p+1)}", lt.admissible == std::vector<ExactScalar>{theta},
            roots_str(lt.admissible));
    rec.log_terms.push_back(std::move(lt));
    rec.param("theta", theta);
    rec.spec = make_spec("O(-1,-2,-2)", fam.G, fam.at(theta), {0, 1, p});
    check_moduli(rec);
    auto v0 = frobenius::verdict_for(Form::E0, fam.G, rec.spec->Q, 0);
    rec.add("end 0: gap 2, log-free", v0.integer_gap && v0.gap && *v0.gap == ExactScalar(2) && v0.log_free);
    check_h1_end(rec, 1);
    rec.status = "classified";
    finalize(rec, Verdict::verified);
    return rec;
}

inline CaseRecord o122_h3(long r) {
    using namespace detail;
    if (r < 3) throw ConstraintViolation("r must be an integer >= 3");
    CaseRecord rec;
    rec.case_id = "o122_h3";
    rec.type_tag = "O(-1,-2,-2)";
    rec.reducibility = Reducibility::H3;
    ExactScalar p = ExactScalar(r + 2) / ExactScalar(r - 2);
    ExactScalar theta = ExactScalar(-2) * p * (p + ExactScalar(1));
    rec.param("r", std::to_string(r));
    rec.param("p", p);
    rec.param("theta", theta);
    auto fam = family_o122(p);
    rec.spec = make_spec("O(-1,-2,-2)", fam.G, fam.at(theta), {0, 1, p});
    RationalFunction dg = z() * (z() - K(p)).pow(static_cast<int>(r - 2)) / (z() - K(1)).pow(static_cast<int>(r + 2));
    rec.add("dg has zero residue at every pole", residue_at(dg, 1).is_zero());
    auto g = integrate_residue_free(dg);
    if (!g) throw std::logic_error("o122_h3: nonzero residue");
    rec.secondary_g = *g;
    rec.g_formula = "integral of z (z-p)^(r-2) / (z-1)^(r+2) dz";
    check_moduli(rec);
    check_schwarzian(rec);
    check_h3_ends(rec);
    rec.status = "classified";
    finalize(rec, Verdict::verified);
    return rec;
}

// ---------------------------------------------------------------- O(-2,-4)

inline moduli::SurfaceSpec spec_o24(const ExactScalar& theta, const ExactScalar& q) {
    using namespace detail;
    return make_spec("O(-2,-4)", ((z() - K(q)) / (z() - K(1))).pow(2),
                     K(theta) * (z() - K(1)) * (z() - K(q)) / z().pow(2), {0, inf()});
}

inline CaseRecord o24_h1(const ExactScalar& theta, const ExactScalar& q) {
    if (theta.is_zero()) throw ConstraintViolation("theta must be nonzero");
    if (q.is_zero() || q == ExactScalar(1)) throw ConstraintViolation("q must avoid {0, 1}");
    auto c = sqrt_real_non_integer(ExactScalar(1) - ExactScalar(4) * theta * q, "sqrt(1 - 4 theta q) in R \\ Z");
    if (!c.satisfied) throw ConstraintViolation("sqrt(1 - 4 theta q) must be real and non-integral");
    CaseRecord rec;
    rec.case_id = "o24_h1";
    rec.type_tag = "O(-2,-4)";
    rec.reducibility = Reducibility::H1;
    rec.constraints.push_back(c);
    rec.param("theta", theta);
    rec.param("q", q);
    rec.spec = spec_o24(theta, q);
    detail::check_moduli(rec);
    detail::check_h1_end(rec, 0);
    rec.status = "classified";
    detail::finalize(rec, Verdict::verified);
    return rec;
}

struct O24H3Result {
    long m = 0;
    ExactScalar s;
    ParamScalar c;
    ExactScalar t_m, u_m, Lambda;
    std::vector<IsolatedRoot> admissible;  // distinct roots outside {0, s}
    int removed_zero = 0, removed_s = 0;
    std::vector<CaseRecord> records;
};

/// The theta-parametric (E.1)# equation at z = 0 with q = s/theta.
inline frobenius::RegularSingularODE<ParamScalar> o24_h3_equation(const ExactScalar& s, std::vector<Check>* checks = nullptr) {
    using namespace detail;
    int n = frobenius::default_terms;
    std::optional<LaurentSeries<ExactScalar>> p;
    bool theta_free = true;
    for (long t0 : {1, 2, -3}) {
        ExactScalar th(t0);
        auto sp = spec_o24(th, s / th);
        auto ode = frobenius::from_E1sharp(sp.G, sp.Q, 0, n);
        if (!p) p = ode.p_series;
        else
            for (int k = 0; k < n; ++k) theta_free = theta_free && p->at(k) == ode.p_series.at(k);
    }
    if (checks) checks->push_back({"(E.1)# p is theta-free (3 samples)", theta_free, {}});
    if (!theta_free) throw std::logic_error("o24_h3: p depends on theta");
    frobenius::RegularSingularODE<ParamScalar> ode;
    ode.base = SpherePoint(0);
    ode.provenance = Form::E1sharp;
    ode.p_series = frobenius::lift_series(*p);
    // t^2 Q = theta (z - 1)(z - q) = -s (z - 1) + theta z (z - 1)
    auto a = frobenius::detail::holomorphic_series(K(-s) * (z() - K(1)), n, 0, "t^2 Q");
    auto b = frobenius::detail::holomorphic_series(z() * (z() - K(1)), n, 0, "t^2 Q");
    ode.q_series = frobenius::combine(a, b);
    return ode;
}

inline O24H3Result o24_h3(long m) {
    using namespace detail;
    if (m < 2) throw ConstraintViolation("m must be an integer >= 2");
    O24H3Result res;
    res.m = m;
    res.s = ExactScalar(1 - m * m) / ExactScalar(4);
    std::vector<Check> checks;
    auto ode = o24_h3_equation(res.s, &checks);
    auto ind = frobenius::indicial(ode);
    bool ind_ok = ind.integer_gap() && *ind.integer_gap() == m && ind.lambda2 &&
                  ind.lambda2->constant() == ExactScalar(-(m + 1)) / ExactScalar(2);
    checks.push_back({"indicial gap m, lambda2 = -(m+1)/2", ind_ok, {}});
    res.c = frobenius::log_term_theta_poly(ode);
    res.t_m = res.c.coeff(static_cast<int>(m));
    res.u_m = res.c.coeff(static_cast<int>(m - 1));
    checks.push_back({"deg c = m", res.c.degree() == m, {}});
    res.Lambda = res.u_m / res.t_m;
    ExactScalar expected = ExactScalar(m * (49 - m * m)) / ExactScalar(12);
    checks.push_back({"u_m / t_m = m(49 - m^2)/12", res.Lambda == expected, res.Lambda.str()});
    QPoly cp = as_poly(res.c);
    cp = deflate(cp, 0, &res.removed_zero);
    cp = deflate(cp, res.s, &res.removed_s);
    for (auto& r : isolate_roots(cp)) res.admissible.push_back(r);
    bool count_ok = !res.admissible.empty() && static_cast<long>(res.admissible.size()) <= m;
    checks.push_back({"1 <= #admissible roots <= m", count_ok, std::to_string(res.admissible.size())});
    if (res.admissible.empty()) throw std::logic_error("o24_h3: no admissible root");
    // the type does not depend on theta outside {0, s}
    ExactScalar generic(7);
    CaseRecord type_probe;
    type_probe.type_tag = "O(-2,-4)";
    type_probe.spec = spec_o24(generic, res.s / generic);
    check_moduli(type_probe);
    for (std::size_t k = 0; k < res.admissible.size(); ++k) {
        const auto& root = res.admissible[k];
        CaseRecord rec;
        rec.case_id = "o24_h3";
        rec.type_tag = "O(-2,-4)";
        rec.reducibility = Reducibility::H3;
        rec.param("m", std::to_string(m));
        rec.param("s", res.s);
        std::ostringstream th, q, rad;
        th.precision(17);
        q.precision(17);
        th << root.center.real() << (root.center.imag() < 0 ? "" : "+") << root.center.imag() << "i";
        cd qv = res.s.to_complex() / root.center;
        q << qv.real() << (qv.imag() < 0 ? "" : "+") << qv.imag() << "i";
        rad << root.radius.get_d();
        rec.param("theta", th.str());
        rec.param("theta_radius", rad.str());
        rec.param("theta_real", root.real ? "true" : "false");
        rec.param("theta_multiplicity", std::to_string(root.multiplicity));
        rec.param("q", q.str());
        rec.checks = checks;
        for (auto& c : type_probe.checks) rec.checks.push_back({c.name + " (generic theta)", c.passed, c.detail});
        rec.note = "theta certified in a disk; c(theta) = " + res.c.str();
        rec.status = "classified";
        finalize(rec, Verdict::verified);
        res.records.push_back(std::move(rec));
    }
    return res;
}

// ---------------------------------------------------------------- O(-2,-3)

inline moduli::SurfaceSpec spec_o23_a(const ExactScalar& theta) {
    using namespace detail;
    return make_spec("O(-2,-3)", z().pow(2), K(theta) * z() / (z() - K(1)).pow(2), {1, inf()});
}
inline moduli::SurfaceSpec spec_o23_b(const ExactScalar& theta) {
    using namespace detail;
    return make_spec("O(-2,-3)", ((z() - K(1)) / z()).pow(2), K(theta) * (z() - K(1)) / z().pow(2), {0, inf()});
}

inline CaseRecord o23_a(const ExactScalar& theta) {
    if (theta.is_zero()) throw ConstraintViolation("theta must be nonzero");
    auto c = sqrt_real_non_integer(ExactScalar(1) - ExactScalar(4) * theta, "sqrt(1 - 4 theta) in R \\ Z");
    if (!c.satisfied) throw ConstraintViolation("sqrt(1 - 4 theta) must be real and non-integral");
    CaseRecord rec;
    rec.case_id = "o23_a";
    rec.type_tag = "O(-2,-3)";
    rec.reducibility = Reducibility::H1;
    rec.constraints.push_back(c);
    rec.param("theta", theta);
    rec.spec = spec_o23_a(theta);
    detail::check_moduli(rec);
    detail::check_h1_end(rec, 1);
    rec.status = "classified";
    detail::finalize(rec, Verdict::verified);
    return rec;
}

inline CaseRecord o23_b(const ExactScalar& theta) {
    if (theta.is_zero()) throw ConstraintViolation("theta must be nonzero");
    auto c = sqrt_real_non_integer(ExactScalar(4) + ExactScalar(4) * theta, "sqrt(4 + 4 theta) in R \\ Z");
    if (!c.satisfied) throw ConstraintViolation("sqrt(4 + 4 theta) must be real and non-integral");
    CaseRecord rec;
    rec.case_id = "o23_b";
    rec.type_tag = "O(-2,-3)";
    rec.reducibility = Reducibility::H1;
    rec.constraints.push_back(c);
    rec.param("theta", theta);
    rec.spec = spec_o23_b(theta);
    detail::check_moduli(rec);
    detail::check_h1_end(rec, 0);
    rec.status = "classified";
    detail::finalize(rec, Verdict::verified);
    return rec;
}

struct NonexistenceProof {
    long m = 0;
    ParamScalar c_a, c_b;  // decoupled log terms with q1 = theta
    ExactScalar expected_a_coeff;
    bool a_matches = false, b_monomial = false;
    ExactScalar actual_a, actual_b;  // log terms of the actual equations at the forced theta
    bool actual_nonzero = false;
    std::vector<Check> checks;
};

namespace detail {

inline frobenius::RegularSingularODE<ParamScalar> decoupled(const ExactScalar& p0, const ExactScalar& q0) {
    frobenius::RegularSingularODE<ParamScalar> ode;
    int n = frobenius::default_terms;
    ode.base = SpherePoint(0);
    ode.provenance = Form::raw;
    ode.p_series = {SpherePoint(0), 0, std::vector<ParamScalar>(n)};
    ode.q_series = {SpherePoint(0), 0, std::vector<ParamScalar>(n)};
    ode.p_series.coeffs[0] = ParamScalar(p0);
    ode.q_series.coeffs[0] = ParamScalar(q0);
    ode.q_series.coeffs[1] = ParamScalar::theta();
    return ode;
}

inline ExactScalar factorial(long n) {
    ExactScalar f(1);
    for (long k = 2; k <= n; ++k) f *= ExactScalar(k);
    return f;
}

}  // namespace detail

/// Neither O(-2,-3) family has an integer-gap log-free end.
inline NonexistenceProof o23_h3_nonexistence(long m) {
    using namespace detail;
    if (m < 2) throw ConstraintViolation("m must be >= 2");
    NonexistenceProof pr;
    pr.m = m;
    // case mu# = 0: p0 = 2, q0 = (1 - m^2)/4
    ExactScalar sa = ExactScalar(1 - m * m) / ExactScalar(4);
    pr.c_a = frobenius::log_term_theta_poly(decoupled(2, sa));
    pr.expected_a_coeff = -(factorial(m) * factorial(m - 1)).inverse();
    ParamScalar expected(std::vector<ExactScalar>(static_cast<std::size_t>(m), ExactScalar(0)));
    std::vector<ExactScalar> ec(static_cast<std::size_t>(m + 1), ExactScalar(0));
    ec[m] = pr.expected_a_coeff;
    pr.a_matches = pr.c_a == ParamScalar(ec);
    pr.checks.push_back({"case mu#=0: c = -theta^m/(m!(m-1)!)", pr.a_matches, pr.c_a.str()});
    // case mu# = 1: p0 = -1, q0 = (4 - m^2)/4
    ExactScalar sb = ExactScalar(4 - m * m) / ExactScalar(4);
    pr.c_b = frobenius::log_term_theta_poly(decoupled(-1, sb));
    bool mono = !pr.c_b.is_zero();
    for (int k = 0; k < pr.c_b.degree(); ++k) mono = mono && pr.c_b.coeff(k).is_zero();
    pr.b_monomial = mono;
    pr.checks.push_back({"case mu#=1: c is a nonzero theta-monomial", mono, pr.c_b.str()});
    // the actual equations force theta = q0 of the decoupled form
    ExactScalar theta_a = sa;
    auto spa = spec_o23_a(theta_a);
    pr.actual_a = frobenius::log_term(frobenius::from_E1sharp(spa.G, spa.Q, 1));
    ExactScalar theta_b = -sb;  // 4 + 4 theta = m^2
    pr.actual_nonzero = !pr.actual_a.is_zero();
    if (!theta_b.is_zero()) {
        auto spb = spec_o23_b(theta_b);
        // (E.1)# of 1/G carries p0 = -1, q = -theta + theta z
        auto ode = frobenius::from_E1sharp(RationalFunction(1) / spb.G, spb.Q, 0);
        pr.actual_b = frobenius::log_term(ode);
        pr.actual_nonzero = pr.actual_nonzero && !pr.actual_b.is_zero();
    }
    pr.checks.push_back({"actual log terms nonzero at the forced theta", pr.actual_nonzero,
                         "a: " + pr.actual_a.str() + ", b: " + pr.actual_b.str()});
    pr.checks.push_back({"actual case a equals the decoupled value", pr.actual_a == pr.c_a.eval(theta_a), {}});
    return pr;
}

// ---------------------------------------------------------------- O(-2,-2,-2)

inline moduli::SurfaceSpec spec_o222(const ExactScalar& q1, const ExactScalar& q2, const ExactScalar& theta) {
    using namespace detail;
    return make_spec("O(-2,-2,-2)", ((z() - K(q1)) / (z() - K(q2))).pow(2),
                     K(theta) * (z() - K(q1)) * (z() - K(q2)) / (z().pow(2) * (z() - K(1)).pow(2)), {0, 1, inf()});
}

inline CaseRecord o222_irreducible() {
    CaseRecord rec;
    rec.case_id = "o222_irreducible";
    rec.type_tag = "O(-2,-2,-2)";
    rec.reducibility = Reducibility::irreducible;
    rec.citation = "[uy6, Theorem 2.6]";
    rec.status = "classified";
    rec.verdict = Verdict::external;
    return rec;
}

inline CaseRecord o222_h1(const ExactScalar& s) {
    using namespace detail;
    ExactScalar one(1);
    ExactScalar A = one + ExactScalar(10) * s + s * s;
    if (!s.is_rational() || s.is_zero() || s == one || A.is_zero())
        throw ConstraintViolation("s must be rational, s not in {0, 1}, 1 + 10s + s^2 != 0");
    ExactScalar gap1 = ExactScalar(-4) * (one + ExactScalar(4) * s + s * s) / A;
    if (gap1.is_integer()) throw ConstraintViolation("-4(1+4s+s^2)/(1+10s+s^2) = " + gap1.str() + " is an integer");
    CaseRecord rec;
    rec.case_id = "o222_h1";
    rec.type_tag = "O(-2,-2,-2)";
    rec.reducibility = Reducibility::H1;
    rec.constraints.push_back(excluded_set(gap1, {}, "-4(1+4s+s^2)/(1+10s+s^2) in R \\ Z"));
    ExactScalar q1 = A / (ExactScalar(4) * s * (one - s)), q2 = A / (ExactScalar(4) * (s - one));
    ExactScalar theta = ExactScalar(-3) / (ExactScalar(4) * q1 * q2);
    rec.param("s", s);
    rec.param("q1", q1);
    rec.param("q2", q2);
    rec.param("theta", theta);
    rec.spec = spec_o222(q1, q2, theta);
    check_moduli(rec);
    auto ode = frobenius::from_E0(rec.spec->G, rec.spec->Q, 0);
    auto ind = frobenius::indicial(ode);
    rec.add("end 0: indicial roots 3/2, -1/2",
            ind.lambda1 && *ind.lambda1 == ExactScalar::rational(3, 2) && *ind.lambda2 == ExactScalar::rational(-1, 2));
    // gap 2 with p = 0: c = -(q2 + q1^2)/2
    ExactScalar closed = ode.q(2) + ode.q(1) * ode.q(1);
    rec.add("end 0: log-free by the m = 2 closed form", closed.is_zero() && frobenius::log_term(ode).is_zero());
    auto ind1 = frobenius::indicial(frobenius::from_E0(rec.spec->G, rec.spec->Q, 1));
    bool gap_ok = ind1.gap && (*ind1.gap == gap1 || *ind1.gap == -gap1);
    rec.add("end 1: gap = -4(1+4s+s^2)/(1+10s+s^2)", gap_ok, ind1.gap ? ind1.gap->str() : "none");
    check_h1_end(rec, 1);
    rec.status = "existence^+";
    finalize(rec, Verdict::verified);
    return rec;
}

inline CaseRecord o222_h3(long m) {
    using namespace detail;
    if (m < 2) throw ConstraintViolation("m must be an integer >= 2");
    ExactScalar inv_sqrt = *ExactScalar(m).sqrt() / ExactScalar(m);
    ExactScalar half = ExactScalar::rational(1, 2);
    ExactScalar q1 = half * (ExactScalar(1) + inv_sqrt), q2 = half * (ExactScalar(1) - inv_sqrt);
    ExactScalar theta(-m * (m + 1));
    CaseRecord rec;
    rec.case_id = "o222_h3";
    rec.type_tag = "O(-2,-2,-2)";
    rec.reducibility = Reducibility::H3;
    rec.param("m", std::to_string(m));
    rec.param("q1", q1);
    rec.param("q2", q2);
    rec.param("theta", theta);
    rec.spec = spec_o222(q1, q2, theta);
    int e = static_cast<int>(m - 1);
    RationalFunction dg = z().pow(e) * (z() - K(1)).pow(e) * (z() - K(q1)) * (z() - K(q2));
    auto g = integrate_residue_free(dg);
    if (!g) throw std::logic_error("o222_h3: polynomial dg has no antiderivative");
    rec.add("dg has zero residue at every pole", true, "dg is a polynomial");
    rec.secondary_g = *g;
    rec.g_formula = "integral of z^(m-1) (z-1)^(m-1) (z-q1)(z-q2) dz";
    check_moduli(rec);
    check_schwarzian(rec);
    check_h3_ends(rec);
    rec.status = "existence^+";
    finalize(rec, Verdict::verified);
    return rec;
}

// ---------------------------------------------------------------- O(-2,-2), O(-5), O(-6)

inline CaseRecord o22(const ExactScalar& mu, const ExactScalar& a, const ExactScalar& b) {
    using namespace detail;
    if (a.is_zero()) throw ConstraintViolation("a must be nonzero");
    ExactScalar theta = (ExactScalar(4) - mu * mu) / ExactScalar(4);
    if (theta.is_zero()) throw ConstraintViolation("mu^2 = 4 gives Q = 0");
    bool integral = mu.is_integer();
    bool real_b0 = mu.is_real() && b.is_zero();
    if (!integral && !real_b0) throw ConstraintViolation("SU(2) monodromy needs mu in Z, or mu real and b = 0");
    CaseRecord rec;
    rec.case_id = "o22";
    rec.type_tag = "O(-2,-2)";
    rec.reducibility = integral ? Reducibility::H3 : Reducibility::H1;
    rec.param("mu", mu);
    rec.param("a", a);
    rec.param("b", b);
    rec.param("theta", theta);
    rec.spec = make_spec("O(-2,-2)", z().pow(2), K(theta) / z().pow(2), {0, inf()});
    rec.g_formula = "a z^mu + b";
    check_moduli(rec);
    if (integral) {
        long k = mu.re_rat().get_num().get_si();
        rec.secondary_g = K(a) * z().pow(static_cast<int>(k)) + K(b);
        check_schwarzian(rec);
        check_h3_ends(rec);
        rec.note = b.is_zero() ? "catenoid cousin double cover" : "warped catenoid cousin";
    } else {
        RationalFunction L = K(mu - ExactScalar(1)) / z();
        RationalFunction S = L.derivative() - K(1, 2) * L * L;
        rec.add("S(g) - S(G) = 2Q", S - schwarzian(rec.spec->G) == K(2) * rec.spec->Q);
        rec.note = "double cover of a catenoid cousin";
    }
    rec.status = "classified";
    finalize(rec, Verdict::verified);
    return rec;
}

inline CaseRecord o5(const ExactScalar& theta) {
    using namespace detail;
    if (theta.is_zero()) throw ConstraintViolation("theta must be nonzero");
    CaseRecord rec;
    rec.case_id = "o5";
    rec.type_tag = "O(-5)";
    rec.reducibility = Reducibility::H3;
    rec.param("theta", theta);
    rec.spec = make_spec("O(-5)", z().pow(2), K(theta) * z(), {inf()});
    check_moduli(rec);
    rec.add("simply connected: no period problem", rec.spec->ends.size() == 1);
    rec.status = "classified";
    finalize(rec, Verdict::verified);
    return rec;
}

inline CaseRecord o6(const ExactScalar& theta) {
    using namespace detail;
    if (theta.is_zero()) throw ConstraintViolation("theta must be nonzero");
    CaseRecord rec;
    rec.case_id = "o6";
    rec.type_tag = "O(-6)";
    rec.reducibility = Reducibility::H3;
    rec.param("theta", theta);
    rec.spec = make_spec("O(-6)", ((z() - K(1)) / z()).pow(2), K(theta) * z() * (z() - K(1)), {inf()});
    check_moduli(rec);
    rec.add("simply connected: no period problem", rec.spec->ends.size() == 1);
    rec.status = "classified";
    finalize(rec, Verdict::verified);
    return rec;
}

// ---------------------------------------------------------------- deformation cases

/// O(-3,-3): hypotheses of the deformation theorem for the minimal surface data.
inline CaseRecord o33(const ExactScalar& a = 0) {
    using namespace detail;
    CaseRecord rec;
    rec.case_id = "o33";
    rec.type_tag = "O(-3,-3)";
    rec.reducibility = Reducibility::reducible;
    rec.param("a", a);
    RationalFunction g = (K(2) * z().pow(2) + K(ExactScalar(2) * a) * z() - K(a * a + ExactScalar(1))) / (K(2) * (z() + K(1)));
    RationalFunction omega = (z() + K(1)).pow(2) / z().pow(3);
    rec.spec = make_spec("O(-3,-3)", g, omega * g.derivative(), {0, inf()});
    check_moduli(rec);
    auto p0 = flatlab::o33_period(a, 0);
    rec.add("Per(0) = 0", p0.residue.is_zero());
    auto p1 = flatlab::o33_period(a, 1);
    // Per(nu) = -2 pi nu (2 + 2a + nu): dPer/dnu(0) = -2 pi (2 + 2a)
    ExactScalar slope = p1.residue * (-ExactScalar::imag_unit()) - ExactScalar(1);
    rec.add("dPer/dnu(0) != 0", !slope.is_zero(), "Res slope " + slope.str());
    rec.citation = "deformation of a symmetric nondegenerate minimal surface [ruy1]";
    rec.status = "existence";
    rec.verdict = rec.all_passed() ? Verdict::external : Verdict::unknown;
    return rec;
}

inline CaseRecord i4() {
    CaseRecord rec;
    rec.case_id = "i4";
    rec.type_tag = "I(-4)";
    double sB = std::sqrt(flatlab::B_constant().B);
    auto rep = flatlab::cg_solve({1.1, 1.1 * sB});
    rec.param("nu1", std::to_string(rep.solved_at[0]));
    rec.param("nu2", std::to_string(rep.solved_at[1]));
    rec.add("Chen-Gackstatter periods vanish", rep.converged && std::abs(rep.solved_at[0] - 1) < 1e-6 &&
                                                   std::abs(rep.solved_at[1] - sB) < 1e-6);
    rec.add("period Jacobian nondegenerate", std::abs(rep.determinant) > 1e-3,
            "det " + std::to_string(rep.determinant));
    std::vector<moduli::EndReport> ends{{SpherePoint::infinity(), -4, 0, 4, false}};
    std::vector<moduli::UmbilicReport> umb(4, {SpherePoint(0), std::nullopt, 1});
    auto cr = moduli::curvature_report(1, 2, ends, umb);
    rec.add("curvature identities (genus 1)", cr.TA_dual_over_4pi == 2);
    rec.citation = "deformation of the Chen-Gackstatter surface [ruy1]";
    rec.status = "existence";
    rec.verdict = rec.all_passed() ? Verdict::external : Verdict::unknown;
    return rec;
}

inline CaseRecord i3() {
    CaseRecord rec;
    rec.case_id = "i3";
    rec.type_tag = "I(-3)";
    rec.status = "unknown";
    rec.note = "neither existence nor nonexistence is known";
    rec.verdict = Verdict::unknown;
    return rec;
}

inline CaseRecord i22() {
    CaseRecord rec;
    rec.case_id = "i22";
    rec.type_tag = "I(-2,-2)";
    rec.citation = "genus 1 catenoid cousins [rs]";
    rec.status = "existence";
    rec.verdict = Verdict::external;
    return rec;
}

/// I(-1,-1) data G = wp, Q = theta sigma(z-v1/2) sigma(z-v2/2) / (sigma(z) sigma(z-(v1+v2)/2)).
inline CaseRecord i11_candidate(cd v1 = 1.0, cd v2 = cd(0, 1), cd theta = 1.0) {
    if (std::abs(theta) == 0) throw ConstraintViolation("theta must be nonzero");
    elliptic::Lattice L(v1, v2);
    v1 = L.v1();
    v2 = L.v2();
    CaseRecord rec;
    rec.case_id = "i11";
    rec.type_tag = "I(-1,-1)";
    auto fmt = [](cd x) {
        std::ostringstream o;
        o.precision(17);
        o << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
        return o.str();
    };
    rec.param("v1", fmt(v1));
    rec.param("v2", fmt(v2));
    rec.param("theta", fmt(theta));
    auto Q = [&](cd w) {
        return theta * L.sigma(w - v1 / 2.0) * L.sigma(w - v2 / 2.0) / (L.sigma(w) * L.sigma(w - (v1 + v2) / 2.0));
    };
    double per = 0;
    for (int k = 0; k < 12; ++k) {
        cd w = (0.13 + 0.061 * k) * v1 + (0.71 - 0.047 * k) * v2;
        cd q = Q(w);
        per = std::max(per, std::abs(Q(w + v1) - q) / (1 + std::abs(q)));
        per = std::max(per, std::abs(Q(w + v2) - q) / (1 + std::abs(q)));
    }
    rec.add("Q-density doubly periodic", per < 1e-6, "residual " + std::to_string(per));
    double zero = std::max(std::abs(Q(v1 / 2.0)), std::abs(Q(v2 / 2.0)));
    rec.add("Q vanishes at v1/2, v2/2", zero < 1e-8, std::to_string(zero));
    // simple zeros and poles: |Q(c + h)| scales like h^{+-1}
    bool simple = true;
    for (cd c : {v1 / 2.0, v2 / 2.0}) {
        double r = std::abs(Q(c + 1e-3)) / std::abs(Q(c + 1e-4));
        simple = simple && std::abs(r - 10) < 0.05;
    }
    for (cd c : {cd(0), (v1 + v2) / 2.0}) {
        double r = std::abs(Q(c + 1e-4)) / std::abs(Q(c + 1e-3));
        simple = simple && std::abs(r - 10) < 0.05;
    }
    rec.add("simple zeros at v1/2, v2/2 and simple poles at 0, (v1+v2)/2", simple);
    double branch = 0;
    for (cd c : {v1 / 2.0, v2 / 2.0, (v1 + v2) / 2.0}) branch = std::max(branch, std::abs(L.wp_prime(c)));
    rec.add("G = wp branches at the half periods", branch < 1e-8);
    rec.note = "period problem unsolved";
    rec.status = "unknown^+";
    rec.verdict = Verdict::unknown;
    return rec;
}

// ---------------------------------------------------------------- Table 1

struct Triple {
    std::string reducibility;
    std::string status;
    bool operator==(const Triple&) const = default;
};

struct TableRow {
    std::string type;
    int budget = 2;
    std::vector<Triple> reference;
    std::vector<Triple> computed;
    std::vector<std::string> cases;
    bool matches() const { return reference == computed; }
};

/// Reducibility and status columns of Table 1.
inline std::vector<TableRow> table1_reference() {
    return {
        {"O(0)", 0, {{"H3", "classified^0"}}, {}, {}},
        {"O(-4)", 1, {{"H3", "classified"}}, {}, {}},
        {"O(-2,-2)", 1, {{"reducible", "classified"}}, {}, {}},
        {"O(-5)", 2, {{"H3", "classified"}}, {}, {}},
        {"O(-6)", 2, {{"H3", "classified"}}, {}, {}},
        {"O(-2,-2)", 2, {{"reducible", "classified"}}, {}, {}},
        {"O(-1,-4)", 2, {{"H3", "classified^0"}}, {}, {}},
        {"O(-2,-3)", 2, {{"H1", "classified"}}, {}, {}},
        {"O(-2,-4)", 2, {{"H1", "classified"}, {"H3", "classified"}}, {}, {}},
        {"O(-3,-3)", 2, {{"reducible", "existence"}}, {}, {}},
        {"O(-1,-1,-2)", 2, {{"H3", "classified^0"}}, {}, {}},
        {"O(-1,-2,-2)", 2, {{"H1", "classified"}, {"H3", "classified"}}, {}, {}},
        {"O(-2,-2,-2)", 2, {{"irreducible", "classified"}, {"H1", "existence^+"}, {"H3", "existence^+"}}, {}, {}},
        {"I(-3)", 2, {{"", "unknown"}}, {}, {}},
        {"I(-4)", 2, {{"", "existence"}}, {}, {}},
        {"I(-1,-1)", 2, {{"", "unknown^+"}}, {}, {}},
        {"I(-2,-2)", 2, {{"", "existence"}}, {}, {}},
    };
}

using CaseJob = std::function<std::vector<CaseRecord>()>;

/// Default-parameter runs of every case up to the budget, in Table 1 order.
inline std::vector<CaseJob> default_jobs(int budget = 2) {
    auto one = [](auto f) { return CaseJob([f] { return std::vector<CaseRecord>{f()}; }); };
    std::vector<CaseJob> jobs;
    if (budget >= 0) jobs.push_back(one([] { return build_4pi(FourPiCase::horosphere); }));
    if (budget >= 1) {
        jobs.push_back(one([] { return build_4pi(FourPiCase::enneper_dual); }));
        jobs.push_back(one([] { return build_4pi(FourPiCase::catenoid_cousin); }));
        jobs.push_back(one([] { return build_4pi(FourPiCase::warped_catenoid); }));
    }
    if (budget >= 2) {
        jobs.push_back(one([] { return o5(1); }));
        jobs.push_back(one([] { return o6(1); }));
        jobs.push_back(one([] { return o22(3, 1, 1); }));
        jobs.push_back(one([] { return o22(ExactScalar::surd(1, 2), 1, 0); }));
        jobs.push_back(one([] { return o14(); }));
        jobs.push_back(one([] { return o23_a(ExactScalar::rational(3, 16)); }));
        jobs.push_back(one([] { return o23_b(ExactScalar::rational(1, 4)); }));
        jobs.push_back(one([] { return o24_h1(ExactScalar::rational(3, 32), 2); }));
        jobs.push_back([] { return o24_h3(3).records; });
        jobs.push_back(one([] { return o33(); }));
        jobs.push_back(one([] { return o112(); }));
        jobs.push_back(one([] { return o122_h1(4); }));
        jobs.push_back(one([] { return o122_h3(3); }));
        jobs.push_back(one([] { return o222_irreducible(); }));
        jobs.push_back(one([] { return o222_h1(2); }));
        jobs.push_back(one([] { return o222_h3(4); }));
        jobs.push_back(one([] { return i3(); }));
        jobs.push_back(one([] { return i4(); }));
        jobs.push_back(one([] { return i11_candidate(); }));
        jobs.push_back(one([] { return i22(); }));
        jobs.push_back(one([] { return o13(); }));
    }
    return jobs;
}

/// Runs the jobs on at most `threads` workers; output keeps job order.
inline std::vector<CaseRecord> run_jobs(const std::vector<CaseJob>& jobs, unsigned threads = 1) {
    std::vector<std::vector<CaseRecord>> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < jobs.size();) out[k] = jobs[k]();
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<CaseRecord> flat;
    for (auto& v : out) flat.insert(flat.end(), v.begin(), v.end());
    return flat;
}

inline std::vector<CaseRecord> run_all(int budget = 2, unsigned threads = 1) {
    return run_jobs(default_jobs(budget), threads);
}

/// Table 1 reproduced from census runs: one row per type, triples from the records.
inline std::vector<TableRow> table1(const std::vector<CaseRecord>& records) {
    auto rows = table1_reference();
    for (auto& row : rows) {
        std::map<std::string, std::string> by_red;
        std::vector<std::string> order;
        for (auto& rec : records) {
            if (rec.type_tag != row.type || rec.budget != row.budget) continue;
            if (rec.verdict == Verdict::nonexistent) continue;
            row.cases.push_back(rec.case_id);
            std::string red = name(rec.reducibility);
            // the O(-2,-2) families mix H1 and H3 members; the table lists them as reducible
            if (row.type == "O(-2,-2)" && (red == "H1" || red == "H3")) red = "reducible";
            if (!by_red.count(red)) order.push_back(red);
            by_red[red] = rec.status;
        }
        static const std::vector<std::string> rank{"irreducible", "H1", "H3", "reducible", ""};
        std::sort(order.begin(), order.end(), [](auto& a, auto& b) {
            return std::find(rank.begin(), rank.end(), a) < std::find(rank.begin(), rank.end(), b);
        });
        for (auto& red : order) row.computed.push_back({red, by_red[red]});
    }
    return rows;
}

}  // namespace cmc1::census

#endif
