#ifndef CMC1_FROBENIUS_HPP
#define CMC1_FROBENIUS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rational_function.hpp"

namespace cmc1::frobenius {

enum class Form { E0, E1sharp, E2sharp, raw };
enum class GapClass { non_real, real_non_integer, positive_integer, zero, parametric };

inline const char* name(Form f) {
    switch (f) {
        case Form::E0: return "E0";
        case Form::E1sharp: return "E1sharp";
        case Form::E2sharp: return "E2sharp";
        case Form::raw: return "raw";
    }
    return "?";
}

inline const char* name(GapClass g) {
    switch (g) {
        case GapClass::non_real: return "non-real";
        case GapClass::real_non_integer: return "real-non-integer";
        case GapClass::positive_integer: return "positive-integer";
        case GapClass::zero: return "zero";
        case GapClass::parametric: return "parametric";
    }
    return "?";
}

struct IrregularSingularity : std::domain_error {
    using std::domain_error::domain_error;
};
/// The point is an ordinary point of the equation.
struct NotSingular : std::domain_error {
    using std::domain_error::domain_error;
};
/// phi(lambda + j) = 0 met in a recursion that cannot absorb it.
struct Resonance : std::domain_error {
    using std::domain_error::domain_error;
};

/// z^2 u'' + z p(z) u' + q(z) u = 0 in the local coordinate centered at base.
template <class K>
struct RegularSingularODE {
    SpherePoint base;
    LaurentSeries<K> p_series, q_series;
    Form provenance = Form::raw;

    K p(int j) const { return p_series.at(j); }
    K q(int j) const { return q_series.at(j); }
    int terms() const { return std::min(p_series.truncation_order(), q_series.truncation_order()); }
    void require_terms(int n) const {
        if (terms() < n)
            throw std::out_of_range("ODE series truncated at " + std::to_string(terms()) + " terms, " +
                                    std::to_string(n) + " needed");
    }
    /// phi(t) = t(t-1) + t p0 + q0
    K phi(const K& t) const { return t * (t - K(1)) + t * p(0) + q(0); }
    /// r_{j,k}(lambda) = (lambda+k) p_{j-k} + q_{j-k}
    K r(int j, int k, const K& lambda) const { return (lambda + K(k)) * p(j - k) + q(j - k); }
};

template <class K>
RegularSingularODE<K> raw_ode(std::vector<K> p, std::vector<K> q, SpherePoint base = SpherePoint(0)) {
    RegularSingularODE<K> ode;
    ode.base = base;
    ode.p_series = {base, 0, std::move(p)};
    ode.q_series = {base, 0, std::move(q)};
    ode.provenance = Form::raw;
    return ode;
}

inline constexpr int default_terms = 32;

namespace detail {

inline LaurentSeries<ExactScalar> holomorphic_series(const RationalFunction& f, int n, const SpherePoint& base,
                                                     const char* what) {
    LaurentSeries<ExactScalar> s{base, 0, std::vector<ExactScalar>(n)};
    if (f.is_zero()) return s;
    int ord = order_at_zero(f);
    if (ord < 0)
        throw IrregularSingularity(std::string(what) + " has a pole of order " + std::to_string(-ord) +
                                   " after normalization at " + base.str());
    auto l = laurent_at_zero(f, n - ord, base);
    for (int k = ord; k < n; ++k) s.coeffs[k] = l.at(k);
    return s;
}

/// Local data in the chart t at the end: G(t) and the weight-2 density Q(t).
struct LocalData {
    RationalFunction G, Q;
};

inline LocalData localize(const RationalFunction& G, const RationalFunction& Q, const SpherePoint& end) {
    if (G.is_constant()) throw std::domain_error("G must be non-constant");
    if (Q.is_zero()) throw std::domain_error("Q must be nonzero");
    return {pullback(G, end, 0), pullback(Q, end, 2)};
}

inline RationalFunction tpow(int k) { return RationalFunction(QPoly::x()).pow(k); }

/// -t d/dt log(f)
inline RationalFunction minus_t_logderiv(const RationalFunction& f) {
    return -(tpow(1) * f.derivative() / f);
}

}  // namespace detail

inline RegularSingularODE<ExactScalar> from_E0(const RationalFunction& G, const RationalFunction& Q,
                                               const SpherePoint& end, int n_terms = default_terms) {
    auto loc = detail::localize(G, Q, end);
    RationalFunction r = schwarzian(loc.G) * RationalFunction(ExactScalar::rational(1, 2)) + loc.Q;
    if (r.is_zero() || order_at_zero(r) >= 0)
        throw NotSingular("S(G)/2 + Q is holomorphic at " + end.str() + "; not a singular point");
    if (order_at_zero(r) < -2)
        throw IrregularSingularity("S(G)/2 + Q has a pole of order " + std::to_string(-order_at_zero(r)) + " at " +
                                   end.str());
    RegularSingularODE<ExactScalar> ode;
    ode.base = end;
    ode.p_series = {end, 0, std::vector<ExactScalar>(n_terms)};
    ode.q_series = detail::holomorphic_series(detail::tpow(2) * r, n_terms, end, "t^2 r");
    ode.provenance = Form::E0;
    return ode;
}

namespace detail {

inline RegularSingularODE<ExactScalar> sharp_form(const RationalFunction& G, const RationalFunction& Q,
                                                  const SpherePoint& end, int n_terms, bool second) {
    auto loc = localize(G, Q, end);
    RationalFunction omega = -(loc.Q / loc.G.derivative());
    RationalFunction w = second ? loc.G * loc.G * omega : omega;
    RegularSingularODE<ExactScalar> ode;
    ode.base = end;
    ode.p_series = holomorphic_series(minus_t_logderiv(w), n_terms, end, "p");
    ode.q_series = holomorphic_series(tpow(2) * loc.Q, n_terms, end, "t^2 Q");
    ode.provenance = second ? Form::E2sharp : Form::E1sharp;
    return ode;
}

}  // namespace detail

/// X'' - (log w)' X' + Q X = 0 with w = -Q/dG.
inline RegularSingularODE<ExactScalar> from_E1sharp(const RationalFunction& G, const RationalFunction& Q,
                                                    const SpherePoint& end, int n_terms = default_terms) {
    return detail::sharp_form(G, Q, end, n_terms, false);
}

/// X'' - (log G^2 w)' X' + Q X = 0.
inline RegularSingularODE<ExactScalar> from_E2sharp(const RationalFunction& G, const RationalFunction& Q,
                                                    const SpherePoint& end, int n_terms = default_terms) {
    return detail::sharp_form(G, Q, end, n_terms, true);
}

inline RegularSingularODE<ExactScalar> from_form(Form f, const RationalFunction& G, const RationalFunction& Q,
                                                 const SpherePoint& end, int n_terms = default_terms) {
    switch (f) {
        case Form::E0: return from_E0(G, Q, end, n_terms);
        case Form::E1sharp: return from_E1sharp(G, Q, end, n_terms);
        case Form::E2sharp: return from_E2sharp(G, Q, end, n_terms);
        default: throw std::invalid_argument("from_form: raw has no builder");
    }
}

/// Q(theta) = Qa + theta * Qb with theta-free G.
struct ThetaFamily {
    RationalFunction G, Qa, Qb;
    RationalFunction at(const ExactScalar& theta) const { return Qa + RationalFunction(theta) * Qb; }
};

inline LaurentSeries<ParamScalar> combine(const LaurentSeries<ExactScalar>& a, const LaurentSeries<ExactScalar>& b) {
    LaurentSeries<ParamScalar> s{a.base, 0, {}};
    int n = std::min(a.truncation_order(), b.truncation_order());
    for (int k = 0; k < n; ++k)
        s.coeffs.push_back(ParamScalar(a.at(k)) + ParamScalar::theta() * ParamScalar(b.at(k)));
    return s;
}

inline LaurentSeries<ParamScalar> lift_series(const LaurentSeries<ExactScalar>& a) {
    LaurentSeries<ParamScalar> s{a.base, a.min_order, {}};
    for (auto& c : a.coeffs) s.coeffs.emplace_back(c);
    return s;
}

/// Theta-parametric equation; p must come out theta-free.
inline RegularSingularODE<ParamScalar> from_form_param(Form f, const ThetaFamily& fam, const SpherePoint& end,
                                                       int n_terms = default_terms) {
    auto G = pullback(fam.G, end, 0);
    auto Qa = pullback(fam.Qa, end, 2), Qb = pullback(fam.Qb, end, 2);
    auto t2 = detail::tpow(2);
    RegularSingularODE<ParamScalar> ode;
    ode.base = end;
    ode.provenance = f;
    if (f == Form::E0) {
        RationalFunction base = schwarzian(G) * RationalFunction(ExactScalar::rational(1, 2)) + Qa;
        ode.p_series = {end, 0, std::vector<ParamScalar>(n_terms)};
        ode.q_series = combine(detail::holomorphic_series(t2 * base, n_terms, end, "t^2 r"),
                               detail::holomorphic_series(t2 * Qb, n_terms, end, "t^2 r"));
        return ode;
    }
    // log w is theta-free when Q is a theta-multiple of a fixed density
    RationalFunction shape;
    if (Qa.is_zero()) shape = Qb;
    else if (Qb.is_zero()) shape = Qa;
    else if ((Qa / Qb).is_constant()) shape = Qb;
    else throw std::domain_error("sharp form: (log w)' depends on theta for this family");
    RationalFunction omega = -(shape / G.derivative());
    RationalFunction w = f == Form::E2sharp ? G * G * omega : omega;
    ode.p_series = lift_series(detail::holomorphic_series(detail::minus_t_logderiv(w), n_terms, end, "p"));
    ode.q_series = combine(detail::holomorphic_series(t2 * Qa, n_terms, end, "t^2 Q"),
                           detail::holomorphic_series(t2 * Qb, n_terms, end, "t^2 Q"));
    return ode;
}

inline RegularSingularODE<ExactScalar> substitute(const RegularSingularODE<ParamScalar>& ode, const ExactScalar& t0) {
    RegularSingularODE<ExactScalar> out;
    out.base = ode.base;
    out.provenance = ode.provenance;
    out.p_series = {ode.base, 0, {}};
    out.q_series = {ode.base, 0, {}};
    for (auto& c : ode.p_series.coeffs) out.p_series.coeffs.push_back(c.eval(t0));
    for (auto& c : ode.q_series.coeffs) out.q_series.coeffs.push_back(c.eval(t0));
    return out;
}

template <class K>
struct IndicialData {
    K p0, q0, radicand;
    std::optional<K> lambda1, lambda2, gap;
    GapClass gap_class = GapClass::parametric;

    /// Integer value of the gap when it is a non-negative integer.
    std::optional<int> integer_gap() const {
        if (gap_class == GapClass::zero) return 0;
        if (gap_class != GapClass::positive_integer) return std::nullopt;
        const ExactScalar& g = as_exact(*gap);
        return static_cast<int>(g.re_rat().get_num().get_si());
    }

private:
    static const ExactScalar& as_exact(const ExactScalar& x) { return x; }
    static ExactScalar as_exact(const ParamScalar& x) { return x.constant(); }
};

inline IndicialData<ExactScalar> indicial_exact(const ExactScalar& p0, const ExactScalar& q0) {
    IndicialData<ExactScalar> d;
    d.p0 = p0;
    d.q0 = q0;
    ExactScalar a = ExactScalar(1) - p0;
    d.radicand = a * a - ExactScalar(4) * q0;
    std::optional<ExactScalar> s;
    try {
        s = d.radicand.sqrt();
    } catch (const SurdMismatch&) {
        s.reset();
    }
    if (s) {
        try {
            d.gap = *s;
            d.lambda1 = (a + *s) * ExactScalar::rational(1, 2);
            d.lambda2 = (a - *s) * ExactScalar::rational(1, 2);
        } catch (const SurdMismatch&) {
            d.gap.reset();
            d.lambda1.reset();
            d.lambda2.reset();
        }
    }
    if (d.radicand.is_zero()) d.gap_class = GapClass::zero;
    else if (d.gap && d.gap->is_integer()) d.gap_class = GapClass::positive_integer;
    else if (d.gap) d.gap_class = d.gap->is_real() ? GapClass::real_non_integer : GapClass::non_real;
    else if (d.radicand.is_real()) d.gap_class = d.radicand.sign() > 0 ? GapClass::real_non_integer : GapClass::non_real;
    else d.gap_class = GapClass::non_real;
    return d;
}

inline IndicialData<ExactScalar> indicial(const RegularSingularODE<ExactScalar>& ode) {
    return indicial_exact(ode.p(0), ode.q(0));
}

inline IndicialData<ParamScalar> indicial(const RegularSingularODE<ParamScalar>& ode) {
    IndicialData<ParamScalar> d;
    d.p0 = ode.p(0);
    d.q0 = ode.q(0);
    ParamScalar a = ParamScalar(1) - d.p0;
    d.radicand = a * a - ParamScalar(4) * d.q0;
    if (!d.p0.is_constant() || !d.q0.is_constant()) {
        d.gap_class = GapClass::parametric;
        return d;
    }
    auto e = indicial_exact(d.p0.constant(), d.q0.constant());
    d.gap_class = e.gap_class;
    if (e.gap) d.gap = ParamScalar(*e.gap);
    if (e.lambda1) d.lambda1 = ParamScalar(*e.lambda1);
    if (e.lambda2) d.lambda2 = ParamScalar(*e.lambda2);
    return d;
}

/// zeta_0..zeta_N of X(lambda) = z^lambda sum zeta_n z^n.
template <class K>
std::vector<K> series_solution(const RegularSingularODE<K>& ode, const K& lambda, int N) {
    ode.require_terms(N + 1);
    std::vector<K> z(N + 1);
    z[0] = K(1);
    for (int j = 1; j <= N; ++j) {
        K ph = ode.phi(lambda + K(j));
        if (is_zero(ph)) throw Resonance("phi(lambda + " + std::to_string(j) + ") = 0");
        K acc;
        for (int k = 0; k < j; ++k) acc += ode.r(j, k, lambda) * z[k];
        z[j] = -acc / ph;
    }
    return z;
}

template <class K>
struct SecondSolution {
    int m = 0;
    K lambda1, lambda2;
    K log_coeff;
    std::vector<K> zeta1;  // X1 = z^lambda1 sum zeta1_n z^n
    std::vector<K> b;      // X2 = z^lambda2 sum b_n z^n + c X1 log z
    std::vector<K> a;      // a_0..a_{m-1} of the log-term recursion
};

namespace detail {

template <class K>
int require_integer_gap(const IndicialData<K>& ind) {
    auto m = ind.integer_gap();
    if (!m) {
        if (ind.gap_class == GapClass::parametric)
            throw std::domain_error("indicial data depends on theta");
        throw std::domain_error(std::string("log term requires a non-negative integer gap, got ") +
                                name(ind.gap_class));
    }
    return *m;
}

}  // namespace detail

/// X2 per the lambda-derivative construction; b_m = 0 normalization for m > 0.
template <class K>
SecondSolution<K> second_solution(const RegularSingularODE<K>& ode, int N) {
    auto ind = indicial(ode);
    int m = detail::require_integer_gap(ind);
    N = std::max(N, m);
    ode.require_terms(N + 1);
    SecondSolution<K> s;
    s.m = m;
    s.lambda1 = *ind.lambda1;
    s.lambda2 = *ind.lambda2;
    s.zeta1 = series_solution(ode, s.lambda1, N);
    std::vector<K> E(N + 1);
    for (int n = 0; n <= N; ++n) {
        K acc = (K(2) * s.lambda1 + K(2 * n - 1)) * s.zeta1[n];
        for (int k = 0; k <= n; ++k) acc += ode.p(n - k) * s.zeta1[k];
        E[n] = acc;
    }
    s.b.assign(N + 1, K());
    if (m == 0) {
        s.log_coeff = K(1);
        s.b[0] = K();
    } else {
        s.b[0] = K(1);
        for (int j = 1; j < m; ++j) {
            K acc;
            for (int k = 0; k < j; ++k) acc += ode.r(j, k, s.lambda2) * s.b[k];
            s.b[j] = acc / K(j * (m - j));
        }
        s.a.assign(s.b.begin(), s.b.begin() + m);
        K acc;
        for (int k = 0; k < m; ++k) acc += ode.r(m, k, s.lambda2) * s.b[k];
        s.log_coeff = -acc / K(m);
        s.b[m] = K();
    }
    for (int j = (m == 0 ? 1 : m + 1); j <= N; ++j) {
        K acc;
        for (int k = 0; k < j; ++k) acc += ode.r(j, k, s.lambda2) * s.b[k];
        if (j - m >= 0) acc += s.log_coeff * E[j - m];
        s.b[j] = -acc / ode.phi(s.lambda2 + K(j));
    }
    return s;
}

/// Log-term coefficient c (c = 1 by normalization when the gap is 0).
template <class K>
K log_term(const RegularSingularODE<K>& ode) {
    auto ind = indicial(ode);
    int m = detail::require_integer_gap(ind);
    if (m == 0) return K(1);
    ode.require_terms(m + 1);
    const K& l2 = *ind.lambda2;
    std::vector<K> a(m);
    a[0] = K(1);
    for (int j = 1; j < m; ++j) {
        K acc;
        for (int k = 0; k < j; ++k) acc += ode.r(j, k, l2) * a[k];
        a[j] = acc / K(j * (m - j));
    }
    K acc;
    for (int k = 0; k < m; ++k) acc += ode.r(m, k, l2) * a[k];
    return -acc / K(m);
}

/// c(theta) for a theta-parametric equation with theta-free indicial data.
inline ParamScalar log_term_theta_poly(const RegularSingularODE<ParamScalar>& ode) {
    auto ind = indicial(ode);
    if (ind.gap_class == GapClass::parametric) throw std::domain_error("theta-dependent indicial data");
    return log_term(ode);
}

template <class K>
struct FrobeniusReport {
    IndicialData<K> indicial;
    std::vector<K> zeta1;
    std::optional<K> log_coeff;
    bool log_free = false;
    std::optional<SecondSolution<K>> second;
};

template <class K>
FrobeniusReport<K> analyze(const RegularSingularODE<K>& ode, int N = -1) {
    FrobeniusReport<K> rep;
    rep.indicial = indicial(ode);
    auto m = rep.indicial.integer_gap();
    int n = N >= 0 ? N : (m ? *m : 0) + 8;
    n = std::min(n, ode.terms() - 1);
    if (m) {
        rep.second = second_solution(ode, n);
        rep.zeta1 = rep.second->zeta1;
        rep.log_coeff = rep.second->log_coeff;
        rep.log_free = is_zero(*rep.log_coeff);
    } else if (rep.indicial.gap_class != GapClass::parametric) {
        rep.log_coeff = K();
        rep.log_free = true;
        if (rep.indicial.lambda1) rep.zeta1 = series_solution(ode, *rep.indicial.lambda1, n);
    }
    return rep;
}

struct FormVerdict {
    Form form = Form::E0;
    bool applicable = false;
    std::string note;
    GapClass gap_class = GapClass::non_real;
    std::optional<ExactScalar> gap;
    bool integer_gap = false;
    bool log_free = false;
    bool real_gap() const {
        return gap_class == GapClass::real_non_integer || gap_class == GapClass::positive_integer ||
               gap_class == GapClass::zero;
    }
    bool single_valued() const { return integer_gap && log_free; }
};

struct EquivalenceReport {
    SpherePoint end;
    std::vector<FormVerdict> forms;
    bool consistent = false;
    bool gaps_all_real = false;
    bool gaps_reality_agrees = false;
};

inline FormVerdict verdict_for(Form f, const RationalFunction& G, const RationalFunction& Q, const SpherePoint& end) {
    FormVerdict v;
    v.form = f;
    try {
        auto ode = from_form(f, G, Q, end);
        auto ind = indicial(ode);
        v.applicable = true;
        v.gap_class = ind.gap_class;
        v.gap = ind.gap;
        v.integer_gap = ind.integer_gap().has_value() && *ind.integer_gap() > 0;
        v.log_free = v.integer_gap ? is_zero(log_term(ode)) : ind.gap_class != GapClass::zero;
    } catch (const NotSingular& e) {
        // ordinary point: exponents 0 and 1, holomorphic solutions
        v.applicable = true;
        v.note = e.what();
        v.gap_class = GapClass::positive_integer;
        v.gap = ExactScalar(1);
        v.integer_gap = true;
        v.log_free = true;
    }
    return v;
}

/// The three forms must agree on "integer gap and log-free" at an end with ord Q >= -2.
inline EquivalenceReport equivalence_report(const RationalFunction& G, const RationalFunction& Q,
                                            const SpherePoint& end) {
    if (Q.is_zero()) throw std::domain_error("Q must be nonzero");
    if (differential_order_at(Q, 2, end) < -2)
        throw std::domain_error("equivalence_report requires ord Q >= -2 at the end");
    EquivalenceReport rep;
    rep.end = end;
    for (Form f : {Form::E0, Form::E1sharp, Form::E2sharp}) rep.forms.push_back(verdict_for(f, G, Q, end));
    bool sv = rep.forms[0].single_valued();
    rep.consistent = true;
    rep.gaps_all_real = true;
    rep.gaps_reality_agrees = true;
    for (auto& v : rep.forms) {
        if (v.single_valued() != sv) rep.consistent = false;
        if (!v.real_gap()) rep.gaps_all_real = false;
        if (v.real_gap() != rep.forms[0].real_gap()) rep.gaps_reality_agrees = false;
    }
    return rep;
}

}  // namespace cmc1::frobenius

#endif
