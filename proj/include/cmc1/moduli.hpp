#ifndef CMC1_MODULI_HPP
#define CMC1_MODULI_HPP

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rational_function.hpp"

namespace cmc1::moduli {

struct CompatibilityViolation : std::domain_error {
    using std::domain_error::domain_error;
};
struct CompletenessViolation : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidSpec : std::domain_error {
    using std::domain_error::domain_error;
};

/// Genus-1 data G = wp, Q = theta * (sigma quotient) on the lattice (v1, v2).
struct EllipticDescriptor {
    std::complex<double> v1, v2;
    ExactScalar theta;
    std::vector<std::complex<double>> ends;
};

struct SurfaceSpec {
    int genus = 0;
    std::vector<SpherePoint> ends;
    RationalFunction G, Q;
    std::string label;
    std::optional<EllipticDescriptor> elliptic;
};

struct EndReport {
    SpherePoint point;
    int d = 0;
    int mu_sharp = 0;
    int slack = 0;
    bool regular_singular = false;
};

struct UmbilicReport {
    SpherePoint point;
    std::optional<QPoly> factor;  // set when the point is a root of an unsplit factor
    int xi = 0;
    int weight() const { return factor ? factor->degree() : 1; }
};

struct Analysis {
    std::vector<EndReport> ends;
    std::vector<UmbilicReport> umbilics;
};

struct CurvatureReport {
    int degG = 0;
    int TA_dual_over_4pi = 0;
    int gauss_bonnet_residual = 0;
    int riemann_roch_residual = 0;
    int ta_identity_residual = 0;
    int osserman_slack = 0;
};

/// "O(-2,-3)", "I(-1,-1)"; ends listed in the given order.
inline std::string type_label(int genus, const std::vector<int>& d) {
    std::string s = genus == 0 ? "O(" : genus == 1 ? "I(" : "G" + std::to_string(genus) + "(";
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    if (d.empty()) s += "0";
    return s + ")";
}

inline std::string type_label(const Analysis& a, int genus = 0) {
    std::vector<int> d;
    for (auto& e : a.ends) d.push_back(e.d);
    std::sort(d.begin(), d.end(), [](int x, int y) { return x > y; });
    return type_label(genus, d);
}

namespace detail {

/// Remove every factor (z - a) for finite ends a.
inline QPoly strip_ends(QPoly p, const std::vector<SpherePoint>& ends) {
    for (auto& e : ends) {
        if (e.is_infinity()) continue;
        QPoly lin = QPoly::linear(e.value());
        while (p.degree() > 0) {
            auto [q, r] = divmod(p, lin);
            if (!r.is_zero()) break;
            p = q;
        }
    }
    return p;
}

inline bool contains(const std::vector<SpherePoint>& ends, const SpherePoint& p) {
    return std::find(ends.begin(), ends.end(), p) != ends.end();
}

}  // namespace detail

/// End and umbilic structure of a genus-0 spec, with the pointwise conditions
/// ord Q = branch order of G off the ends and mu - d >= 2 at each end.
inline Analysis analyze(const SurfaceSpec& spec) {
    if (spec.genus != 0) throw InvalidSpec("analyze: genus-1 data is checked numerically");
    if (spec.ends.empty()) throw InvalidSpec("spec has no ends");
    for (std::size_t i = 0; i < spec.ends.size(); ++i)
        for (std::size_t j = i + 1; j < spec.ends.size(); ++j)
            if (spec.ends[i] == spec.ends[j]) throw InvalidSpec("ends must be distinct");
    if (spec.G.is_constant()) throw InvalidSpec("G must be non-constant");
    if (spec.Q.is_zero()) throw InvalidSpec("Q must be nonzero");

    Analysis out;
    for (auto& p : spec.ends) {
        EndReport e;
        e.point = p;
        e.d = differential_order_at(spec.Q, 2, p);
        e.mu_sharp = branch_order(spec.G, p);
        e.slack = e.mu_sharp - e.d;
        e.regular_singular = e.d >= -2;
        if (e.slack < 2)
            throw CompletenessViolation("end " + p.str() + ": mu# - d = " + std::to_string(e.slack) + " < 2");
        out.ends.push_back(e);
    }

    QPoly qn = detail::strip_ends(spec.Q.num(), spec.ends);
    QPoly qd = detail::strip_ends(spec.Q.den(), spec.ends);
    if (qd.degree() > 0) {
        auto rs = split_roots(qd, true);
        std::string where = rs.roots.empty() ? "roots of " + qd.str() : rs.roots.front().first.str();
        throw CompatibilityViolation("Q has a pole at interior point " + where);
    }
    const QPoly& N = spec.G.num();
    const QPoly& D = spec.G.den();
    QPoly W = detail::strip_ends(N.derivative() * D - N * D.derivative(), spec.ends);
    if (qn.monic() != W.monic()) {
        QPoly g = gcd(qn, W);
        QPoly bad = (qn / g) * (W / g);
        auto rs = split_roots(bad, true);
        std::string where = rs.roots.empty() ? "roots of " + bad.monic().str() : rs.roots.front().first.str();
        if (!rs.roots.empty()) {
            SpherePoint x(rs.roots.front().first);
            where += " (ord Q = " + std::to_string(order_at(spec.Q, x)) +
                     ", branch order of G = " + std::to_string(branch_order(spec.G, x)) + ")";
        }
        throw CompatibilityViolation("ord Q differs from the branch order of G at interior point " + where);
    }
    auto inf = SpherePoint::infinity();
    int xi_inf = 0;
    if (!detail::contains(spec.ends, inf)) {
        int dq = differential_order_at(spec.Q, 2, inf), bg = branch_order(spec.G, inf);
        if (dq != bg)
            throw CompatibilityViolation("ord Q = " + std::to_string(dq) + " but branch order of G = " +
                                         std::to_string(bg) + " at interior point inf");
        xi_inf = dq;
    }
    auto rs = split_roots(qn, true);
    for (auto& [r, m] : rs.roots) out.umbilics.push_back({SpherePoint(r), std::nullopt, m});
    for (auto& [f, m] : rs.unsplit) out.umbilics.push_back({inf, f, m});
    if (xi_inf > 0) out.umbilics.push_back({inf, std::nullopt, xi_inf});
    return out;
}

/// Integer identities of the total curvature: Gauss-Bonnet, Riemann-Roch and the
/// slack form of TA, plus the Osserman slack.
inline CurvatureReport curvature_report(int genus, int degG, const std::vector<EndReport>& ends,
                                        const std::vector<UmbilicReport>& umbilics) {
    CurvatureReport r;
    int chi = 2 - 2 * genus;
    int n = static_cast<int>(ends.size());
    int smu = 0, sd = 0, sslack = 0, sxi = 0;
    for (auto& e : ends) {
        smu += e.mu_sharp;
        sd += e.d;
        sslack += e.slack;
    }
    for (auto& u : umbilics) sxi += u.xi * u.weight();
    r.degG = degG;
    r.TA_dual_over_4pi = degG;
    int ta2pi = 2 * degG;
    r.gauss_bonnet_residual = ta2pi - (chi + smu + sxi);
    r.riemann_roch_residual = sxi + sd + 2 * chi;
    r.ta_identity_residual = ta2pi - (2 * genus - 2 + sslack);
    r.osserman_slack = ta2pi - 2 * (genus + n - 1);
    if (r.gauss_bonnet_residual != 0 || r.riemann_roch_residual != 0 || r.ta_identity_residual != 0)
        throw InvalidSpec("curvature identities fail: GB " + std::to_string(r.gauss_bonnet_residual) + ", RR " +
                          std::to_string(r.riemann_roch_residual) + ", TA " +
                          std::to_string(r.ta_identity_residual));
    if (r.osserman_slack < 0) throw InvalidSpec("Osserman inequality violated");
    return r;
}

inline CurvatureReport curvature_report(const SurfaceSpec& spec) {
    auto a = analyze(spec);
    return curvature_report(0, spec.G.degree(), a.ends, a.umbilics);
}

struct TypeTuple {
    int genus = 0;
    std::vector<int> d;   // sorted descending
    std::vector<int> mu;  // aligned with d
    int umbilic_order_sum = 0;
    std::string label;
    std::string note;
};

struct Exclusion {
    TypeTuple tuple;
    std::string axiom;
    std::string citation;
};

struct Enumeration {
    int budget = 0;  // TA / 4pi
    std::vector<TypeTuple> types;
    std::vector<Exclusion> exclusions;
};

/// Whether a tuple satisfies the TA, completeness, branch-order and Riemann-Roch constraints.
inline bool admissible(int budget, const TypeTuple& t) {
    int sslack = 0, sd = 0;
    for (std::size_t j = 0; j < t.d.size(); ++j) {
        int slack = t.mu[j] - t.d[j];
        if (slack < 2 || t.mu[j] < 0 || t.mu[j] > budget - 1) return false;
        sslack += slack;
        sd += t.d[j];
    }
    int sxi = 4 * t.genus - 4 - sd;
    if (2 * budget != 2 * t.genus - 2 + sslack) return false;
    if (sxi < 0 || sxi != t.umbilic_order_sum) return false;
    if (sxi > 0 && budget - 1 < 1) return false;
    return true;
}

/// All (genus, ends) types with TA(f#) = 4 pi * budget.
inline Enumeration enumerate_types(int budget) {
    if (budget < 0 || budget > 2) throw std::domain_error("unsupported budget (0, 4pi, 8pi)");
    Enumeration out;
    out.budget = budget;
    if (budget == 0) {
        TypeTuple h;
        h.genus = 0;
        h.label = "O(0)";
        h.note = "horosphere: G constant, Q = 0";
        out.types.push_back(h);
        return out;
    }
    for (int genus = 0; genus <= budget; ++genus) {
        int total = 2 * budget - 2 * genus + 2;  // sum of slacks
        for (int n = 1; 2 * n <= total; ++n) {
            // non-increasing sequences of (slack, mu) pairs
            std::vector<std::pair<int, int>> cur;
            std::function<void(int, std::pair<int, int>)> rec = [&](int left, std::pair<int, int> maxpair) {
                if (static_cast<int>(cur.size()) == n) {
                    if (left != 0) return;
                    std::vector<std::pair<int, int>> dm;
                    for (auto [s, mu] : cur) dm.emplace_back(mu - s, mu);
                    std::sort(dm.begin(), dm.end(), [](auto a, auto b) {
                        return a.first != b.first ? a.first > b.first : a.second > b.second;
                    });
                    TypeTuple t;
                    t.genus = genus;
                    int sd = 0;
                    for (auto [d, mu] : dm) {
                        t.d.push_back(d);
                        t.mu.push_back(mu);
                        sd += d;
                    }
                    t.umbilic_order_sum = 4 * genus - 4 - sd;
                    t.label = type_label(genus, t.d);
                    if (!admissible(budget, t)) return;
                    for (auto& e : out.types)
                        if (e.genus == t.genus && e.d == t.d && e.mu == t.mu) return;
                    out.types.push_back(t);
                    return;
                }
                for (int s = std::min(left, maxpair.first); s >= 2; --s)
                    for (int mu = budget - 1; mu >= 0; --mu) {
                        std::pair<int, int> pr{s, mu};
                        if (pr > maxpair) continue;
                        cur.push_back(pr);
                        rec(left - s, pr);
                        cur.pop_back();
                    }
            };
            rec(total, {total, budget});
        }
    }
    // exclusions recorded as axioms with citations
    std::vector<TypeTuple> kept;
    for (auto& t : out.types) {
        int n = static_cast<int>(t.d.size());
        if (t.genus == 2 && n == 1) {
            out.exclusions.push_back({t, "flux: (genus, ends) = (2, 1) does not occur",
                                      "balancing formula for flux [ruy2]"});
        } else if (t.genus == 1 && n == 2 && t.d == std::vector<int>{-1, -2}) {
            out.exclusions.push_back({t, "flux: genus-1 ends with (d1, d2) = (-2, -1) do not occur",
                                      "balancing formula for flux [ruy2]"});
        } else if (budget == 2 && t.genus == 0 && t.d == std::vector<int>{-1, -3}) {
            out.exclusions.push_back({t, "log-term obstruction: c(theta) = 0 forces theta = 0",
                                      "census o13 (type O(-1,-3))"});
        } else {
            kept.push_back(t);
        }
    }
    out.types = kept;
    return out;
}

}  // namespace cmc1::moduli

#endif
