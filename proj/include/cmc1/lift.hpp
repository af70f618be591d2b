#ifndef CMC1_LIFT_HPP
#define CMC1_LIFT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "rational_function.hpp"
#include "rootiso.hpp"

namespace cmc1::bryant {

using cd = std::complex<double>;
using Mat = std::array<std::array<cd, 2>, 2>;

struct LiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ClearanceViolation : LiftError {
    using LiftError::LiftError;
};

inline Mat identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
inline Mat mul(const Mat& a, const Mat& b) {
    Mat c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
}
inline cd det(const Mat& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
inline Mat inverse(const Mat& a) {
    cd d = det(a);
    return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}
inline Mat adjoint(const Mat& a) { return {{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}}; }
inline Mat scaled(const Mat& a, cd s) { return {{{a[0][0] * s, a[0][1] * s}, {a[1][0] * s, a[1][1] * s}}}; }
/// Frobenius norm of a - b.
inline double dist(const Mat& a, const Mat& b) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += std::norm(a[i][j] - b[i][j]);
    return std::sqrt(s);
}
inline std::array<cd, 2> eigenvalues(const Mat& a) {
    cd tr = a[0][0] + a[1][1], disc = std::sqrt(tr * tr - 4.0 * det(a));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

/// dF F^{-1} = [[G, -G^2], [1, -G]] Q / G' dz with the entries reduced exactly.
struct LiftSystem {
    RationalFunction a, b, c;  // M = [[a, b], [c, -a]]
    std::vector<cd> singular;

    Mat M(cd z) const {
        cd av = a.eval(z);
        return {{{av, b.eval(z)}, {c.eval(z), -av}}};
    }
    double min_separation() const {
        double d = 1e300;
        for (std::size_t i = 0; i < singular.size(); ++i)
            for (std::size_t j = i + 1; j < singular.size(); ++j) d = std::min(d, std::abs(singular[i] - singular[j]));
        return singular.size() < 2 ? 1.0 : d;
    }
};

inline std::vector<cd> finite_poles(const RationalFunction& f) {
    std::vector<cd> out;
    if (f.den().degree() < 1) return out;
    std::vector<std::complex<long double>> co;
    for (auto x : to_complex(squarefree_part(f.den()))) co.emplace_back(x.real(), x.imag());
    for (auto r : cmc1::detail::aberth(co)) out.emplace_back(double(r.real()), double(r.imag()));
    return out;
}

inline LiftSystem make_system(const RationalFunction& G, const RationalFunction& Q) {
    if (G.is_constant()) throw std::domain_error("lift needs nonconstant G");
    LiftSystem s;
    RationalFunction h = Q / G.derivative();
    s.a = G * h;
    s.b = -(G * G * h);
    s.c = h;
    for (const auto* f : {&s.a, &s.b, &s.c})
        for (auto p : finite_poles(*f)) {
            bool seen = false;
            for (auto q : s.singular) seen = seen || std::abs(p - q) < 1e-9 * (1 + std::abs(p));
            if (!seen) s.singular.push_back(p);
        }
    return s;
}

inline Mat coefficient_matrix(const RationalFunction& G, const RationalFunction& Q, cd z) {
    auto s = make_system(G, Q);
    for (auto p : s.singular)
        if (std::abs(z - p) < 1e-12 * (1 + std::abs(p))) throw std::domain_error("coefficient matrix at a singular point");
    return s.M(z);
}

struct LiftState {
    Mat F = identity();
    cd z = 0;
    double path_arclength = 0;
    double det_drift = 0;  // max |det F - 1| seen at segment ends
    long steps = 0;
};

struct IntegrationOptions {
    double tol = 1e-12;
    double clearance = -1;  // negative: 0.05 * min pairwise singular distance
    long max_steps = 2000000;
};

namespace detail {

using State = std::array<double, 8>;

inline State pack(const Mat& F) {
    State x{};
    for (int k = 0; k < 4; ++k) {
        cd v = F[k / 2][k % 2];
        x[2 * k] = v.real();
        x[2 * k + 1] = v.imag();
    }
    return x;
}
inline Mat unpack(const State& x) {
    Mat F{};
    for (int k = 0; k < 4; ++k) F[k / 2][k % 2] = {x[2 * k], x[2 * k + 1]};
    return F;
}

inline double segment_distance(cd s, cd a, cd b) {
    cd ab = b - a;
    double t = std::norm(ab) == 0 ? 0 : std::clamp(((s - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
    return std::abs(a + t * ab - s);
}

}  // namespace detail

/// Dormand-Prince 5(4) along a polyline; F evolves by dF = M(z) F dz.
inline LiftState integrate_lift(const LiftSystem& sys, const std::vector<cd>& path, const Mat& F0,
                                const IntegrationOptions& opt = {}) {
    namespace ode = boost::numeric::odeint;
    if (path.size() < 2) throw std::invalid_argument("path needs two points");
    if (std::abs(det(F0) - 1.0) > 1e-9) throw std::invalid_argument("det F0 must be 1");
    double clearance = opt.clearance >= 0 ? opt.clearance : 0.05 * sys.min_separation();
    LiftState st;
    st.F = F0;
    st.z = path.front();
    // per-step error tol/100 keeps the accumulated error on unit-length paths near tol
    double step_tol = 1e-2 * opt.tol;
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<detail::State>>(step_tol, step_tol);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        cd a = path[k], b = path[k + 1];
        for (auto s : sys.singular)
            if (detail::segment_distance(s, a, b) < clearance)
                throw ClearanceViolation("path passes within " + std::to_string(clearance) + " of a singular point");
        cd v = b - a;
        auto rhs = [&](const detail::State& x, detail::State& dx, double t) {
            Mat F = detail::unpack(x);
            Mat D = scaled(mul(sys.M(a + t * v), F), v);
            dx = detail::pack(D);
        };
        detail::State x = detail::pack(st.F);
        double t = 0, dt = 0.05;
        while (t < 1.0) {
            if (t + dt > 1.0) dt = 1.0 - t;
            if (++st.steps > opt.max_steps) throw LiftError("step limit exceeded");
            if (dt < 1e-14) throw LiftError("step size underflow near a singular point");
            stepper.try_step(rhs, x, t, dt);
        }
        st.F = detail::unpack(x);
        st.path_arclength += std::abs(v);
        st.det_drift = std::max(st.det_drift, std::abs(det(st.F) - 1.0));
        st.z = b;
    }
    return st;
}

/// F at every vertex of the polyline.
inline std::vector<std::pair<cd, Mat>> sample_lift(const LiftSystem& sys, const std::vector<cd>& path, const Mat& F0,
                                                   const IntegrationOptions& opt = {}) {
    std::vector<std::pair<cd, Mat>> out{{path.front(), F0}};
    Mat F = F0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        F = integrate_lift(sys, {path[k], path[k + 1]}, F, opt).F;
        out.emplace_back(path[k + 1], F);
    }
    return out;
}

// ---------------------------------------------------------------- immersion

using Vec3 = std::array<double, 3>;

/// FF* = x0 I + x1 s1 + x2 s2 + x3 s3 mapped to (x1, x2, x3)/(1 + x0).
inline Vec3 immerse(const Mat& F) {
    for (auto& r : F)
        for (auto& v : r)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::domain_error("non-finite lift");
    if (std::abs(det(F) - 1.0) > 1e-6) throw std::domain_error("immerse: det F far from 1");
    Mat X = mul(F, adjoint(F));
    double x0 = 0.5 * (X[0][0] + X[1][1]).real();
    double x3 = 0.5 * (X[0][0] - X[1][1]).real();
    double x1 = X[0][1].real(), x2 = X[0][1].imag();
    return {x1 / (1 + x0), x2 / (1 + x0), x3 / (1 + x0)};
}

/// g = -dF12/dF11 by central differences over consecutive samples.
struct GaussSample {
    cd z;
    cd g;
    bool flagged = false;  // dF11 vanished
};

inline std::vector<GaussSample> secondary_gauss_numeric(const std::vector<std::pair<cd, Mat>>& samples) {
    std::vector<GaussSample> out;
    for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
        cd d11 = samples[k + 1].second[0][0] - samples[k - 1].second[0][0];
        cd d12 = samples[k + 1].second[0][1] - samples[k - 1].second[0][1];
        GaussSample s{samples[k].first, 0, false};
        double scale = std::abs(samples[k].second[0][0]) + std::abs(samples[k].second[0][1]);
        if (std::abs(d11) <= 1e-14 * scale) s.flagged = true;
        else s.g = -d12 / d11;
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- monodromy

struct Loop {
    std::string end;
    cd center;
    cd base;
    double radius = 0;
    std::vector<cd> path;
    Mat rho{};  // continuation of F around the loop is F rho^{-1}
    double deviation = 0;  // min ||rho -+ I||
    int sign = 1;
    double det_residual = 0;
};

enum class MonodromyClass { identity_like, commuting_unitary, non_unitarizable, indeterminate };

inline const char* name(MonodromyClass c) {
    switch (c) {
        case MonodromyClass::identity_like: return "identity-like";
        case MonodromyClass::commuting_unitary: return "commuting-unitary";
        case MonodromyClass::non_unitarizable: return "non-unitarizable";
        default: return "indeterminate";
    }
}

struct MonodromyReport {
    std::vector<Loop> loops;
    MonodromyClass cls = MonodromyClass::indeterminate;
    double product_deviation = 0;  // ||prod -+ I|| in the fundamental-group relation
    double commutator = 0;
    double unimodularity = 0;
    double max_drift_per_length = 0;
};

struct MonodromyOptions {
    double tol_int = 1e-12;
    double tol_mono = 1e-6;
    int circle_vertices = 48;
    std::optional<cd> base;
};

namespace detail {

inline std::vector<cd> circle(cd c, double r, double phi0, int n, bool ccw) {
    std::vector<cd> pts;
    for (int k = 0; k <= n; ++k) pts.push_back(c + std::polar(r, phi0 + (ccw ? 1 : -1) * 2 * M_PI * k / n));
    return pts;
}

inline double spoke_clearance(const std::vector<cd>& sing, cd base, cd target, cd skip) {
    double m = 1e300;
    for (auto s : sing)
        if (std::abs(s - skip) > 1e-12) m = std::min(m, segment_distance(s, base, target));
    return m;
}

inline cd centroid(const std::vector<cd>& pts) {
    cd c = 0;
    for (auto p : pts) c += p;
    return pts.empty() ? c : c / double(pts.size());
}

}  // namespace detail

/// Base point keeping every spoke to a finite end far from the other singular points.
inline cd default_base(const std::vector<cd>& finite_ends, const std::vector<cd>& singular) {
    cd c = detail::centroid(finite_ends);
    double spread = 0.5;
    for (auto e : finite_ends) spread = std::max(spread, std::abs(e - c));
    cd best = c + cd(0.31, 0.67) * spread;
    double best_score = -1;
    for (double rad : {0.37, 0.61, 0.83, 1.3})
        for (int k = 0; k < 24; ++k) {
            cd b = c + std::polar(rad * spread, 2 * M_PI * (k + 0.37) / 24);
            double score = 1e300;
            for (auto s : singular) score = std::min(score, std::abs(s - b));
            for (auto e : finite_ends) score = std::min(score, detail::spoke_clearance(singular, b, e, e));
            if (score > best_score) {
                best_score = score;
                best = b;
            }
        }
    return best;
}

/// Loops based at one point around each end; ends at infinity use a large clockwise circle.
inline MonodromyReport monodromy(const RationalFunction& G, const RationalFunction& Q, const std::vector<SpherePoint>& ends,
                                 const MonodromyOptions& opt = {}) {
    auto sys = make_system(G, Q);
    std::vector<cd> finite;
    bool has_inf = false;
    for (auto& e : ends) {
        if (e.is_infinity()) has_inf = true;
        else finite.push_back(e.value().to_complex());
    }
    std::vector<cd> sing = sys.singular;
    for (auto f : finite) {
        bool seen = false;
        for (auto s : sing) seen = seen || std::abs(s - f) < 1e-9;
        if (!seen) sing.push_back(f);
    }
    sys.singular = sing;
    cd base = opt.base ? *opt.base : default_base(finite, sing);
    MonodromyReport rep;
    IntegrationOptions io;
    io.tol = opt.tol_int;
    auto run = [&](Loop& L) {
        auto st = integrate_lift(sys, L.path, identity(), io);
        // F_loop = F0 N with F0 = I; rho = N^{-1}
        L.rho = inverse(st.F);
        double dp = dist(L.rho, identity()), dm = dist(L.rho, scaled(identity(), -1.0));
        L.sign = dp <= dm ? 1 : -1;
        L.deviation = std::min(dp, dm);
        L.det_residual = std::abs(det(L.rho) - 1.0);
        rep.max_drift_per_length = std::max(rep.max_drift_per_length, st.det_drift / (1 + st.path_arclength));
    };
    for (std::size_t k = 0; k < finite.size(); ++k) {
        cd e = finite[k];
        double r = 1e300;
        for (auto s : sing)
            if (std::abs(s - e) > 1e-9) r = std::min(r, 0.3 * std::abs(s - e));
        r = std::min(r, 0.5 * std::abs(base - e));
        if (sing.size() < 2) r = std::min(r, 0.5);
        Loop L;
        L.center = e;
        L.base = base;
        L.radius = r;
        cd dir = (base - e) / std::abs(base - e);
        L.path.push_back(base);
        for (auto q : detail::circle(e, r, std::arg(dir), opt.circle_vertices, true)) L.path.push_back(q);
        L.path.push_back(base);
        rep.loops.push_back(L);
    }
    // name finite loops after their ends
    {
        std::size_t k = 0;
        for (auto& e : ends)
            if (!e.is_infinity()) rep.loops[k++].end = e.str();
    }
    std::optional<double> psi;
    if (has_inf) {
        cd c = detail::centroid(finite);
        double R = 0;
        for (auto s : sing) R = std::max(R, std::abs(s - c));
        R = std::max({2 * R, 2 * std::abs(base - c), 1.0}) + 1.0;
        Loop L;
        L.end = "inf";
        L.center = c;
        L.base = base;
        L.radius = R;
        cd dir = base == c ? cd(1, 0) : (base - c) / std::abs(base - c);
        psi = std::arg(dir);
        L.path.push_back(base);
        for (auto q : detail::circle(c, R, std::arg(dir), 4 * opt.circle_vertices, false)) L.path.push_back(q);
        L.path.push_back(base);
        rep.loops.push_back(L);
    }
    {
        std::vector<std::future<void>> jobs;
        for (auto& L : rep.loops) jobs.push_back(std::async(std::launch::async, [&run, &L] { run(L); }));
        for (auto& j : jobs) j.get();
    }
    // relation: finite lassos in counterclockwise spoke order, then the loop at infinity
    std::vector<std::size_t> order(finite.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    double start = psi ? *psi : 0.0;
    auto angle = [&](std::size_t k) {
        double a = std::arg(finite[k] - base) - start;
        while (a <= 0) a += 2 * M_PI;
        while (a > 2 * M_PI) a -= 2 * M_PI;
        return a;
    };
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return angle(i) < angle(j); });
    // N(gamma1 gamma2) = N2 N1 with N = rho^{-1}
    Mat N = identity();
    for (auto k : order) N = mul(inverse(rep.loops[k].rho), N);
    if (has_inf) N = mul(inverse(rep.loops.back().rho), N);
    rep.product_deviation = std::min(dist(N, identity()), dist(N, scaled(identity(), -1.0)));
    // classification
    double maxdev = 0;
    for (auto& L : rep.loops) maxdev = std::max(maxdev, L.deviation);
    for (std::size_t i = 0; i < rep.loops.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.loops.size(); ++j)
            rep.commutator = std::max(rep.commutator, dist(mul(rep.loops[i].rho, rep.loops[j].rho),
                                                           mul(rep.loops[j].rho, rep.loops[i].rho)));
        for (auto ev : eigenvalues(rep.loops[i].rho))
            rep.unimodularity = std::max(rep.unimodularity, std::abs(std::abs(ev) - 1.0));
    }
    if (maxdev < opt.tol_mono) rep.cls = MonodromyClass::identity_like;
    else if (rep.commutator < opt.tol_mono && rep.unimodularity < opt.tol_mono) rep.cls = MonodromyClass::commuting_unitary;
    else if (rep.commutator < opt.tol_mono) rep.cls = MonodromyClass::non_unitarizable;
    else rep.cls = MonodromyClass::indeterminate;
    return rep;
}

/// Difference of eigenvalue phases of rho, in [0, pi] after folding by the sign of rho.
inline double eigenphase_gap(const Mat& rho) {
    auto ev = eigenvalues(rho);
    double d = std::abs(std::arg(ev[0] / ev[1]));  // in [0, pi]
    return d;
}

/// |2 pi gap - phase difference| modulo 2 pi, folded to [0, pi].
inline double eigenphase_mismatch(const Mat& rho, double gap) {
    double target = std::fmod(std::abs(2 * M_PI * gap), 2 * M_PI);
    if (target > M_PI) target = 2 * M_PI - target;
    return std::abs(eigenphase_gap(rho) - target);
}

// ---------------------------------------------------------------- curvature quadrature

struct TAResult {
    double value = 0;
    double expected = 0;
    double relative_error = 0;
};

/// Integral of 4|G'|^2/(1+|G|^2)^2 over the sphere, split into |z| <= 1 and |1/z| <= 1.
inline TAResult numeric_TA(const RationalFunction& G, int angular = 512, double tol = 1e-10) {
    if (G.is_constant()) throw std::domain_error("numeric_TA: G must be nonconstant");
    auto density_of = [](const RationalFunction& g) {
        QPoly N = g.num(), D = g.den(), N1 = N.derivative(), D1 = D.derivative();
        return [N, D, N1, D1](cd z) {
            auto h = [z](const QPoly& p) {
                cd acc = 0;
                const auto& c = p.coeffs();
                for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_complex();
                return acc;
            };
            cd n = h(N), d = h(D);
            double w = std::abs(h(N1) * d - n * h(D1));
            double s = std::norm(n) + std::norm(d);
            return 4 * w * w / (s * s);
        };
    };
    RationalFunction inv = RationalFunction(1) / RationalFunction::z();
    auto f0 = density_of(G);
    auto f1 = density_of(G.compose(inv));
    auto disk = [&](auto f) {
        auto ring = [&](double r) {
            double s = 0;
            for (int k = 0; k < angular; ++k) s += f(std::polar(r, 2 * M_PI * (k + 0.5) / angular));
            return s * 2 * M_PI / angular * r;
        };
        double err = 0;
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(ring, 0.0, 1.0, 15, tol, &err);
    };
    TAResult out;
    auto j0 = std::async(std::launch::async, [&] { return disk(f0); });
    double v1 = disk(f1);
    out.value = j0.get() + v1;
    out.expected = 4 * M_PI * G.degree();
    out.relative_error = std::abs(out.value - out.expected) / out.expected;
    return out;
}

// ---------------------------------------------------------------- meshes

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<double> abs_G;
    std::vector<cd> domain;
    double max_det_drift_per_length = 0;
    double seam_mismatch = 0;  // annulus only

    double max_norm() const {
        double m = 0;
        for (auto& v : vertices) m = std::max(m, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
        return m;
    }
    void write_obj(std::ostream& os) const {
        os.precision(17);
        for (auto& v : vertices) os << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
        for (auto& f : faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
};

struct Rectangle {
    cd lo, hi;
};
struct Annulus {
    cd center;
    double r0, r1;
    double cut = 0;  // angle of the branch cut
};

struct MeshOptions {
    int res = 24;
    double tol = 1e-12;
    bool dual = false;
};

namespace detail {

struct GridLift {
    std::vector<std::vector<Mat>> F;  // [i][j]
    double drift = 0;
};

/// Lift along the first row, then up each column: a comb spanning tree.
inline GridLift lift_grid(const LiftSystem& sys, const std::vector<std::vector<cd>>& pts, const Mat& F0, double tol) {
    IntegrationOptions io;
    io.tol = tol;
    std::size_t ni = pts.size(), nj = pts[0].size();
    GridLift gl;
    gl.F.assign(ni, std::vector<Mat>(nj));
    gl.F[0][0] = F0;
    for (std::size_t i = 1; i < ni; ++i) {
        auto st = integrate_lift(sys, {pts[i - 1][0], pts[i][0]}, gl.F[i - 1][0], io);
        gl.F[i][0] = st.F;
        gl.drift = std::max(gl.drift, std::abs(det(st.F) - 1.0) / (1 + std::abs(pts[i][0] - pts[0][0])));
    }
    std::vector<std::future<double>> jobs;
    for (std::size_t i = 0; i < ni; ++i)
        jobs.push_back(std::async(std::launch::async, [&, i] {
            double drift = 0, len = 0;
            for (std::size_t j = 1; j < nj; ++j) {
                auto st = integrate_lift(sys, {pts[i][j - 1], pts[i][j]}, gl.F[i][j - 1], io);
                gl.F[i][j] = st.F;
                len += st.path_arclength;
                drift = std::max(drift, std::abs(det(st.F) - 1.0) / (1 + len));
            }
            return drift;
        }));
    for (auto& j : jobs) gl.drift = std::max(gl.drift, j.get());
    return gl;
}

inline Mesh assemble(const GridLift& gl, const std::vector<std::vector<cd>>& pts, const RationalFunction& G, bool dual) {
    Mesh m;
    std::size_t ni = pts.size(), nj = pts[0].size();
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < nj; ++j) {
            const Mat& F = gl.F[i][j];
            m.vertices.push_back(immerse(dual ? inverse(F) : F));
            m.domain.push_back(pts[i][j]);
            m.abs_G.push_back(std::abs(G.eval(pts[i][j])));
        }
    auto id = [nj](std::size_t i, std::size_t j) { return static_cast<int>(i * nj + j); };
    for (std::size_t i = 0; i + 1 < ni; ++i)
        for (std::size_t j = 0; j + 1 < nj; ++j) {
            m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    m.max_det_drift_per_length = gl.drift;
    return m;
}

}  // namespace detail

inline Mesh mesh(const RationalFunction& G, const RationalFunction& Q, const Rectangle& dom, const MeshOptions& opt = {},
                 const Mat& F0 = identity()) {
    auto sys = make_system(G, Q);
    int n = opt.res;
    std::vector<std::vector<cd>> pts(n + 1, std::vector<cd>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            pts[i][j] = {dom.lo.real() + (dom.hi.real() - dom.lo.real()) * i / n,
                         dom.lo.imag() + (dom.hi.imag() - dom.lo.imag()) * j / n};
    double clearance = 0.05 * sys.min_separation();
    for (auto s : sys.singular)
        if (s.real() > dom.lo.real() - clearance && s.real() < dom.hi.real() + clearance &&
            s.imag() > dom.lo.imag() - clearance && s.imag() < dom.hi.imag() + clearance)
            throw ClearanceViolation("rectangle contains a singular point; use an annulus with a cut");
    auto gl = detail::lift_grid(sys, pts, F0, opt.tol);
    return detail::assemble(gl, pts, G, opt.dual);
}

/// Annulus split along the ray at angle `cut`; seam_mismatch compares both sides of the cut.
inline Mesh mesh(const RationalFunction& G, const RationalFunction& Q, const Annulus& dom, const MeshOptions& opt = {},
                 const Mat& F0 = identity()) {
    auto sys = make_system(G, Q);
    if (!(dom.r0 > 0 && dom.r1 > dom.r0)) throw std::invalid_argument("annulus needs 0 < r0 < r1");
    double clearance = 0.05 * sys.min_separation();
    for (auto s : sys.singular) {
        double r = std::abs(s - dom.center);
        if (r > dom.r0 - clearance && r < dom.r1 + clearance)
            throw ClearanceViolation("annulus contains a singular point");
    }
    int nr = opt.res, na = 4 * opt.res;
    std::vector<std::vector<cd>> pts(nr + 1, std::vector<cd>(na + 1));
    for (int i = 0; i <= nr; ++i)
        for (int j = 0; j <= na; ++j)
            pts[i][j] = dom.center + std::polar(dom.r0 + (dom.r1 - dom.r0) * i / nr, dom.cut + 2 * M_PI * j / na);
    auto gl = detail::lift_grid(sys, pts, F0, opt.tol);
    auto m = detail::assemble(gl, pts, G, opt.dual);
    for (int i = 0; i <= nr; ++i) {
        const auto& a = m.vertices[i * (na + 1)];
        const auto& b = m.vertices[i * (na + 1) + na];
        m.seam_mismatch = std::max(m.seam_mismatch, std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]));
    }
    return m;
}

}  // namespace cmc1::bryant

#endif
