#ifndef CMC1_FLATLAB_HPP
#define CMC1_FLATLAB_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "elliptic.hpp"
#include "rational_function.hpp"
#include "rootiso.hpp"

namespace cmc1::flatlab {

using cd = std::complex<double>;
using Vec3 = std::array<double, 3>;

struct SingularPath : std::domain_error {
    using std::domain_error::domain_error;
};

/// Weierstrass data (g, omega = w(z) dz) on a domain in C.
struct WeierstrassData {
    std::function<cd(cd)> g;
    std::function<cd(cd)> omega;
    std::vector<cd> singular;  // ends and poles to keep off the path
};

inline WeierstrassData rational_data(const RationalFunction& g, const RationalFunction& omega) {
    WeierstrassData d;
    d.g = [g](cd z) { return g.eval(z); };
    d.omega = [omega](cd z) { return omega.eval(z); };
    for (const auto* f : {&g, &omega}) {
        if (f->den().degree() < 1) continue;
        std::vector<std::complex<long double>> c;
        for (auto x : to_complex(f->den())) c.emplace_back(x.real(), x.imag());
        for (auto r : cmc1::detail::aberth(c)) d.singular.emplace_back(double(r.real()), double(r.imag()));
    }
    return d;
}

namespace detail {

template <class F>
auto gk(F f, double a, double b, double tol) {
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &err);
}

inline void check_clearance(const WeierstrassData& d, cd a, cd b, double clearance) {
    for (auto s : d.singular) {
        // distance from s to segment [a, b]
        cd ab = b - a;
        double t = std::abs(ab) == 0 ? 0 : std::clamp(((s - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
        if (std::abs(a + t * ab - s) < clearance)
            throw SingularPath("path passes within " + std::to_string(clearance) + " of a singular point");
    }
}

}  // namespace detail

/// Re int (1 - g^2, i(1 + g^2), 2g) omega along a polyline.
inline Vec3 weier_integrate(const WeierstrassData& d, const std::vector<cd>& path, double tol = 1e-12,
                            double clearance = 1e-6) {
    if (path.size() < 2) throw std::invalid_argument("path needs two points");
    Vec3 x{0, 0, 0};
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        cd a = path[k], b = path[k + 1];
        detail::check_clearance(d, a, b, clearance);
        for (int c = 0; c < 3; ++c) {
            auto f = [&](double t) {
                cd z = a + t * (b - a);
                cd g = d.g(z), w = d.omega(z) * (b - a);
                cd phi = c == 0 ? (1.0 - g * g) : c == 1 ? cd(0, 1) * (1.0 + g * g) : 2.0 * g;
                return (phi * w).real();
            };
            x[c] += detail::gk(f, 0.0, 1.0, tol);
        }
    }
    return x;
}

struct BConstant {
    double B = 0, numerator = 0, denominator = 0;
};

/// Both integrals of the quotient after x = sin^2 t.
inline BConstant B_constant(double tol = 1e-14) {
    BConstant b;
    // x dx / sqrt(x(1-x^2)) -> 2 sin^2 t / sqrt(1 + sin^2 t) dt
    b.numerator = detail::gk(
        [](double t) {
            double s = std::sin(t);
            return 2 * s * s / std::sqrt(1 + s * s);
        },
        0.0, M_PI / 2, tol);
    // (1 - x^2) dx / sqrt(x(1-x^2)) -> 2 cos^2 t sqrt(1 + sin^2 t) dt
    b.denominator = detail::gk(
        [](double t) {
            double s = std::sin(t), c = std::cos(t);
            return 2 * c * c * std::sqrt(1 + s * s);
        },
        0.0, M_PI / 2, tol);
    b.B = b.numerator / b.denominator;
    return b;
}

/// Same quotient by composite Gauss-Legendre with n panels; used to study convergence.
inline double B_constant_panels(int panels) {
    static const double xg[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                 0.9061798459386640};
    static const double wg[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                 0.2369268850561891, 0.2369268850561891};
    double num = 0, den = 0, h = (M_PI / 2) / panels;
    for (int p = 0; p < panels; ++p)
        for (int k = 0; k < 5; ++k) {
            double t = h * (p + 0.5 + 0.5 * xg[k]);
            double s = std::sin(t), c = std::cos(t);
            num += 0.5 * h * wg[k] * 2 * s * s / std::sqrt(1 + s * s);
            den += 0.5 * h * wg[k] * 2 * c * c * std::sqrt(1 + s * s);
        }
    return num / den;
}

/// Chen-Gackstatter periods (Per1, Per2).
inline std::pair<double, double> cg_periods(double nu1, double nu2, double tol = 1e-14) {
    if (!(nu1 > 0)) throw std::domain_error("cg_periods: nu1 must be positive");
    // int (1 - k x^{-1}(1-x)(x+a)) sqrt(x) dx / sqrt((1-x)(x+a)), x = sin^2 t
    auto per = [tol](double a, double k) {
        return detail::gk(
            [a, k](double t) {
                double s = std::sin(t), c = std::cos(t), x = s * s;
                return 2 * s * s / std::sqrt(x + a) - 2 * k * c * c * std::sqrt(x + a);
            },
            0.0, M_PI / 2, tol);
    };
    double p1 = per(nu1, nu2 * nu2);
    double p2 = std::sqrt(nu1) * per(1 / nu1, nu1 * nu2 * nu2);
    return {p1, p2};
}

using Mat2d = std::array<std::array<double, 2>, 2>;

/// Central-difference Jacobian d(Per1, Per2)/d(nu1, nu2).
inline Mat2d cg_jacobian(double nu1, double nu2, double h = 1e-5) {
    Mat2d J{};
    auto a = cg_periods(nu1 + h, nu2), b = cg_periods(nu1 - h, nu2);
    J[0][0] = (a.first - b.first) / (2 * h);
    J[1][0] = (a.second - b.second) / (2 * h);
    a = cg_periods(nu1, nu2 + h);
    b = cg_periods(nu1, nu2 - h);
    J[0][1] = (a.first - b.first) / (2 * h);
    J[1][1] = (a.second - b.second) / (2 * h);
    return J;
}

struct PeriodReport {
    std::map<std::string, double> values;
    Mat2d jacobian{};
    double determinant = 0;
    double residual = 0;
    std::array<double, 2> solved_at{};
    int iterations = 0;
    bool converged = false;
};

/// Damped Newton on (Per1, Per2) = 0; step halving up to 8 times on residual increase.
inline PeriodReport cg_solve(std::array<double, 2> start, double tol = 1e-12, int max_iter = 50) {
    PeriodReport rep;
    std::array<double, 2> x = start;
    auto res = [](const std::pair<double, double>& p) { return std::hypot(p.first, p.second); };
    auto P = cg_periods(x[0], x[1]);
    double r = res(P);
    int it = 0;
    for (; it < max_iter && r > tol; ++it) {
        auto J = cg_jacobian(x[0], x[1]);
        double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0) break;
        double dx = (J[1][1] * P.first - J[0][1] * P.second) / det;
        double dy = (-J[1][0] * P.first + J[0][0] * P.second) / det;
        double lambda = 1;
        bool accepted = false;
        for (int h = 0; h <= 8; ++h, lambda /= 2) {
            std::array<double, 2> y{x[0] - lambda * dx, x[1] - lambda * dy};
            if (y[0] <= 0 || y[1] <= 0) continue;
            auto Py = cg_periods(y[0], y[1]);
            if (res(Py) < r) {
                x = y;
                P = Py;
                r = res(Py);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    rep.iterations = it;
    rep.solved_at = x;
    rep.residual = r;
    rep.values["Per1"] = P.first;
    rep.values["Per2"] = P.second;
    rep.jacobian = cg_jacobian(x[0], x[1]);
    rep.determinant = rep.jacobian[0][0] * rep.jacobian[1][1] - rep.jacobian[0][1] * rep.jacobian[1][0];
    rep.converged = r < 1e-9;
    return rep;
}

/// Chen-Gackstatter Weierstrass data on the half sheet Im z >= 0 with arg(w_j) in [0, pi).
inline WeierstrassData chen_gackstatter_data(double nu1, double nu2) {
    auto branch = [](cd u) {
        cd r = std::sqrt(u);  // principal: arg in (-pi/2, pi/2]
        if (std::arg(r) < 0 || (r.imag() == 0 && r.real() < 0)) r = -r;
        return r;
    };
    WeierstrassData d;
    auto w = [=](cd z) { return branch(z) * branch(z - 1.0) * branch(z + nu1); };
    d.g = [=](cd z) { return nu2 * w(z) / z; };
    d.omega = [=](cd z) { return z / w(z); };
    d.singular = {0.0, 1.0, -nu1};
    return d;
}

struct O33Period {
    ExactScalar residue;
    double numeric = 0, closed_form = 0;
};

/// Per(nu) = Re(2 pi i Res_{z=0} i (1 + g^2) omega) for the O(-3,-3) data.
inline O33Period o33_period(const ExactScalar& a, const ExactScalar& nu) {
    if (!a.is_real() || !nu.is_real()) throw std::domain_error("o33_period: a and nu must be real");
    ExactScalar one(1);
    if (a + one == ExactScalar()) throw std::domain_error("o33_period: a = -1 makes dPer/dnu vanish at 0");
    if ((a * a + ExactScalar(2) * a - one).is_zero())
        throw std::domain_error("o33_period: a = -1 +- sqrt(2) makes the metric degenerate at z = -1");
    RationalFunction z = RationalFunction::z();
    auto C = [](const ExactScalar& c) { return RationalFunction(c); };
    RationalFunction g = (C(2) * z.pow(2) + C(ExactScalar(2) * a) * z - C(a * a + one)) / (C(2) * (z + C(one))) + C(nu);
    RationalFunction omega = (z + C(one)).pow(2) / z.pow(3);
    RationalFunction integrand = C(ExactScalar::imag_unit()) * (C(one) + g * g) * omega;
    O33Period out;
    out.residue = residue_at(integrand, SpherePoint(0));
    // Re(2 pi i * res)
    cd r = out.residue.to_complex();
    out.numeric = (cd(0, 2 * M_PI) * r).real();
    double av = a.to_complex().real(), nv = nu.to_complex().real();
    out.closed_form = -2 * M_PI * nv * (2 + 2 * av + nv);
    return out;
}

}  // namespace cmc1::flatlab

#endif
