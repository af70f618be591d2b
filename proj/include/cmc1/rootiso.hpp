#ifndef CMC1_ROOTISO_HPP
#define CMC1_ROOTISO_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "poly.hpp"

namespace cmc1 {

/// Disk {|z - center| <= radius} proven to contain exactly one root.
struct IsolatedRoot {
    std::complex<double> center;
    Rational radius;  // rigorous upper bound
    int multiplicity = 1;
    bool real = false;  // proven real (disk symmetric about R)
};

struct RootIsolationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct GaussQ {
    Rational re, im;
};

inline GaussQ gmul(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Rational abs_upper(const GaussQ& z) { return abs(z.re) + abs(z.im); }
inline Rational abs_lower(const GaussQ& z) { return std::max(abs(z.re), abs(z.im)); }

inline GaussQ exact(std::complex<double> z) { return {Rational(z.real()), Rational(z.imag())}; }

/// Aberth iteration on the complex coefficients (ascending).
inline std::vector<std::complex<long double>> aberth(const std::vector<std::complex<long double>>& c) {
    using cld = std::complex<long double>;
    int n = static_cast<int>(c.size()) - 1;
    std::vector<cld> dc(n);
    for (int k = 1; k <= n; ++k) dc[k - 1] = c[k] * static_cast<long double>(k);
    auto ev = [](const std::vector<cld>& p, cld z) {
        cld acc = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    // Cauchy bound for the initial circle
    long double R = 0;
    for (int k = 0; k < n; ++k) R = std::max(R, std::abs(c[k] / c[n]));
    R = 1 + R;
    std::vector<cld> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(R * 0.5L, 2.0L * 3.14159265358979323846L * (k + 0.25L) / n + 0.4L);
    for (int it = 0; it < 2000; ++it) {
        long double move = 0;
        for (int i = 0; i < n; ++i) {
            cld pv = ev(c, z[i]), dv = ev(dc, z[i]);
            if (pv == cld(0)) continue;
            cld ratio = pv / dv, s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += cld(1) / (z[i] - z[j]);
            cld w = ratio / (cld(1) - ratio * s);
            z[i] -= w;
            move = std::max(move, std::abs(w) / (1 + std::abs(z[i])));
        }
        if (move < 1e-17L) break;
    }
    return z;
}

/// Smith radii n |p(z_i)| / |a_n prod (z_i - z_j)|, bounded above exactly.
inline std::vector<Rational> smith_radii(const std::vector<Rational>& coeffs, const std::vector<GaussQ>& z) {
    int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<Rational> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        GaussQ pv{0, 0};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            pv = gmul(pv, z[i]);
            pv.re += *it;
        }
        GaussQ prod{coeffs.back(), 0};
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != i) prod = gmul(prod, {z[i].re - z[j].re, z[i].im - z[j].im});
        Rational lo = abs_lower(prod);
        if (lo == 0) throw RootIsolationFailure("coincident approximations");
        r[i] = Rational(n) * abs_upper(pv) / lo;
    }
    return r;
}

inline bool disjoint(const GaussQ& a, const Rational& ra, const GaussQ& b, const Rational& rb) {
    Rational dx = a.re - b.re, dy = a.im - b.im, s = ra + rb;
    return s * s < dx * dx + dy * dy;
}

}  // namespace detail

/// Certified isolation of all complex roots of a squarefree rational polynomial.
inline std::vector<IsolatedRoot> isolate_squarefree(const QPoly& f) {
    if (!detail::all_rational(f)) throw std::domain_error("isolate_roots: rational coefficients required");
    int n = f.degree();
    if (n < 1) return {};
    std::vector<Rational> co;
    std::vector<std::complex<long double>> cl;
    for (auto& c : f.coeffs()) {
        co.push_back(c.re_rat());
        cl.emplace_back(static_cast<long double>(c.re_rat().get_d()));
    }
    auto approx = detail::aberth(cl);
    std::vector<std::complex<double>> centers(n);
    std::vector<detail::GaussQ> z(n);
    for (int i = 0; i < n; ++i) {
        centers[i] = {static_cast<double>(approx[i].real()), static_cast<double>(approx[i].imag())};
        z[i] = detail::exact(centers[i]);
    }
    auto r = detail::smith_radii(co, z);
    // snap centers onto R where the disk already meets it
    for (int i = 0; i < n; ++i)
        if (abs(z[i].im) <= r[i]) {
            centers[i] = {centers[i].real(), 0.0};
            z[i].im = 0;
        }
    r = detail::smith_radii(co, z);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!detail::disjoint(z[i], r[i], z[j], r[j]))
                throw RootIsolationFailure("inclusion disks overlap; roots too close for double precision");
    std::vector<IsolatedRoot> out;
    for (int i = 0; i < n; ++i) out.push_back({centers[i], r[i], 1, z[i].im == 0});
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

/// All roots of p with multiplicities from the squarefree decomposition.
inline std::vector<IsolatedRoot> isolate_roots(const QPoly& p) {
    std::vector<IsolatedRoot> out;
    for (auto& [f, mult] : squarefree_decomposition(p))
        for (auto root : isolate_squarefree(f)) {
            root.multiplicity = mult;
            out.push_back(root);
        }
    return out;
}

/// Remove every factor (x - a) from p.
inline QPoly deflate(QPoly p, const ExactScalar& a, int* removed = nullptr) {
    int k = 0;
    QPoly lin = QPoly::linear(a);
    while (p.degree() > 0 && p(a).is_zero()) {
        p = p / lin;
        ++k;
    }
    if (removed) *removed = k;
    return p;
}

}  // namespace cmc1

#endif
