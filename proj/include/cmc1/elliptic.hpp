#ifndef CMC1_ELLIPTIC_HPP
#define CMC1_ELLIPTIC_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cmc1::elliptic {

using cd = std::complex<double>;

struct DegenerateLattice : std::domain_error {
    using std::domain_error::domain_error;
};

/// Lattice Z v1 + Z v2, stored with tau = v2/v1 in the upper half plane.
/// Row sums are truncated once the exponential tail drops below `tail`.
class Lattice {
public:
    Lattice(cd v1, cd v2, double tail = 1e-16) : v1_(v1), v2_(v2), tail_(tail) {
        if (std::abs(v1) == 0.0 || std::abs(v2) == 0.0) throw DegenerateLattice("zero period");
        tau_ = v2 / v1;
        if (std::abs(tau_.imag()) < 1e-12 * std::abs(tau_)) throw DegenerateLattice("periods are R-dependent");
        if (tau_.imag() < 0) {
            // same lattice, opposite orientation
            v2_ = -v2_;
            tau_ = -tau_;
        }
        q_ = std::exp(cd(0, M_PI) * tau_);
        c0_ = 0;
        for (int n = 1; n < 10000; ++n) {
            cd c = csc2(M_PI * double(n) * tau_);
            c0_ += 2.0 * c;
            if (std::abs(c) < tail_ * 1e-2) break;
        }
        eta1_ = M_PI * M_PI / (2.0 * v1_) * (1.0 / 3.0 + c0_);
    }

    cd v1() const { return v1_; }
    cd v2() const { return v2_; }
    cd tau() const { return tau_; }
    /// zeta(v1/2)
    cd eta1() const { return eta1_; }

    /// Reduce z into the parallelogram |a|, |b| <= 1/2 where z = a v1 + b v2.
    cd reduce(cd z) const {
        auto [a, b] = coords(z);
        return z - std::round(a) * v1_ - std::round(b) * v2_;
    }

    std::pair<double, double> coords(cd z) const {
        // solve z = a v1 + b v2 over R
        double det = (std::conj(v1_) * v2_).imag();
        double a = (std::conj(z) * v2_).imag() / det;
        double b = (std::conj(v1_) * z).imag() / det;
        return {a, b};
    }

    cd wp(cd z) const {
        z = reduce(z);
        if (std::abs(z) < 1e-300) throw std::domain_error("wp evaluated at a lattice point");
        cd k = M_PI / v1_;
        cd s = csc2(k * z) - 1.0 / 3.0 - c0_;
        for (int n = 1; n < 10000; ++n) {
            cd a = csc2(k * (z + double(n) * v2_)) + csc2(k * (z - double(n) * v2_));
            s += a;
            if (std::abs(a) < tail_ * (1.0 + std::abs(s)) && n > 1) break;
        }
        return k * k * s;
    }

    cd wp_prime(cd z) const {
        z = reduce(z);
        cd k = M_PI / v1_;
        auto d = [&](cd u) { return -2.0 * csc2(u) * cot(u); };
        cd s = d(k * z);
        for (int n = 1; n < 10000; ++n) {
            cd a = d(k * (z + double(n) * v2_)) + d(k * (z - double(n) * v2_));
            s += a;
            if (std::abs(a) < tail_ * (1.0 + std::abs(s)) && n > 1) break;
        }
        return k * k * k * s;
    }

    /// Weierstrass sigma via the q-product.
    cd sigma(cd z) const {
        cd u = M_PI * z / v1_;
        cd prod = 1.0;
        cd c2 = std::cos(2.0 * u);
        cd q2n = 1.0;
        for (int n = 1; n < 10000; ++n) {
            q2n *= q_ * q_;
            cd f = (1.0 - 2.0 * q2n * c2 + q2n * q2n) / ((1.0 - q2n) * (1.0 - q2n));
            prod *= f;
            if (std::abs(f - 1.0) < tail_ * 1e-2) break;
        }
        return v1_ / M_PI * std::exp(eta1_ * z * z / v1_) * std::sin(u) * prod;
    }

private:
    // w = exp(+-2iu) with |w| <= 1 keeps both helpers finite far from the real axis
    static cd csc2(cd u) {
        if (std::abs(u.imag()) < 20) {
            cd s = std::sin(u);
            return 1.0 / (s * s);
        }
        cd w = std::exp(cd(0, u.imag() > 0 ? 2.0 : -2.0) * u);
        return -4.0 * w / ((1.0 - w) * (1.0 - w));
    }
    static cd cot(cd u) {
        if (std::abs(u.imag()) < 20) return std::cos(u) / std::sin(u);
        if (u.imag() > 0) {
            cd w = std::exp(cd(0, 2.0) * u);
            return cd(0, 1) * (w + 1.0) / (w - 1.0);
        }
        cd w = std::exp(cd(0, -2.0) * u);
        return cd(0, 1) * (1.0 + w) / (1.0 - w);
    }

    cd v1_, v2_, tau_, q_, eta1_, c0_;
    double tail_;
};

}  // namespace cmc1::elliptic

#endif
