#ifndef CMC1_TEST_UTIL_HPP
#define CMC1_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "cmc1/rational_function.hpp"

namespace cmc1::testing {

inline ExactScalar random_rational(std::mt19937& rng, int range = 9, int den = 5) {
    std::uniform_int_distribution<int> n(-range, range), d(1, den);
    return ExactScalar::rational(n(rng), d(rng));
}

inline ExactScalar random_nonzero(std::mt19937& rng, int range = 9, int den = 5) {
    for (;;) {
        auto x = random_rational(rng, range, den);
        if (!x.is_zero()) return x;
    }
}

inline ExactScalar random_gaussian(std::mt19937& rng) {
    return random_rational(rng) + random_rational(rng) * ExactScalar::imag_unit();
}

inline QPoly random_poly(std::mt19937& rng, int deg) {
    std::vector<ExactScalar> c;
    for (int k = 0; k < deg; ++k) c.push_back(random_rational(rng));
    c.push_back(random_nonzero(rng));
    return QPoly(c);
}

/// c * prod (z - a_i)^{e_i} / prod (z - b_j)^{f_j}, distinct rational points.
struct FactoredRF {
    RationalFunction f;
    std::vector<ExactScalar> zeros, poles;
};

inline FactoredRF random_factored(std::mt19937& rng, int nz, int np) {
    std::vector<ExactScalar> pts;
    while (static_cast<int>(pts.size()) < nz + np) {
        auto x = random_rational(rng, 6, 3);
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    std::uniform_int_distribution<int> e(1, 3);
    QPoly n(random_nonzero(rng)), d(1);
    FactoredRF out;
    for (int i = 0; i < nz; ++i) {
        n *= QPoly::linear(pts[i]).pow(e(rng));
        out.zeros.push_back(pts[i]);
    }
    for (int i = nz; i < nz + np; ++i) {
        d *= QPoly::linear(pts[i]).pow(e(rng));
        out.poles.push_back(pts[i]);
    }
    out.f = RationalFunction(n, d);
    return out;
}

inline RationalFunction Z() { return RationalFunction::z(); }
inline RationalFunction C(long n, long d = 1) { return {ExactScalar::rational(n, d)}; }
inline RationalFunction C(const ExactScalar& x) { return {x}; }

}  // namespace cmc1::testing

#endif
