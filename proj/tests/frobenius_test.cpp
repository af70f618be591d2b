#include <gtest/gtest.h>

#include <map>

#include "cmc1/frobenius.hpp"
#include "test_util.hpp"

using namespace cmc1;
using namespace cmc1::frobenius;
using namespace cmc1::testing;

namespace {

/// Terms z^{base + n} log^k z, keyed by (n, k). Euler operator t = z d/dz:
/// t(z^a log^k) = a z^a log^k + k z^a log^{k-1}.
struct LogSeries {
    ExactScalar base;
    std::map<std::pair<int, int>, ExactScalar> c;

    LogSeries theta_op() const {
        LogSeries r{base, {}};
        for (auto& [key, v] : c) {
            auto [n, k] = key;
            r.c[{n, k}] += (base + ExactScalar(n)) * v;
            if (k > 0) r.c[{n, k - 1}] += ExactScalar(k) * v;
        }
        return r;
    }
    LogSeries times(const std::vector<ExactScalar>& s) const {
        LogSeries r{base, {}};
        for (auto& [key, v] : c)
            for (std::size_t j = 0; j < s.size(); ++j) r.c[{key.first + static_cast<int>(j), key.second}] += s[j] * v;
        return r;
    }
    LogSeries& operator+=(const LogSeries& o) {
        for (auto& [key, v] : o.c) c[key] += v;
        return *this;
    }
};

/// L = t(t-1) + p t + q applied to X.
LogSeries apply_L(const LogSeries& X, const std::vector<ExactScalar>& p, const std::vector<ExactScalar>& q) {
    LogSeries tX = X.theta_op();
    LogSeries ttX = tX.theta_op();
    LogSeries out{X.base, {}};
    out += ttX;
    LogSeries minus = tX;
    for (auto& [k, v] : minus.c) v = -v;
    out += minus;
    out += tX.times(p);
    out += X.times(q);
    return out;
}

RegularSingularODE<ExactScalar> random_ode(std::mt19937& rng, int n_terms, bool zero_p) {
    std::vector<ExactScalar> p(n_terms), q(n_terms);
    for (int j = 0; j < n_terms; ++j) {
        p[j] = zero_p ? ExactScalar(0) : random_rational(rng, 4, 3);
        q[j] = random_rational(rng, 4, 3);
    }
    return raw_ode(p, q);
}

/// Set q0 so that the exponent gap is the integer m.
void force_gap(RegularSingularODE<ExactScalar>& ode, int m) {
    ExactScalar a = ExactScalar(1) - ode.p(0);
    ode.q_series.coeffs[0] = (a * a - ExactScalar(m * m)) / ExactScalar(4);
}

}  // namespace

TEST(Indicial, BasicRoots) {
    auto ode = raw_ode<ExactScalar>({0}, {0});
    auto d = indicial(ode);
    EXPECT_EQ(*d.lambda1, ExactScalar(1));
    EXPECT_EQ(*d.lambda2, ExactScalar(0));
    EXPECT_EQ(d.gap_class, GapClass::positive_integer);
}

TEST(Indicial, SumAndProductOfRoots) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        auto ode = random_ode(rng, 2, false);
        if (trial % 3 == 0) force_gap(ode, trial % 5);
        auto d = indicial(ode);
        if (!d.lambda1) continue;
        EXPECT_EQ(*d.lambda1 + *d.lambda2, ExactScalar(1) - ode.p(0));
        EXPECT_EQ(*d.lambda1 * *d.lambda2, ode.q(0));
    }
}

TEST(Indicial, GapClasses) {
    EXPECT_EQ(indicial_exact(0, ExactScalar::rational(1, 4)).gap_class, GapClass::zero);
    EXPECT_EQ(indicial_exact(0, ExactScalar::rational(3, 16)).gap_class, GapClass::real_non_integer);
    EXPECT_EQ(indicial_exact(0, ExactScalar(0)).gap_class, GapClass::positive_integer);
    EXPECT_EQ(indicial_exact(0, ExactScalar(1)).gap_class, GapClass::non_real);
    auto irr = indicial_exact(0, ExactScalar::rational(-1, 4));  // radicand 2
    EXPECT_EQ(irr.gap_class, GapClass::real_non_integer);
    EXPECT_EQ(irr.radicand, ExactScalar(2));
}

TEST(FromE0, TrinoidEndsHaveGapTwo) {
    auto z = Z();
    auto G = ((z - C(1)) / z).pow(2);
    auto Q = C(-2) / (z * (z - C(1)));
    for (auto end : {SpherePoint(0), SpherePoint(1)}) {
        auto d = indicial(from_E0(G, Q, end));
        EXPECT_EQ(*d.lambda1, ExactScalar::rational(3, 2));
        EXPECT_EQ(*d.lambda2, ExactScalar::rational(-1, 2));
    }
    auto Q2 = C(5) / (z * (z - C(1)).pow(2) * (z - C(3)).pow(2));
    auto d2 = indicial(from_E0(z * z, Q2, 0));
    EXPECT_EQ(*d2.gap, ExactScalar(2));
    EXPECT_THROW(from_E0(z, C(7), 0), NotSingular);
    EXPECT_THROW(from_E0(z * z, C(1) / z.pow(3), 0), IrregularSingularity);
}

TEST(FromE0, TrinoidIndicialAtOne) {
    // lambda1 = 2 + 2/(p-1), lambda2 = -1 - 2/(p-1) at z = 1 when theta = -2p(p+1)
    auto z = Z();
    for (int pn : {-3, 5, 7}) {
        ExactScalar p = ExactScalar::rational(pn, 2);
        auto Q = C(ExactScalar(-2) * p * (p + ExactScalar(1))) / (z * (z - C(1)).pow(2) * (z - C(p)).pow(2));
        auto d = indicial(from_E0(z * z, Q, 1));
        ExactScalar t = ExactScalar(2) / (p - ExactScalar(1));
        EXPECT_EQ(*d.lambda1, ExactScalar(2) + t);
        EXPECT_EQ(*d.lambda2, ExactScalar(-1) - t);
    }
}

TEST(SharpForms, AnnulusEquationAtZero) {
    // G = ((z-q)/(z-1))^2, Q = theta (z-1)(z-q)/z^2: z^2X'' + z(2 + 4z/(1-z))X' + theta(z-1)(z-q)X = 0
    auto z = Z();
    ExactScalar theta = ExactScalar::rational(3, 7), q = ExactScalar::rational(-5, 2);
    auto G = ((z - C(q)) / (z - C(1))).pow(2);
    auto Q = C(theta) * (z - C(1)) * (z - C(q)) / (z * z);
    auto ode = from_E1sharp(G, Q, 0, 10);
    EXPECT_EQ(ode.p(0), ExactScalar(2));
    for (int j = 1; j < 10; ++j) EXPECT_EQ(ode.p(j), ExactScalar(4));
    EXPECT_EQ(ode.q(0), theta * q);
    EXPECT_EQ(ode.q(1), -theta * (ExactScalar(1) + q));
    EXPECT_EQ(ode.q(2), theta);
    for (int j = 3; j < 10; ++j) EXPECT_EQ(ode.q(j), ExactScalar(0));
}

TEST(SharpForms, TwoThreeEndAtOne) {
    auto z = Z();
    ExactScalar theta = ExactScalar::rational(3, 16);
    auto ode = from_E1sharp(z * z, C(theta) * z / (z - C(1)).pow(2), 1, 8);
    EXPECT_EQ(ode.p(0), ExactScalar(2));
    EXPECT_EQ(ode.q(0), theta);
    EXPECT_EQ(ode.q(1), theta);
    for (int j = 1; j < 8; ++j) EXPECT_EQ(ode.p(j), ExactScalar(0));
    for (int j = 2; j < 8; ++j) EXPECT_EQ(ode.q(j), ExactScalar(0));
}

// With G = ((z-1)/z)^2 the displayed z^2X'' - zX' + theta(z-1)X = 0 is the E1# form;
// it is the E2# form of the rigidly moved map 1/G.
TEST(SharpForms, TwoThreeBranchedEnd) {
    auto z = Z();
    ExactScalar theta = ExactScalar::rational(5, 4);
    auto G = ((z - C(1)) / z).pow(2);
    auto Q = C(theta) * (z - C(1)) / (z * z);
    for (auto ode : {from_E1sharp(G, Q, 0, 6), from_E2sharp(C(1) / G, Q, 0, 6)}) {
        EXPECT_EQ(ode.p(0), ExactScalar(-1));
        EXPECT_EQ(ode.q(0), -theta);
        EXPECT_EQ(ode.q(1), theta);
        for (int j = 1; j < 6; ++j) EXPECT_EQ(ode.p(j), ExactScalar(0));
    }
    auto e2 = from_E2sharp(G, Q, 0, 6);
    EXPECT_EQ(e2.p(0), ExactScalar(3));
    EXPECT_EQ(indicial(e2).radicand, ExactScalar(4) + ExactScalar(4) * theta);
}

TEST(SeriesSolution, EulerEquation) {
    auto ode = raw_ode<ExactScalar>({ExactScalar(0), 0, 0, 0, 0, 0}, {ExactScalar(-2), 0, 0, 0, 0, 0});
    auto d = indicial(ode);
    auto z = series_solution(ode, *d.lambda1, 5);
    for (int j = 1; j <= 5; ++j) EXPECT_TRUE(z[j].is_zero());
    auto s = second_solution(ode, 5);
    EXPECT_TRUE(s.log_coeff.is_zero());
}

TEST(SeriesSolution, ResidualVanishesToTruncation) {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        int N = 8;
        auto ode = random_ode(rng, N + 1, false);
        auto d = indicial(ode);
        if (!d.lambda1 || d.gap_class == GapClass::positive_integer || d.gap_class == GapClass::zero) continue;
        auto zeta = series_solution(ode, *d.lambda1, N);
        LogSeries X{*d.lambda1, {}};
        for (int n = 0; n <= N; ++n) X.c[{n, 0}] = zeta[n];
        auto L = apply_L(X, ode.p_series.coeffs, ode.q_series.coeffs);
        for (auto& [key, v] : L.c)
            if (key.first <= N) EXPECT_TRUE(v.is_zero()) << key.first;
    }
}

TEST(LogTerm, ClosedFormsForZeroP) {
    std::mt19937 rng(3);
    int vanishing = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int m = 1 + trial % 3;
        auto ode = random_ode(rng, m + 1, true);
        force_gap(ode, m);
        auto& q = ode.q_series.coeffs;
        ExactScalar q1 = q[1], q2 = m >= 2 ? q[2] : ExactScalar(0);
        if (trial % 2 == 0) {
            if (m == 1) q[1] = 0;
            if (m == 2) q[2] = -q1 * q1;
            if (m == 3) q[3] = -q1 * q2 - q1 * q1 * q1 / ExactScalar(4);
        }
        bool closed = m == 1   ? q[1].is_zero()
                      : m == 2 ? (q[2] + q[1] * q[1]).is_zero()
                               : (q[3] + q[1] * q[2] + q[1] * q[1] * q[1] / ExactScalar(4)).is_zero();
        bool c0 = log_term(ode).is_zero();
        EXPECT_EQ(c0, closed) << "m=" << m;
        vanishing += c0;
    }
    EXPECT_GT(vanishing, 100);
}

TEST(LogTerm, ZeroGapNeverVanishes) {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        auto ode = random_ode(rng, 6, trial % 2 == 0);
        force_gap(ode, 0);
        EXPECT_FALSE(is_zero(log_term(ode)));
        EXPECT_FALSE(second_solution(ode, 5).log_coeff.is_zero());
    }
    auto quarter = raw_ode<ExactScalar>({0, 0, 0}, {ExactScalar::rational(1, 4), 0, 0});
    auto s = second_solution(quarter, 2);
    EXPECT_EQ(s.m, 0);
    EXPECT_EQ(s.lambda2, ExactScalar::rational(1, 2));
    EXPECT_FALSE(s.log_coeff.is_zero());
}

TEST(LogTerm, RejectsNonIntegerGap) {
    auto ode = raw_ode<ExactScalar>({0, 0}, {ExactScalar::rational(3, 16), 0});
    EXPECT_THROW(log_term(ode), std::domain_error);
}

TEST(LogTerm, InvariantUnderParameterSubstitution) {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 2 + trial % 4;
        std::vector<ParamScalar> p, q;
        for (int j = 0; j <= m; ++j) {
            p.emplace_back(j == 0 ? ExactScalar(0) : random_rational(rng, 3, 2));
            q.push_back(ParamScalar(random_rational(rng, 3, 2)) +
                        (j == 0 ? ParamScalar() : ParamScalar::theta() * ParamScalar(random_rational(rng, 3, 2))));
        }
        q[0] = ParamScalar(ExactScalar::rational(1 - m * m, 4));
        auto ode = raw_ode(p, q);
        auto c = log_term_theta_poly(ode);
        EXPECT_LE(c.degree(), m);
        for (int k = 0; k < 3; ++k) {
            ExactScalar t0 = random_rational(rng);
            EXPECT_EQ(c.eval(t0), log_term(substitute(ode, t0)));
        }
    }
}

TEST(SecondSolution, ResidualOracle) {
    std::mt19937 rng(8);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int m = trial % 5;
        int N = m + 8;
        auto ode = random_ode(rng, N + 1, trial % 4 == 0);
        force_gap(ode, m);
        auto s = second_solution(ode, N);
        LogSeries X2{s.lambda2, {}};
        for (int n = 0; n <= N; ++n) X2.c[{n, 0}] += s.b[n];
        for (int n = 0; n + m <= N; ++n) X2.c[{n + m, 1}] += s.log_coeff * s.zeta1[n];
        auto L = apply_L(X2, ode.p_series.coeffs, ode.q_series.coeffs);
        for (auto& [key, v] : L.c)
            if (key.first <= N) EXPECT_TRUE(v.is_zero()) << "m=" << m << " order " << key.first;
        ++checked;
    }
    EXPECT_EQ(checked, 100);
}

TEST(SecondSolution, QuarterHasLogTerm) {
    auto quarter = raw_ode<ExactScalar>({0, 0, 0, 0}, {ExactScalar::rational(1, 4), 0, 0, 0});
    auto s = second_solution(quarter, 3);
    EXPECT_EQ(s.lambda1, ExactScalar::rational(1, 2));
    EXPECT_EQ(s.log_coeff, ExactScalar(1));
}

TEST(Equivalence, TrinoidWithTwoLogFreeEnds) {
    auto z = Z();
    auto G = ((z - C(1)) / z).pow(2);
    for (auto end : {SpherePoint(0), SpherePoint(1)}) {
        auto rep = equivalence_report(G, C(-2) / (z * (z - C(1))), end);
        EXPECT_TRUE(rep.consistent);
        for (auto& v : rep.forms) EXPECT_TRUE(v.single_valued()) << name(v.form);
        auto bad = equivalence_report(G, C(3) / (z * (z - C(1))), end);
        EXPECT_TRUE(bad.consistent);
        for (auto& v : bad.forms) EXPECT_FALSE(v.single_valued()) << name(v.form);
    }
}

TEST(Equivalence, TwoThreeGenericTheta) {
    auto z = Z();
    ExactScalar theta = ExactScalar::rational(3, 16);
    auto rep = equivalence_report(z * z, C(theta) * z / (z - C(1)).pow(2), 1);
    EXPECT_TRUE(rep.consistent);
    EXPECT_EQ(*rep.forms[0].gap, ExactScalar::rational(1, 2));
    EXPECT_EQ(rep.forms[0].gap_class, GapClass::real_non_integer);
    EXPECT_TRUE(rep.gaps_reality_agrees);
    // gap sqrt(1 - 4 theta) = 3 for theta = -2: E1# has integer gap but a log term
    auto rep3 = equivalence_report(z * z, C(-2) * z / (z - C(1)).pow(2), 1);
    EXPECT_TRUE(rep3.consistent);
    EXPECT_TRUE(rep3.forms[1].integer_gap);
    EXPECT_FALSE(rep3.forms[1].log_free);
}

TEST(Equivalence, RealityOfGapsAgrees) {
    auto z = Z();
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        ExactScalar theta = random_nonzero(rng), q = random_rational(rng);
        if (q.is_zero() || q == ExactScalar(1)) continue;
        auto G = ((z - C(q)) / (z - C(1))).pow(2);
        auto Q = C(theta) * (z - C(1)) * (z - C(q)) / (z * z);
        auto rep = equivalence_report(G, Q, 0);
        EXPECT_TRUE(rep.consistent);
        EXPECT_TRUE(rep.gaps_reality_agrees);
        EXPECT_EQ(rep.forms[0].gap_class == GapClass::non_real,
                  (ExactScalar(1) - ExactScalar(4) * theta * q).sign() < 0);
    }
}
