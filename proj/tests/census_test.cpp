#include <gtest/gtest.h>

#include <random>

#include "cmc1/census.hpp"

using namespace cmc1;
using namespace cmc1::census;

namespace {

ExactScalar R(long n, long d = 1) { return ExactScalar::rational(n, d); }

void expect_verified(const CaseRecord& rec) {
    for (auto& c : rec.checks) EXPECT_TRUE(c.passed) << rec.case_id << ": " << c.name << " " << c.detail;
    EXPECT_EQ(rec.verdict, Verdict::verified) << rec.case_id;
}

}  // namespace

TEST(RootIsolation, CertifiedDisks) {
    // (x^2 - 2)(x^2 + 1)(x - 1/3)
    QPoly p = (QPoly::x().pow(2) - QPoly(R(2))) * (QPoly::x().pow(2) + QPoly(R(1))) * QPoly::linear(R(1, 3));
    auto roots = isolate_roots(p);
    ASSERT_EQ(roots.size(), 5u);
    int real = 0;
    for (auto& r : roots) {
        real += r.real;
        EXPECT_LT(r.radius.get_d(), 1e-10);
        // true root inside the disk
        std::vector<std::complex<double>> exact{-std::sqrt(2.0), std::sqrt(2.0), {0, 1}, {0, -1}, 1.0 / 3};
        double best = 1e9;
        for (auto e : exact) best = std::min(best, std::abs(e - r.center));
        EXPECT_LE(best, r.radius.get_d() + 1e-15);
    }
    EXPECT_EQ(real, 3);
    auto sq = isolate_roots(QPoly::linear(R(2)).pow(3) * QPoly::linear(R(-1)));
    ASSERT_EQ(sq.size(), 2u);
    int removed = 0;
    auto d = deflate(QPoly::x().pow(3) * QPoly::linear(R(5)), R(0), &removed);
    EXPECT_EQ(removed, 3);
    EXPECT_EQ(d.degree(), 1);
}

TEST(Census, FourPi) {
    for (auto c : {FourPiCase::horosphere, FourPiCase::enneper_dual, FourPiCase::catenoid_cousin,
                   FourPiCase::warped_catenoid})
        expect_verified(build_4pi(c));
    FourPiParams P;
    P.theta = R(-3, 7);
    expect_verified(build_4pi(FourPiCase::enneper_dual, P));
    P.mu = R(1);
    EXPECT_THROW(build_4pi(FourPiCase::catenoid_cousin, P), ConstraintViolation);
    P.l = 1;
    EXPECT_THROW(build_4pi(FourPiCase::warped_catenoid, P), ConstraintViolation);
}

TEST(Census, ClosedCasesHaveExactRootSets) {
    auto a = o112();
    expect_verified(a);
    ASSERT_EQ(a.log_terms.size(), 2u);
    for (auto& lt : a.log_terms) {
        EXPECT_EQ(lt.roots, (std::vector<ExactScalar>{R(-2), R(0)}));
        EXPECT_EQ(lt.admissible, std::vector<ExactScalar>{R(-2)});
    }
    EXPECT_EQ(a.status, "classified^0");
    auto b = o14();
    expect_verified(b);
    EXPECT_EQ(b.log_terms[0].admissible, std::vector<ExactScalar>{R(-4)});
    auto c = o13();
    EXPECT_EQ(c.verdict, Verdict::nonexistent);
    EXPECT_EQ(c.log_terms[0].roots, std::vector<ExactScalar>{R(0)});
    EXPECT_TRUE(c.log_terms[0].admissible.empty());
}

TEST(Census, O122H1RandomP) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 13);
    int done = 0;
    while (done < 20) {
        ExactScalar p = R(num(rng), den(rng));
        if (p.is_zero() || p == R(1) || (R(4) / (p - R(1))).is_integer()) continue;
        auto rec = o122_h1(p);
        expect_verified(rec);
        EXPECT_EQ(rec.log_terms[0].admissible, std::vector<ExactScalar>{R(-2) * p * (p + R(1))});
        ++done;
    }
    EXPECT_THROW(o122_h1(R(3)), ConstraintViolation);  // 4/(p-1) = 2
    EXPECT_THROW(o122_h1(R(1, 2)), ConstraintViolation);
    EXPECT_THROW(o122_h1(R(0)), ConstraintViolation);
}

TEST(Census, O122H3) {
    for (long r = 3; r <= 10; ++r) expect_verified(o122_h3(r));
    EXPECT_THROW(o122_h3(2), ConstraintViolation);
}

TEST(Census, O24H1AndConstraints) {
    expect_verified(o24_h1(R(3, 32), R(2)));
    expect_verified(o24_h1(R(-1), R(1, 2)));
    // 1 - 4 theta q = 1/4: sqrt real, non-integral
    expect_verified(o24_h1(R(3, 4), R(1, 4)));
    EXPECT_THROW(o24_h1(R(-2), R(1)), ConstraintViolation);     // q = 1
    EXPECT_THROW(o24_h1(R(-1), R(2)), ConstraintViolation);     // sqrt 9 integral
    EXPECT_THROW(o24_h1(R(1), R(1, 2)), ConstraintViolation);   // radicand -1
}

TEST(Census, O24H3LeadingCoefficients) {
    for (long m = 2; m <= 8; ++m) {
        auto res = o24_h3(m);
        EXPECT_EQ(res.c.degree(), m);
        EXPECT_EQ(res.Lambda, R(m * (49 - m * m), 12)) << "m = " << m;
        EXPECT_GE(res.admissible.size(), 1u);
        EXPECT_LE(static_cast<long>(res.admissible.size()), m);
        for (auto& rec : res.records) expect_verified(rec);
    }
}

TEST(Census, O23) {
    expect_verified(o23_a(R(3, 16)));
    expect_verified(o23_b(R(1, 4)));
    EXPECT_THROW(o23_a(R(-2)), ConstraintViolation);  // 1 - 4 theta = 9
    EXPECT_THROW(o23_b(R(-2)), ConstraintViolation);  // negative radicand
    for (long m = 2; m <= 7; ++m) {
        auto pr = o23_h3_nonexistence(m);
        for (auto& c : pr.checks) EXPECT_TRUE(c.passed) << "m = " << m << ": " << c.name << " " << c.detail;
    }
}

TEST(Census, O222) {
    auto h1 = o222_h1(R(2));
    expect_verified(h1);
    for (long s : {3, 5, -2}) expect_verified(o222_h1(R(s)));
    for (long m = 2; m <= 9; ++m) expect_verified(o222_h3(m));
    EXPECT_EQ(o222_irreducible().verdict, Verdict::external);
}

TEST(Census, O22Dichotomy) {
    expect_verified(o22(R(3), R(1), R(2)));
    expect_verified(o22(ExactScalar::surd(1, 2), R(1), R(0)));
    expect_verified(o22(R(5, 2), R(2), R(0)));
    EXPECT_THROW(o22(R(2), R(1), R(1)), ConstraintViolation);  // Q = 0
    EXPECT_THROW(o22(R(5, 2), R(1), R(1)), ConstraintViolation);
}

TEST(Census, SimplyConnectedAndDeformations) {
    expect_verified(o5(R(1)));
    expect_verified(o6(R(-2)));
    auto a = o33();
    for (auto& c : a.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    EXPECT_EQ(a.verdict, Verdict::external);
    auto b = i4();
    for (auto& c : b.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    auto e = i11_candidate({1.0, 0.1}, {0.2, 1.3}, 2.0);
    for (auto& c : e.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    EXPECT_EQ(e.status, "unknown^+");
}

TEST(Census, Table1) {
    auto rows = table1(run_all());
    ASSERT_EQ(rows.size(), 17u);
    std::size_t triples = 0;
    for (auto& r : rows) {
        triples += r.reference.size();
        EXPECT_TRUE(r.matches()) << r.type;
    }
    EXPECT_EQ(triples, 21u);
}
