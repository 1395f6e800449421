#include <gtest/gtest.h>

#include <cmath>

#include "sgprime/wilf.hpp"

using namespace sgprime;

namespace {

const PrimeTable& table() {
  static const PrimeTable t(200'000);
  return t;
}

WilfReport report_for(std::vector<std::uint64_t> g) {
  auto gs = normalize_generators(g);
  auto ap = apery_set(gs);
  return wilf_report(ap, atoms(ap, gs));
}

}  // namespace

TEST(WilfReport, EqualityCases) {
  auto r = report_for({3, 5});
  EXPECT_EQ(r.g, 4u);
  EXPECT_EQ(r.f, 7);
  EXPECT_EQ(r.e, 2u);
  EXPECT_EQ(r.lhs, Rational::make(1, 2));
  EXPECT_EQ(r.rhs, Rational::make(1, 2));
  EXPECT_TRUE(r.holds);

  auto two = report_for({2, 3});
  EXPECT_EQ(two.lhs, two.rhs);
  EXPECT_TRUE(two.holds);
}

TEST(WilfReport, PrimeIntervalSemigroup) {
  auto r = report_for({23, 29, 31, 37, 41, 43});
  EXPECT_EQ(r.e, 6u);
  EXPECT_EQ(r.f, 102);
  EXPECT_EQ(r.g, 62u);  // brute-force oracle
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.sporadic, 41u);
}

TEST(SpRange, SmallRows) {
  auto rows = verify_sp_range(table(), 8, 9, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].report.p, 19u);
  EXPECT_EQ(rows[0].report.f, 101);
  EXPECT_TRUE(rows[0].report.holds);
  EXPECT_EQ(rows[1].report.p, 23u);
  EXPECT_EQ(rows[1].report.f, 102);
  EXPECT_EQ(rows[1].report.e, 6u);
  // pi(46) - 9 = 5: (2*6 + 1) * 7 = 91 < 102
  EXPECT_EQ(rows[1].eq3_rhs, 91u);
  EXPECT_FALSE(rows[1].f_lt_eq3_rhs);
}

TEST(SpRange, ThreadCountDoesNotChangeOutput) {
  auto a = verify_sp_range(table(), 8, 80, 1);
  auto b = verify_sp_range(table(), 8, 80, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].n, b[i].n);
    EXPECT_EQ(a[i].report.f, b[i].report.f);
    EXPECT_EQ(a[i].report.g, b[i].report.g);
  }
}

TEST(FrobeniusBound, Examples) {
  EXPECT_TRUE(lemma_f_bound(table(), 675));
  EXPECT_TRUE(lemma_f_bound(table(), 1000));
  EXPECT_THROW(lemma_f_bound(table(), 674), DomainError);
}

TEST(SelmerBound, Examples) {
  auto b = selmer_bound(table(), 8);
  EXPECT_EQ(b.f, 101);
  // 101 * 5 < 2 * 19 * 37
  EXPECT_EQ(b.lhs, 505u);
  EXPECT_EQ(b.rhs, 1406u);
  EXPECT_TRUE(b);
  EXPECT_TRUE(selmer_bound(table(), 100));
  EXPECT_TRUE(selmer_bound(table(), 675));
  // S(2) = <2,3>: e = 2 is not below p = 2
  EXPECT_THROW(selmer_bound(table(), 1), DomainError);
}

TEST(Analytic, Constants) {
  EXPECT_NEAR(l_factor(5039), 1.61158, 1e-5);
  EXPECT_TRUE(l2_cube_inequality());
  EXPECT_LT(l_factor(100), l_factor(1000));
  EXPECT_THROW(l_factor(66), DomainError);
  EXPECT_THROW(l2_factor(674), DomainError);
  auto b = analytic_bounds(100);
  EXPECT_FALSE(b.l2.has_value());
  EXPECT_TRUE(analytic_bounds(675).l2.has_value());
}

TEST(Analytic, Monotonicity) {
  EXPECT_TRUE(l_strictly_increasing(67, 10'000));
  EXPECT_TRUE(l2_strictly_decreasing(675, 10'000));
}

TEST(Analytic, PiSandwich) {
  EXPECT_TRUE(verify_pi_sandwich(table(), 675, 1500).empty());
  EXPECT_THROW(verify_pi_sandwich(table(), 674, 700), DomainError);
}

TEST(SporadicFamily, SporadicFamily) {
  auto s19 = theorem31_sporadics(table(), normalize_generators({19, 23, 29, 31, 37}));
  EXPECT_EQ(s19.m, 5u);
  EXPECT_EQ(s19.window_primes, 2u);
  EXPECT_EQ(s19.family_size, 8u);
  EXPECT_TRUE(s19.verified);

  auto window = baker_window(table(), 10007);
  auto fam = theorem31_sporadics(table(), normalize_generators(window.primes));
  EXPECT_TRUE(fam.verified);
  EXPECT_EQ(fam.family_size, (fam.m - 1) * window.primes.size());

  EXPECT_THROW(theorem31_sporadics(table(), normalize_generators({3, 5})), DomainError);
}

TEST(SmallCases, AllFactsHold) {
  auto facts = small_cases(table());
  EXPECT_EQ(facts.size(), 10u);
  for (const auto& f : facts) EXPECT_TRUE(f.ok()) << f.name << ": expected " << f.expected << ", got " << f.actual;
}

TEST(Density, Examples) {
  EXPECT_EQ(density(table(), 3), Rational::make(1, 2));
  EXPECT_EQ(density(table(), 19), Rational::make(51, 102));  // g = 51 from the brute-force oracle
  auto d = density(table(), 48623);
  EXPECT_EQ(d, Rational::make(77209, 194577));
  EXPECT_GE(d.value(), 0.325);
  EXPECT_LE(d.value(), 0.425);
  EXPECT_THROW(density(PrimeTable(100), 53), RangeError);
}
