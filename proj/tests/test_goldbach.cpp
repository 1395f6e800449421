#include <gtest/gtest.h>

#include "sgprime/goldbach.hpp"

using namespace sgprime;

namespace {

using Parts = std::vector<std::uint64_t>;

const PrimeTable& table() {
  static const PrimeTable t(400'000);
  return t;
}

// f_n for n = 1..39 from tests/oracle/frozen_values.py
const std::vector<std::int64_t> kFrozenFn = {1,   4,   9,   16,  27,  35,  49,  63,  65,  85,  95,  105, 121,
                                             135, 145, 169, 175, 187, 203, 209, 221, 253, 265, 273, 289, 301,
                                             305, 319, 351, 369, 387, 403, 407, 425, 445, 473, 485, 495, 517};

}  // namespace

TEST(Binary, Examples) {
  EXPECT_EQ(binary_decomp(table(), 4, 0), std::make_optional(std::pair<std::uint64_t, std::uint64_t>{2, 2}));
  EXPECT_EQ(binary_decomp(table(), 100, 20), std::make_optional(std::pair<std::uint64_t, std::uint64_t>{47, 53}));
  EXPECT_FALSE(binary_decomp(table(), 100, 2).has_value());
  EXPECT_THROW(binary_decomp(table(), 101, 5), ArgumentError);
}

TEST(Ternary, Examples) {
  auto c9 = ternary_decomp(table(), 9, 0.6);
  EXPECT_EQ(c9.parts, (Parts{3, 3, 3}));
  EXPECT_EQ(c9.max_deviation, 0u);

  auto c21 = ternary_decomp(table(), 21, 0.6);
  EXPECT_EQ(c21.parts, (Parts{7, 7, 7}));

  auto big = ternary_decomp(table(), 10001, 0.6);
  EXPECT_EQ(big.window, 251u);
  EXPECT_LE(big.max_deviation, 3 * 251u);
  EXPECT_TRUE(validate(table(), big));

  EXPECT_THROW(ternary_decomp(table(), 10, 0.6), ArgumentError);
  EXPECT_THROW(ternary_decomp(table(), 7, 0.6), ArgumentError);
}

TEST(Ternary, EmptyWindowIsReported) {
  // floor(27^0.1) = 1 leaves only q in [8, 10], none prime
  EXPECT_THROW(ternary_decomp(table(), 27, 0.1), DecompositionError);
}

TEST(DecomposeM, Examples) {
  auto c = decompose_m(table(), 20, 4, Rational::make(1, 5));
  EXPECT_EQ(c.parts, (Parts{5, 5, 5, 5}));
  EXPECT_EQ(c.max_deviation, 0u);

  auto c16 = decompose_m(table(), 16, 4, Rational::make(1, 4));
  EXPECT_EQ(c16.parts, (Parts{3, 3, 5, 5}));
  EXPECT_TRUE(validate(table(), c16));

  auto big = decompose_m(table(), 100'000, 4, Rational::make(1, 20));
  EXPECT_TRUE(validate(table(), big));
  for (auto q : big.parts) {
    EXPECT_GT(q, 23'750u);
    EXPECT_LT(q, 26'250u);
  }

  EXPECT_THROW(decompose_m(table(), 21, 4, Rational::make(1, 5)), ArgumentError);
  EXPECT_THROW(decompose_m(table(), 20, 2, Rational::make(1, 5)), ArgumentError);
}

TEST(DecomposeM, DeltaBoundViolationIsReported) {
  // 16 = 3+3+5+5 has max |4q - 16| = 4, not below 4 * (1/16) * 16 = 4
  EXPECT_THROW(decompose_m(table(), 16, 4, Rational::make(1, 16)), DecompositionError);
}

TEST(DecomposeM, LargerM) {
  for (std::uint64_t m = 3; m <= 8; ++m)
    for (std::uint64_t N = 200'000 + (m % 2); N < 200'200; N += 2) {
      auto c = decompose_m(table(), N, m, Rational::make(1, 20));
      ASSERT_EQ(c.parts.size(), m);
      ASSERT_TRUE(validate(table(), c)) << N << " " << m;
    }
}

TEST(Certificate, ValidationRejectsTampering) {
  auto c = decompose_m(table(), 100'000, 4, Rational::make(1, 20));
  auto bad = c;
  bad.parts[0] += 2;
  EXPECT_FALSE(validate(table(), bad));
  bad = c;
  bad.max_deviation += 1;
  EXPECT_FALSE(validate(table(), bad));
  bad = c;
  bad.delta = Rational::make(1, 100'000);
  EXPECT_FALSE(validate(table(), bad));
}

TEST(WindowMode, PartsLandInsideTheInterval) {
  // lambda = 1, m = 3, eps = 1/10: every N in [(m+eps)p, (m+2+eps)p] of odd parity
  const PrimeTable t(520'000);
  const std::uint64_t p = 100'003, m = 3;
  const auto lambda = Lambda::make(1, 1);
  const auto eps = Rational::make(1, 10);
  const auto delta = window_delta(m, eps);
  EXPECT_EQ(delta, Rational::make(1, 153));
  const std::uint64_t lo = (31 * p + 9) / 10, hi = 51 * p / 10;
  for (std::uint64_t N = lo | 1; N <= hi; N += 2 * 997) {
    auto c = decompose_m(t, N, m, delta);
    ASSERT_TRUE(parts_inside_interval(c, p, lambda)) << N;
  }
}

TEST(Sn, SmallFrobeniusNumbers) {
  EXPECT_EQ(sn_frobenius(table(), 1).f_n, 1);
  EXPECT_EQ(sn_frobenius(table(), 2).f_n, 4);
  auto s3 = sn_frobenius(table(), 3);
  EXPECT_EQ(s3.f_n, 9);
  EXPECT_EQ(s3.f_n, 3 * 5 - 6);
  for (std::uint64_t n = 1; n <= kFrozenFn.size(); ++n) {
    auto s = sn_frobenius(table(), n);
    ASSERT_EQ(s.f_n, kFrozenFn[n - 1]) << n;
    ASSERT_TRUE(s.certificate_ok);
    ASSERT_GE(s.f_n, 3 * static_cast<std::int64_t>(s.p_n) - 6);
  }
}

TEST(Sn, DoublingTheTruncationChangesNothing) {
  for (std::uint64_t n : {5u, 50u, 500u}) {
    auto s = sn_frobenius(table(), n);
    EXPECT_EQ(sn_frobenius(table(), n, 2 * s.truncation).f_n, s.f_n) << n;
  }
}

TEST(Sn, TruncationGrowsWhenTooSmall) {
  auto s = sn_frobenius(table(), 20, 80);
  EXPECT_EQ(s.f_n, kFrozenFn[19]);
  EXPECT_GE(s.truncation, static_cast<std::uint64_t>(s.f_n));
  EXPECT_THROW(sn_frobenius(PrimeTable(300), 20), RangeError);
}

TEST(Table3, SmallRange) {
  auto rows = table3_scan(table(), 5, 100, 2);
  ASSERT_EQ(rows.size(), 96u);
  EXPECT_EQ(rows.front().f_n, 27);
  EXPECT_TRUE(rows.front().f_odd);
  for (const auto& r : rows) EXPECT_TRUE(r.pass()) << r.n;
  EXPECT_THROW(table3_scan(table(), 4, 10), DomainError);
}

TEST(StartScan, Scans) {
  EXPECT_TRUE(lemma41_scan(table(), 100, 2500));
  EXPECT_TRUE(lemma41_scan(table(), 1000, 2500));
  // S_2 = <primes >= 3> misses 1; start 3*2 + 2 = 8 -> 9: all odd N >= 9 are in S_2
  auto r = lemma41_scan(table(), 1, 10);
  EXPECT_EQ(r.start, 9u);
  EXPECT_TRUE(r.ok());
}

TEST(StartScan, CountsEveryCheckedValue) {
  // S_3 = <5, 7, 11, ...>, start 3*3 + 4 = 13
  auto r = lemma41_scan(table(), 2, 5);
  EXPECT_EQ(r.start, 13u);
  EXPECT_EQ(r.checked, 5u);
  EXPECT_FALSE(r.first_failure.has_value());
}

TEST(ExceptionalEvens, Goldens) {
  // frozen from the brute-force reachability oracle
  EXPECT_EQ(exceptional_evens(table(), 19), (Parts{40, 44, 64, 70, 72}));
  EXPECT_EQ(exceptional_evens(table(), 23), (Parts{48, 50, 56, 76, 88, 90}));
  auto e541 = exceptional_evens(table(), 541);
  EXPECT_EQ(e541.size(), 33u);
  EXPECT_EQ(Parts(e541.begin(), e541.begin() + 3), (Parts{1084, 1086, 1090}));
}

TEST(ExceptionalEvens, NoBinaryDecompositionBelowThreeP) {
  for (std::uint64_t p : {19u, 23u, 541u, 1009u}) {
    for (auto N : exceptional_evens(table(), p)) {
      if (N >= 3 * p) continue;
      for (auto q : table().primes_in(p, 2 * p))
        ASSERT_FALSE(N > q && table().is_prime(N - q) && N - q >= p && N - q <= 2 * p) << N;
    }
  }
}
