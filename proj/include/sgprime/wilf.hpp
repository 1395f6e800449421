#pragma once

// Wilf's inequality g/(1+f) <= (e-1)/e for S(p) = <primes in [p, 2p]> and the
// finite arithmetic behind its proof: the Frobenius bound f(p) < 2(pi(2p)-pi(p))^2,
// Selmer's bound, the auxiliary functions l and l2, the sporadic family ip+q
// and the hand-checked p = 19, 23 branches.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "lambda_lab.hpp"
#include "parallel.hpp"
#include "prime_table.hpp"
#include "rational.hpp"
#include "semigroup.hpp"

namespace sgprime {

struct WilfReport {
  std::uint64_t p = 0;
  std::uint64_t e = 0;
  std::int64_t f = 0;
  std::uint64_t g = 0;
  std::uint64_t sporadic = 0;  // 1 + f - g
  Rational lhs;                // g / (1 + f)
  Rational rhs;                // (e - 1) / e
  bool product_ok = false;     // e (1 + f - g) >= 1 + f
  bool holds = false;
};

// Exact integer arithmetic only; both forms of the inequality are evaluated
// and must agree.
inline WilfReport wilf_report(const AperyProfile& ap, const AtomSet& at) {
  WilfReport r;
  r.p = ap.multiplicity;
  r.e = at.embedding_dimension;
  r.f = ap.frobenius;
  r.g = ap.genus;
  const auto f1 = static_cast<std::uint64_t>(1 + ap.frobenius);
  r.sporadic = f1 - r.g;
  r.lhs = Rational::make(r.g, f1);
  r.rhs = Rational::make(r.e - 1, r.e);
  r.product_ok = detail::checked_mul(r.e, r.sporadic) >= f1;
  const bool fraction_ok = r.lhs <= r.rhs;
  if (fraction_ok != r.product_ok) throw ArithmeticError("Wilf forms disagree for p=" + std::to_string(r.p));
  r.holds = r.product_ok;
  return r;
}

// S(p): semigroup generated by the primes in [p, 2p].
inline LambdaSemigroup sp_semigroup(const PrimeTable& t, std::uint64_t p) {
  return build(t, p, Lambda::make(1, 1));
}

struct SpRow {
  std::uint64_t n = 0;
  WilfReport report;
  std::uint64_t eq3_rhs = 0;  // (2(pi(2p)-n+1)+1)(pi(2p)-n+2)
  bool f_lt_eq3_rhs = false;
};

inline SpRow sp_row(const PrimeTable& t, std::uint64_t n) {
  const std::uint64_t p = t.nth(n);
  auto ls = sp_semigroup(t, p);
  auto at = atoms(ls.profile, ls.generator_set());
  SpRow row;
  row.n = n;
  row.report = wilf_report(ls.profile, at);
  const std::uint64_t k = t.pi(2 * p) - n;
  row.eq3_rhs = (2 * (k + 1) + 1) * (k + 2);
  row.f_lt_eq3_rhs = static_cast<std::uint64_t>(row.report.f) < row.eq3_rhs;
  return row;
}

inline std::vector<SpRow> verify_sp_range(const PrimeTable& t, std::uint64_t n_lo, std::uint64_t n_hi,
                                          unsigned threads = default_threads()) {
  if (n_lo < 1 || n_hi < n_lo) throw ArgumentError("verify_sp_range needs 1 <= n_lo <= n_hi");
  if (2 * t.nth(n_hi) > t.limit()) throw RangeError("verify_sp_range needs 2 p_n_hi within the sieve");
  return parallel_map(n_hi - n_lo + 1, threads, [&](std::size_t i) { return sp_row(t, n_lo + i); });
}

struct FrobeniusBound {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::int64_t f = 0;
  std::uint64_t lhs = 0;  // quantity compared, exact
  std::uint64_t rhs = 0;
  bool holds = false;

  explicit operator bool() const { return holds; }
};

namespace detail {

inline FrobeniusBound f_bound_from(const PrimeTable& t, std::uint64_t n, std::int64_t f) {
  FrobeniusBound b;
  b.n = n;
  b.p = t.nth(n);
  b.f = f;
  const std::uint64_t k = t.pi(2 * b.p) - n;
  b.lhs = static_cast<std::uint64_t>(f);
  b.rhs = 2 * k * k;
  b.holds = b.lhs < b.rhs;
  return b;
}

inline FrobeniusBound selmer_from(const PrimeTable& t, std::uint64_t n, std::int64_t f) {
  FrobeniusBound b;
  b.n = n;
  b.p = t.nth(n);
  b.f = f;
  const std::uint64_t pi2p = t.pi(2 * b.p);
  const std::uint64_t e = pi2p - n + 1;
  if (!(e < b.p))
    throw DomainError("Selmer bound needs e(p_n) = pi(2p_n) - n + 1 < p_n (n=" + std::to_string(n) + ")");
  // f < 2 p p_{pi(2p)} / e, cross-multiplied
  b.lhs = checked_mul(static_cast<std::uint64_t>(f), e);
  b.rhs = checked_mul(2 * b.p, t.nth(pi2p));
  b.holds = b.lhs < b.rhs;
  return b;
}

inline void require_sp_in_table(const PrimeTable& t, std::uint64_t n) {
  if (2 * t.nth(n) > t.limit()) throw RangeError("2 p_" + std::to_string(n) + " exceeds sieve limit");
}

}  // namespace detail

// f(p_n) < 2 (pi(2 p_n) - n)^2 for n > 674.
inline FrobeniusBound lemma_f_bound(const PrimeTable& t, std::uint64_t n) {
  if (n <= 674) throw DomainError("lemma_f_bound needs n > 674, got " + std::to_string(n));
  detail::require_sp_in_table(t, n);
  return detail::f_bound_from(t, n, sp_semigroup(t, t.nth(n)).frobenius());
}

// f(p) < 2 p p_{pi(2p)} / (pi(2p) - n + 1).
inline FrobeniusBound selmer_bound(const PrimeTable& t, std::uint64_t n) {
  detail::require_sp_in_table(t, n);
  const std::uint64_t p = t.nth(n);
  if (!(t.pi(2 * p) - n + 1 < p)) throw DomainError("Selmer bound inapplicable: e(p_n) >= p_n");
  return detail::selmer_from(t, n, sp_semigroup(t, p).frobenius());
}

struct LemmaRow {
  FrobeniusBound f_bound;
  FrobeniusBound selmer;
};

// Both bounds on one Apery build per n.
inline std::vector<LemmaRow> verify_lemma_range(const PrimeTable& t, std::uint64_t n_lo, std::uint64_t n_hi,
                                                unsigned threads = default_threads()) {
  if (n_lo <= 674) throw DomainError("verify_lemma_range needs n_lo > 674");
  if (n_hi < n_lo) throw ArgumentError("verify_lemma_range needs n_lo <= n_hi");
  detail::require_sp_in_table(t, n_hi);
  return parallel_map(n_hi - n_lo + 1, threads, [&](std::size_t i) {
    const std::uint64_t n = n_lo + i;
    const auto f = sp_semigroup(t, t.nth(n)).frobenius();
    return LemmaRow{detail::f_bound_from(t, n, f), detail::selmer_from(t, n, f)};
  });
}

// ---------------------------------------------------------------------------
// l(x) = 2 (ln x - 3/2) / (ln 2x - 1/2), the factor in pi(2x) > l(x) pi(x);
// l2(x) = 2 (ln x + ln ln x)(ln 2x + ln ln 2x) / x.

inline double l_factor(double x) {
  if (x < 67) throw DomainError("l(x) is defined for x >= 67");
  return 2.0 * (std::log(x) - 1.5) / (std::log(2.0 * x) - 0.5);
}

inline double l2_factor(double x) {
  if (x < 675) throw DomainError("l2(x) is defined for x >= 675");
  const double y = 2.0 * x;
  return 2.0 * (std::log(x) + std::log(std::log(x))) * (std::log(y) + std::log(std::log(y))) / x;
}

struct AnalyticBounds {
  double l = 0.0;
  std::optional<double> l2;  // only for x >= 675
};

inline AnalyticBounds analytic_bounds(double x) {
  AnalyticBounds b{l_factor(x), std::nullopt};
  if (x >= 675) b.l2 = l2_factor(x);
  return b;
}

// Pairwise-adjacent comparisons over the integer grid [from, to].
inline bool l_strictly_increasing(std::uint64_t from, std::uint64_t to) {
  for (std::uint64_t x = from; x < to; ++x)
    if (!(l_factor(static_cast<double>(x)) < l_factor(static_cast<double>(x + 1)))) return false;
  return true;
}

inline bool l2_strictly_decreasing(std::uint64_t from, std::uint64_t to) {
  for (std::uint64_t x = from; x < to; ++x)
    if (!(l2_factor(static_cast<double>(x)) > l2_factor(static_cast<double>(x + 1)))) return false;
  return true;
}

// l2(675) < (l(5039) - 1)^3
inline bool l2_cube_inequality() {
  const double d = l_factor(5039) - 1.0;
  return l2_factor(675) < d * d * d;
}

struct PiSandwichFailure {
  std::uint64_t n = 0;
  std::uint64_t pi_2pn = 0;
};

// 2n > pi(2 p_n) > l(p_n) n >= l(5039) n for every n in [n_lo, n_hi].
inline std::vector<PiSandwichFailure> verify_pi_sandwich(const PrimeTable& t, std::uint64_t n_lo,
                                                         std::uint64_t n_hi) {
  if (n_lo < 675) throw DomainError("pi sandwich is stated for n >= 675");
  detail::require_sp_in_table(t, n_hi);
  const double l_base = l_factor(5039);
  std::vector<PiSandwichFailure> failures;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const std::uint64_t pn = t.nth(n);
    const std::uint64_t c = t.pi(2 * pn);
    const double nd = static_cast<double>(n);
    const double mid = l_factor(static_cast<double>(pn)) * nd;
    if (!(2 * n > c && static_cast<double>(c) > mid && mid >= l_base * nd)) failures.push_back({n, c});
  }
  return failures;
}

// ---------------------------------------------------------------------------

struct SporadicFamily {
  std::uint64_t m = 0;            // floor(f / p)
  std::uint64_t window_primes = 0;
  std::uint64_t family_size = 0;  // (m - 1) |J(p) cap P|
  bool verified = false;
};

// The elements ip + q, 0 <= i <= m-2, q prime in J(p), must all be members
// lying below f.
inline SporadicFamily theorem31_sporadics(const PrimeTable& t, const GeneratorSet& gens) {
  const auto ap = apery_set(gens);
  const std::uint64_t p = ap.multiplicity;
  if (!(ap.frobenius > static_cast<std::int64_t>(3 * p)))
    throw DomainError("theorem31_sporadics needs f > 3p (f=" + std::to_string(ap.frobenius) +
                      ", p=" + std::to_string(p) + ")");
  const auto window = baker_window(t, p);
  SporadicFamily out;
  out.m = static_cast<std::uint64_t>(ap.frobenius) / p;
  out.window_primes = window.primes.size();
  out.family_size = (out.m - 1) * out.window_primes;
  out.verified = true;
  for (std::uint64_t i = 0; i + 2 <= out.m; ++i)
    for (auto q : window.primes) {
      const auto s = static_cast<std::int64_t>(i * p + q);
      if (!contains(ap, s) || s >= ap.frobenius) out.verified = false;
    }
  return out;
}

struct CheckedFact {
  std::string name;
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  bool ok() const { return expected == actual; }
};

// Every arithmetic fact used in the p = 19 and p = 23 branches.
inline std::vector<CheckedFact> small_cases(const PrimeTable& t) {
  auto s19 = sp_semigroup(t, 19);
  auto s23 = sp_semigroup(t, 23);
  auto count_below = [](const AperyProfile& ap, std::uint64_t below) {
    return static_cast<std::int64_t>(sporadic_elements(ap, below).elements.size());
  };
  auto member = [](const AperyProfile& ap, std::int64_t n) -> std::int64_t { return contains(ap, n) ? 1 : 0; };
  return {
      {"f(23)", 102, s23.frobenius()},
      {"#S(23) below 70", 17, count_below(s23.profile, 70)},
      {"e(S(23))", 6, static_cast<std::int64_t>(atoms(s23.profile, s23.generator_set()).embedding_dimension)},
      {"f(19)", 101, s19.frobenius()},
      {"#S(19) below 63", 19, count_below(s19.profile, 63)},
      {"#S(19) below 59", 16, count_below(s19.profile, 59)},
      {"58 = 29 + 29 in S(19)", 1, member(s19.profile, 58)},
      {"60 in S(19)", 1, member(s19.profile, 60)},
      {"61 in S(19)", 1, member(s19.profile, 61)},
      {"62 in S(19)", 1, member(s19.profile, 62)},
  };
}

// (1 + f - g) / (1 + f) for S(p).
inline Rational density(const PrimeTable& t, std::uint64_t p) {
  if (2 * p > t.limit()) throw RangeError("density needs 2p within the sieve");
  if (!t.is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  const auto ls = sp_semigroup(t, p);
  const auto f1 = static_cast<std::uint64_t>(1 + ls.frobenius());
  return Rational::make(f1 - ls.profile.genus, f1);
}

}  // namespace sgprime
