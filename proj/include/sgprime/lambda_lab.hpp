#pragma once

// Semigroups S_lambda(p) generated by the primes in [p, p + lambda p], the
// staircase F(lambda), lower bounds for f_lambda(p)/p and the set T(m).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "prime_table.hpp"
#include "rational.hpp"
#include "semigroup.hpp"

namespace sgprime {

// floor(p + lambda p), exact.
inline std::uint64_t interval_upper(std::uint64_t p, const Lambda& lambda) {
  return detail::checked_mul(detail::checked_add(lambda.num, lambda.den), p) / lambda.den;
}

inline bool in_D_lambda(const PrimeTable& t, std::uint64_t p, const Lambda& lambda) {
  const std::uint64_t hi = interval_upper(p, lambda);
  if (hi > t.limit())
    throw RangeError("interval [" + std::to_string(p) + ", " + std::to_string(hi) + "] exceeds sieve limit " +
                     std::to_string(t.limit()));
  if (!t.is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  return t.count_in(p, hi) >= 2;
}

struct LambdaSemigroup {
  std::uint64_t p = 0;
  Lambda lambda;
  std::vector<std::uint64_t> generators;
  std::uint64_t p_lambda = 0;  // largest generator
  AperyProfile profile;

  std::int64_t frobenius() const { return profile.frobenius; }
  GeneratorSet generator_set() const { return normalize_generators(generators); }
};

inline LambdaSemigroup build(const PrimeTable& t, std::uint64_t p, const Lambda& lambda) {
  if (!in_D_lambda(t, p, lambda))
    throw DomainError(std::to_string(p) + " is not in D_" + lambda.str() + ": fewer than two primes in [p, p+lambda p]");
  LambdaSemigroup ls;
  ls.p = p;
  ls.lambda = lambda;
  ls.generators = primes_in(t, p, interval_upper(p, lambda));
  ls.p_lambda = ls.generators.back();
  ls.profile = apery_set(ls.generator_set());
  return ls;
}

// 2 + floor(2/lambda) for lambda <= 1, otherwise 3.
inline std::uint64_t staircase_F(const Lambda& lambda) {
  if (lambda.num <= lambda.den) return 2 + (2 * lambda.den) / lambda.num;
  return 3;
}

struct StaircasePoint {
  std::uint64_t p = 0;
  Lambda lambda;
  Rational x;  // 1 + lambda
  std::int64_t f = 0;
  std::uint64_t F = 0;

  double ratio() const { return static_cast<double>(f) / static_cast<double>(p); }
  std::string ratio_str() const { return format_decimal(static_cast<std::uint64_t>(f), p); }
};

struct SkippedLambda {
  Lambda lambda;
  std::string reason;
};

struct RatioScan {
  std::vector<StaircasePoint> points;  // ascending in x
  std::vector<SkippedLambda> skipped;
};

// lambda = (q - p)/p for every prime q in (p, q_max]: the grid on which x p is prime.
inline std::vector<Lambda> figure_lambdas(const PrimeTable& t, std::uint64_t p, std::uint64_t q_max) {
  std::vector<Lambda> out;
  if (q_max <= p) return out;
  for (auto q : t.primes_in(p + 1, q_max)) out.push_back(Lambda::make(q - p, p));
  return out;
}

// Uniform grid x = 1 + k/den for k = 1 .. steps.
inline std::vector<Lambda> uniform_lambdas(std::uint64_t den, std::uint64_t steps) {
  std::vector<Lambda> out;
  for (std::uint64_t k = 1; k <= steps; ++k) out.push_back(Lambda::make(k, den));
  return out;
}

// One incremental Apery build serves every lambda: the generator sets are
// nested, so f_lambda(p) is read off after each prefix of primes.
inline RatioScan ratio_scan(const PrimeTable& t, std::uint64_t p, std::vector<Lambda> lambdas) {
  if (!t.is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  for (const auto& l : lambdas)
    if (interval_upper(p, l) > t.limit())
      throw RangeError("lambda " + l.str() + " needs primes up to " + std::to_string(interval_upper(p, l)) +
                       ", beyond sieve limit " + std::to_string(t.limit()));

  std::stable_sort(lambdas.begin(), lambdas.end());
  RatioScan scan;
  AperyBuilder builder(p);
  auto all = t.primes_in(p + 1, t.limit());
  std::size_t used = 0;
  for (const auto& l : lambdas) {
    const std::uint64_t hi = interval_upper(p, l);
    while (used < all.size() && all[used] <= hi) builder.add_generator(all[used++]);
    if (used == 0) {
      scan.skipped.push_back({l, std::to_string(p) + " not in D_" + l.str()});
      continue;
    }
    StaircasePoint pt;
    pt.p = p;
    pt.lambda = l;
    pt.x = Rational::make(l.num + l.den, l.den);
    pt.f = builder.frobenius();
    pt.F = staircase_F(l);
    scan.points.push_back(pt);
  }
  return scan;
}

// f_lambda(p) >= 3p - 6.
inline bool lower_bound_a(const LambdaSemigroup& ls) {
  return ls.frobenius() >= 3 * static_cast<std::int64_t>(ls.p) - 6;
}

struct LowerBoundC {
  std::int64_t target = 0;  // (m+2)p - 2
  bool holds = false;       // f >= target
  bool target_is_gap = false;

  explicit operator bool() const { return holds && target_is_gap; }
};

// f_lambda(p) >= (m+2)p - 2 when lambda < 2/m and p > 2/(2 - lambda m).
inline LowerBoundC lower_bound_c(const LambdaSemigroup& ls, std::uint64_t m) {
  const auto& l = ls.lambda;
  if (m < 2) throw DomainError("lower_bound_c needs m >= 2");
  // lambda < 2/m  <=>  a m < 2 b
  if (!(l.num * m < 2 * l.den))
    throw DomainError("lower_bound_c needs lambda < 2/m (lambda=" + l.str() + ", m=" + std::to_string(m) + ")");
  // p > 2/(2 - lambda m)  <=>  p (2b - a m) > 2b
  if (!(ls.p * (2 * l.den - l.num * m) > 2 * l.den))
    throw DomainError("lower_bound_c needs p > 2/(2 - lambda m)");
  LowerBoundC out;
  out.target = static_cast<std::int64_t>((m + 2) * ls.p) - 2;
  out.holds = ls.frobenius() >= out.target;
  out.target_is_gap = !contains(ls.profile, out.target);
  return out;
}

// All t in [1, t_max] with 1 + t m, 3 + t m and 1 + t (m+2) prime.
inline std::vector<std::uint64_t> T_set(const PrimeTable& t, std::uint64_t m, std::uint64_t t_max) {
  if (m < 2) throw DomainError("T(m) needs m >= 2");
  const std::uint64_t need = 1 + detail::checked_mul(t_max, m + 2);
  if (need > t.limit()) throw RangeError("T_set needs primes up to " + std::to_string(need));
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k <= t_max; ++k)
    if (t.is_prime(1 + k * m) && t.is_prime(3 + k * m) && t.is_prime(1 + k * (m + 2))) out.push_back(k);
  return out;
}

struct Lemma25Witness {
  std::uint64_t t = 0;              // (p - 1)/m
  bool p_is_1_mod_m = false;
  bool p_plus_2_prime = false;
  std::uint64_t p_lambda = 0;
  bool p_lambda_matches = false;    // p(2/m) == 1 + t (m+2)
  bool t_in_T = false;

  bool consistent() const { return p_is_1_mod_m && p_plus_2_prime && p_lambda_matches && t_in_T; }
};

// If f_{2/m}(p) < (m+2)p - 2, the structure forced on p; otherwise nothing.
inline std::optional<Lemma25Witness> lemma25a_witness(const PrimeTable& t, std::uint64_t p, std::uint64_t m) {
  if (m < 2) throw DomainError("lemma25a_witness needs m >= 2");
  if (p <= m) throw DomainError("lemma25a_witness needs p > m");
  const Lambda lambda = Lambda::make(2, m);
  if (!in_D_lambda(t, p, lambda)) throw DomainError(std::to_string(p) + " not in D_" + lambda.str());
  auto ls = build(t, p, lambda);
  if (ls.frobenius() >= static_cast<std::int64_t>((m + 2) * p) - 2) return std::nullopt;

  Lemma25Witness w;
  w.p_is_1_mod_m = (p - 1) % m == 0;
  w.t = (p - 1) / m;
  w.p_plus_2_prime = p + 2 <= t.limit() && t.is_prime(p + 2);
  w.p_lambda = ls.p_lambda;
  w.p_lambda_matches = w.p_is_1_mod_m && ls.p_lambda == 1 + w.t * (m + 2);
  w.t_in_T = w.p_is_1_mod_m && w.t > 0 && t.is_prime(1 + w.t * m) && t.is_prime(3 + w.t * m) &&
             t.is_prime(1 + w.t * (m + 2));
  return w;
}

// Every integer in [ceil((m+1+eps)p), floor((m+2+eps)p)] is in S_lambda(p).
inline bool upper_window_check(const LambdaSemigroup& ls, std::uint64_t m, const Rational& eps) {
  if (m < 2) throw DomainError("upper_window_check needs m >= 2");
  const auto& l = ls.lambda;
  // eps < lambda - 2/m  <=>  (eps.num m + 2 eps.den) b < a eps.den m
  unsigned __int128 lhs = static_cast<unsigned __int128>(eps.num * m + 2 * eps.den) * l.den;
  unsigned __int128 rhs = static_cast<unsigned __int128>(l.num) * eps.den * m;
  if (!(lhs < rhs)) throw DomainError("upper_window_check needs eps < lambda - 2/m");

  const std::uint64_t lo_num = ((m + 1) * eps.den + eps.num) * ls.p;
  const std::uint64_t hi_num = ((m + 2) * eps.den + eps.num) * ls.p;
  const std::uint64_t lo = (lo_num + eps.den - 1) / eps.den;
  const std::uint64_t hi = hi_num / eps.den;
  for (std::uint64_t n = lo; n <= hi; ++n)
    if (!contains(ls.profile, static_cast<std::int64_t>(n))) return false;
  return true;
}

}  // namespace sgprime
