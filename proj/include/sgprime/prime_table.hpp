#pragma once

// Sieve-backed prime oracle plus the explicit prime-counting inequalities
// (Rosser-Schoenfeld type) and the short-interval window J(p) = [p, p + p^0.525].

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace sgprime {

inline constexpr std::uint64_t kDefaultSieveLimit = 2'000'000;
inline constexpr std::uint64_t kDefaultMaxSieveLimit = 1'000'000'000;

// Immutable after construction; every query is const and thread-safe.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit, std::uint64_t max_limit = kDefaultMaxSieveLimit)
      : limit_(limit) {
    if (limit < 2) throw ConfigError("sieve limit must be at least 2, got " + std::to_string(limit));
    if (limit > max_limit)
      throw ConfigError("sieve limit " + std::to_string(limit) + " exceeds memory budget " +
                        std::to_string(max_limit));
    composite_.assign(limit + 1, false);
    composite_[0] = composite_[1] = true;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
      if (composite_[i]) continue;
      for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
    }
    // pi(x) ~ x / (ln x - 1.5) is a safe overestimate once x >= 5
    double est = limit < 100 ? 30.0 : static_cast<double>(limit) / (std::log(static_cast<double>(limit)) - 1.5);
    primes_.reserve(static_cast<std::size_t>(est));
    for (std::uint64_t n = 2; n <= limit; ++n)
      if (!composite_[n]) primes_.push_back(n);
  }

  std::uint64_t limit() const { return limit_; }

  std::span<const std::uint64_t> primes() const { return primes_; }

  bool is_prime(std::uint64_t n) const {
    require(n, "is_prime");
    return !composite_[n];
  }

  // Number of primes <= x.
  std::uint64_t pi(std::uint64_t x) const {
    require(x, "prime_pi");
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  // 1-indexed: nth(1) == 2.
  std::uint64_t nth(std::uint64_t n) const {
    if (n == 0) throw ArgumentError("nth_prime is 1-indexed; n must be >= 1");
    if (n > primes_.size())
      throw RangeError("nth_prime(" + std::to_string(n) + ") beyond sieve limit " + std::to_string(limit_) +
                       " (table holds " + std::to_string(primes_.size()) + " primes)");
    return primes_[n - 1];
  }

  // Primes q with lo <= q <= hi, both endpoints included.
  std::span<const std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) const {
    require(hi, "primes_in");
    if (lo > hi) return {};
    auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(first, primes_.end(), hi);
    return {first, last};
  }

  std::uint64_t count_in(std::uint64_t lo, std::uint64_t hi) const { return primes_in(lo, hi).size(); }

 private:
  void require(std::uint64_t x, const char* what) const {
    if (x > limit_)
      throw RangeError(std::string(what) + "(" + std::to_string(x) + ") exceeds sieve limit " +
                       std::to_string(limit_));
  }

  std::uint64_t limit_;
  std::vector<bool> composite_;
  std::vector<std::uint64_t> primes_;
};

inline PrimeTable build_table(std::uint64_t limit, std::uint64_t max_limit = kDefaultMaxSieveLimit) {
  return PrimeTable(limit, max_limit);
}

inline std::uint64_t prime_pi(const PrimeTable& t, std::uint64_t x) { return t.pi(x); }
inline std::uint64_t nth_prime(const PrimeTable& t, std::uint64_t n) { return t.nth(n); }

inline std::vector<std::uint64_t> primes_in(const PrimeTable& t, std::uint64_t lo, std::uint64_t hi) {
  auto s = t.primes_in(lo, hi);
  return {s.begin(), s.end()};
}

// Upper estimate for p_n valid for n >= 6; used to size tables ahead of scans.
inline std::uint64_t nth_prime_upper_estimate(std::uint64_t n) {
  if (n < 6) return 13;
  double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(x * (std::log(x) + std::log(std::log(x))))) + 1;
}

// ---------------------------------------------------------------------------
// Short-interval window J(p)

struct PrimeWindow {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> primes;
  double lower_estimate = 0.0;
};

inline std::uint64_t baker_window_hi(std::uint64_t p) {
  // floor errs toward a smaller window
  return p + static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(p), 0.525)));
}

inline PrimeWindow baker_window(const PrimeTable& t, std::uint64_t p) {
  if (p < 2) throw ArgumentError("baker_window needs p >= 2");
  PrimeWindow w;
  w.lo = p;
  w.hi = baker_window_hi(p);
  if (w.hi > t.limit())
    throw RangeError("window [" + std::to_string(p) + ", " + std::to_string(w.hi) + "] exceeds sieve limit");
  w.primes = primes_in(t, w.lo, w.hi);
  double pd = static_cast<double>(p);
  w.lower_estimate = 0.09 * std::pow(pd, 0.525) / std::log(pd);
  return w;
}

// ---------------------------------------------------------------------------
// Explicit prime-counting inequalities

struct BoundCounterexample {
  std::uint64_t at = 0;  // x or n, depending on the inequality
  std::uint64_t value = 0;  // pi(...) or p_n as computed
  double bound = 0.0;
};

struct BoundCheck {
  std::string name;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t checked = 0;
  std::vector<BoundCounterexample> counterexamples;

  bool ok() const { return counterexamples.empty(); }
};

struct LiteratureBoundsReport {
  std::vector<BoundCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.ok(); });
  }
};

// Checks, with zero tolerance:
//   pi(2x) < 2 pi(x)                    for 11 <= x <= x_max
//   p_n < n (ln n + ln ln n)            for 5 < n <= n_max
//   pi(x) < x / (ln x - 3/2)            for 5 <= x <= 2 x_max (ln x > 3/2)
//   pi(x) > x / (ln x - 1/2)            for 67 <= x <= 2 x_max
inline LiteratureBoundsReport verify_literature_bounds(const PrimeTable& t, std::uint64_t n_max,
                                                       std::uint64_t x_max) {
  if (2 * x_max > t.limit())
    throw RangeError("verify_literature_bounds: 2*x_max=" + std::to_string(2 * x_max) + " exceeds sieve limit");
  if (n_max > t.primes().size())
    throw RangeError("verify_literature_bounds: p_" + std::to_string(n_max) + " beyond sieve limit");

  LiteratureBoundsReport report;
  const std::uint64_t x_hi = 2 * x_max;

  // Running prime counts let each sweep stay linear instead of binary searching.
  std::vector<std::uint32_t> pi_of(x_hi + 1, 0);
  for (std::uint64_t x = 2, c = 0; x <= x_hi; ++x) {
    if (t.is_prime(x)) ++c;
    pi_of[x] = static_cast<std::uint32_t>(c);
  }

  BoundCheck doubling{"pi(2x) < 2 pi(x)", 11, x_max, 0, {}};
  for (std::uint64_t x = 11; x <= x_max; ++x, ++doubling.checked)
    if (!(pi_of[2 * x] < 2ull * pi_of[x]))
      doubling.counterexamples.push_back({x, pi_of[2 * x], 2.0 * pi_of[x]});
  report.checks.push_back(std::move(doubling));

  BoundCheck nth{"p_n < n (ln n + ln ln n)", 6, n_max, 0, {}};
  for (std::uint64_t n = 6; n <= n_max; ++n, ++nth.checked) {
    double x = static_cast<double>(n);
    double bound = x * (std::log(x) + std::log(std::log(x)));
    std::uint64_t pn = t.nth(n);
    if (!(static_cast<double>(pn) < bound)) nth.counterexamples.push_back({n, pn, bound});
  }
  report.checks.push_back(std::move(nth));

  BoundCheck upper{"pi(x) < x / (ln x - 3/2)", 5, x_hi, 0, {}};
  for (std::uint64_t x = 5; x <= x_hi; ++x, ++upper.checked) {
    double xd = static_cast<double>(x);
    double bound = xd / (std::log(xd) - 1.5);
    if (!(static_cast<double>(pi_of[x]) < bound)) upper.counterexamples.push_back({x, pi_of[x], bound});
  }
  report.checks.push_back(std::move(upper));

  BoundCheck lower{"pi(x) > x / (ln x - 1/2)", 67, x_hi, 0, {}};
  for (std::uint64_t x = 67; x <= x_hi; ++x, ++lower.checked) {
    double xd = static_cast<double>(x);
    double bound = xd / (std::log(xd) - 0.5);
    if (!(static_cast<double>(pi_of[x]) > bound)) lower.counterexamples.push_back({x, pi_of[x], bound});
  }
  report.checks.push_back(std::move(lower));

  return report;
}

}  // namespace sgprime
