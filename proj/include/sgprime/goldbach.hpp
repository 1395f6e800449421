#pragma once

// Goldbach-type decompositions with explicit closeness constraints, the
// semigroups S_n generated by all primes >= p_n (via certified truncation),
// and the scans over their Frobenius numbers f_n.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lambda_lab.hpp"
#include "parallel.hpp"
#include "prime_table.hpp"
#include "rational.hpp"
#include "semigroup.hpp"

namespace sgprime {

enum class BoundType {
  DeltaN,       // |N/m - q_i| < delta N
  NTheta,       // |N/3 - q_i| <= floor(N^theta)
  MThirdNTheta  // |N/m - q_i| <= (m/3) floor(N^theta)
};

inline const char* to_string(BoundType b) {
  switch (b) {
    case BoundType::DeltaN: return "delta*N";
    case BoundType::NTheta: return "N^theta";
    case BoundType::MThirdNTheta: return "m/3*N^theta";
  }
  return "?";
}

struct DecompCertificate {
  std::uint64_t N = 0;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> parts;  // ascending
  std::uint64_t max_deviation = 0;   // max |m q_i - N|
  BoundType bound_type = BoundType::DeltaN;
  Rational delta;                    // DeltaN
  double theta = 0.0;                // NTheta / MThirdNTheta
  std::uint64_t window = 0;          // floor(N^theta)
};

namespace detail {

inline std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

inline std::uint64_t max_deviation(const std::vector<std::uint64_t>& parts, std::uint64_t N) {
  std::uint64_t m = parts.size(), dev = 0;
  for (auto q : parts) dev = std::max(dev, abs_diff(m * q, N));
  return dev;
}

inline std::uint64_t floor_pow(double base, double exponent) {
  return static_cast<std::uint64_t>(std::floor(std::pow(base, exponent)));
}

// |m q - N| < m delta N, exactly.
inline bool within_delta(std::uint64_t deviation, std::uint64_t m, std::uint64_t N, const Rational& delta) {
  return static_cast<unsigned __int128>(deviation) * delta.den <
         static_cast<unsigned __int128>(m) * delta.num * N;
}

}  // namespace detail

// Re-checks a certificate from scratch: parts prime, exact sum, declared bound.
inline bool validate(const PrimeTable& t, const DecompCertificate& c) {
  if (c.parts.size() != c.m || c.m == 0) return false;
  std::uint64_t sum = 0;
  for (auto q : c.parts) {
    if (q > t.limit() || !t.is_prime(q)) return false;
    sum += q;
  }
  if (sum != c.N) return false;
  const std::uint64_t dev = detail::max_deviation(c.parts, c.N);
  if (dev != c.max_deviation) return false;
  switch (c.bound_type) {
    case BoundType::DeltaN: return detail::within_delta(dev, c.m, c.N, c.delta);
    case BoundType::NTheta: return c.m == 3 && dev <= 3 * c.window;
    case BoundType::MThirdNTheta: return 3 * dev <= c.m * c.m * c.window;
  }
  return false;
}

// N = q1 + q2 with |q_i - N/2| <= window, q1 as close to N/2 as possible.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> binary_decomp(const PrimeTable& t, std::uint64_t N,
                                                                            std::uint64_t window) {
  if (N % 2 != 0 || N < 4) throw ArgumentError("binary_decomp needs an even N >= 4");
  const std::uint64_t half = N / 2;
  if (half + window > t.limit()) throw RangeError("binary_decomp window exceeds sieve limit");
  for (std::uint64_t d = 0; d <= window && d < half; ++d)
    if (t.is_prime(half - d) && t.is_prime(half + d)) return std::pair{half - d, half + d};
  return std::nullopt;
}

// N = q1 + q2 + q3 with every |q_i - N/3| <= floor(N^theta). Candidates for the
// first part expand outward from N/3 (ties toward the smaller prime); the
// remaining pair is taken as balanced as possible.
inline DecompCertificate ternary_decomp(const PrimeTable& t, std::uint64_t N, double theta) {
  if (N % 2 == 0 || N < 9) throw ArgumentError("ternary_decomp needs an odd N >= 9, got " + std::to_string(N));
  if (N > t.limit()) throw RangeError("ternary_decomp: N exceeds sieve limit");
  const std::uint64_t W = detail::floor_pow(static_cast<double>(N), theta);
  // |3q - N| <= 3W
  const std::uint64_t lo = std::max<std::uint64_t>(2, N > 3 * W ? (N - 3 * W + 2) / 3 : 2);
  const std::uint64_t hi = std::min(t.limit(), (N + 3 * W) / 3);

  std::vector<std::uint64_t> firsts;
  for (auto q : t.primes_in(lo, hi)) firsts.push_back(q);
  std::stable_sort(firsts.begin(), firsts.end(), [N](std::uint64_t a, std::uint64_t b) {
    return detail::abs_diff(3 * a, N) < detail::abs_diff(3 * b, N);
  });

  for (auto q1 : firsts) {
    const std::uint64_t rest = N - q1;
    for (std::uint64_t q2 = rest / 2; q2 >= lo; --q2) {
      const std::uint64_t q3 = rest - q2;
      if (q3 > hi) break;
      if (t.is_prime(q2) && t.is_prime(q3)) {
        DecompCertificate c;
        c.N = N;
        c.m = 3;
        c.parts = {q1, q2, q3};
        std::sort(c.parts.begin(), c.parts.end());
        c.max_deviation = detail::max_deviation(c.parts, N);
        c.bound_type = BoundType::NTheta;
        c.theta = theta;
        c.window = W;
        return c;
      }
      if (q2 == 0) break;
    }
  }
  throw DecompositionError("no ternary decomposition of " + std::to_string(N) + " with all parts within " +
                           std::to_string(W) + " of N/3");
}

inline constexpr double kDefaultTernaryTheta = 0.6;

// N = q1 + q2 + q3 + (m-3) p with p the largest prime in
// [N/m - (N/m)^{21/40}, N/m]; the certificate carries the |N/m - q_i| < delta N bound.
inline DecompCertificate decompose_m(const PrimeTable& t, std::uint64_t N, std::uint64_t m, const Rational& delta,
                                     double theta = kDefaultTernaryTheta) {
  if (m < 3) throw ArgumentError("decompose_m needs m >= 3");
  if (N % 2 != m % 2) throw ArgumentError("N must have the parity of m");
  if (delta.num == 0) throw ArgumentError("delta must be positive");

  DecompCertificate c;
  if (m == 3) {
    c = ternary_decomp(t, N, theta);
  } else {
    if (N > t.limit()) throw RangeError("decompose_m: N exceeds sieve limit");
    const std::uint64_t centre = N / m;
    const std::uint64_t w = detail::floor_pow(static_cast<double>(N) / static_cast<double>(m), 21.0 / 40.0);
    auto window = t.primes_in(centre > w ? centre - w : 0, centre);
    if (window.empty())
      throw DecompositionError("no prime in [" + std::to_string(centre > w ? centre - w : 0) + ", " +
                               std::to_string(centre) + "] for N=" + std::to_string(N));
    const std::uint64_t p = window.back();
    const std::uint64_t n = N - (m - 3) * p;
    if (n % 2 == 0 || n < 9)
      throw DecompositionError("remainder " + std::to_string(n) + " is not an odd number >= 9");
    auto tern = ternary_decomp(t, n, theta);
    c.N = N;
    c.m = m;
    c.parts = tern.parts;
    c.parts.insert(c.parts.end(), m - 3, p);
    std::sort(c.parts.begin(), c.parts.end());
    c.theta = theta;
    c.window = tern.window;
  }
  c.m = m;
  c.max_deviation = detail::max_deviation(c.parts, N);
  c.bound_type = BoundType::DeltaN;
  c.delta = delta;
  if (!detail::within_delta(c.max_deviation, m, N, delta))
    throw DecompositionError("decomposition of " + std::to_string(N) + " misses the delta bound " + delta.str() +
                             " (max |m q - N| = " + std::to_string(c.max_deviation) + ")");
  return c;
}

// delta = eps / (m (m + 2 + eps)): the closeness that forces every part into (p, p + lambda p).
inline Rational window_delta(std::uint64_t m, const Rational& eps) {
  return Rational::make(eps.num, m * ((m + 2) * eps.den + eps.num));
}

// p < q_i < p + lambda p for every part.
inline bool parts_inside_interval(const DecompCertificate& c, std::uint64_t p, const Lambda& lambda) {
  return std::all_of(c.parts.begin(), c.parts.end(), [&](std::uint64_t q) {
    return q > p && lambda.den * q < (lambda.num + lambda.den) * p;
  });
}

// ---------------------------------------------------------------------------
// S_n = <all primes >= p_n>

struct SnProfile {
  std::uint64_t n = 0;
  std::uint64_t p_n = 0;
  std::uint64_t truncation = 0;  // generators used: primes in [p_n, truncation]
  std::int64_t f_n = 0;
  bool certificate_ok = false;   // f_n <= truncation
  std::vector<std::uint64_t> generators;
  AperyProfile profile;
};

// Primes above the truncation exceed f and are already members once
// f <= truncation, so the truncated semigroup equals S_n. Starts at
// 4 p_n + 2n and doubles until that certificate holds.
inline SnProfile sn_frobenius(const PrimeTable& t, std::uint64_t n, std::uint64_t start = 0) {
  SnProfile s;
  s.n = n;
  s.p_n = t.nth(n);
  std::uint64_t B = start != 0 ? start : 4 * s.p_n + 2 * n;
  for (;;) {
    if (B > t.limit())
      throw RangeError("S_" + std::to_string(n) + " needs primes up to " + std::to_string(B) +
                       ", beyond sieve limit " + std::to_string(t.limit()));
    s.generators = primes_in(t, s.p_n, B);
    s.profile = apery_set(normalize_generators(s.generators));
    s.f_n = s.profile.frobenius;
    if (s.f_n <= static_cast<std::int64_t>(B)) break;
    B = detail::checked_mul(B, 2);
  }
  s.truncation = B;
  s.certificate_ok = true;
  return s;
}

// Sieve limit that covers S_n for every n <= n_max, including one doubling.
inline std::uint64_t sn_required_limit(std::uint64_t n_max) {
  return 2 * (4 * nth_prime_upper_estimate(n_max) + 2 * n_max);
}

inline std::uint64_t sn_max_atom(const SnProfile& s) {
  auto at = atoms(s.profile, normalize_generators(s.generators));
  return at.atoms.back();
}

struct Table3Row {
  std::uint64_t n = 0;
  std::uint64_t p_n = 0;
  std::int64_t f_n = 0;
  bool f_odd = false;
  std::int64_t gap_to_3p = 0;  // f_{n+1} - 3 p_n
  bool gap_ok = false;         // 0 < f_{n+1} - 3 p_n < 2n

  bool pass() const { return f_odd && gap_ok; }
};

inline std::vector<Table3Row> table3_scan(const PrimeTable& t, std::uint64_t n_lo, std::uint64_t n_hi,
                                          unsigned threads = default_threads()) {
  if (n_lo < 5) throw DomainError("table3_scan needs n_lo >= 5");
  if (n_hi < n_lo) throw ArgumentError("table3_scan needs n_lo <= n_hi");
  auto f = parallel_map(n_hi - n_lo + 2, threads, [&](std::size_t i) { return sn_frobenius(t, n_lo + i).f_n; });
  std::vector<Table3Row> rows;
  rows.reserve(n_hi - n_lo + 1);
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    Table3Row r;
    r.n = n;
    r.p_n = t.nth(n);
    r.f_n = f[n - n_lo];
    r.f_odd = r.f_n % 2 != 0;
    r.gap_to_3p = f[n - n_lo + 1] - 3 * static_cast<std::int64_t>(r.p_n);
    r.gap_ok = r.gap_to_3p > 0 && r.gap_to_3p < static_cast<std::int64_t>(2 * n);
    rows.push_back(r);
  }
  return rows;
}

struct Lemma41Result {
  std::uint64_t n = 0;
  std::uint64_t start = 0;  // first odd N >= 3 p_n + 2n
  std::uint64_t checked = 0;
  std::optional<std::uint64_t> first_failure;

  bool ok() const { return !first_failure.has_value(); }
  explicit operator bool() const { return ok(); }
};

// Are the first `count` odd N >= 3 p_n + 2n all in S_{n+1}?
inline Lemma41Result lemma41_scan(const PrimeTable& t, std::uint64_t n, std::uint64_t count) {
  const auto s = sn_frobenius(t, n + 1);
  Lemma41Result r;
  r.n = n;
  r.start = 3 * t.nth(n) + 2 * n;
  if (r.start % 2 == 0) ++r.start;
  for (std::uint64_t k = 0; k < count; ++k, ++r.checked) {
    const std::uint64_t N = r.start + 2 * k;
    if (!contains(s.profile, static_cast<std::int64_t>(N))) {
      r.first_failure = N;
      break;
    }
  }
  return r;
}

// Even N in [2p, 4p] outside S(p).
inline std::vector<std::uint64_t> exceptional_evens(const PrimeTable& t, std::uint64_t p) {
  if (4 * p > t.limit()) throw RangeError("exceptional_evens needs 4p within the sieve");
  if (!t.is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  const auto ls = build(t, p, Lambda::make(1, 1));
  std::vector<std::uint64_t> out;
  for (std::uint64_t N = 2 * p; N <= 4 * p; N += 2)
    if (!contains(ls.profile, static_cast<std::int64_t>(N))) out.push_back(N);
  return out;
}

}  // namespace sgprime
