#pragma once

// Numerical semigroups from a finite generator list. Everything is derived
// from the Apery set with respect to the multiplicity m: apery[r] is the least
// element of S congruent to r mod m.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace sgprime {

inline constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();

class GeneratorSet {
 public:
  std::uint64_t multiplicity() const { return generators_.front(); }
  std::span<const std::uint64_t> generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  friend GeneratorSet normalize_generators(std::span<const std::uint64_t> raw);

 private:
  explicit GeneratorSet(std::vector<std::uint64_t> g) : generators_(std::move(g)) {}
  std::vector<std::uint64_t> generators_;
};

// Sorts and deduplicates; rejects empty input, elements below 2 and gcd > 1.
inline GeneratorSet normalize_generators(std::span<const std::uint64_t> raw) {
  if (raw.empty()) throw ArgumentError("generator list is empty");
  std::vector<std::uint64_t> g(raw.begin(), raw.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.front() < 2) throw ArgumentError("generators must be >= 2, got " + std::to_string(g.front()));
  std::uint64_t d = 0;
  for (auto x : g) d = std::gcd(d, x);
  if (d != 1)
    throw DomainError("not a numerical semigroup: gcd of generators is " + std::to_string(d) +
                      " (Frobenius number is infinite)");
  return GeneratorSet(std::move(g));
}

inline GeneratorSet normalize_generators(std::initializer_list<std::uint64_t> raw) {
  return normalize_generators(std::span<const std::uint64_t>(raw.begin(), raw.size()));
}

struct AperyProfile {
  std::uint64_t multiplicity = 0;
  std::vector<std::uint64_t> apery;
  std::int64_t frobenius = 0;
  std::uint64_t genus = 0;
};

// Incremental Apery-set construction (round-robin over residue classes).
// Generators may arrive in any order; after each add_generator() the table is the Apery set of the semigroup generated so
// far, which is what lets a lambda scan reuse one build for every prefix.
class AperyBuilder {
 public:
  explicit AperyBuilder(std::uint64_t multiplicity) : m_(multiplicity), apery_(multiplicity, kUnreached) {
    if (multiplicity < 2) throw ArgumentError("multiplicity must be >= 2");
    apery_[0] = 0;
    unreached_ = m_ - 1;
  }

  std::uint64_t multiplicity() const { return m_; }

  void add_generator(std::uint64_t a) {
    if (a < m_) throw ArgumentError("generator " + std::to_string(a) + " below multiplicity " + std::to_string(m_));
    const std::uint64_t step = a % m_;
    if (step == 0) return;
    const std::uint64_t d = std::gcd(step, m_);
    const std::uint64_t cycle = m_ / d;
    for (std::uint64_t start = 0; start < d; ++start) {
      // Begin each cycle at its minimum so one lap settles every entry.
      std::uint64_t best = kUnreached, r = start, at = start;
      for (std::uint64_t i = 0; i < cycle; ++i) {
        if (apery_[r] < best) {
          best = apery_[r];
          at = r;
        }
        r += step;
        if (r >= m_) r -= m_;
      }
      if (best == kUnreached) continue;
      std::uint64_t cur = best;
      r = at;
      for (std::uint64_t i = 1; i < cycle; ++i) {
        std::uint64_t next;
        if (__builtin_add_overflow(cur, a, &next) || next == kUnreached)
          throw ArithmeticError("Apery value overflows 64 bits");
        r += step;
        if (r >= m_) r -= m_;
        if (next < apery_[r]) {
          if (apery_[r] == kUnreached) --unreached_;
          apery_[r] = next;
        } else {
          next = apery_[r];
        }
        cur = next;
      }
    }
  }

  // True once every residue class is reached (gcd of generators is 1).
  bool complete() const { return unreached_ == 0; }

  std::uint64_t max_element() const { return *std::max_element(apery_.begin(), apery_.end()); }

  // Frobenius number of the current semigroup; requires complete().
  std::int64_t frobenius() const {
    if (!complete()) throw DomainError("generators so far have gcd > 1");
    return static_cast<std::int64_t>(max_element()) - static_cast<std::int64_t>(m_);
  }

  std::span<const std::uint64_t> apery() const { return apery_; }

  AperyProfile profile() const {
    if (!complete()) throw DomainError("generators so far have gcd > 1");
    AperyProfile out;
    out.multiplicity = m_;
    out.apery = apery_;
    out.frobenius = frobenius();
    for (std::uint64_t r = 1; r < m_; ++r) out.genus += apery_[r] / m_;
    return out;
  }

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> apery_;
  std::uint64_t unreached_ = 0;
};

inline AperyProfile apery_set(const GeneratorSet& gens) {
  AperyBuilder builder(gens.multiplicity());
  auto g = gens.generators();
  // Once every generator still to come exceeds the largest Apery element it
  // is already a member, so the remaining ones change nothing.
  std::uint64_t ceiling = kUnreached;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g[i] > ceiling) break;
    builder.add_generator(g[i]);
    if (i % 32 == 0 && builder.complete()) ceiling = builder.max_element();
  }
  return builder.profile();
}

inline bool contains(const AperyProfile& ap, std::int64_t n) {
  if (n < 0) return false;
  auto u = static_cast<std::uint64_t>(n);
  return u >= ap.apery[u % ap.multiplicity];
}

inline std::vector<std::uint64_t> gaps(const AperyProfile& ap) {
  std::vector<std::uint64_t> out;
  out.reserve(ap.genus);
  for (std::uint64_t r = 1; r < ap.multiplicity; ++r)
    for (std::uint64_t x = r; x < ap.apery[r]; x += ap.multiplicity) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

struct SporadicElements {
  std::uint64_t count = 0;  // 1 + f - g, counting 0
  std::vector<std::uint64_t> elements;
};

// `below` defaults to f, i.e. exactly the sporadic elements.
inline SporadicElements sporadic_elements(const AperyProfile& ap, std::optional<std::uint64_t> below = {}) {
  SporadicElements out;
  out.count = static_cast<std::uint64_t>(1 + ap.frobenius) - ap.genus;
  std::uint64_t limit = below.value_or(static_cast<std::uint64_t>(std::max<std::int64_t>(ap.frobenius, 0)));
  for (std::uint64_t n = 0; n < limit; ++n)
    if (contains(ap, static_cast<std::int64_t>(n))) out.elements.push_back(n);
  return out;
}

struct AtomSet {
  std::vector<std::uint64_t> atoms;
  std::uint64_t embedding_dimension = 0;
};

// A generator is an atom iff it is not a sum of two nonzero elements. Works
// through membership queries, so non-minimal generator lists are handled.
inline AtomSet atoms(const AperyProfile& ap, const GeneratorSet& gens) {
  AtomSet out;
  for (auto g : gens.generators()) {
    bool decomposable = false;
    for (std::uint64_t s = ap.multiplicity; 2 * s <= g && !decomposable; ++s)
      decomposable = contains(ap, static_cast<std::int64_t>(s)) && contains(ap, static_cast<std::int64_t>(g - s));
    if (!decomposable) out.atoms.push_back(g);
  }
  out.embedding_dimension = out.atoms.size();
  return out;
}

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

// Coin-problem reachability over [0, n_max]; independent of the Apery path
// and meant for tests only.
inline std::vector<bool> brute_force_membership(const GeneratorSet& gens, std::uint64_t n_max,
                                                std::uint64_t budget = kDefaultOracleBudget) {
  if (n_max > budget)
    throw RangeError("brute-force oracle budget exceeded: n_max=" + std::to_string(n_max));
  std::vector<bool> reach(n_max + 1, false);
  reach[0] = true;
  for (std::uint64_t n = 1; n <= n_max; ++n)
    for (auto g : gens.generators()) {
      if (g > n) break;
      if (reach[n - g]) {
        reach[n] = true;
        break;
      }
    }
  return reach;
}

}  // namespace sgprime
