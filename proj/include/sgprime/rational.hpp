#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "error.hpp"

namespace sgprime {

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticError("64-bit overflow in addition");
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticError("64-bit overflow in multiplication");
  return out;
}

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ArgumentError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

// Non-negative rational a/b in lowest terms. Used for lambda, epsilon, delta
// and the exact Wilf fractions; every comparison is done by cross-multiplication.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t a, std::uint64_t b) {
    if (b == 0) throw ArgumentError("rational with zero denominator");
    std::uint64_t g = std::gcd(a, b);
    if (g == 0) g = 1;
    return {a / g, b / g};
  }

  // Accepts "a/b" or a plain integer "a".
  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return make(detail::parse_u64(s, "rational"), 1);
    return make(detail::parse_u64(s.substr(0, slash), "numerator"),
                detail::parse_u64(s.substr(slash + 1), "denominator"));
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;

  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    unsigned __int128 l = static_cast<unsigned __int128>(x.num) * y.den;
    unsigned __int128 r = static_cast<unsigned __int128>(y.num) * x.den;
    return l <=> r;
  }
};

// Strictly positive rational; the interval parameter of S_lambda(p).
struct Lambda : Rational {
  static Lambda make(std::uint64_t a, std::uint64_t b) {
    Rational r = Rational::make(a, b);
    if (r.num == 0) throw ArgumentError("lambda must be positive");
    return Lambda{r};
  }
  static Lambda parse(std::string_view s) {
    Rational r = Rational::parse(s);
    if (r.num == 0) throw ArgumentError("lambda must be positive");
    return Lambda{r};
  }
};

// Exact decimal rendering of num/den with `digits` fractional digits,
// rounding half to even. Identical inputs always give identical bytes.
inline std::string format_decimal(std::uint64_t num, std::uint64_t den, int digits = 6) {
  if (den == 0) throw ArgumentError("format_decimal: zero denominator");
  unsigned __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  unsigned __int128 scaled = static_cast<unsigned __int128>(num) * scale;
  unsigned __int128 q = scaled / den;
  unsigned __int128 rem = scaled % den;
  unsigned __int128 twice = rem * 2;
  if (twice > den || (twice == den && (q & 1) != 0)) ++q;

  auto whole = static_cast<std::uint64_t>(q / scale);
  auto frac = static_cast<std::uint64_t>(q % scale);
  std::string out = std::to_string(whole);
  if (digits > 0) {
    std::string f = std::to_string(frac);
    out += '.';
    out.append(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

inline std::string format_decimal(const Rational& r, int digits = 6) {
  return format_decimal(r.num, r.den, digits);
}

}  // namespace sgprime
