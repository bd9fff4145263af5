#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hmatch/error.hpp"

namespace hmatch {

/// Exact rational scalar. GMP keeps it in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Per-edge rational values (weights, fractional matchings, discounts).
using EdgeValues = std::vector<Rational>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Parses "<int>" or "<int>/<int>" with an optional leading sign on the numerator.
/// Floats, whitespace and zero denominators are rejected.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error(Errc::MalformedInput, "not an exact rational: '" + std::string(text) + "'");
  };
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits_only(num_text) || !digits_only(den_text)) return fail();
  Integer num{std::string(num_text)};
  Integer den{std::string(den_text)};
  if (den == 0) return fail();
  if (negative) num = -num;
  return Rational(num, den);
}

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const Integer den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Decimal rendering with `digits` places, rounding half away from zero. Exact.
inline std::string to_fixed(const Rational& r, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = r < 0;
  const Rational mag = negative ? Rational(-r) : r;
  const Integer num = numerator_of(mag) * scale * 2 + denominator_of(mag);
  const Integer rounded = num / (denominator_of(mag) * 2);
  std::string s = rounded.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && rounded != 0) s.insert(0, "-");
  return s;
}

inline Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Rational sum(const EdgeValues& values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

}  // namespace hmatch
