#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "ptab/errors.hpp"

namespace ptab {

// Arbitrary-precision rational, kept in lowest terms with positive
// denominator by the backend.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string format_rational(const Rational& v) { return v.str(); }

inline double rational_to_double(const Rational& v) {
  return v.convert_to<double>();
}

namespace detail {

inline bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace detail

/// Parses "num", "+num", "-num" or "num/den" into a rational.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!detail::is_integer_token(text))
      throw SyntaxError("invalid rational literal '" + std::string(text) + "'");
    return Rational(BigInt(std::string(text)));
  }
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = text.substr(slash + 1);
  if (!detail::is_integer_token(num) || !detail::is_integer_token(den))
    throw SyntaxError("invalid rational literal '" + std::string(text) + "'");
  BigInt d(std::string(den));
  if (d == 0)
    throw SyntaxError("zero denominator in '" + std::string(text) + "'");
  return Rational(BigInt(std::string(num)), d);
}

/// Nearest small-denominator rational within `tol` of `v`, found by walking
/// the continued-fraction convergents of v.
inline Rational snap_to_rational(double v, double tol,
                                 std::int64_t max_denominator = 1000000000) {
  if (!std::isfinite(v))
    throw ValidationError("cannot snap non-finite value to a rational");
  const bool negative = v < 0;
  double x = negative ? -v : v;

  std::int64_t p_prev = 1, q_prev = 0;  // convergent h_{-1}/k_{-1}
  std::int64_t p = static_cast<std::int64_t>(std::floor(x));
  std::int64_t q = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double approx = static_cast<double>(p) / static_cast<double>(q);
    if (std::abs(approx - x) <= tol) {
      Rational r(p, q);
      return negative ? Rational(-r) : r;
    }
    if (frac <= 0) break;
    const double inv = 1.0 / frac;
    const double whole = std::floor(inv);
    if (whole > static_cast<double>(max_denominator)) break;
    const std::int64_t a = static_cast<std::int64_t>(whole);
    frac = inv - whole;
    const std::int64_t p_next = a * p + p_prev;
    const std::int64_t q_next = a * q + q_prev;
    if (q_next > max_denominator) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  throw ValidationError("no rational with denominator <= " +
                        std::to_string(max_denominator) + " within " +
                        std::to_string(tol) + " of " + std::to_string(v));
}

}  // namespace ptab
