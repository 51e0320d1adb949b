#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "ptab/rational.hpp"

namespace ptab {

enum class NumericMode { exact, floating };

inline const char* to_string(NumericMode m) {
  return m == NumericMode::exact ? "exact" : "float";
}

/// Default float-mode comparison tolerance for tables.
inline constexpr double kDefaultTolerance = 1e-9;

/// Uniform interface over the two scalar modes: exact rationals compare
/// exactly and ignore the tolerance argument, doubles compare within it.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr NumericMode mode = NumericMode::exact;

  static bool is_zero(const Rational& v, double) { return v == 0; }
  static bool equal(const Rational& a, const Rational& b, double) {
    return a == b;
  }
  // Strictly less, beyond tolerance (exact: plain <).
  static bool less(const Rational& a, const Rational& b, double) {
    return a < b;
  }
  static double to_double(const Rational& v) { return rational_to_double(v); }
  static std::string str(const Rational& v) { return format_rational(v); }
  static Rational from_int(long long n) { return Rational(n); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr NumericMode mode = NumericMode::floating;

  static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
  static bool equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
  }
  static bool less(double a, double b, double tol) { return a < b - tol; }
  static double to_double(double v) { return v; }
  static std::string str(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
  static double from_int(long long n) { return static_cast<double>(n); }
};

template <class S>
bool scalar_is_zero(const S& v, double tol) {
  return scalar_traits<S>::is_zero(v, tol);
}

template <class S>
bool scalar_equal(const S& a, const S& b, double tol) {
  return scalar_traits<S>::equal(a, b, tol);
}

template <class S>
bool scalar_less(const S& a, const S& b, double tol) {
  return scalar_traits<S>::less(a, b, tol);
}

template <class S>
double scalar_to_double(const S& v) {
  return scalar_traits<S>::to_double(v);
}

template <class S>
std::string scalar_str(const S& v) {
  return scalar_traits<S>::str(v);
}

/// |a - b| as a double, for residual reporting in either mode.
template <class S>
double abs_diff(const S& a, const S& b) {
  return std::abs(scalar_to_double(S(a - b)));
}

}  // namespace ptab
