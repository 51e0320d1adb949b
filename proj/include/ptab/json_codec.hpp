#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ptab/matrix.hpp"
#include "ptab/scalar.hpp"

namespace ptab {

using Json = nlohmann::ordered_json;

// Scalar encoding shared by every file format: exact values are "num/den"
// strings, float values are JSON numbers.

inline Json scalar_to_json(const Rational& v) { return format_rational(v); }
inline Json scalar_to_json(double v) { return v; }

template <class S>
S scalar_from_json(const Json& j, const std::string& context);

template <>
inline Rational scalar_from_json<Rational>(const Json& j, const std::string& context) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw SyntaxError(context + ": exact-mode entry must be a rational string");
}

template <>
inline double scalar_from_json<double>(const Json& j, const std::string& context) {
  if (j.is_number()) return j.get<double>();
  throw SyntaxError(context + ": float-mode entry must be a number");
}

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Json vector_to_json(const std::vector<S>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class S>
Matrix<S> matrix_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty())
    throw SyntaxError(context + ": expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) throw SyntaxError(context + ": rows must be arrays");
  const int cols = static_cast<int>(j[0].size());
  Matrix<S> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw ValidationError(context + ": row " + std::to_string(i) + " has " +
                            std::to_string(j[i].size()) + " entries, expected " +
                            std::to_string(cols));
    for (int k = 0; k < cols; ++k)
      m(i, k) = scalar_from_json<S>(j[i][k], context + "[" + std::to_string(i) + "][" +
                                                 std::to_string(k) + "]");
  }
  return m;
}

template <class S>
std::vector<S> vector_from_json(const Json& j, const std::string& context) {
  if (!j.is_array()) throw SyntaxError(context + ": expected an array");
  std::vector<S> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(scalar_from_json<S>(j[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace ptab
