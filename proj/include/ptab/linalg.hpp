#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ptab/matrix.hpp"
#include "ptab/rational.hpp"

namespace ptab {

/// Pivot rows/cols found by elimination, both sorted ascending.
struct PivotSet {
  std::vector<int> rows;
  std::vector<int> cols;
  int rank() const { return static_cast<int>(rows.size()); }
};

namespace detail {

/// Clears denominators row by row; row scaling changes neither the rank nor
/// the pivot pattern.
inline Matrix<BigInt> clear_denominators(const Matrix<Rational>& m) {
  Matrix<BigInt> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    BigInt row_lcm = 1;
    for (int j = 0; j < m.cols(); ++j)
      row_lcm = lcm(row_lcm, denominator(m(i, j)));
    for (int j = 0; j < m.cols(); ++j)
      out(i, j) = numerator(m(i, j)) * (row_lcm / denominator(m(i, j)));
  }
  return out;
}

}  // namespace detail

/// Fraction-free (Bareiss) elimination over the cleared integer matrix.
/// Columns are visited left to right; the pivot in a column is the first
/// remaining row with a nonzero entry, which fixes the output across runs.
inline PivotSet exact_pivots(const Matrix<Rational>& m) {
  Matrix<BigInt> a = detail::clear_denominators(m);
  const int rows = a.rows(), cols = a.cols();
  std::vector<char> used(rows, 0);
  PivotSet pivots;
  BigInt prev = 1;
  for (int col = 0; col < cols; ++col) {
    int pick = -1;
    for (int i = 0; i < rows; ++i)
      if (!used[i] && a(i, col) != 0) {
        pick = i;
        break;
      }
    if (pick < 0) continue;
    for (int i = 0; i < rows; ++i) {
      if (used[i] || i == pick) continue;
      // One-step Bareiss update; the division by the previous pivot is exact
      // (Sylvester's identity).
      for (int j = col + 1; j < cols; ++j)
        a(i, j) = (a(pick, col) * a(i, j) - a(i, col) * a(pick, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(pick, col);
    used[pick] = 1;
    pivots.rows.push_back(pick);
    pivots.cols.push_back(col);
    if (pivots.rank() == std::min(rows, cols)) break;
  }
  std::sort(pivots.rows.begin(), pivots.rows.end());
  return pivots;
}

/// Gaussian elimination with partial pivoting; pivots with magnitude at or
/// below `threshold` are treated as zero. Ties go to the lowest row index.
inline PivotSet float_pivots(const Matrix<double>& m, double threshold) {
  Matrix<double> a = m;
  const int rows = a.rows(), cols = a.cols();
  std::vector<char> used(rows, 0);
  PivotSet pivots;
  for (int col = 0; col < cols; ++col) {
    int pick = -1;
    double best = threshold;
    for (int i = 0; i < rows; ++i)
      if (!used[i] && std::abs(a(i, col)) > best) {
        best = std::abs(a(i, col));
        pick = i;
      }
    if (pick < 0) continue;
    for (int i = 0; i < rows; ++i) {
      if (used[i] || i == pick) continue;
      const double factor = a(i, col) / a(pick, col);
      for (int j = col + 1; j < cols; ++j) a(i, j) -= factor * a(pick, j);
      a(i, col) = 0;
    }
    used[pick] = 1;
    pivots.rows.push_back(pick);
    pivots.cols.push_back(col);
    if (pivots.rank() == std::min(rows, cols)) break;
  }
  std::sort(pivots.rows.begin(), pivots.rows.end());
  return pivots;
}

/// Gauss-Jordan inverse. Exact mode takes the first nonzero pivot; float
/// mode takes the largest magnitude and refuses pivots <= `threshold`.
template <class S>
Matrix<S> inverse(const Matrix<S>& m, double threshold = 0.0) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const int n = m.rows();
  Matrix<S> a = m;
  Matrix<S> inv = Matrix<S>::identity(n);
  for (int col = 0; col < n; ++col) {
    int pick = -1;
    if constexpr (scalar_traits<S>::is_exact) {
      for (int i = col; i < n; ++i)
        if (a(i, col) != S(0)) {
          pick = i;
          break;
        }
    } else {
      double best = threshold;
      for (int i = col; i < n; ++i)
        if (std::abs(scalar_to_double(a(i, col))) > best) {
          best = std::abs(scalar_to_double(a(i, col)));
          pick = i;
        }
    }
    if (pick < 0) throw SingularBasis("matrix is singular");
    if (pick != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pick, j));
        std::swap(inv(col, j), inv(pick, j));
      }
    }
    const S pivot = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / pivot;
      inv(col, j) = inv(col, j) / pivot;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const S factor = a(i, col);
      if constexpr (scalar_traits<S>::is_exact) {
        if (factor == S(0)) continue;
      }
      for (int j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

inline std::vector<double> singular_values(const Matrix<double>& m) {
  Eigen::MatrixXd em(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) em(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

/// Default float-mode rank cutoff: max(L, M) * eps * sigma_max.
inline double default_rank_threshold(int rows, int cols, double sigma_max) {
  return std::max(rows, cols) * std::numeric_limits<double>::epsilon() * sigma_max;
}

}  // namespace ptab
