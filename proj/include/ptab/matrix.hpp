#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ptab/errors.hpp"
#include "ptab/scalar.hpp"

namespace ptab {

/// Dense row-major matrix over an exact or floating scalar.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const S& fill = S(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  /// Row-major construction from nested braces, mostly for tests.
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_)
        throw DimensionMismatch("ragged initializer for matrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::vector<S> row(int i) const {
    return std::vector<S>(data_.begin() + static_cast<std::size_t>(i) * cols_,
                          data_.begin() + static_cast<std::size_t>(i + 1) * cols_);
  }
  std::vector<S> col(int j) const {
    std::vector<S> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  void set_row(int i, const std::vector<S>& v) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void set_col(int j, const std::vector<S>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  /// Rows and columns restricted to the given index lists, in list order.
  Matrix select(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    Matrix out(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j)
        out(static_cast<int>(i), static_cast<int>(j)) = (*this)(row_idx[i], col_idx[j]);
    return out;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
      throw DimensionMismatch("matrix product: " + dims_str(*this) + " * " + dims_str(rhs));
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const S& lik = (*this)(i, k);
        if (scalar_traits<S>::is_exact && lik == S(0)) continue;
        for (int j = 0; j < rhs.cols_; ++j) out(i, j) += lik * rhs(k, j);
      }
    return out;
  }

  std::vector<S> operator*(const std::vector<S>& v) const {
    if (cols_ != static_cast<int>(v.size()))
      throw DimensionMismatch("matrix-vector product dimension mismatch");
    std::vector<S> out(rows_, S(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix operator+(const Matrix& rhs) const {
    require_same_shape(rhs);
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
  }
  Matrix operator-(const Matrix& rhs) const {
    require_same_shape(rhs);
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
  }

  bool operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

 private:
  static std::string dims_str(const Matrix& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }
  void require_same_shape(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw DimensionMismatch("matrix shapes differ: " + dims_str(*this) + " vs " + dims_str(rhs));
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("dot product: lengths " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  S acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
std::vector<S> scaled(const std::vector<S>& v, const S& factor) {
  std::vector<S> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

template <class S>
void add_scaled(std::vector<S>& acc, const std::vector<S>& v, const S& factor) {
  if (acc.size() != v.size()) throw DimensionMismatch("add_scaled length mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i] * factor;
}

template <class S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff shape mismatch");
  double worst = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      worst = std::max(worst, abs_diff(a(i, j), b(i, j)));
  return worst;
}

template <class S>
double max_abs_diff(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("max_abs_diff length mismatch");
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, abs_diff(a[i], b[i]));
  return worst;
}

}  // namespace ptab
