#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ptab/json_codec.hpp"
#include "ptab/linalg.hpp"
#include "ptab/table.hpp"

namespace ptab {

template <class S>
struct StateVector {
  std::vector<S> coords;
  std::string label;
  int index = -1;  // column in the originating table, -1 for derived points
};

template <class S>
struct OutcomeVector {
  std::vector<S> coords;
  std::string label;
  int row = -1;  // global outcome row, -1 for derived vectors
};

/// Rank decomposition p = t * u. Rows of t are outcome vectors, columns of u
/// are state vectors; u restricted to pivot_cols equals the basis matrix x.
template <class S>
struct BasicFactorization {
  int K = 0;
  Matrix<S> t;  // L x K
  Matrix<S> u;  // K x M
  Matrix<S> x;  // K x K, nonsingular
  std::vector<int> pivot_rows;
  std::vector<int> pivot_cols;
  Matrix<S> a, b, c;  // blocks of p at the pivot split
  std::vector<std::string> state_names;
  std::vector<std::string> outcome_labels;
  double tolerance = kDefaultTolerance;

  StateVector<S> state(int j) const {
    return {u.col(j), state_names[j], j};
  }
  OutcomeVector<S> outcome(int i) const {
    return {t.row(i), outcome_labels[i], i};
  }
  std::vector<StateVector<S>> states() const {
    std::vector<StateVector<S>> out;
    for (int j = 0; j < u.cols(); ++j) out.push_back(state(j));
    return out;
  }
  std::vector<OutcomeVector<S>> outcomes() const {
    std::vector<OutcomeVector<S>> out;
    for (int i = 0; i < t.rows(); ++i) out.push_back(outcome(i));
    return out;
  }
};

using ExactFactorization = BasicFactorization<Rational>;
using FloatFactorization = BasicFactorization<double>;

/// Rank of the table. Exact mode eliminates fraction-free; float mode counts
/// singular values above tau (default max(L,M) * eps * sigma_max).
template <class S>
int rank_of(const BasicTable<S>& table, std::optional<double> tau = {}) {
  int rank = 0;
  if constexpr (scalar_traits<S>::is_exact) {
    rank = exact_pivots(table.entries()).rank();
  } else {
    const auto sv = singular_values(table.entries());
    const double sigma_max = sv.empty() ? 0.0 : sv.front();
    const double threshold =
        tau.value_or(default_rank_threshold(table.outcome_rows(), table.state_count(), sigma_max));
    for (double s : sv)
      if (s > threshold) ++rank;
  }
  if (rank == 0) throw DegenerateTable("table has rank 0");
  return rank;
}

namespace detail {

inline std::vector<int> complement(int n, const std::vector<int>& chosen) {
  std::vector<char> in(n, 0);
  for (int i : chosen) in[i] = 1;
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

template <class S>
PivotSet table_pivots(const Matrix<S>& m, double threshold) {
  if constexpr (scalar_traits<S>::is_exact)
    return exact_pivots(m);
  else
    return float_pivots(m, threshold);
}

template <class S>
double pivot_threshold(const BasicTable<S>& table, std::optional<double> tau) {
  if constexpr (scalar_traits<S>::is_exact) {
    return 0.0;
  } else {
    if (tau) return *tau;
    const auto sv = singular_values(table.entries());
    return default_rank_threshold(table.outcome_rows(), table.state_count(),
                                  sv.empty() ? 0.0 : sv.front());
  }
}

template <class S>
std::vector<std::string> outcome_labels_of(const BasicTable<S>& table) {
  std::vector<std::string> labels;
  for (int i = 0; i < table.outcome_rows(); ++i) {
    const auto [m, local] = table.layout().locate(i);
    labels.push_back(table.layout().measurement(m).name + "/" +
                     table.layout().measurement(m).outcomes[local]);
  }
  return labels;
}

}  // namespace detail

/// Decomposes p = t * u with the chosen basis matrix x (default identity):
/// t = (a x^-1 ; c x^-1) and u = (x | x a^-1 b), re-dispersed to the original
/// row/column order. `basis_states` forces the pivot columns, in the given
/// order, so those states become the columns of x.
template <class S>
BasicFactorization<S> factorize(const BasicTable<S>& table,
                                std::optional<Matrix<S>> basis_matrix = {},
                                std::optional<std::vector<int>> basis_states = {},
                                std::optional<double> tau = {}) {
  const int L = table.outcome_rows();
  const int M = table.state_count();
  const int K = rank_of(table, tau);
  const double threshold = detail::pivot_threshold(table, tau);

  std::vector<int> pivot_rows, pivot_cols;
  if (basis_states) {
    for (int j : *basis_states)
      if (j < 0 || j >= M)
        throw SingularBasis("basis state index " + std::to_string(j) + " out of range");
    if (static_cast<int>(basis_states->size()) != K)
      throw SingularBasis("basis needs exactly K=" + std::to_string(K) + " states, got " +
                          std::to_string(basis_states->size()));
    std::vector<int> all_rows(L);
    for (int i = 0; i < L; ++i) all_rows[i] = i;
    const auto piv = detail::table_pivots(table.entries().select(all_rows, *basis_states),
                                          threshold);
    if (piv.rank() != K)
      throw SingularBasis("selected basis states are linearly dependent (rank " +
                          std::to_string(piv.rank()) + " < " + std::to_string(K) + ")");
    pivot_rows = piv.rows;
    pivot_cols = *basis_states;
  } else {
    const auto piv = detail::table_pivots(table.entries(), threshold);
    if (piv.rank() != K)
      throw InconsistentRank("pivoting found " + std::to_string(piv.rank()) +
                             " pivots but the rank is " + std::to_string(K));
    pivot_rows = piv.rows;
    pivot_cols = piv.cols;
  }

  Matrix<S> x = basis_matrix ? std::move(*basis_matrix) : Matrix<S>::identity(K);
  if (x.rows() != K || x.cols() != K)
    throw DimensionMismatch("basis matrix must be " + std::to_string(K) + "x" +
                            std::to_string(K));
  Matrix<S> x_inv;
  try {
    x_inv = inverse(x, threshold);
  } catch (const SingularBasis&) {
    throw SingularBasis("basis matrix x is singular");
  }

  const auto comp_rows = detail::complement(L, pivot_rows);
  const auto comp_cols = detail::complement(M, pivot_cols);
  BasicFactorization<S> f;
  f.K = K;
  f.pivot_rows = pivot_rows;
  f.pivot_cols = pivot_cols;
  f.a = table.entries().select(pivot_rows, pivot_cols);
  f.b = table.entries().select(pivot_rows, comp_cols);
  f.c = table.entries().select(comp_rows, pivot_cols);
  f.x = x;
  f.tolerance = table.tolerance();
  f.state_names = table.state_names();
  f.outcome_labels = detail::outcome_labels_of(table);

  const Matrix<S> a_inv = inverse(f.a, threshold);
  const Matrix<S> v = f.a * x_inv;
  const Matrix<S> w = f.c * x_inv;
  const Matrix<S> y = x * (a_inv * f.b);

  f.t = Matrix<S>(L, K);
  for (int k = 0; k < K; ++k) f.t.set_row(pivot_rows[k], v.row(k));
  for (std::size_t k = 0; k < comp_rows.size(); ++k)
    f.t.set_row(comp_rows[k], w.row(static_cast<int>(k)));

  f.u = Matrix<S>(K, M);
  for (int k = 0; k < K; ++k) f.u.set_col(pivot_cols[k], x.col(k));
  for (std::size_t k = 0; k < comp_cols.size(); ++k)
    f.u.set_col(comp_cols[k], y.col(static_cast<int>(k)));

  return f;
}

/// Variant fixing the representatives of the pivot outcomes instead: rows of
/// t at the pivot rows become the rows of `outcome_matrix` (default identity).
template <class S>
BasicFactorization<S> factorize_by_outcomes(const BasicTable<S>& table,
                                            std::optional<Matrix<S>> outcome_matrix = {},
                                            std::optional<std::vector<int>> basis_outcomes = {},
                                            std::optional<double> tau = {}) {
  const int L = table.outcome_rows();
  const int M = table.state_count();
  const int K = rank_of(table, tau);
  const double threshold = detail::pivot_threshold(table, tau);

  std::vector<int> pivot_rows, pivot_cols;
  if (basis_outcomes) {
    for (int i : *basis_outcomes)
      if (i < 0 || i >= L)
        throw SingularBasis("basis outcome index " + std::to_string(i) + " out of range");
    if (static_cast<int>(basis_outcomes->size()) != K)
      throw SingularBasis("basis needs exactly K=" + std::to_string(K) + " outcomes, got " +
                          std::to_string(basis_outcomes->size()));
    std::vector<int> all_cols(M);
    for (int j = 0; j < M; ++j) all_cols[j] = j;
    const auto piv = detail::table_pivots(table.entries().select(*basis_outcomes, all_cols),
                                          threshold);
    if (piv.rank() != K)
      throw SingularBasis("selected basis outcomes are linearly dependent (rank " +
                          std::to_string(piv.rank()) + " < " + std::to_string(K) + ")");
    pivot_rows = *basis_outcomes;
    pivot_cols = piv.cols;
  } else {
    const auto piv = detail::table_pivots(table.entries(), threshold);
    if (piv.rank() != K)
      throw InconsistentRank("pivoting found " + std::to_string(piv.rank()) +
                             " pivots but the rank is " + std::to_string(K));
    pivot_rows = piv.rows;
    pivot_cols = piv.cols;
  }

  Matrix<S> v = outcome_matrix ? std::move(*outcome_matrix) : Matrix<S>::identity(K);
  if (v.rows() != K || v.cols() != K)
    throw DimensionMismatch("outcome matrix must be " + std::to_string(K) + "x" +
                            std::to_string(K));
  Matrix<S> v_inv;
  try {
    v_inv = inverse(v, threshold);
  } catch (const SingularBasis&) {
    throw SingularBasis("outcome matrix v is singular");
  }

  const auto comp_rows = detail::complement(L, pivot_rows);
  const auto comp_cols = detail::complement(M, pivot_cols);
  BasicFactorization<S> f;
  f.K = K;
  f.pivot_rows = pivot_rows;
  f.pivot_cols = pivot_cols;
  f.a = table.entries().select(pivot_rows, pivot_cols);
  f.b = table.entries().select(pivot_rows, comp_cols);
  f.c = table.entries().select(comp_rows, pivot_cols);
  f.tolerance = table.tolerance();
  f.state_names = table.state_names();
  f.outcome_labels = detail::outcome_labels_of(table);

  const Matrix<S> a_inv = inverse(f.a, threshold);
  f.x = v_inv * f.a;
  const Matrix<S> w = f.c * (a_inv * v);
  const Matrix<S> y = v_inv * f.b;

  f.t = Matrix<S>(L, K);
  for (int k = 0; k < K; ++k) f.t.set_row(pivot_rows[k], v.row(k));
  for (std::size_t k = 0; k < comp_rows.size(); ++k)
    f.t.set_row(comp_rows[k], w.row(static_cast<int>(k)));

  f.u = Matrix<S>(K, M);
  for (int k = 0; k < K; ++k) f.u.set_col(pivot_cols[k], f.x.col(k));
  for (std::size_t k = 0; k < comp_cols.size(); ++k)
    f.u.set_col(comp_cols[k], y.col(static_cast<int>(k)));

  return f;
}

/// Scalar product r . s, the probability of outcome r on state s.
template <class S>
S probability(const OutcomeVector<S>& r, const StateVector<S>& s) {
  if (r.coords.size() != s.coords.size())
    throw DimensionMismatch("outcome vector has dimension " +
                            std::to_string(r.coords.size()) + ", state vector " +
                            std::to_string(s.coords.size()));
  return dot(r.coords, s.coords);
}

template <class S>
Matrix<S> reconstruct(const BasicFactorization<S>& f) {
  return f.t * f.u;
}

template <class S>
Json factorization_to_json(const BasicFactorization<S>& f) {
  Json doc;
  doc["K"] = f.K;
  doc["x"] = matrix_to_json(f.x);
  doc["pivot_rows"] = f.pivot_rows;
  doc["pivot_cols"] = f.pivot_cols;
  doc["t"] = matrix_to_json(f.t);
  doc["u"] = matrix_to_json(f.u);
  return doc;
}

}  // namespace ptab
