#pragma once

#include <string>
#include <vector>

#include "ptab/matrix.hpp"

namespace ptab {

enum class LpStatus { optimal, infeasible, unbounded };

template <class S>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<S> x;  // structural variables, only meaningful when optimal
  S objective = S(0);
};

namespace detail {

/// Two-phase primal simplex on  min c.x  s.t.  A x = b, x >= 0, with Bland's
/// rule throughout (lowest eligible index enters, ratio ties leave by lowest
/// basis index), which rules out cycling without randomization.
template <class S>
class SimplexTableau {
 public:
  SimplexTableau(const Matrix<S>& A, const std::vector<S>& b, double tol, long max_pivots)
      : m_(A.rows()), n_(A.cols()), tol_(tol), max_pivots_(max_pivots),
        tableau_(A.rows(), A.cols() + A.rows()), rhs_(b), basis_(A.rows()) {
    if (static_cast<int>(b.size()) != m_)
      throw DimensionMismatch("rhs length does not match constraint count");
    for (int i = 0; i < m_; ++i) {
      const bool flip = scalar_less(rhs_[i], S(0), 0.0);
      if (flip) rhs_[i] = -rhs_[i];
      for (int j = 0; j < n_; ++j) tableau_(i, j) = flip ? S(-A(i, j)) : A(i, j);
      tableau_(i, n_ + i) = S(1);
      basis_[i] = n_ + i;
    }
  }

  /// Returns false when the phase-1 optimum stays positive (infeasible).
  bool phase1() {
    std::vector<S> cost(n_ + m_, S(0));
    for (int i = 0; i < m_; ++i) cost[n_ + i] = S(1);
    run(cost, n_ + m_);
    S value(0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_) value += rhs_[i];
    if (!scalar_is_zero(value, tol_ * m_)) return false;
    drive_out_artificials();
    return true;
  }

  void phase2(const std::vector<S>& c) {
    std::vector<S> cost(n_ + m_, S(0));
    for (int j = 0; j < n_; ++j) cost[j] = c[j];
    run(cost, n_);  // artificial columns may not re-enter
  }

  bool unbounded() const { return unbounded_; }

  std::vector<S> solution() const {
    std::vector<S> x(n_, S(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return x;
  }

 private:
  void run(const std::vector<S>& cost, int enter_limit) {
    // Reduced costs for the current basis.
    std::vector<S> reduced(cost);
    for (int i = 0; i < m_; ++i) {
      const S& cb = cost[basis_[i]];
      if (scalar_traits<S>::is_exact && cb == S(0)) continue;
      for (int j = 0; j < n_ + m_; ++j) reduced[j] -= cb * tableau_(i, j);
    }
    unbounded_ = false;
    while (true) {
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j)
        if (scalar_less(reduced[j], S(0), tol_)) {
          enter = j;
          break;
        }
      if (enter < 0) return;  // optimal

      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        if (!scalar_less(S(0), tableau_(i, enter), tol_)) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        const S lhs = rhs_[i] * tableau_(leave, enter);
        const S rhs = rhs_[leave] * tableau_(i, enter);
        if (scalar_less(lhs, rhs, 0.0) ||
            (scalar_equal(lhs, rhs, tol_) && basis_[i] < basis_[leave]))
          leave = i;
      }
      if (leave < 0) {
        unbounded_ = true;
        return;
      }
      pivot(leave, enter, reduced);
      if (++pivots_ > max_pivots_)
        throw SolverFailure("simplex exceeded the pivot budget of " +
                            std::to_string(max_pivots_));
    }
  }

  void pivot(int row, int col, std::vector<S>& reduced) {
    const S p = tableau_(row, col);
    for (int j = 0; j < n_ + m_; ++j) tableau_(row, j) = tableau_(row, j) / p;
    rhs_[row] = rhs_[row] / p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const S factor = tableau_(i, col);
      if (scalar_traits<S>::is_exact && factor == S(0)) continue;
      for (int j = 0; j < n_ + m_; ++j) tableau_(i, j) -= factor * tableau_(row, j);
      rhs_[i] -= factor * rhs_[row];
    }
    const S rfactor = reduced[col];
    if (!(scalar_traits<S>::is_exact && rfactor == S(0)))
      for (int j = 0; j < n_ + m_; ++j) reduced[j] -= rfactor * tableau_(row, j);
    basis_[row] = col;
  }

  /// Pivots basic artificials out on any structural column; rows with no
  /// structural entry are redundant constraints and stay inert.
  void drive_out_artificials() {
    std::vector<S> dummy(n_ + m_, S(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j)
        if (!scalar_is_zero(tableau_(i, j), tol_)) {
          pivot(i, j, dummy);
          break;
        }
    }
  }

  int m_, n_;
  double tol_;
  long max_pivots_;
  long pivots_ = 0;
  Matrix<S> tableau_;
  std::vector<S> rhs_;
  std::vector<int> basis_;
  bool unbounded_ = false;
};

}  // namespace detail

/// min c.x  s.t.  A x = b, x >= 0.
template <class S>
LpResult<S> solve_linear_program(const Matrix<S>& A, const std::vector<S>& b,
                                 const std::vector<S>& c, double tol,
                                 long max_pivots = 200000) {
  if (static_cast<int>(c.size()) != A.cols())
    throw DimensionMismatch("objective length does not match variable count");
  detail::SimplexTableau<S> tab(A, b, tol, max_pivots);
  LpResult<S> result;
  if (!tab.phase1()) {
    result.status = LpStatus::infeasible;
    return result;
  }
  tab.phase2(c);
  if (tab.unbounded()) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.x = tab.solution();
  result.objective = dot(c, result.x);
  return result;
}

/// Feasibility of { A x = b, x >= 0 }.
template <class S>
bool equality_system_feasible(const Matrix<S>& A, const std::vector<S>& b, double tol,
                              long max_pivots = 200000) {
  detail::SimplexTableau<S> tab(A, b, tol, max_pivots);
  return tab.phase1();
}

}  // namespace ptab
