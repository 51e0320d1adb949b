#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ptab/matrix.hpp"
#include "ptab/scalar.hpp"

namespace ptab {

struct Measurement {
  std::string name;
  std::vector<std::string> outcomes;

  bool operator==(const Measurement&) const = default;
};

/// Partition of the global outcome rows 0..L-1 into named measurements.
class MeasurementLayout {
 public:
  MeasurementLayout() = default;
  explicit MeasurementLayout(std::vector<Measurement> measurements)
      : measurements_(std::move(measurements)) {
    if (measurements_.empty())
      throw ValidationError("table needs at least one measurement");
    std::unordered_set<std::string> seen;
    for (std::size_t m = 0; m < measurements_.size(); ++m) {
      const auto& meas = measurements_[m];
      require_name(meas.name, "measurement");
      if (!seen.insert(meas.name).second)
        throw ValidationError("duplicate measurement name '" + meas.name + "'");
      if (meas.outcomes.empty())
        throw ValidationError("measurement '" + meas.name + "' has no outcomes");
      std::unordered_set<std::string> outcome_seen;
      first_row_.push_back(static_cast<int>(row_measurement_.size()));
      for (const auto& outcome : meas.outcomes) {
        require_name(outcome, "outcome");
        if (!outcome_seen.insert(outcome).second)
          throw ValidationError("duplicate outcome '" + outcome +
                                "' in measurement '" + meas.name + "'");
        row_measurement_.push_back(static_cast<int>(m));
      }
    }
  }

  int total_outcomes() const { return static_cast<int>(row_measurement_.size()); }
  int measurement_count() const { return static_cast<int>(measurements_.size()); }
  const Measurement& measurement(int m) const { return measurements_[m]; }
  const std::vector<Measurement>& measurements() const { return measurements_; }

  int measurement_of(int row) const { return row_measurement_[row]; }
  int first_row(int m) const { return first_row_[m]; }
  std::vector<int> rows_of(int m) const {
    std::vector<int> out;
    const int count = static_cast<int>(measurements_[m].outcomes.size());
    for (int i = 0; i < count; ++i) out.push_back(first_row_[m] + i);
    return out;
  }

  /// (measurement index, local outcome index) of a global row.
  std::pair<int, int> locate(int row) const {
    const int m = row_measurement_[row];
    return {m, row - first_row_[m]};
  }

  const std::string& outcome_name(int row) const {
    const auto [m, local] = locate(row);
    return measurements_[m].outcomes[local];
  }

  int find_measurement(const std::string& name) const {
    for (std::size_t m = 0; m < measurements_.size(); ++m)
      if (measurements_[m].name == name) return static_cast<int>(m);
    return -1;
  }

  bool operator==(const MeasurementLayout& rhs) const {
    return measurements_ == rhs.measurements_;
  }

  static void require_name(const std::string& name, const char* kind) {
    if (name.empty())
      throw ValidationError(std::string(kind) + " name must not be empty");
    if (name.find(',') != std::string::npos || name.find('\n') != std::string::npos ||
        name.find('\r') != std::string::npos)
      throw ValidationError(std::string(kind) + " name '" + name +
                            "' contains a comma or line break");
  }

 private:
  std::vector<Measurement> measurements_;
  std::vector<int> row_measurement_;
  std::vector<int> first_row_;
};

/// Immutable L x M probability table; rows grouped into measurements,
/// columns indexed by states. Validates on construction.
template <class S>
class BasicTable {
 public:
  static constexpr NumericMode mode = scalar_traits<S>::mode;

  BasicTable(MeasurementLayout layout, std::vector<std::string> state_names,
             Matrix<S> entries, double tolerance = kDefaultTolerance)
      : layout_(std::move(layout)),
        state_names_(std::move(state_names)),
        entries_(std::move(entries)),
        tolerance_(tolerance) {
    validate();
  }

  int outcome_rows() const { return entries_.rows(); }  // L
  int state_count() const { return entries_.cols(); }   // M

  const MeasurementLayout& layout() const { return layout_; }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::string& state_name(int j) const { return state_names_[j]; }
  int find_state(const std::string& name) const {
    for (std::size_t j = 0; j < state_names_.size(); ++j)
      if (state_names_[j] == name) return static_cast<int>(j);
    return -1;
  }

  const Matrix<S>& entries() const { return entries_; }
  const S& entry(int i, int j) const { return entries_(i, j); }
  double tolerance() const { return tolerance_; }

  /// New table with one extra state column: the convex combination of the
  /// referenced columns. Weights must be nonnegative and sum to one.
  BasicTable add_mixture_state(const std::vector<std::pair<int, S>>& weights,
                               std::string name = "") const {
    if (weights.empty()) throw InvalidWeights("mixture needs at least one weight");
    S total(0);
    for (const auto& [index, w] : weights) {
      if (index < 0 || index >= state_count())
        throw InvalidWeights("mixture references state index " + std::to_string(index) +
                             " outside 0.." + std::to_string(state_count() - 1));
      if (scalar_less(w, S(0), tolerance_))
        throw InvalidWeights("mixture weight for state '" + state_names_[index] +
                             "' is negative");
      total += w;
    }
    if (!scalar_equal(total, S(1), tolerance_ * weights.size()))
      throw InvalidWeights("mixture weights sum to " + scalar_str(total) + ", expected 1");

    Matrix<S> extended(entries_.rows(), entries_.cols() + 1);
    for (int i = 0; i < entries_.rows(); ++i)
      for (int j = 0; j < entries_.cols(); ++j) extended(i, j) = entries_(i, j);
    for (int i = 0; i < entries_.rows(); ++i) {
      S acc(0);
      for (const auto& [index, w] : weights) acc += w * entries_(i, index);
      extended(i, entries_.cols()) = acc;
    }

    std::vector<std::string> names = state_names_;
    names.push_back(name.empty() ? fresh_mixture_name() : std::move(name));
    return BasicTable(layout_, std::move(names), std::move(extended), tolerance_);
  }

  bool operator==(const BasicTable& rhs) const {
    return layout_ == rhs.layout_ && state_names_ == rhs.state_names_ &&
           entries_ == rhs.entries_;
  }

 private:
  std::string fresh_mixture_name() const {
    for (int k = 1;; ++k) {
      std::string candidate = "mix" + std::to_string(k);
      if (find_state(candidate) < 0) return candidate;
    }
  }

  void validate() {
    if (layout_.total_outcomes() != entries_.rows())
      throw ValidationError("layout declares " + std::to_string(layout_.total_outcomes()) +
                            " outcome rows but the matrix has " +
                            std::to_string(entries_.rows()));
    if (static_cast<int>(state_names_.size()) != entries_.cols())
      throw ValidationError("table names " + std::to_string(state_names_.size()) +
                            " states but the matrix has " +
                            std::to_string(entries_.cols()) + " columns");
    if (entries_.cols() == 0) throw ValidationError("table has no states");
    if (tolerance_ < 0) throw ValidationError("tolerance must be nonnegative");

    std::unordered_set<std::string> seen;
    for (const auto& name : state_names_) {
      MeasurementLayout::require_name(name, "state");
      if (!seen.insert(name).second)
        throw ValidationError("duplicate state name '" + name + "'");
    }

    for (int i = 0; i < entries_.rows(); ++i) {
      const auto [m, local] = layout_.locate(i);
      for (int j = 0; j < entries_.cols(); ++j) {
        S& v = entries_(i, j);
        if constexpr (!scalar_traits<S>::is_exact) {
          // Measurement data carries rounding noise; values within tolerance
          // of the valid range are clamped rather than rejected.
          if (v > 1.0 && v <= 1.0 + tolerance_) v = 1.0;
          if (v < 0.0 && v >= -tolerance_) v = 0.0;
          if (!std::isfinite(v))
            throw ValidationError(entry_context(i, j) + " is not finite");
        }
        if (scalar_less(v, S(0), 0.0) || scalar_less(S(1), v, 0.0))
          throw ValidationError(entry_context(i, j) + " = " + scalar_str(v) +
                                " lies outside [0, 1]");
      }
    }

    for (int m = 0; m < layout_.measurement_count(); ++m) {
      const auto rows = layout_.rows_of(m);
      for (int j = 0; j < entries_.cols(); ++j) {
        S sum(0);
        for (int i : rows) sum += entries_(i, j);
        const double column_tol = tolerance_ * static_cast<double>(rows.size());
        if (!scalar_equal(sum, S(1), column_tol))
          throw ValidationError("column " + state_names_[j] + " of measurement " +
                                layout_.measurement(m).name + " sums to " +
                                scalar_str(sum));
      }
    }
  }

  std::string entry_context(int i, int j) const {
    const auto [m, local] = layout_.locate(i);
    return "entry (" + layout_.measurement(m).name + "/" +
           layout_.measurement(m).outcomes[local] + ", " + state_names_[j] + ")";
  }

  MeasurementLayout layout_;
  std::vector<std::string> state_names_;
  Matrix<S> entries_;
  double tolerance_;
};

using ExactTable = BasicTable<Rational>;
using FloatTable = BasicTable<double>;

inline FloatTable to_float(const ExactTable& t, double tolerance = kDefaultTolerance) {
  Matrix<double> entries(t.outcome_rows(), t.state_count());
  for (int i = 0; i < t.outcome_rows(); ++i)
    for (int j = 0; j < t.state_count(); ++j)
      entries(i, j) = rational_to_double(t.entry(i, j));
  return FloatTable(t.layout(), t.state_names(), std::move(entries), tolerance);
}

/// Converts a float table to exact mode by snapping every entry to a nearby
/// small-denominator rational.
inline ExactTable snap_to_exact(const FloatTable& t, double snap_tolerance = 1e-9) {
  Matrix<Rational> entries(t.outcome_rows(), t.state_count());
  for (int i = 0; i < t.outcome_rows(); ++i)
    for (int j = 0; j < t.state_count(); ++j)
      entries(i, j) = snap_to_rational(t.entry(i, j), snap_tolerance);
  return ExactTable(t.layout(), t.state_names(), std::move(entries));
}

}  // namespace ptab
