#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ptab/factorization.hpp"
#include "ptab/simplex.hpp"

namespace ptab {

/// The vector n with n . s = 1 for every state; equals the outcome-vector sum
/// of every measurement.
template <class S>
struct TrivialVector {
  std::vector<S> n;
};

/// n^T = q^T x^-1 with q the all-ones vector. Also recomputes every
/// measurement's outcome-vector sum and insists it equals n.
template <class S>
TrivialVector<S> trivial_vector(const BasicFactorization<S>& f,
                                const MeasurementLayout& layout) {
  const Matrix<S> x_inv = inverse(f.x);
  std::vector<S> n(f.K, S(0));
  for (int j = 0; j < f.K; ++j)
    for (int k = 0; k < f.K; ++k) n[j] += x_inv(k, j);

  for (int m = 0; m < layout.measurement_count(); ++m) {
    std::vector<S> sum(f.K, S(0));
    for (int i : layout.rows_of(m))
      for (int k = 0; k < f.K; ++k) sum[k] += f.t(i, k);
    for (int k = 0; k < f.K; ++k)
      if (!scalar_equal(sum[k], n[k], f.tolerance * layout.measurement(m).outcomes.size()))
        throw InconsistentTable("outcome vectors of measurement '" +
                                layout.measurement(m).name +
                                "' do not sum to the trivial-measurement vector "
                                "(component " + std::to_string(k) + " deviates by " +
                                std::to_string(abs_diff(sum[k], n[k])) + ")");
  }
  return {std::move(n)};
}

namespace detail {

template <class S>
bool same_point(const std::vector<S>& a, const std::vector<S>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!scalar_equal(a[i], b[i], tol)) return false;
  return true;
}

/// Number of distinct points among the given state columns.
template <class S>
int distinct_point_count(const BasicFactorization<S>& f, const std::vector<int>& states) {
  std::vector<int> reps;
  for (int j : states) {
    bool found = false;
    for (int r : reps)
      if (same_point(f.u.col(r), f.u.col(j), f.tolerance)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(j);
  }
  return static_cast<int>(reps.size());
}

}  // namespace detail

/// Indices j whose state vector is not a convex combination of the other
/// state vectors, decided per distinct point by a phase-1 simplex run.
/// Duplicate columns inherit their representative's classification.
template <class S>
std::vector<int> extreme_states(const BasicFactorization<S>& f,
                                long max_pivots = 200000) {
  const int M = f.u.cols();
  const int K = f.K;

  std::vector<int> rep_of(M);  // state -> representative state (first of group)
  std::vector<int> reps;
  for (int j = 0; j < M; ++j) {
    int found = -1;
    for (int r : reps)
      if (detail::same_point(f.u.col(r), f.u.col(j), f.tolerance)) {
        found = r;
        break;
      }
    rep_of[j] = found < 0 ? j : found;
    if (found < 0) reps.push_back(j);
  }

  std::vector<char> rep_extreme(M, 0);
  for (int r : reps) {
    std::vector<int> others;
    for (int o : reps)
      if (o != r) others.push_back(o);
    // lambda >= 0, sum lambda = 1, sum lambda_i s_i = s_r: feasible <=> interior.
    Matrix<S> A(K + 1, static_cast<int>(others.size()));
    std::vector<S> b(K + 1);
    for (std::size_t col = 0; col < others.size(); ++col) {
      for (int k = 0; k < K; ++k) A(k, static_cast<int>(col)) = f.u(k, others[col]);
      A(K, static_cast<int>(col)) = S(1);
    }
    for (int k = 0; k < K; ++k) b[k] = f.u(k, r);
    b[K] = S(1);
    rep_extreme[r] = !equality_system_feasible(A, b, f.tolerance, max_pivots);
  }

  std::vector<int> extreme;
  for (int j = 0; j < M; ++j)
    if (rep_extreme[rep_of[j]]) extreme.push_back(j);
  return extreme;
}

/// Sub-convex combination sum lambda_k r_k with lambda >= 0 and sum <= 1.
/// An empty term list yields the null outcome vector (the origin).
template <class S>
OutcomeVector<S> mix_outcomes(int dimension,
                              const std::vector<std::pair<S, OutcomeVector<S>>>& terms,
                              double tolerance) {
  std::vector<S> coords(dimension, S(0));
  S total(0);
  for (const auto& [weight, outcome] : terms) {
    if (static_cast<int>(outcome.coords.size()) != dimension)
      throw DimensionMismatch("outcome vector dimension " +
                              std::to_string(outcome.coords.size()) + " != " +
                              std::to_string(dimension));
    if (scalar_less(weight, S(0), tolerance))
      throw InvalidWeights("mixing weight " + scalar_str(weight) + " is negative");
    total += weight;
    add_scaled(coords, outcome.coords, weight);
  }
  if (scalar_less(S(1), total, tolerance * std::max<std::size_t>(terms.size(), 1)))
    throw InvalidWeights("mixing weights sum to " + scalar_str(total) +
                         ", which exceeds 1");
  return {std::move(coords), "mixture", -1};
}

/// Vector sum of outcomes of one measurement (merging them into a single
/// outcome). Summing all outcomes of a measurement yields n.
template <class S>
OutcomeVector<S> coarse_grain(const MeasurementLayout& layout,
                              const std::vector<OutcomeVector<S>>& outcomes) {
  if (outcomes.empty()) throw ValidationError("coarse-graining needs at least one outcome");
  int measurement = -1;
  std::vector<char> seen(layout.total_outcomes(), 0);
  for (const auto& o : outcomes) {
    if (o.row < 0)
      throw MixedMeasurements("outcome '" + o.label +
                              "' is not attributable to a measurement row");
    const int m = layout.measurement_of(o.row);
    if (measurement < 0) measurement = m;
    if (m != measurement)
      throw MixedMeasurements("outcomes of '" + layout.measurement(measurement).name +
                              "' and '" + layout.measurement(m).name +
                              "' cannot be summed");
    if (seen[o.row])
      throw ValidationError("outcome '" + o.label + "' listed twice in coarse-graining");
    seen[o.row] = 1;
  }
  std::vector<S> coords(outcomes.front().coords.size(), S(0));
  std::string label;
  for (const auto& o : outcomes) {
    add_scaled(coords, o.coords, S(1));
    label += (label.empty() ? "" : "+") + o.label;
  }
  return {std::move(coords), label, -1};
}

/// Membership in the maximal outcome region: 0 <= candidate . s <= 1 for
/// every extreme state, which by convexity covers every state.
template <class S>
bool outcome_region_contains(const std::vector<S>& candidate,
                             const std::vector<StateVector<S>>& extremes,
                             double tolerance) {
  for (const auto& s : extremes) {
    if (s.coords.size() != candidate.size())
      throw DimensionMismatch("candidate dimension " + std::to_string(candidate.size()) +
                              " != state dimension " + std::to_string(s.coords.size()));
    const S value = dot(candidate, s.coords);
    if (scalar_less(value, S(0), tolerance) || scalar_less(S(1), value, tolerance))
      return false;
  }
  return true;
}

/// The region is symmetric under reflection through n/2: membership of the
/// candidate and of n - candidate always agree.
template <class S>
bool region_symmetry_check(const std::vector<S>& candidate,
                           const std::vector<StateVector<S>>& extremes,
                           const TrivialVector<S>& trivial, double tolerance) {
  if (candidate.size() != trivial.n.size())
    throw DimensionMismatch("candidate dimension does not match the trivial vector");
  std::vector<S> reflected(candidate.size());
  for (std::size_t i = 0; i < candidate.size(); ++i)
    reflected[i] = trivial.n[i] - candidate[i];
  return outcome_region_contains(candidate, extremes, tolerance) ==
         outcome_region_contains(reflected, extremes, tolerance);
}

/// Half-space r . normal >= 0 (offset 0, cone at the origin) or
/// r . normal <= 1 (offset 1, cone at n).
template <class S>
struct Halfspace {
  std::vector<S> normal;
  int offset = 0;
};

template <class S>
struct GeometryReport {
  int K = 0;
  std::vector<int> extreme_state_indices;  // duplicates inherit classification
  int distinct_extreme_points = 0;         // Z counts points, not labels
  TrivialVector<S> trivial;
  std::vector<double> hyperplane_residuals;  // per state |n . s - 1|
  std::vector<Halfspace<S>> origin_cone;
  std::vector<Halfspace<S>> unit_cone;
  std::vector<std::string> state_names;

  int Z() const { return distinct_extreme_points; }
  double max_hyperplane_residual() const {
    double worst = 0;
    for (double r : hyperplane_residuals) worst = std::max(worst, r);
    return worst;
  }
};

template <class S>
GeometryReport<S> analyze_geometry(const BasicTable<S>& table,
                                   const BasicFactorization<S>& f,
                                   long max_pivots = 200000) {
  GeometryReport<S> report;
  report.K = f.K;
  report.trivial = trivial_vector(f, table.layout());
  report.extreme_state_indices = extreme_states(f, max_pivots);
  report.distinct_extreme_points = detail::distinct_point_count(f, report.extreme_state_indices);
  report.state_names = table.state_names();
  for (int j = 0; j < table.state_count(); ++j) {
    const S value = dot(report.trivial.n, f.u.col(j));
    report.hyperplane_residuals.push_back(abs_diff(value, S(1)));
  }
  for (int j : report.extreme_state_indices) {
    report.origin_cone.push_back({f.u.col(j), 0});
    report.unit_cone.push_back({f.u.col(j), 1});
  }
  return report;
}

template <class S>
Json geometry_report_to_json(const GeometryReport<S>& report) {
  Json doc;
  doc["K"] = report.K;
  doc["Z"] = report.Z();
  doc["n"] = vector_to_json(report.trivial.n);
  Json extremes = Json::array();
  for (int j : report.extreme_state_indices) extremes.push_back(report.state_names[j]);
  doc["extreme_states"] = std::move(extremes);
  doc["hyperplane_max_residual"] = report.max_hyperplane_residual();
  Json halfspaces = Json::array();
  for (const auto* cone : {&report.origin_cone, &report.unit_cone})
    for (const auto& h : *cone)
      halfspaces.push_back(Json{{"normal", vector_to_json(h.normal)}, {"offset", h.offset}});
  doc["halfspaces"] = std::move(halfspaces);
  return doc;
}

}  // namespace ptab
