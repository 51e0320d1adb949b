#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ptab/geometry.hpp"

namespace ptab {

enum class DistinguishMode { strict, coarse };

inline const char* to_string(DistinguishMode m) {
  return m == DistinguishMode::strict ? "strict" : "coarse";
}

struct WitnessPair {
  int state;
  int row;  // global outcome row
};

/// N states witnessed as one-shot distinguishable, plus the (Z, K, N) chain.
/// witness_measurement == -1 marks the trivial singleton witness used when
/// no table entry equals one.
struct DistinguishabilityReport {
  int N = 1;
  DistinguishMode mode = DistinguishMode::strict;
  int witness_measurement = -1;
  std::vector<WitnessPair> pairs;
  int Z = 0;
  int K = 0;
  bool chain_holds = false;
  bool classical = false;
};

namespace detail {

/// Deterministic augmenting-path matching between the given states and the
/// rows of one measurement; an edge means the entry equals 1.
template <class S>
struct OneMatching {
  std::vector<int> state_to_row;  // local row index or -1
  int size = 0;
};

template <class S>
OneMatching<S> match_identity_rows(const BasicTable<S>& table, int measurement,
                                   const std::vector<int>& states) {
  const auto rows = table.layout().rows_of(measurement);
  std::vector<std::vector<int>> adj(states.size());
  for (std::size_t sj = 0; sj < states.size(); ++sj)
    for (std::size_t ri = 0; ri < rows.size(); ++ri)
      if (scalar_equal(table.entry(rows[ri], states[sj]), S(1), table.tolerance()))
        adj[sj].push_back(static_cast<int>(ri));

  OneMatching<S> result;
  result.state_to_row.assign(states.size(), -1);
  std::vector<int> row_to_state(rows.size(), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int sj) -> bool {
    for (int ri : adj[sj]) {
      if (visited[ri]) continue;
      visited[ri] = 1;
      if (row_to_state[ri] < 0 || self(self, row_to_state[ri])) {
        row_to_state[ri] = sj;
        result.state_to_row[sj] = ri;
        return true;
      }
    }
    return false;
  };
  for (std::size_t sj = 0; sj < states.size(); ++sj) {
    visited.assign(rows.size(), 0);
    if (augment(augment, static_cast<int>(sj))) ++result.size;
  }
  return result;
}

/// Largest subset of states with pairwise disjoint outcome supports in one
/// measurement, by branch and bound over states sorted by support size.
/// Returns state indices ascending; `supports` gives each chosen state's rows.
template <class S>
std::vector<int> max_disjoint_supports(const BasicTable<S>& table, int measurement,
                                       std::vector<std::vector<int>>* supports_out,
                                       long node_budget) {
  const auto rows = table.layout().rows_of(measurement);
  const int M = table.state_count();
  std::vector<std::vector<int>> support(M);  // local row indices
  for (int j = 0; j < M; ++j)
    for (std::size_t ri = 0; ri < rows.size(); ++ri)
      if (!scalar_is_zero(table.entry(rows[ri], j), table.tolerance()))
        support[j].push_back(static_cast<int>(ri));

  std::vector<int> order(M);
  for (int j = 0; j < M; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (support[a].size() != support[b].size()) return support[a].size() < support[b].size();
    return a < b;
  });

  std::vector<char> used(rows.size(), 0);
  std::vector<int> chosen, best;
  long nodes = 0;
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (++nodes > node_budget)
      throw SearchBudgetExceeded("coarse-mode subset search exceeded its node budget");
    if (chosen.size() + (order.size() - pos) <= best.size()) return;
    if (pos == order.size()) {
      if (chosen.size() > best.size()) best = chosen;
      return;
    }
    const int j = order[pos];
    bool free = true;
    for (int ri : support[j])
      if (used[ri]) {
        free = false;
        break;
      }
    if (free) {
      for (int ri : support[j]) used[ri] = 1;
      chosen.push_back(j);
      self(self, pos + 1);
      chosen.pop_back();
      for (int ri : support[j]) used[ri] = 0;
    }
    self(self, pos + 1);
  };
  dfs(dfs, 0);
  std::sort(best.begin(), best.end());
  if (supports_out) {
    supports_out->clear();
    for (int j : best) supports_out->push_back(support[j]);
  }
  return best;
}

}  // namespace detail

/// Maximal number N of one-shot distinguishable states. Strict mode takes
/// the largest identity pattern among the rows of a single measurement;
/// coarse mode also merges disjoint-support outcomes first. A table with no
/// unit entry still distinguishes any single state (via the trivial
/// measurement), so N is at least 1.
template <class S>
DistinguishabilityReport max_distinguishable(const BasicTable<S>& table,
                                             const BasicFactorization<S>& f,
                                             DistinguishMode mode,
                                             const std::vector<int>* extreme_indices = nullptr,
                                             int subset_limit = 24,
                                             long max_pivots = 200000) {
  DistinguishabilityReport report;
  report.mode = mode;
  report.K = f.K;

  std::vector<int> all_states(table.state_count());
  for (int j = 0; j < table.state_count(); ++j) all_states[j] = j;

  if (mode == DistinguishMode::strict) {
    int best = 0, best_measurement = -1;
    std::vector<WitnessPair> best_pairs;
    for (int m = 0; m < table.layout().measurement_count(); ++m) {
      const auto matching = detail::match_identity_rows<S>(table, m, all_states);
      if (matching.size > best) {
        best = matching.size;
        best_measurement = m;
        best_pairs.clear();
        for (int j = 0; j < table.state_count(); ++j)
          if (matching.state_to_row[j] >= 0)
            best_pairs.push_back({j, table.layout().first_row(m) + matching.state_to_row[j]});
      }
    }
    if (best > 0) {
      report.N = best;
      report.witness_measurement = best_measurement;
      report.pairs = std::move(best_pairs);
    }
  } else {
    if (table.state_count() > subset_limit)
      throw SearchBudgetExceeded("coarse-mode search is capped at " +
                                 std::to_string(subset_limit) + " states, table has " +
                                 std::to_string(table.state_count()));
    int best = 0, best_measurement = -1;
    std::vector<WitnessPair> best_pairs;
    for (int m = 0; m < table.layout().measurement_count(); ++m) {
      std::vector<std::vector<int>> supports;
      const auto chosen = detail::max_disjoint_supports<S>(table, m, &supports, 1L << 22);
      if (static_cast<int>(chosen.size()) > best) {
        best = static_cast<int>(chosen.size());
        best_measurement = m;
        best_pairs.clear();
        for (std::size_t k = 0; k < chosen.size(); ++k)
          for (int ri : supports[k])
            best_pairs.push_back({chosen[k], table.layout().first_row(m) + ri});
      }
    }
    if (best > 0) {
      report.N = best;
      report.witness_measurement = best_measurement;
      report.pairs = std::move(best_pairs);
    }
  }

  const std::vector<int> extremes =
      extreme_indices ? *extreme_indices : extreme_states(f, max_pivots);
  report.Z = detail::distinct_point_count(f, extremes);
  report.chain_holds = report.Z >= report.K && report.K >= report.N;
  report.classical = (report.K == report.N);
  if (report.classical && report.Z != report.K)
    throw Error("classical table (K = N = " + std::to_string(report.K) +
                ") with Z = " + std::to_string(report.Z));
  return report;
}

/// Outcome vector of the dropped state's identity row. For any convex
/// combination s of the remaining distinguishable states, r . s = 0 and
/// r . s_dropped = 1, so s lies on the boundary of the state set; a simplex
/// run confirms independently that no proper convex decomposition of s can
/// pass through the dropped state.
template <class S>
OutcomeVector<S> boundary_witness(const BasicTable<S>& table,
                                  const BasicFactorization<S>& f,
                                  const std::vector<int>& distinguishable, int dropped,
                                  const std::vector<S>& weights,
                                  long max_pivots = 200000) {
  if (distinguishable.size() < 2)
    throw InvalidWeights("boundary witness needs at least two distinguishable states");
  if (std::find(distinguishable.begin(), distinguishable.end(), dropped) ==
      distinguishable.end())
    throw NotDistinguishable("dropped state is not among the distinguishable set");
  if (weights.size() != distinguishable.size() - 1)
    throw InvalidWeights("expected " + std::to_string(distinguishable.size() - 1) +
                         " weights, got " + std::to_string(weights.size()));
  S total(0);
  for (const auto& w : weights) {
    if (scalar_less(w, S(0), table.tolerance()))
      throw InvalidWeights("weight " + scalar_str(w) + " is negative");
    total += w;
  }
  if (!scalar_equal(total, S(1), table.tolerance() * weights.size()))
    throw InvalidWeights("weights sum to " + scalar_str(total) + ", expected 1");

  // Lowest-index measurement carrying a full identity witness for the set.
  int witness_row = -1;
  for (int m = 0; m < table.layout().measurement_count() && witness_row < 0; ++m) {
    const auto matching = detail::match_identity_rows<S>(table, m, distinguishable);
    if (matching.size != static_cast<int>(distinguishable.size())) continue;
    for (std::size_t k = 0; k < distinguishable.size(); ++k)
      if (distinguishable[k] == dropped)
        witness_row = table.layout().first_row(m) + matching.state_to_row[k];
  }
  if (witness_row < 0)
    throw NotDistinguishable("no single measurement distinguishes the given states");

  const OutcomeVector<S> r = f.outcome(witness_row);

  std::vector<S> combination(f.K, S(0));
  std::size_t wi = 0;
  for (int j : distinguishable) {
    if (j == dropped) continue;
    add_scaled(combination, f.u.col(j), weights[wi++]);
  }

  const S on_combination = dot(r.coords, combination);
  const S on_dropped = dot(r.coords, f.u.col(dropped));
  if (!scalar_is_zero(on_combination, f.tolerance * f.K) ||
      !scalar_equal(on_dropped, S(1), f.tolerance))
    throw Error("identity witness failed to annihilate the combination");

  // max mu  s.t.  mu * s_dropped + sum_j omega_j s_j = combination,
  //               mu + sum omega = 1, all nonnegative.
  const int M = table.state_count();
  Matrix<S> A(f.K + 1, M + 1);
  std::vector<S> b(f.K + 1), c(M + 1, S(0));
  for (int k = 0; k < f.K; ++k) A(k, 0) = f.u(k, dropped);
  A(f.K, 0) = S(1);
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k < f.K; ++k) A(k, j + 1) = f.u(k, j);
    A(f.K, j + 1) = S(1);
  }
  for (int k = 0; k < f.K; ++k) b[k] = combination[k];
  b[f.K] = S(1);
  c[0] = S(-1);  // minimize -mu
  const auto lp = solve_linear_program(A, b, c, f.tolerance, max_pivots);
  if (lp.status != LpStatus::optimal)
    throw SolverFailure("boundary decomposition program did not reach an optimum");
  if (!scalar_is_zero(lp.objective, f.tolerance * (M + 1)))
    throw Error("a proper convex decomposition through the dropped state exists "
                "(mu = " + scalar_str(S(-lp.objective)) + ")");
  return r;
}

template <class S>
Json distinguishability_to_json(const DistinguishabilityReport& report,
                                const BasicTable<S>& table) {
  Json doc;
  doc["N"] = report.N;
  doc["mode"] = to_string(report.mode);
  Json witness;
  if (report.witness_measurement >= 0) {
    witness["measurement"] = table.layout().measurement(report.witness_measurement).name;
    Json pairs = Json::array();
    for (const auto& p : report.pairs)
      pairs.push_back(Json::array(
          {table.state_name(p.state), table.layout().outcome_name(p.row)}));
    witness["pairs"] = std::move(pairs);
  } else {
    witness["measurement"] = nullptr;
    witness["pairs"] = Json::array();
  }
  doc["witness"] = std::move(witness);
  doc["Z"] = report.Z;
  doc["K"] = report.K;
  doc["chain_holds"] = report.chain_holds;
  doc["classical"] = report.classical;
  return doc;
}

}  // namespace ptab
