// Copyright 2026 The ccplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccplace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccplace/errors.hpp"

namespace ccplace {

namespace {

constexpr double kReducedCostTolerance = 1e-11;
constexpr double kPivotTolerance = 1e-11;
constexpr double kDropTolerance = 1e-14;
constexpr std::size_t kMaxTableauEntries = 25'000'000;
constexpr int kDegenerateStreakLimit = 50;

// min c.x  s.t.  rows . x = rhs, x >= 0, over a dense tableau whose initial
// basis is given and consists of unit columns.
class DenseSimplex {
 public:
  DenseSimplex(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), tab_(rows * (cols + 1), 0.0), obj_(cols + 1, 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return tab_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return tab_[r * (cols_ + 1) + cols_]; }
  double& reduced_cost(std::size_t c) { return obj_[c]; }
  double objective() const { return -obj_[cols_]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

  // Sets costs and basis, then prices out the basic columns.
  void start(const std::vector<double>& cost, const std::vector<std::size_t>& basis) {
    basis_ = basis;
    std::copy(cost.begin(), cost.end(), obj_.begin());
    obj_[cols_] = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) obj_[c] -= cb * at(r, c);
    }
  }

  // Returns false when the pivot cap is reached first.
  bool run(int max_pivots, int& pivots) {
    bool bland = false;
    int streak = 0;
    while (true) {
      const std::size_t entering = choose_entering(bland);
      if (entering == cols_) return true;
      const std::size_t leaving = choose_leaving(entering, bland);
      if (leaving == rows_) throw std::logic_error("linear program is unbounded");
      if (pivots >= max_pivots) return false;
      const double before = objective();
      pivot(leaving, entering);
      ++pivots;
      if (before - objective() > 1e-13 * std::max(1.0, std::abs(before))) {
        streak = 0;
        bland = false;
      } else if (++streak > kDegenerateStreakLimit) {
        bland = true;
      }
    }
  }

 private:
  std::size_t choose_entering(bool bland) const {
    std::size_t best = cols_;
    double best_value = -kReducedCostTolerance;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (obj_[c] < best_value) {
        best = c;
        if (bland) break;
        best_value = obj_[c];
      }
    }
    return best;
  }

  std::size_t choose_leaving(std::size_t entering, bool bland) {
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows_; ++r) {
      const double a = at(r, entering);
      if (a > kPivotTolerance) best_ratio = std::min(best_ratio, std::max(0.0, rhs(r)) / a);
    }
    if (!std::isfinite(best_ratio)) return rows_;
    std::size_t chosen = rows_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double a = at(r, entering);
      if (a <= kPivotTolerance) continue;
      if (std::max(0.0, rhs(r)) / a > best_ratio + 1e-12) continue;
      if (chosen == rows_) {
        chosen = r;
      } else if (bland ? basis_[r] < basis_[chosen] : a > at(chosen, entering)) {
        chosen = r;
      }
    }
    return chosen;
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    nonzero_.clear();
    for (std::size_t c = 0; c <= cols_; ++c) {
      double& v = at(pr, c);
      v *= inv;
      if (std::abs(v) < kDropTolerance) {
        v = 0.0;
      } else {
        nonzero_.push_back(c);
      }
    }
    at(pr, pc) = 1.0;
    const double* prow = &tab_[pr * (cols_ + 1)];
    auto eliminate = [&](double* row) {
      const double f = row[pc];
      if (f == 0.0) return;
      for (std::size_t c : nonzero_) {
        double v = row[c] - f * prow[c];
        row[c] = std::abs(v) < kDropTolerance ? 0.0 : v;
      }
      row[pc] = 0.0;
    };
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != pr) eliminate(&tab_[r * (cols_ + 1)]);
    }
    eliminate(obj_.data());
    if (rhs(pr) < 0.0) rhs(pr) = 0.0;
    basis_[pr] = pc;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> tab_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
};

struct EpigraphVar {
  int level;
  std::size_t group;
  double cost;
};

struct EpigraphRow {
  int file;
  int level;
  std::size_t var;
};

}  // namespace

OracleResult numeric_rmsc(double budget, const PopularityDistribution& dist, int k, double tol,
                          int max_iterations) {
  const int n = dist.n();
  if (!(budget >= 0.0 && budget <= n)) {
    throw std::invalid_argument("oracle budget outside [0, N]");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("oracle tolerance must be positive");
  const GroupTable table(dist, k);
  const auto cols_per_file = static_cast<std::size_t>(k + 1);
  const std::size_t y_count = static_cast<std::size_t>(n) * cols_per_file;
  auto y_col = [&](int file, int level) {
    return static_cast<std::size_t>(file) * cols_per_file + static_cast<std::size_t>(level);
  };

  // Linear costs on y; singleton groups have pi_{s+1}^{n} = p_n^{s+1}.
  std::vector<double> y_cost(y_count, 0.0);
  for (std::size_t g = 0; g < table.group_count(); ++g) {
    const auto members = table.members(g);
    if (members.size() != 1) continue;
    for (int s = 0; s < k; ++s) {
      y_cost[y_col(members[0], s)] =
          static_cast<double>(k - s) / (s + 1) * table.probability(g, s + 1);
    }
  }

  std::vector<EpigraphVar> vars;
  std::vector<EpigraphRow> epi_rows;
  for (std::size_t g = 0; g < table.group_count(); ++g) {
    const auto members = table.members(g);
    if (members.size() < 2) continue;
    for (int s = static_cast<int>(members.size()) - 1; s < k; ++s) {
      const double pi = table.probability(g, s + 1);
      if (pi <= 0.0) continue;
      vars.push_back({.level = s, .group = g, .cost = static_cast<double>(k - s) / (s + 1) * pi});
      for (int file : members) {
        epi_rows.push_back({.file = file, .level = s, .var = vars.size() - 1});
      }
    }
  }

  const std::size_t eq_rows = static_cast<std::size_t>(n);
  const std::size_t rows = eq_rows + epi_rows.size() + 1;
  const std::size_t t_base = y_count;
  const std::size_t slack_base = t_base + vars.size();
  const std::size_t cols = slack_base + epi_rows.size() + 1;
  const std::size_t cap_slack = cols - 1;
  if (static_cast<double>(rows) * static_cast<double>(cols + 1) >
      static_cast<double>(kMaxTableauEntries)) {
    throw ResourceLimitError("oracle linear program too large for a dense tableau (" +
                             std::to_string(rows) + " x " + std::to_string(cols) + ")");
  }

  DenseSimplex lp(rows, cols);
  std::vector<std::size_t> basis(rows);
  for (int file = 0; file < n; ++file) {
    const auto r = static_cast<std::size_t>(file);
    for (int s = 0; s <= k; ++s) lp.at(r, y_col(file, s)) = 1.0;
    lp.rhs(r) = 1.0;
    basis[r] = y_col(file, 0);
  }
  for (std::size_t i = 0; i < epi_rows.size(); ++i) {
    const std::size_t r = eq_rows + i;
    lp.at(r, y_col(epi_rows[i].file, epi_rows[i].level)) = 1.0;
    lp.at(r, t_base + epi_rows[i].var) = -1.0;
    lp.at(r, slack_base + i) = 1.0;
    basis[r] = slack_base + i;
  }
  const std::size_t cap_row = rows - 1;
  for (int file = 0; file < n; ++file) {
    for (int s = 1; s <= k; ++s) lp.at(cap_row, y_col(file, s)) = static_cast<double>(s) / k;
  }
  lp.at(cap_row, cap_slack) = 1.0;
  lp.rhs(cap_row) = budget;
  basis[cap_row] = cap_slack;

  std::vector<double> cost(cols, 0.0);
  std::copy(y_cost.begin(), y_cost.end(), cost.begin());
  for (std::size_t v = 0; v < vars.size(); ++v) cost[t_base + v] = vars[v].cost;
  lp.start(cost, basis);

  int pivots = 0;
  const bool finished = lp.run(max_iterations, pivots);

  // Primal point: basic y entries, repaired onto the row simplices.
  std::vector<double> entries(y_count, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (lp.basic(r) < y_count) entries[lp.basic(r)] = std::max(0.0, lp.rhs(r));
  }
  for (int file = 0; file < n; ++file) {
    double sum = 0.0;
    for (int s = 0; s <= k; ++s) sum += entries[y_col(file, s)];
    for (int s = 0; s <= k; ++s) entries[y_col(file, s)] /= sum;
  }
  PlacementMatrix y(k, n, std::move(entries));
  const double rate = table.rate(y);

  // Lagrangian bound: prices lambda >= 0 on y(n,s) - t <= 0 and gamma >= 0
  // on storage <= M; t ranges over [0, 1], y over the row simplices.
  const double gamma = std::max(0.0, lp.reduced_cost(cap_slack));
  std::vector<double> y_price(y_count, 0.0);
  std::vector<double> t_price(vars.size(), 0.0);
  for (std::size_t i = 0; i < epi_rows.size(); ++i) {
    const double lambda = std::max(0.0, lp.reduced_cost(slack_base + i));
    y_price[y_col(epi_rows[i].file, epi_rows[i].level)] += lambda;
    t_price[epi_rows[i].var] += lambda;
  }
  double lower = -gamma * budget;
  for (int file = 0; file < n; ++file) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= k; ++s) {
      const std::size_t c = y_col(file, s);
      best = std::min(best, y_cost[c] + y_price[c] + gamma * s / k);
    }
    lower += best;
  }
  for (std::size_t v = 0; v < vars.size(); ++v) lower += std::min(0.0, vars[v].cost - t_price[v]);

  const double gap = std::max(0.0, rate - lower);
  if (!finished) {
    throw ConvergenceError("oracle hit the pivot cap of " + std::to_string(max_iterations), gap);
  }
  if (gap > tol) {
    throw ConvergenceError("oracle gap " + std::to_string(gap) + " exceeds tolerance", gap);
  }
  return {.rate = rate, .y = std::move(y), .lower_bound = lower, .gap_certificate = gap,
          .iterations = pivots};
}

}  // namespace ccplace
