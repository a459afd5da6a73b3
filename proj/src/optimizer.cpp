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

#include "ccplace/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccplace {

namespace {

constexpr double kBudgetTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;

void check_budget(double budget, const BaseCaseSet& base) {
  if (!(budget >= 0.0 && budget <= base.n)) {
    throw std::invalid_argument("storage budget " + std::to_string(budget) +
                                " outside [0, N=" + std::to_string(base.n) + "]");
  }
}

// Bracketing base-case indices (lo == hi when the budget is a base case).
std::pair<std::size_t, std::size_t> bracket(double budget, const BaseCaseSet& base) {
  const auto& cs = base.cases;
  auto it = std::lower_bound(cs.begin(), cs.end(), budget,
                             [](const BaseCase& c, double m) { return c.m < m; });
  const auto hi = static_cast<std::size_t>(it - cs.begin());
  if (hi < cs.size() && std::abs(cs[hi].m - budget) <= kBudgetTolerance) return {hi, hi};
  if (hi > 0 && std::abs(cs[hi - 1].m - budget) <= kBudgetTolerance) return {hi - 1, hi - 1};
  if (hi == 0 || hi == cs.size()) throw std::invalid_argument("budget outside base-case range");
  return {hi - 1, hi};
}

}  // namespace

RmscSolution solve_rmsc(double budget, const BaseCaseSet& base) {
  check_budget(budget, base);
  const auto [lo, hi] = bracket(budget, base);
  const BaseCase& lower = base.cases[lo];
  const BaseCase& upper = base.cases[hi];
  if (lo == hi) {
    return {.y = base.matrix(lo), .rate = lower.r, .m_used = lower.m, .theta = 1.0,
            .lower = lower, .upper = upper};
  }
  const double theta = (upper.m - budget) / (upper.m - lower.m);
  PlacementMatrix y = blend(theta, base.matrix(lo), base.matrix(hi));
  const double used = storage(y);
  if (std::abs(used - budget) > kBudgetTolerance * std::max(1.0, budget)) {
    throw std::logic_error("memory-sharing placement leaves storage unused: " +
                           std::to_string(used) + " vs " + std::to_string(budget));
  }
  return {.y = std::move(y), .rate = theta * lower.r + (1.0 - theta) * upper.r,
          .m_used = used, .theta = theta, .lower = lower, .upper = upper};
}

JrsmSolution solve_jrsm(double gamma, const BaseCaseSet& base) {
  if (!(gamma >= 0.0) || std::isnan(gamma)) {
    throw std::invalid_argument("storage price must be >= 0");
  }
  const auto& cs = base.cases;
  if (cs.empty()) throw std::invalid_argument("empty base set");
  std::vector<double> objective(cs.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    // An infinite price only admits the empty cache.
    objective[i] = cs[i].m == 0.0 ? cs[i].r : cs[i].r + gamma * cs[i].m;
    best = std::min(best, objective[i]);
  }
  // Cases are sorted by storage, so the first near-minimizer is the smallest.
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (objective[i] - best <= kTieTolerance * std::max(1.0, std::abs(best))) {
      return {.y = base.matrix(i), .objective = objective[i], .gamma = gamma, .chosen = cs[i]};
    }
  }
  throw std::logic_error("no minimizer found");
}

std::vector<std::pair<double, double>> optimal_rate_curve(const BaseCaseSet& base,
                                                          std::span<const double> budgets) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(budgets.size());
  for (double m : budgets) {
    check_budget(m, base);
    const auto [lo, hi] = bracket(m, base);
    const BaseCase& lower = base.cases[lo];
    const BaseCase& upper = base.cases[hi];
    if (lo == hi) {
      curve.emplace_back(m, lower.r);
    } else {
      const double theta = (upper.m - m) / (upper.m - lower.m);
      curve.emplace_back(m, theta * lower.r + (1.0 - theta) * upper.r);
    }
  }
  return curve;
}

}  // namespace ccplace
