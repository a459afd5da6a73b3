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

#ifndef CCPLACE_OPTIMIZER_HPP_
#define CCPLACE_OPTIMIZER_HPP_

#include <span>
#include <utility>
#include <vector>

#include "ccplace/basecases.hpp"
#include "ccplace/placement.hpp"

namespace ccplace {

// Optimal placement for a storage budget: theta * lower + (1 - theta) * upper.
// When the budget is itself a base-case storage, lower == upper and theta = 1.
struct RmscSolution {
  PlacementMatrix y;
  double rate = 0.0;
  double m_used = 0.0;
  double theta = 1.0;
  BaseCase lower;
  BaseCase upper;
};

// Minimizer of rate + gamma * storage, always a base case.
struct JrsmSolution {
  PlacementMatrix y;
  double objective = 0.0;
  double gamma = 0.0;
  BaseCase chosen;
};

// Budget M in [0, N]. Memory sharing between the bracketing base cases.
RmscSolution solve_rmsc(double budget, const BaseCaseSet& base);

// Price gamma >= 0. Ties go to the smaller storage.
JrsmSolution solve_jrsm(double gamma, const BaseCaseSet& base);

// (M, optimal rate) for each budget.
std::vector<std::pair<double, double>> optimal_rate_curve(const BaseCaseSet& base,
                                                          std::span<const double> budgets);

}  // namespace ccplace

#endif  // CCPLACE_OPTIMIZER_HPP_
