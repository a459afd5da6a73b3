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

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ccplace/basecases.hpp"
#include "ccplace/optimizer.hpp"
#include "ccplace/placement.hpp"
#include "doctest.h"
#include "oracles.hpp"

using ccplace::PopularityDistribution;

namespace {

ccplace::BaseCaseSet hull_of(int k, const PopularityDistribution& d) {
  const auto c = ccplace::enumerate_candidates(k, d);
  return ccplace::build_base_set(c, k, d.n());
}

// Columns s >= 1 carrying any mass.
int active_levels(const ccplace::PlacementMatrix& y) {
  int count = 0;
  for (int s = 1; s <= y.k(); ++s) {
    bool any = false;
    for (int f = 0; f < y.n(); ++f) any = any || y(f, s) > 0.0;
    count += any;
  }
  return count;
}

}  // namespace

TEST_CASE("memory sharing on the uniform hull") {
  const auto h = hull_of(4, PopularityDistribution::uniform(4));
  const auto mid = ccplace::solve_rmsc(1.5, h);
  CHECK(mid.theta == 0.5);
  CHECK(mid.lower.m == 1.0);
  CHECK(mid.upper.m == 2.0);
  CHECK(std::abs(mid.rate - 13.0 / 12) <= 1e-12);
  CHECK(mid.m_used == 1.5);

  const auto zero = ccplace::solve_rmsc(0.0, h);
  CHECK(zero.rate == 4.0);
  for (int f = 0; f < 4; ++f) CHECK(zero.y(f, 0) == 1.0);

  const auto node = ccplace::solve_rmsc(2.0, h);
  CHECK(node.theta == 1.0);
  CHECK(node.y == h.matrix(2));

  CHECK_THROWS_AS(ccplace::solve_rmsc(-0.1, h), std::invalid_argument);
  CHECK_THROWS_AS(ccplace::solve_rmsc(4.1, h), std::invalid_argument);
  CHECK_NOTHROW(ccplace::solve_rmsc(4.0, h));
}

TEST_CASE("JRSM on the uniform hull") {
  const auto h = hull_of(4, PopularityDistribution::uniform(4));
  const auto high = ccplace::solve_jrsm(10.0, h);
  CHECK(high.chosen.m == 0.0);
  CHECK(high.objective == 4.0);
  const auto free = ccplace::solve_jrsm(0.0, h);
  CHECK(free.chosen.m == 4.0);
  CHECK(std::abs(free.objective) <= 1e-12);
  const auto tie = ccplace::solve_jrsm(5.0 / 6, h);
  CHECK(tie.chosen.m == 1.0);
  CHECK(std::abs(tie.objective - (1.5 + 5.0 / 6)) <= 1e-12);
  CHECK_THROWS_AS(ccplace::solve_jrsm(-1.0, h), std::invalid_argument);
}

TEST_CASE("rate curve examples") {
  const auto h = hull_of(4, PopularityDistribution::uniform(4));
  const std::vector<double> grid = {0, 0.5, 1, 2, 3, 4};
  const auto curve = ccplace::optimal_rate_curve(h, grid);
  const double want[] = {4, 2.75, 1.5, 2.0 / 3, 0.25, 0};
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(curve[i].second - want[i]) <= 1e-12);
  const std::vector<double> bad = {5.0};
  CHECK_THROWS_AS(ccplace::optimal_rate_curve(h, bad), std::invalid_argument);
}

TEST_CASE("RMSC properties on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto d = PopularityDistribution::from_probs(oracles::random_probs(rng, n));
    const auto h = hull_of(k, d);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(n * i / 20.0);
    double prev_rate = k + 1.0;
    double prev_slope = -1e300;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto sol = ccplace::solve_rmsc(grid[i], h);
      CHECK(std::abs(ccplace::storage(sol.y) - grid[i]) <= 1e-12);
      CHECK(std::abs(sol.rate - (sol.theta * sol.lower.r + (1 - sol.theta) * sol.upper.r)) <= 1e-12);
      CHECK(std::abs(sol.rate - ccplace::expected_rate_exact(sol.y, d)) <= 1e-9);
      CHECK(active_levels(sol.y) <= 2);
      if (sol.lower.placement.level == sol.upper.placement.level && sol.lower.placement.level > 0)
        CHECK(active_levels(sol.y) == 1);
      CHECK(sol.rate <= prev_rate + 1e-12);
      if (i > 0) {
        const double slope = (sol.rate - prev_rate) / (grid[i] - grid[i - 1]);
        CHECK(slope >= prev_slope - 1e-9);
        prev_slope = slope;
      }
      prev_rate = sol.rate;
    }
  }
}

TEST_CASE("zero duality gap on the hull and gamma sweep reproduces the hull") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto d = PopularityDistribution::zipf(n, 0.1 * static_cast<double>(rng() % 25));
    const auto h = hull_of(k, d);
    const auto st = ccplace::price_staircase(h);
    for (std::size_t i = 0; i < h.cases.size(); ++i) {
      const auto& bp = st.breakpoints[i];
      const double hi = std::isinf(bp.gamma_hi) ? bp.gamma_lo + 1.0 : bp.gamma_hi;
      for (double g : {bp.gamma_lo, 0.5 * (bp.gamma_lo + hi), hi}) {
        const auto j = ccplace::solve_jrsm(g, h);
        CHECK(std::abs(j.objective - (h.cases[i].r + g * h.cases[i].m)) <= 1e-9 * (1 + j.objective));
      }
    }
    std::set<double> seen;
    for (std::size_t i = 0; i < st.segments.size(); ++i) {
      const double above = i == 0 ? st.segments[0].gamma + 1.0 : st.segments[i - 1].gamma;
      seen.insert(ccplace::solve_jrsm(0.5 * (st.segments[i].gamma + above), h).chosen.m);
    }
    seen.insert(ccplace::solve_jrsm(0.0, h).chosen.m);
    std::set<double> hull_ms;
    for (const auto& c : h.cases) hull_ms.insert(c.m);
    CHECK(seen == hull_ms);
  }
}
