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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ccplace/basecases.hpp"
#include "ccplace/placement.hpp"
#include "doctest.h"
#include "oracles.hpp"

using ccplace::BaseCase;
using ccplace::PopularityDistribution;

namespace {

ccplace::BaseCaseSet hull_of(int k, const PopularityDistribution& d) {
  const auto c = ccplace::enumerate_candidates(k, d);
  return ccplace::build_base_set(c, k, d.n());
}

}  // namespace

TEST_CASE("candidate count and examples") {
  const auto d = PopularityDistribution::zipf(5, 1.0);
  CHECK(ccplace::enumerate_candidates(4, d).size() == 21);

  const auto p = PopularityDistribution::from_probs({0.12, 0.16, 0.24, 0.48});
  const auto cands = ccplace::enumerate_candidates(4, p);
  bool seen_full = false;
  bool seen_example = false;
  for (const auto& c : cands) {
    if (c.placement.level == 4 && c.placement.uncached == 0) {
      seen_full = true;
      CHECK(c.m == 4.0);
      CHECK(std::abs(c.r) <= 1e-15);
    }
    if (c.placement.level == 2 && c.placement.uncached == 2) {
      seen_example = true;
      CHECK(c.m == 1.0);
      CHECK(std::abs(c.r - 1.772032) <= 1e-12);
    }
    // Every candidate's (m, r) matches the placement evaluators.
    const auto y = ccplace::canonical_to_matrix(c.placement, 4, 4);
    CHECK(c.m == ccplace::storage(y));
    CHECK(std::abs(c.r - ccplace::expected_rate_exact(y, p)) <= 1e-9);
  }
  CHECK(seen_full);
  CHECK(seen_example);
}

TEST_CASE("uniform popularity recovers the t*N/K levels") {
  for (int k = 1; k <= 6; ++k) {
    for (int n = 1; n <= 8; ++n) {
      const auto h = hull_of(k, PopularityDistribution::uniform(n));
      REQUIRE(h.cases.size() == static_cast<std::size_t>(k + 1));
      for (int t = 0; t <= k; ++t) {
        const auto& c = h.cases[static_cast<std::size_t>(t)];
        CHECK(c.m == static_cast<double>(t * n) / k);
        CHECK(std::abs(c.r - static_cast<double>(k - t) / (t + 1)) <= 1e-12);
        if (t > 0) CHECK(c.placement.uncached == 0);
      }
    }
  }
}

TEST_CASE("uniform N=4 K=4 hull and staircase") {
  const auto h = hull_of(4, PopularityDistribution::uniform(4));
  const double rates[] = {4, 1.5, 2.0 / 3, 0.25, 0};
  for (int i = 0; i < 5; ++i) {
    CHECK(h.cases[static_cast<std::size_t>(i)].m == i);
    CHECK(std::abs(h.cases[static_cast<std::size_t>(i)].r - rates[i]) <= 1e-12);
  }
  const auto st = ccplace::price_staircase(h);
  const double gammas[] = {2.5, 5.0 / 6, 5.0 / 12, 0.25};
  REQUIRE(st.segments.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(st.segments[static_cast<std::size_t>(i)].gamma - gammas[i]) <= 1e-12);
    CHECK(st.segments[static_cast<std::size_t>(i)].m_lo == i);
    CHECK(st.segments[static_cast<std::size_t>(i)].m_hi == i + 1);
  }
  REQUIRE(st.breakpoints.size() == 5);
  CHECK(st.breakpoints[0].gamma_hi == std::numeric_limits<double>::infinity());
  CHECK(st.breakpoints[0].gamma_lo == st.segments[0].gamma);
  CHECK(st.breakpoints[4].gamma_lo == 0.0);
  CHECK(std::abs(st.breakpoints[4].gamma_hi - h.cases[3].r / (4 - h.cases[3].m)) <= 1e-15);
  for (int i = 1; i < 4; ++i) {
    CHECK(st.breakpoints[static_cast<std::size_t>(i)].gamma_lo == st.segments[static_cast<std::size_t>(i)].gamma);
    CHECK(st.breakpoints[static_cast<std::size_t>(i)].gamma_hi == st.segments[static_cast<std::size_t>(i - 1)].gamma);
  }
}

TEST_CASE("single file hull is the brute-force hull of K+1 points") {
  for (int k = 1; k <= 8; ++k) {
    const auto d = PopularityDistribution::uniform(1);
    const auto cands = ccplace::enumerate_candidates(k, d);
    CHECK(cands.size() == static_cast<std::size_t>(k + 1));
    const auto h = ccplace::build_base_set(cands, k, 1);
    CHECK(oracles::points_of(h.cases) == oracles::gift_wrap_lower_hull(oracles::points_of(cands)));
  }
}

TEST_CASE("hull matches gift wrapping, the sequential scan, and its own invariants") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> alpha(0.0, 2.5);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto d = PopularityDistribution::zipf(n, alpha(rng));
    const auto cands = ccplace::enumerate_candidates(k, d);
    const auto h = ccplace::build_base_set(cands, k, n);
    const auto pts = oracles::points_of(h.cases);
    CHECK(pts == oracles::gift_wrap_lower_hull(oracles::points_of(cands)));
    CHECK(oracles::points_of(ccplace::scan_base_set(cands, k, n).cases) == pts);

    CHECK(h.cases.front().m == 0.0);
    CHECK(h.cases.front().r == k);
    CHECK(h.cases.back().m == n);
    CHECK(std::abs(h.cases.back().r) <= 1e-12);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i].m > pts[i - 1].m);
      CHECK(pts[i].r < pts[i - 1].r);
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) CHECK(oracles::below(pts[i - 1], pts[i], pts[i + 1]));

    // Invariance under duplicates and reordering.
    auto shuffled = cands;
    shuffled.insert(shuffled.end(), cands.begin(), cands.begin() + static_cast<long>(cands.size() / 2));
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(oracles::points_of(ccplace::build_base_set(shuffled, k, n).cases) == pts);
  }
}

TEST_CASE("literal interpolation coefficient breaks the scan") {
  const auto d = PopularityDistribution::zipf(5, 1.0);
  const auto cands = ccplace::enumerate_candidates(4, d);
  const auto hull = ccplace::build_base_set(cands, 4, 5);
  const auto literal = ccplace::scan_base_set(cands, 4, 5, ccplace::InterpolationRule::kLiteral);
  CHECK(oracles::points_of(literal.cases) != oracles::points_of(hull.cases));
}

TEST_CASE("staircase is strictly decreasing") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto d = PopularityDistribution::from_probs(oracles::random_probs(rng, n));
    const auto st = ccplace::price_staircase(hull_of(k, d));
    for (std::size_t i = 1; i < st.segments.size(); ++i) CHECK(st.segments[i].gamma < st.segments[i - 1].gamma);
  }
}

TEST_CASE("base set requires the zero-storage anchor") {
  std::vector<BaseCase> cands{{.placement = {.level = 1, .uncached = 0}, .m = 1.0, .r = 1.0}};
  CHECK_THROWS_AS(ccplace::build_base_set(cands, 2, 2), std::invalid_argument);
}
