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

#include "ccplace/basecases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace ccplace {

namespace {

constexpr double kCollinearTolerance = 1e-12;

bool by_storage(const BaseCase& a, const BaseCase& b) {
  return std::tie(a.m, a.r, a.placement.level, a.placement.uncached) <
         std::tie(b.m, b.r, b.placement.level, b.placement.uncached);
}

// Sorted by storage, one case per storage value (the lowest rate).
std::vector<BaseCase> sorted_unique(std::span<const BaseCase> candidates) {
  std::vector<BaseCase> points(candidates.begin(), candidates.end());
  std::sort(points.begin(), points.end(), by_storage);
  points.erase(std::unique(points.begin(), points.end(),
                           [](const BaseCase& a, const BaseCase& b) { return a.m == b.m; }),
               points.end());
  if (points.empty() || points.front().m != 0.0) {
    throw std::invalid_argument("candidates must include the zero-storage anchor");
  }
  return points;
}

// True when b lies strictly below the chord from a to c (a.m < b.m < c.m).
bool strictly_below_chord(const BaseCase& a, const BaseCase& b, const BaseCase& c) {
  const double lhs = (b.m - a.m) * (c.r - a.r);
  const double rhs = (b.r - a.r) * (c.m - a.m);
  return lhs - rhs > kCollinearTolerance * (std::abs(lhs) + std::abs(rhs));
}

}  // namespace

std::vector<BaseCase> enumerate_candidates(int k, const PopularityDistribution& dist) {
  const int n = dist.n();
  if (k < 1) throw std::invalid_argument("cache count must be >= 1");
  std::vector<BaseCase> out;
  out.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + 1);
  out.push_back({.placement = {.level = 0, .uncached = n}, .m = 0.0, .r = static_cast<double>(k)});
  for (int s = 1; s <= k; ++s) {
    for (int uncached = 0; uncached < n; ++uncached) {
      const CanonicalPlacement c{.level = s, .uncached = uncached};
      const double m = static_cast<double>((n - uncached) * s) / k;
      out.push_back({.placement = c, .m = m, .r = expected_rate_closed(c, std::nullopt, 1.0, dist, k)});
    }
  }
  return out;
}

BaseCaseSet build_base_set(std::span<const BaseCase> candidates, int k, int n) {
  const std::vector<BaseCase> points = sorted_unique(candidates);
  BaseCaseSet hull{.k = k, .n = n, .cases = {}};
  for (const BaseCase& p : points) {
    while (hull.cases.size() >= 2 &&
           !strictly_below_chord(hull.cases[hull.cases.size() - 2], hull.cases.back(), p)) {
      hull.cases.pop_back();
    }
    hull.cases.push_back(p);
  }
  return hull;
}

BaseCaseSet scan_base_set(std::span<const BaseCase> candidates, int k, int n,
                          InterpolationRule rule) {
  const std::vector<BaseCase> points = sorted_unique(candidates);
  BaseCaseSet kept{.k = k, .n = n, .cases = {points.front()}};
  for (std::size_t i = 1; i < points.size(); ++i) {
    const BaseCase& c = kept.cases.back();
    const BaseCase& p = points[i];
    bool beats_all = true;
    for (std::size_t j = i + 1; j < points.size() && beats_all; ++j) {
      const BaseCase& q = points[j];
      const double span = q.m - c.m;
      const double second = rule == InterpolationRule::kConvex ? (p.m - c.m) / span
                                                               : (p.m - q.m) / span;
      const double shared = (q.m - p.m) / span * c.r + second * q.r;
      beats_all = p.r < shared - kCollinearTolerance * (std::abs(shared) + 1.0);
    }
    if (beats_all) kept.cases.push_back(p);
  }
  return kept;
}

PriceStaircase price_staircase(const BaseCaseSet& base) {
  if (base.cases.size() < 2) throw std::invalid_argument("base set needs at least two cases");
  PriceStaircase out;
  const auto& cs = base.cases;
  for (std::size_t i = 1; i < cs.size(); ++i) {
    out.segments.push_back({.m_lo = cs[i - 1].m,
                            .m_hi = cs[i].m,
                            .gamma = (cs[i - 1].r - cs[i].r) / (cs[i].m - cs[i - 1].m)});
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double hi = i == 0 ? std::numeric_limits<double>::infinity() : out.segments[i - 1].gamma;
    const double lo = i + 1 == cs.size() ? 0.0 : out.segments[i].gamma;
    out.breakpoints.push_back({.m = cs[i].m, .gamma_lo = lo, .gamma_hi = hi});
  }
  return out;
}

}  // namespace ccplace
