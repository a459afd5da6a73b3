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

#ifndef CCPLACE_BASECASES_HPP_
#define CCPLACE_BASECASES_HPP_

#include <span>
#include <vector>

#include "ccplace/demand_model.hpp"
#include "ccplace/placement.hpp"

namespace ccplace {

struct BaseCase {
  CanonicalPlacement placement;
  double m = 0.0;  // storage, files per cache
  double r = 0.0;  // expected rate, files
};

// Lower convex hull of the candidate (storage, rate) cloud, by increasing
// storage: starts at (0, K), ends at (N, 0), rates strictly decreasing.
struct BaseCaseSet {
  int k = 0;
  int n = 0;
  std::vector<BaseCase> cases;

  PlacementMatrix matrix(std::size_t i) const {
    return canonical_to_matrix(cases[i].placement, k, n);
  }
};

// The K*N + 1 threshold placements: the all-uncached anchor followed by
// every (level s, uncached count) pair with s in 1..K, uncached in 0..N-1.
std::vector<BaseCase> enumerate_candidates(int k, const PopularityDistribution& dist);

// Sort + monotone chain. Equal storages keep the minimum rate; points on or
// above a chord between neighbors are dropped.
BaseCaseSet build_base_set(std::span<const BaseCase> candidates, int k, int n);

// How the sequential scan interpolates memory sharing between the last kept
// case c and a later case j at the storage of case i.
enum class InterpolationRule {
  kConvex,   // (M_j - M_i)/(M_j - M_c) R_c + (M_i - M_c)/(M_j - M_c) R_j
  kLiteral,  // second coefficient (M_i - M_j)/(M_j - M_c), as sometimes printed
};

// Quadratic-time sequential dominance scan: a candidate is kept when it
// strictly beats memory sharing between the last kept case and every later
// candidate. With kConvex it agrees with build_base_set.
BaseCaseSet scan_base_set(std::span<const BaseCase> candidates, int k, int n,
                          InterpolationRule rule = InterpolationRule::kConvex);

// Optimal storage price as a function of the budget. Segment i covers the
// open interval (M_i, M_{i+1}); breakpoint i is the closed price interval
// at M_i, with an infinite upper end at M_0 = 0.
struct StaircaseSegment {
  double m_lo = 0.0;
  double m_hi = 0.0;
  double gamma = 0.0;
};

struct StaircaseBreakpoint {
  double m = 0.0;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
};

struct PriceStaircase {
  std::vector<StaircaseBreakpoint> breakpoints;
  std::vector<StaircaseSegment> segments;
};

PriceStaircase price_staircase(const BaseCaseSet& base);

}  // namespace ccplace

#endif  // CCPLACE_BASECASES_HPP_
