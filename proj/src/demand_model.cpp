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

#include "ccplace/demand_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ccplace {

namespace {

constexpr double kSumTolerance = 1e-6;
constexpr std::size_t kMaxGroupSize = 30;

}  // namespace

PopularityDistribution PopularityDistribution::from_probs(
    std::vector<double> probs) {
  if (probs.empty()) {
    throw std::invalid_argument("popularity distribution needs at least one file");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("probabilities must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  }

  PopularityDistribution dist;
  dist.original_index_.resize(probs.size());
  std::iota(dist.original_index_.begin(), dist.original_index_.end(), 0);
  std::stable_sort(dist.original_index_.begin(), dist.original_index_.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });
  dist.probs_.reserve(probs.size());
  for (std::size_t i : dist.original_index_) dist.probs_.push_back(probs[i] / total);

  dist.prefix_.assign(probs.size() + 1, 0.0);
  for (std::size_t i = 0; i < dist.probs_.size(); ++i) {
    dist.prefix_[i + 1] = dist.prefix_[i] + dist.probs_[i];
  }
  dist.prefix_.back() = 1.0;
  return dist;
}

PopularityDistribution PopularityDistribution::zipf(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("zipf: file count must be positive");
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("zipf: exponent must be finite and >= 0");
  }
  // Ascending order: least popular rank first.
  std::vector<double> weights(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int rank = n - i;
    weights[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(rank), -alpha);
  }
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return from_probs(std::move(weights));
}

FileGroup::FileGroup(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("file group must be nonempty");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("file group members must be distinct");
  }
  if (members_.front() < 0) throw std::invalid_argument("negative file index");
}

namespace {

void check_range(const PopularityDistribution& dist, const FileGroup& group) {
  if (group.members().back() >= dist.n()) {
    throw std::invalid_argument("file index " + std::to_string(group.members().back()) +
                                " out of range for N=" + std::to_string(dist.n()));
  }
}

}  // namespace

double subset_mass(const PopularityDistribution& dist, const FileGroup& group) {
  check_range(dist, group);
  double mass = 0.0;
  for (int n : group.members()) mass += dist[static_cast<std::size_t>(n)];
  return mass;
}

double group_probability_from_masses(std::span<const double> masses, int s) {
  const std::size_t full = masses.size() - 1;
  const int g = std::popcount(full);
  double sum = 0.0;
  for (std::size_t h = 1; h <= full; ++h) {
    const double term = std::pow(masses[h], s);
    sum += ((g - std::popcount(h)) % 2 == 0) ? term : -term;
  }
  return sum;
}

double group_probability(const PopularityDistribution& dist, int s,
                         const FileGroup& group) {
  check_range(dist, group);
  if (s < 1) throw std::invalid_argument("group_probability: s must be >= 1");
  if (group.size() > static_cast<std::size_t>(s)) {
    throw std::invalid_argument("group_probability: |g| > s");
  }
  if (group.size() > kMaxGroupSize) {
    throw std::invalid_argument("group_probability: group too large to enumerate");
  }
  const std::size_t count = std::size_t{1} << group.size();
  std::vector<double> masses(count, 0.0);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const int low = std::countr_zero(mask);
    masses[mask] = masses[mask & (mask - 1)] +
                   dist[static_cast<std::size_t>(group.members()[static_cast<std::size_t>(low)])];
  }
  return std::max(0.0, group_probability_from_masses(masses, s));
}

}  // namespace ccplace
