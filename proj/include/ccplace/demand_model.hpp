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

#ifndef CCPLACE_DEMAND_MODEL_HPP_
#define CCPLACE_DEMAND_MODEL_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ccplace {

// File request probabilities, sorted ascending (least popular file first).
// Files are 0-based throughout the C++ API.
class PopularityDistribution {
 public:
  // Accepts probabilities in any order. Input must sum to 1 within 1e-6 and
  // is renormalized; the sorted permutation is remembered in
  // original_index().
  static PopularityDistribution from_probs(std::vector<double> probs);

  // Rank-r file gets weight r^-alpha, r = 1..n.
  static PopularityDistribution zipf(int n, double alpha);

  static PopularityDistribution uniform(int n) { return zipf(n, 0.0); }

  std::size_t size() const noexcept { return probs_.size(); }
  int n() const noexcept { return static_cast<int>(probs_.size()); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

  // original_index()[i] is the input position of sorted file i.
  std::span<const std::size_t> original_index() const noexcept {
    return original_index_;
  }

  // prefix_mass(j) = p_0 + ... + p_{j-1}, j in [0, N].
  double prefix_mass(std::size_t j) const { return prefix_[j]; }

 private:
  PopularityDistribution() = default;

  std::vector<double> probs_;
  std::vector<std::size_t> original_index_;
  std::vector<double> prefix_;
};

// A nonempty set of distinct file indices.
class FileGroup {
 public:
  explicit FileGroup(std::vector<int> members);
  FileGroup(std::initializer_list<int> members)
      : FileGroup(std::vector<int>(members)) {}

  std::span<const int> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<int> members_;  // sorted, unique
};

// Sum of p_n over the group.
double subset_mass(const PopularityDistribution& dist, const FileGroup& group);

// Probability that s i.i.d. draws from `dist` realize exactly the set of
// distinct files `group`. Inclusion-exclusion over the 2^|group| subsets.
double group_probability(const PopularityDistribution& dist, int s,
                         const FileGroup& group);

// Same quantity when the subset masses P(h), h ⊆ group, are already known:
// masses[mask] is the mass of the sub-collection selected by `mask`.
double group_probability_from_masses(std::span<const double> masses, int s);

}  // namespace ccplace

#endif  // CCPLACE_DEMAND_MODEL_HPP_
