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

#ifndef CCPLACE_PLACEMENT_HPP_
#define CCPLACE_PLACEMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccplace/demand_model.hpp"

namespace ccplace {

// Symmetric placement: y(n, s) is the fraction of file n stored, in
// aggregate, across all cache subsets of cardinality s. Rows sum to one.
class PlacementMatrix {
 public:
  // Row-major N x (K+1) entries. Rows whose sum is off by at most 1e-9 are
  // rescaled; anything worse is rejected.
  PlacementMatrix(int k, int n, std::vector<double> entries);

  // Every file entirely at level 0.
  static PlacementMatrix uncached(int k, int n);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  int columns() const noexcept { return k_ + 1; }

  double operator()(int file, int level) const {
    return entries_[static_cast<std::size_t>(file) * static_cast<std::size_t>(k_ + 1) +
                    static_cast<std::size_t>(level)];
  }
  std::span<const double> row(int file) const {
    return std::span<const double>(entries_).subspan(
        static_cast<std::size_t>(file) * static_cast<std::size_t>(k_ + 1),
        static_cast<std::size_t>(k_ + 1));
  }
  std::span<const double> entries() const noexcept { return entries_; }

  bool operator==(const PlacementMatrix&) const = default;

 private:
  int k_;
  int n_;
  std::vector<double> entries_;
};

// theta * a + (1 - theta) * b.
PlacementMatrix blend(double theta, const PlacementMatrix& a, const PlacementMatrix& b);

// Threshold placement: the `uncached` least popular files are not stored at
// all; every other file is split evenly across the cache subsets of size
// `level`. In 1-based terms n* = uncached + 1 and s* = level.
struct CanonicalPlacement {
  int level = 0;
  int uncached = 0;

  bool operator==(const CanonicalPlacement&) const = default;
};

void validate(const CanonicalPlacement& c, int k, int n);
PlacementMatrix canonical_to_matrix(const CanonicalPlacement& c, int k, int n);

// Files of storage used per cache: sum over n, s of (s/K) y(n, s).
double storage(const PlacementMatrix& y);

// Storage held at level s: Q_s = sum_n (s/K) y(n, s), s = 0..K.
std::vector<double> level_storage(const PlacementMatrix& y);

// Enumerates every file group of size 1..min(K, N) once and caches the
// demand-group probabilities pi_{s}^g for s = |g|..K.
class GroupTable {
 public:
  static constexpr std::size_t kMaxGroups = 10'000'000;

  GroupTable(const PopularityDistribution& dist, int k);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  std::size_t group_count() const noexcept { return offsets_.size() - 1; }

  // Members of group i.
  std::span<const int> members(std::size_t i) const {
    return std::span<const int>(members_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  // pi_s^g for group i; zero when |g| > s.
  double probability(std::size_t i, int s) const {
    return pi_[i * static_cast<std::size_t>(k_) + static_cast<std::size_t>(s - 1)];
  }

  // Expected delivery rate
  //   r(y) = sum_{s=0}^{K-1} (K-s)/(s+1) sum_g pi_{s+1}^g max_{n in g} y(n, s).
  double rate(const PlacementMatrix& y) const;

 private:
  int k_;
  int n_;
  std::vector<int> members_;
  std::vector<std::size_t> offsets_;
  std::vector<double> pi_;
};

// Exact expected SCC rate by group enumeration. Throws ResourceLimitError
// past GroupTable::kMaxGroups groups.
double expected_rate_exact(const PlacementMatrix& y, const PopularityDistribution& dist);

// Closed-form rate of a canonical placement or of the memory-sharing blend
// theta * c1 + (1 - theta) * c2.
double expected_rate_closed(const CanonicalPlacement& c1,
                            const std::optional<CanonicalPlacement>& c2, double theta,
                            const PopularityDistribution& dist, int k);

// Per-subset fractions x(n, S); subsets are bitmasks with bit k-1 set when
// cache k belongs to S.
class SubfilePlacement {
 public:
  static constexpr int kMaxCaches = 16;

  // Row-major N x 2^K table. Entries must be nonnegative and each file's
  // entries must sum to one within 1e-9.
  SubfilePlacement(int k, int n, std::vector<double> fractions);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  std::size_t subsets() const noexcept { return std::size_t{1} << k_; }

  double operator()(int file, std::uint32_t subset) const {
    return x_[static_cast<std::size_t>(file) * subsets() + subset];
  }
  std::span<const double> row(int file) const {
    return std::span<const double>(x_).subspan(static_cast<std::size_t>(file) * subsets(),
                                               subsets());
  }

 private:
  int k_;
  int n_;
  std::vector<double> x_;
};

// x(n, S) = y(n, |S|) / C(K, |S|).
SubfilePlacement expand_subfiles(const PlacementMatrix& y);

double binomial(int n, int r);

}  // namespace ccplace

#endif  // CCPLACE_PLACEMENT_HPP_
