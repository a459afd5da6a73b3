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

#include "ccplace/placement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ccplace/errors.hpp"

namespace ccplace {

namespace {

constexpr double kRowRepairTolerance = 1e-9;
constexpr double kEntryTolerance = 1e-12;
constexpr std::size_t kMaxSubfileEntries = std::size_t{1} << 27;

}  // namespace

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double result = 1.0;
  for (int i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return std::round(result);
}

PlacementMatrix::PlacementMatrix(int k, int n, std::vector<double> entries)
    : k_(k), n_(n), entries_(std::move(entries)) {
  if (k < 1 || n < 1) throw std::invalid_argument("placement needs K >= 1 and N >= 1");
  const auto cols = static_cast<std::size_t>(k + 1);
  if (entries_.size() != static_cast<std::size_t>(n) * cols) {
    throw std::invalid_argument("placement matrix must have N*(K+1) entries");
  }
  for (double& v : entries_) {
    if (!std::isfinite(v) || v < -kEntryTolerance || v > 1.0 + kEntryTolerance) {
      throw std::invalid_argument("placement entries must lie in [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  for (std::size_t row = 0; row < static_cast<std::size_t>(n); ++row) {
    auto first = entries_.begin() + static_cast<std::ptrdiff_t>(row * cols);
    double sum = 0.0;
    for (auto it = first; it != first + static_cast<std::ptrdiff_t>(cols); ++it) sum += *it;
    if (std::abs(sum - 1.0) > kRowRepairTolerance) {
      throw std::invalid_argument("placement row " + std::to_string(row) + " sums to " +
                                  std::to_string(sum));
    }
    if (sum != 1.0) {
      for (auto it = first; it != first + static_cast<std::ptrdiff_t>(cols); ++it) *it /= sum;
    }
  }
}

PlacementMatrix PlacementMatrix::uncached(int k, int n) {
  return canonical_to_matrix({.level = 0, .uncached = n}, k, n);
}

PlacementMatrix blend(double theta, const PlacementMatrix& a, const PlacementMatrix& b) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("blend weight outside [0, 1]");
  if (a.k() != b.k() || a.n() != b.n()) throw std::invalid_argument("blend shape mismatch");
  std::vector<double> out(a.entries().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = theta * a.entries()[i] + (1.0 - theta) * b.entries()[i];
  }
  return PlacementMatrix(a.k(), a.n(), std::move(out));
}

void validate(const CanonicalPlacement& c, int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("canonical placement needs K, N >= 1");
  if (c.level < 0 || c.level > k) throw std::invalid_argument("s* outside 0..K");
  if (c.uncached < 0 || c.uncached > n) throw std::invalid_argument("n* outside 1..N+1");
  if (c.uncached < n && c.level == 0) {
    throw std::invalid_argument("s* = 0 requires every file uncached (n* = N+1)");
  }
}

PlacementMatrix canonical_to_matrix(const CanonicalPlacement& c, int k, int n) {
  validate(c, k, n);
  const auto cols = static_cast<std::size_t>(k + 1);
  std::vector<double> entries(static_cast<std::size_t>(n) * cols, 0.0);
  for (int file = 0; file < n; ++file) {
    const int level = file < c.uncached ? 0 : c.level;
    entries[static_cast<std::size_t>(file) * cols + static_cast<std::size_t>(level)] = 1.0;
  }
  return PlacementMatrix(k, n, std::move(entries));
}

double storage(const PlacementMatrix& y) {
  double total = 0.0;
  for (int file = 0; file < y.n(); ++file) {
    for (int s = 1; s <= y.k(); ++s) total += s * y(file, s);
  }
  return total / y.k();
}

std::vector<double> level_storage(const PlacementMatrix& y) {
  std::vector<double> q(static_cast<std::size_t>(y.k() + 1), 0.0);
  for (int s = 1; s <= y.k(); ++s) {
    double column = 0.0;
    for (int file = 0; file < y.n(); ++file) column += y(file, s);
    q[static_cast<std::size_t>(s)] = s * column / y.k();
  }
  return q;
}

GroupTable::GroupTable(const PopularityDistribution& dist, int k) : k_(k), n_(dist.n()) {
  if (k < 1) throw std::invalid_argument("cache count must be >= 1");
  const int max_size = std::min(k, n_);

  std::size_t total = 0;
  for (int j = 1; j <= max_size; ++j) {
    const double c = binomial(n_, j);
    if (c > static_cast<double>(kMaxGroups) || total + static_cast<std::size_t>(c) > kMaxGroups) {
      throw ResourceLimitError("rate enumeration needs more than " +
                               std::to_string(kMaxGroups) + " file groups (N=" +
                               std::to_string(n_) + ", K=" + std::to_string(k) + ")");
    }
    total += static_cast<std::size_t>(c);
  }

  offsets_.reserve(total + 1);
  offsets_.push_back(0);
  pi_.reserve(total * static_cast<std::size_t>(k));
  std::vector<double> masses;
  std::vector<int> combo;
  for (int j = 1; j <= max_size; ++j) {
    combo.resize(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) combo[static_cast<std::size_t>(i)] = i;
    const std::size_t count = std::size_t{1} << j;
    masses.assign(count, 0.0);
    while (true) {
      for (std::size_t mask = 1; mask < count; ++mask) {
        const auto low = static_cast<std::size_t>(std::countr_zero(mask));
        masses[mask] = masses[mask & (mask - 1)] + dist[static_cast<std::size_t>(combo[low])];
      }
      members_.insert(members_.end(), combo.begin(), combo.end());
      offsets_.push_back(members_.size());
      for (int s = 1; s <= k; ++s) {
        pi_.push_back(s < j ? 0.0 : std::max(0.0, group_probability_from_masses(masses, s)));
      }
      // Next combination in lexicographic order.
      int pos = j - 1;
      while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == n_ - j + pos) --pos;
      if (pos < 0) break;
      ++combo[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < j; ++i) {
        combo[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }
}

double GroupTable::rate(const PlacementMatrix& y) const {
  if (y.k() != k_ || y.n() != n_) throw std::invalid_argument("placement/table shape mismatch");
  std::vector<double> level_sum(static_cast<std::size_t>(k_), 0.0);
  for (std::size_t g = 0; g < group_count(); ++g) {
    const auto group = members(g);
    const int first_level = static_cast<int>(group.size()) - 1;
    for (int s = first_level; s < k_; ++s) {
      double top = 0.0;
      for (int file : group) top = std::max(top, y(file, s));
      level_sum[static_cast<std::size_t>(s)] += probability(g, s + 1) * top;
    }
  }
  double rate = 0.0;
  for (int s = 0; s < k_; ++s) {
    rate += static_cast<double>(k_ - s) / (s + 1) * level_sum[static_cast<std::size_t>(s)];
  }
  return rate;
}

double expected_rate_exact(const PlacementMatrix& y, const PopularityDistribution& dist) {
  if (y.n() != dist.n()) throw std::invalid_argument("placement/distribution size mismatch");
  return GroupTable(dist, y.k()).rate(y);
}

namespace {

// (K-s)/(s+1) * (1 - (1 - P(A))^{s+1}) for A = the files past `uncached`.
double cached_level_rate(const CanonicalPlacement& c, const PopularityDistribution& dist,
                         int k) {
  if (c.uncached >= dist.n() || c.level >= k) return 0.0;
  const double outside = dist.prefix_mass(static_cast<std::size_t>(c.uncached));
  return static_cast<double>(k - c.level) / (c.level + 1) *
         (1.0 - std::pow(outside, c.level + 1));
}

}  // namespace

double expected_rate_closed(const CanonicalPlacement& c1,
                            const std::optional<CanonicalPlacement>& c2, double theta,
                            const PopularityDistribution& dist, int k) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta outside [0, 1]");
  const int n = dist.n();
  validate(c1, k, n);
  const double uncoded1 = k * dist.prefix_mass(static_cast<std::size_t>(c1.uncached));
  const double coded1 = cached_level_rate(c1, dist, k);
  if (!c2) return uncoded1 + coded1;

  validate(*c2, k, n);
  const double uncoded2 = k * dist.prefix_mass(static_cast<std::size_t>(c2->uncached));
  const double coded2 = cached_level_rate(*c2, dist, k);
  const double uncoded = theta * uncoded1 + (1.0 - theta) * uncoded2;

  const bool active1 = c1.uncached < n;
  const bool active2 = c2->uncached < n;
  if (!active1 || !active2 || c1.level != c2->level) {
    // Distinct levels never share a max term.
    return uncoded + theta * coded1 + (1.0 - theta) * coded2;
  }
  // Same level, nested cached sets: every group touching the smaller set
  // sees the full blended mass; groups touching only the larger set see the
  // larger set's weight.
  const bool first_larger = c1.uncached <= c2->uncached;
  const double larger = first_larger ? coded1 : coded2;
  const double smaller = first_larger ? coded2 : coded1;
  const double larger_weight = first_larger ? theta : 1.0 - theta;
  return uncoded + smaller + larger_weight * (larger - smaller);
}

SubfilePlacement::SubfilePlacement(int k, int n, std::vector<double> fractions)
    : k_(k), n_(n), x_(std::move(fractions)) {
  if (k < 1 || n < 1) throw std::invalid_argument("subfile placement needs K, N >= 1");
  if (k > kMaxCaches) {
    throw ResourceLimitError("subset enumeration limited to K <= " + std::to_string(kMaxCaches));
  }
  if (x_.size() != static_cast<std::size_t>(n) * subsets()) {
    throw std::invalid_argument("subfile table must have N*2^K entries");
  }
  for (int file = 0; file < n; ++file) {
    double sum = 0.0;
    for (double v : row(file)) {
      if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("negative subfile fraction");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowRepairTolerance) {
      throw std::invalid_argument("subfile fractions of file " + std::to_string(file) +
                                  " sum to " + std::to_string(sum));
    }
  }
}

SubfilePlacement expand_subfiles(const PlacementMatrix& y) {
  const int k = y.k();
  if (k > SubfilePlacement::kMaxCaches) {
    throw ResourceLimitError("subfile expansion limited to K <= " +
                             std::to_string(SubfilePlacement::kMaxCaches));
  }
  const std::size_t subsets = std::size_t{1} << k;
  if (static_cast<std::size_t>(y.n()) * subsets > kMaxSubfileEntries) {
    throw ResourceLimitError("subfile table would exceed " +
                             std::to_string(kMaxSubfileEntries) + " entries");
  }
  std::vector<double> per_subset(static_cast<std::size_t>(k + 1));
  std::vector<double> x(static_cast<std::size_t>(y.n()) * subsets);
  for (int file = 0; file < y.n(); ++file) {
    for (int s = 0; s <= k; ++s) {
      per_subset[static_cast<std::size_t>(s)] = y(file, s) / binomial(k, s);
    }
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      x[static_cast<std::size_t>(file) * subsets + mask] =
          per_subset[static_cast<std::size_t>(std::popcount(mask))];
    }
  }
  return SubfilePlacement(k, y.n(), std::move(x));
}

}  // namespace ccplace
