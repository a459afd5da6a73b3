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

#include "ccplace/delivery.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "ccplace/errors.hpp"

namespace ccplace {

namespace {

constexpr double kDecodeTolerance = 1e-12;
constexpr double kMaxDemandVectors = 1e6;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_shapes(std::span<const int> demand, const SubfilePlacement& sub) {
  if (static_cast<int>(demand.size()) != sub.k()) {
    throw std::invalid_argument("demand vector length must equal K");
  }
  for (int f : demand) {
    if (f < 0 || f >= sub.n()) throw std::invalid_argument("demand file index out of range");
  }
}

int sample_file(const PopularityDistribution& dist, double u) {
  // First file whose cumulative mass exceeds u.
  int lo = 0;
  int hi = dist.n() - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (dist.prefix_mass(static_cast<std::size_t>(mid + 1)) > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    count += 1.0;
    const double delta = v - mean;
    mean += delta / count;
    m2 += delta * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }
};

}  // namespace

DemandVector::DemandVector(std::vector<int> files, int n) : files_(std::move(files)) {
  if (files_.empty()) throw std::invalid_argument("demand vector must be nonempty");
  for (int f : files_) {
    if (f < 0 || f >= n) throw std::invalid_argument("demand file index out of range");
  }
}

DeliveryTrace scc_deliver(const DemandVector& demand, const SubfilePlacement& sub) {
  const auto d = demand.files();
  check_shapes(d, sub);
  const int k = sub.k();
  DeliveryTrace trace;
  trace.k = k;
  trace.local_mass.assign(static_cast<std::size_t>(k), 0.0);
  const std::uint32_t all = static_cast<std::uint32_t>(sub.subsets());
  for (int cache = 0; cache < k; ++cache) {
    const std::uint32_t bit = 1u << cache;
    for (std::uint32_t s = bit; s < all; s = (s + 1) | bit) {
      trace.local_mass[static_cast<std::size_t>(cache)] += sub(d[static_cast<std::size_t>(cache)], s);
    }
  }
  trace.per_cache_recovered = trace.local_mass;

  for (std::uint32_t subset = 1; subset < all; ++subset) {
    Message msg{.subset = subset, .length = 0.0, .components = {}};
    for (std::uint32_t rest = subset; rest != 0; rest &= rest - 1) {
      const int cache = std::countr_zero(rest);
      const double size = sub(d[static_cast<std::size_t>(cache)], subset & ~(1u << cache));
      msg.length = std::max(msg.length, size);
      if (size > 0.0) msg.components.push_back({.cache = cache, .size = size});
    }
    if (msg.length > 0.0) {
      for (const auto& c : msg.components) {
        trace.per_cache_recovered[static_cast<std::size_t>(c.cache)] += c.size;
      }
      trace.total_rate += msg.length;
      trace.messages.push_back(std::move(msg));
    }
  }
  return trace;
}

double scc_rate(std::span<const int> demand, const SubfilePlacement& sub) {
  check_shapes(demand, sub);
  const std::uint32_t all = static_cast<std::uint32_t>(sub.subsets());
  double total = 0.0;
  for (std::uint32_t subset = 1; subset < all; ++subset) {
    double length = 0.0;
    for (std::uint32_t rest = subset; rest != 0; rest &= rest - 1) {
      const int cache = std::countr_zero(rest);
      length = std::max(length, sub(demand[static_cast<std::size_t>(cache)], subset & ~(1u << cache)));
    }
    total += length;
  }
  return total;
}

bool verify_decodability(const DeliveryTrace& trace) {
  if (trace.local_mass.size() != static_cast<std::size_t>(trace.k)) return false;
  std::vector<double> recovered = trace.local_mass;
  for (const Message& msg : trace.messages) {
    for (const auto& c : msg.components) {
      // The receiver must be addressed by the message; every other member of
      // S holds X_{S \ receiver} because it belongs to S \ receiver.
      if (c.cache < 0 || c.cache >= trace.k) return false;
      if ((msg.subset & (1u << c.cache)) == 0) return false;
      if (c.size > msg.length + kDecodeTolerance) return false;
      recovered[static_cast<std::size_t>(c.cache)] += c.size;
    }
  }
  return std::all_of(recovered.begin(), recovered.end(),
                     [](double v) { return std::abs(v - 1.0) <= kDecodeTolerance; });
}

double exhaustive_expected_rate(const PlacementMatrix& y, const PopularityDistribution& dist) {
  if (y.n() != dist.n()) throw std::invalid_argument("placement/distribution size mismatch");
  const int k = y.k();
  const int n = y.n();
  if (std::pow(static_cast<double>(n), k) > kMaxDemandVectors) {
    throw ResourceLimitError("exhaustive enumeration limited to N^K <= 10^6");
  }
  const SubfilePlacement sub = expand_subfiles(y);
  std::vector<int> demand(static_cast<std::size_t>(k), 0);
  double sum = 0.0;
  double compensation = 0.0;
  while (true) {
    double prob = 1.0;
    for (int f : demand) prob *= dist[static_cast<std::size_t>(f)];
    if (prob > 0.0) {
      // Neumaier summation.
      const double term = prob * scc_rate(demand, sub);
      const double t = sum + term;
      compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    int pos = 0;
    while (pos < k && ++demand[static_cast<std::size_t>(pos)] == n) {
      demand[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return sum + compensation;
}

double demand_uniform(std::uint64_t seed, std::uint64_t trial, int cache, int k) {
  const std::uint64_t key = splitmix64(seed ^ 0xD1B54A32D192ED03ULL);
  const std::uint64_t counter = trial * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(cache);
  return static_cast<double>(splitmix64(key + splitmix64(counter)) >> 11) * 0x1.0p-53;
}

std::vector<int> sample_demand(const PopularityDistribution& dist, std::uint64_t seed,
                               std::uint64_t trial, int k) {
  std::vector<int> demand(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    demand[static_cast<std::size_t>(c)] = sample_file(dist, demand_uniform(seed, trial, c, k));
  }
  return demand;
}

MonteCarloEstimate monte_carlo_rate(const PlacementMatrix& y,
                                    const PopularityDistribution& dist, std::size_t trials,
                                    std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_rate: trials must be >= 1");
  if (y.n() != dist.n()) throw std::invalid_argument("placement/distribution size mismatch");
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::size_t>(trials, 256))));
  const SubfilePlacement sub = expand_subfiles(y);
  const int k = y.k();

  std::vector<Moments> partial(workers);
  auto run = [&](unsigned w) {
    const std::size_t begin = trials * w / workers;
    const std::size_t end = trials * (w + 1) / workers;
    std::vector<int> demand(static_cast<std::size_t>(k));
    for (std::size_t t = begin; t < end; ++t) {
      for (int c = 0; c < k; ++c) {
        demand[static_cast<std::size_t>(c)] = sample_file(dist, demand_uniform(seed, t, c, k));
      }
      partial[w].add(scc_rate(demand, sub));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  Moments total;
  for (const Moments& m : partial) total.merge(m);
  MonteCarloEstimate out{.estimate = total.mean, .standard_error = 0.0,
                         .standard_error_defined = trials > 1, .trials = trials};
  if (trials > 1) {
    out.standard_error = std::sqrt(total.m2 / static_cast<double>(trials - 1) /
                                   static_cast<double>(trials));
  }
  return out;
}

}  // namespace ccplace
