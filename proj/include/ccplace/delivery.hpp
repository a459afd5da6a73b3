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

#ifndef CCPLACE_DELIVERY_HPP_
#define CCPLACE_DELIVERY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccplace/demand_model.hpp"
#include "ccplace/placement.hpp"

namespace ccplace {

// d[k] is the (0-based) file requested by cache k.
class DemandVector {
 public:
  DemandVector(std::vector<int> files, int n);

  std::span<const int> files() const noexcept { return files_; }
  int k() const noexcept { return static_cast<int>(files_.size()); }

 private:
  std::vector<int> files_;
};

// Cache `cache` extracts `size` file units of X^{d_cache}_{S \ cache}.
struct MessageComponent {
  int cache = 0;
  double size = 0.0;
};

// XOR of the components over subset S, zero padded to the longest one.
struct Message {
  std::uint32_t subset = 0;
  double length = 0.0;
  std::vector<MessageComponent> components;
};

struct DeliveryTrace {
  int k = 0;
  std::vector<Message> messages;  // nonzero-length messages only
  double total_rate = 0.0;
  std::vector<double> local_mass;           // requested file already cached, per cache
  std::vector<double> per_cache_recovered;  // local + delivered, per cache
};

// One message per nonempty subset S with length max_{k in S} x(d_k, S \ k).
DeliveryTrace scc_deliver(const DemandVector& demand, const SubfilePlacement& sub);

// Total SCC rate only, without building the trace.
double scc_rate(std::span<const int> demand, const SubfilePlacement& sub);

// Recomputes each cache's recovered fraction from the trace's messages and
// local masses; true iff every cache recovers its whole file (1e-12).
bool verify_decodability(const DeliveryTrace& trace);

// Probability-weighted sum over all N^K demand vectors (N^K <= 10^6).
double exhaustive_expected_rate(const PlacementMatrix& y, const PopularityDistribution& dist);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  bool standard_error_defined = false;  // false for a single trial
  std::size_t trials = 0;
};

// Demand entries are drawn by inverse CDF from a counter-based stream keyed
// by (seed, trial, cache), so results do not depend on the split of trials
// across workers beyond floating-point reduction order.
MonteCarloEstimate monte_carlo_rate(const PlacementMatrix& y,
                                    const PopularityDistribution& dist, std::size_t trials,
                                    std::uint64_t seed, unsigned workers = 1);

// Draw used by monte_carlo_rate: uniform in [0, 1).
double demand_uniform(std::uint64_t seed, std::uint64_t trial, int cache, int k);

// Demand vector of one Monte-Carlo trial.
std::vector<int> sample_demand(const PopularityDistribution& dist, std::uint64_t seed,
                               std::uint64_t trial, int k);

}  // namespace ccplace

#endif  // CCPLACE_DELIVERY_HPP_
