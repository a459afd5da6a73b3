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

#ifndef CCPLACE_IO_HPP_
#define CCPLACE_IO_HPP_

#include "json.hpp"

#include "ccplace/basecases.hpp"
#include "ccplace/delivery.hpp"
#include "ccplace/demand_model.hpp"
#include "ccplace/optimizer.hpp"
#include "ccplace/placement.hpp"

// JSON interchange. File indices in JSON follow the 1-based convention
// (n_star = uncached + 1); subsets are bitmasks with bit k-1 for cache k.
namespace ccplace::io {

using nlohmann::json;

// {"zipf": {"n": N, "alpha": a}} or {"probs": [...]}.
PopularityDistribution distribution_from_json(const json& j);

json to_json(const PlacementMatrix& y);            // {"k", "n", "rows"}
PlacementMatrix placement_from_json(const json& j);

json to_json(const SubfilePlacement& sub);  // {"k", "n", "files": [[[mask, x], ...], ...]}

json to_json(const BaseCase& c);  // {"s_star", "n_star", "m", "r"}
BaseCase base_case_from_json(const json& j);

// {"k", "n", "probs", "cases": [...], "staircase": {...}}; an infinite
// price bound is written as null.
json to_json(const BaseCaseSet& base, const PriceStaircase& stairs,
             const PopularityDistribution& dist);
BaseCaseSet base_set_from_json(const json& j);

json to_json(const RmscSolution& sol);
json to_json(const DeliveryTrace& trace);

}  // namespace ccplace::io

#endif  // CCPLACE_IO_HPP_
