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

#include "ccplace/io.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ccplace::io {

PopularityDistribution distribution_from_json(const json& j) {
  if (j.contains("zipf")) {
    const json& z = j.at("zipf");
    return PopularityDistribution::zipf(z.at("n").get<int>(), z.value("alpha", 1.0));
  }
  if (j.contains("probs")) {
    return PopularityDistribution::from_probs(j.at("probs").get<std::vector<double>>());
  }
  throw std::invalid_argument("distribution needs a \"zipf\" or \"probs\" entry");
}

json to_json(const PlacementMatrix& y) {
  json rows = json::array();
  for (int file = 0; file < y.n(); ++file) {
    const auto r = y.row(file);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"k", y.k()}, {"n", y.n()}, {"rows", std::move(rows)}};
}

PlacementMatrix placement_from_json(const json& j) {
  const int k = j.at("k").get<int>();
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("placement JSON must have N rows");
  }
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k + 1));
  for (const auto& row : rows) {
    const auto values = row.get<std::vector<double>>();
    if (values.size() != static_cast<std::size_t>(k + 1)) {
      throw std::invalid_argument("placement JSON rows must have K+1 entries");
    }
    entries.insert(entries.end(), values.begin(), values.end());
  }
  return PlacementMatrix(k, n, std::move(entries));
}

json to_json(const SubfilePlacement& sub) {
  json files = json::array();
  for (int file = 0; file < sub.n(); ++file) {
    json entries = json::array();
    const auto row = sub.row(file);
    for (std::size_t mask = 0; mask < row.size(); ++mask) {
      if (row[mask] != 0.0) entries.push_back(json::array({mask, row[mask]}));
    }
    files.push_back(std::move(entries));
  }
  return {{"k", sub.k()}, {"n", sub.n()}, {"files", std::move(files)}};
}

json to_json(const BaseCase& c) {
  return {{"s_star", c.placement.level},
          {"n_star", c.placement.uncached + 1},
          {"m", c.m},
          {"r", c.r}};
}

BaseCase base_case_from_json(const json& j) {
  return {.placement = {.level = j.at("s_star").get<int>(),
                        .uncached = j.at("n_star").get<int>() - 1},
          .m = j.at("m").get<double>(),
          .r = j.at("r").get<double>()};
}

namespace {

json bound(double v) { return std::isinf(v) ? json(nullptr) : json(v); }

}  // namespace

json to_json(const BaseCaseSet& base, const PriceStaircase& stairs,
             const PopularityDistribution& dist) {
  json cases = json::array();
  for (const auto& c : base.cases) cases.push_back(to_json(c));
  json segments = json::array();
  for (const auto& s : stairs.segments) {
    segments.push_back({{"m_lo", s.m_lo}, {"m_hi", s.m_hi}, {"gamma", s.gamma}});
  }
  json breakpoints = json::array();
  for (const auto& b : stairs.breakpoints) {
    breakpoints.push_back({{"m", b.m}, {"gamma_lo", bound(b.gamma_lo)}, {"gamma_hi", bound(b.gamma_hi)}});
  }
  return {{"k", base.k},
          {"n", base.n},
          {"probs", std::vector<double>(dist.probs().begin(), dist.probs().end())},
          {"cases", std::move(cases)},
          {"staircase", {{"segments", std::move(segments)}, {"breakpoints", std::move(breakpoints)}}}};
}

BaseCaseSet base_set_from_json(const json& j) {
  BaseCaseSet base{.k = j.at("k").get<int>(), .n = j.at("n").get<int>(), .cases = {}};
  for (const auto& c : j.at("cases")) {
    BaseCase bc = base_case_from_json(c);
    validate(bc.placement, base.k, base.n);
    base.cases.push_back(bc);
  }
  for (std::size_t i = 1; i < base.cases.size(); ++i) {
    if (!(base.cases[i].m > base.cases[i - 1].m)) {
      throw std::invalid_argument("base-case storages must be strictly increasing");
    }
  }
  if (base.cases.size() < 2) throw std::invalid_argument("base set needs at least two cases");
  return base;
}

json to_json(const RmscSolution& sol) {
  const auto q = level_storage(sol.y);
  return {{"rate", sol.rate},
          {"m_used", sol.m_used},
          {"theta", sol.theta},
          {"lower", to_json(sol.lower)},
          {"upper", to_json(sol.upper)},
          {"q", std::vector<double>(q.begin() + 1, q.end())},
          {"placement", to_json(sol.y)}};
}

json to_json(const DeliveryTrace& trace) {
  json messages = json::array();
  for (const auto& m : trace.messages) {
    json parts = json::array();
    for (const auto& c : m.components) parts.push_back({{"cache", c.cache + 1}, {"size", c.size}});
    messages.push_back({{"subset", m.subset}, {"length", m.length}, {"components", std::move(parts)}});
  }
  return {{"k", trace.k},
          {"messages", std::move(messages)},
          {"total_rate", trace.total_rate},
          {"local_mass", trace.local_mass},
          {"per_cache_recovered", trace.per_cache_recovered},
          {"decodable", verify_decodability(trace)}};
}

}  // namespace ccplace::io
