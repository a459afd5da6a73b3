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

#ifndef CCPLACE_CLI_HPP_
#define CCPLACE_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ccplace/demand_model.hpp"
#include "json.hpp"

namespace ccplace::cli {

// Everything a subcommand needs. Loaded from --config (JSON, same keys)
// and then overridden by explicit flags.
struct RunConfig {
  int k = 4;
  int n = 5;
  double alpha = 1.0;
  std::optional<std::vector<double>> probs;  // takes precedence over zipf
  std::optional<double> m;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  int grid = 9;
  double tol = 1e-6;
  std::string format;  // empty: the command's default (CSV for sweep, else JSON)
  std::string placement_path;
  std::string base_path;
  bool literal_interp = false;
  bool trace = false;
  unsigned workers = 1;

  PopularityDistribution distribution() const;
  int files() const;
  void validate() const;
};

// Keys: k, distribution ({"zipf": {...}} or {"probs": [...]}) or top-level
// zipf/probs, m, trials, seed, grid, tol, format, workers.
RunConfig config_from_json(const nlohmann::json& j);

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

CommandResult cmd_base(const RunConfig& cfg);
CommandResult cmd_place(const RunConfig& cfg);
CommandResult cmd_rate(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_oracle(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

// Full command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccplace::cli

#endif  // CCPLACE_CLI_HPP_
