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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccplace/basecases.hpp"
#include "ccplace/cli.hpp"
#include "ccplace/io.hpp"
#include "ccplace/optimizer.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ccplace");
  std::ostringstream out, err;
  const int code = ccplace::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("ccplace_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("base then place reproduces solve_rmsc bit for bit") {
  const auto base = cli({"base", "--k", "4", "--n", "5", "--zipf", "1"});
  REQUIRE(base.code == 0);
  const std::string path = temp_file("base.json", base.out);
  for (const char* m : {"0", "0.3", "1.25", "2.5", "4.7", "5"}) {
    const auto via_file = cli({"place", "--base", path, "--m", m});
    const auto direct = cli({"place", "--k", "4", "--n", "5", "--zipf", "1", "--m", m});
    REQUIRE(via_file.code == 0);
    CHECK(via_file.out == direct.out);

    const auto dist = ccplace::PopularityDistribution::zipf(5, 1.0);
    const auto cands = ccplace::enumerate_candidates(4, dist);
    const auto sol = ccplace::solve_rmsc(std::stod(m), ccplace::build_base_set(cands, 4, 5));
    const json parsed = json::parse(via_file.out);
    CHECK(parsed.at("rate").get<double>() == sol.rate);
    CHECK(parsed.at("m_used").get<double>() == sol.m_used);
    CHECK(ccplace::io::placement_from_json(parsed.at("placement")) == sol.y);
  }
  std::remove(path.c_str());
}

TEST_CASE("sweep CSV schema and bands") {
  const auto r = cli({"sweep", "--k", "5", "--n", "10", "--zipf", "1.4", "--grid", "11"});
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "M,rate,Q_1,Q_2,Q_3,Q_4,Q_5");
  int rows = 0;
  std::vector<std::vector<double>> table;
  while (std::getline(ss, line)) {
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(std::stod(cell));
    REQUIRE(row.size() == 7);
    int positive = 0;
    for (std::size_t s = 2; s < row.size(); ++s) positive += row[s] > 0.0;
    CHECK(positive <= 2);
    table.push_back(row);
    ++rows;
  }
  CHECK(rows == 11);
  CHECK(table.front()[0] == 0.0);
  CHECK(table.front()[1] == 5.0);
  CHECK(table.back()[0] == 10.0);
  CHECK(table.back()[1] == 0.0);
  CHECK(table.back()[6] == 10.0);
  for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i][1] <= table[i - 1][1]);

  const auto alias = cli({"sweep", "--k", "5", "--n", "10", "--zipf", "1.4", "--points", "11"});
  CHECK(alias.out == r.out);
}

TEST_CASE("base CSV and uniform storages") {
  const auto r = cli({"base", "--k", "4", "--n", "8", "--zipf", "0", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("m,r,s_star,n_star\n", 0) == 0);
  const json j = json::parse(cli({"base", "--k", "4", "--n", "8", "--zipf", "0"}).out);
  std::vector<double> ms;
  for (const auto& c : j.at("cases")) ms.push_back(c.at("m").get<double>());
  CHECK(ms == std::vector<double>{0, 2, 4, 6, 8});
  CHECK(j.at("staircase").at("breakpoints")[0].at("gamma_hi").is_null());
}

TEST_CASE("verify passes on defaults and flags the literal coefficient") {
  const auto ok = cli({"verify", "--trials", "20000"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out).at("passed").get<bool>());

  const auto bad = cli({"verify", "--trials", "2000", "--literal-interp"});
  CHECK(bad.code == 1);
  const json report = json::parse(bad.out);
  bool flagged = false;
  for (const auto& c : report.at("checks"))
    if (c.at("name") == "hull_matches_sequential_scan") flagged = !c.at("passed").get<bool>();
  CHECK(flagged);
}

TEST_CASE("config file, overrides and determinism") {
  const std::string path =
      temp_file("cfg.json", R"({"k": 3, "distribution": {"probs": [0.6, 0.1, 0.3]}, "m": 0.5, "trials": 3000, "seed": 4})");
  const auto a = cli({"simulate", "--config", path});
  const auto b = cli({"simulate", "--config", path});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.at("m").get<double>() == 0.5);
  CHECK(j.at("stderr").get<double>() > 0.0);
  CHECK(j.at("trials").get<int>() == 3000);
  const auto other = cli({"simulate", "--config", path, "--seed", "5"});
  CHECK(json::parse(other.out).at("seed").get<int>() == 5);
  CHECK(json::parse(other.out).at("estimate") != j.at("estimate"));
  std::remove(path.c_str());
}

TEST_CASE("rate of a placement file and of an optimal budget") {
  const std::string path = temp_file("y.json", R"({"k": 4, "n": 3, "rows": [[1,0,0,0,0],[0,0,1,0,0],[0,0,1,0,0]]})");
  const auto r = cli({"rate", "--k", "4", "--probs", "0.2,0.3,0.5", "--placement", path});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("storage").get<double>() == 1.0);
  CHECK(std::abs(j.at("rate").get<double>() - (4 * 0.2 + 2.0 / 3 * (1 - 0.2 * 0.2 * 0.2))) <= 1e-12);
  std::remove(path.c_str());

  const auto opt = cli({"rate", "--k", "4", "--n", "4", "--zipf", "0", "--m", "0.5"});
  CHECK(std::abs(json::parse(opt.out).at("rate").get<double>() - 2.75) <= 1e-12);
}

TEST_CASE("oracle command") {
  const auto r = cli({"oracle", "--k", "3", "--n", "3", "--zipf", "0", "--m", "1", "--tol", "1e-6"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j.at("rate").get<double>() - 1.0) <= 1e-3);
  CHECK(j.at("gap_certificate").get<double>() <= 1e-6);
  CHECK(j.contains("iterations"));
}

TEST_CASE("validation errors exit nonzero with a message") {
  const auto m = cli({"place", "--k", "4", "--n", "5", "--m", "7"});
  CHECK(m.code != 0);
  CHECK_FALSE(m.err.empty());
  CHECK(cli({"sweep", "--grid", "1"}).code != 0);
  CHECK(cli({"base", "--probs", "0.5,0.7"}).code != 0);
  CHECK(cli({"base", "--k", "0"}).code != 0);
  CHECK(cli({"simulate", "--trials", "0"}).code != 0);
  CHECK(cli({"base", "--format", "xml"}).code != 0);
  CHECK(cli({}).code != 0);
}
