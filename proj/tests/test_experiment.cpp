// Copyright 2026 The pqm authors
//
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

#include <doctest.h>

#include <sstream>

#include "pqm/experiment.hpp"

using namespace pqm;

namespace {

// CSV body with the metadata line stripped.
std::string body_of(const ResultTable& table) {
  const std::string csv = table.to_csv();
  std::string body;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    body += line;
    body += '\n';
  }
  return body;
}

nlohmann::json fig2a_config() {
  return nlohmann::json::parse(R"({
    "model": {"name": "von_neumann",
              "params": {"theta": 1.0471975511965976, "sigma": 1.0, "modes": 24}},
    "channels": [
      {"name": "qubit_lcc", "label": "reflected", "params": {}},
      {"name": "wva", "label": "wva", "params": {"theta_star": -2.0843951023931953}},
      {"name": "meter_lcc", "label": "meter", "params": {"epsilon": 1e-4}}
    ],
    "sweep": {"variable": "x", "grid": {"start": -0.2, "stop": 0.2, "count": 5}},
    "outputs": ["one_minus_gamma", "eta"],
    "seed": 3
  })");
}

}  // namespace

TEST_CASE("sweep over x with several channels") {
  const ExperimentConfig config = config_from_json(fig2a_config());
  const ResultTable table = run(config);

  CHECK(table.flagged == 0);
  REQUIRE(table.rows.size() == 5);
  REQUIRE(table.columns.size() == 1 + 3 * 2);
  CHECK(table.columns[0] == "x");
  CHECK(table.columns[1] == "one_minus_gamma.reflected");
  CHECK(table.columns[2] == "eta.reflected");

  // the reflected-angle channel is exactly lossless at the center of the
  // sweep and degrades smoothly away from it
  for (const auto& row : table.rows) {
    REQUIRE(row.values[1].has_value());
    CHECK(*row.values[1] >= 0.9);
    CHECK(row.status == "ok");
  }
  CHECK(*table.rows[2].values[1] >= 1.0 - 1e-12);  // x = 0
}

TEST_CASE("reruns are byte-identical apart from the metadata line") {
  const ExperimentConfig config = config_from_json(fig2a_config());
  const std::string first = body_of(run(config));
  const std::string second = body_of(run(config));
  CHECK(first == second);

  ExperimentConfig threaded = config;
  threaded.threads = 4;
  CHECK(body_of(run(threaded)) == first);
}

TEST_CASE("ratio sweep rebuilds the model per point") {
  const nlohmann::json config_json = nlohmann::json::parse(R"({
    "model": {"name": "three_qubit",
              "params": {"omega0": 1.0, "theta": 1.0471975511965976, "p1": 0.6666666666666666}},
    "channel": {"name": "energy_subspace", "params": {"epsilon": 1e-4}},
    "x": 1e-5,
    "sweep": {"variable": "ratio", "grid": {"start": 0.01, "stop": 1.0, "count": 5, "scale": "log"}},
    "outputs": ["one_minus_gamma", "eta"],
    "seed": 9
  })");
  const ResultTable table = run(config_from_json(config_json));
  CHECK(table.flagged == 0);
  REQUIRE(table.rows.size() == 5);
  // loss grows with the ratio
  CHECK(*table.rows.front().values[1] > *table.rows.back().values[1]);
}

TEST_CASE("verify configs produce one row per suite") {
  const nlohmann::json config_json = nlohmann::json::parse(
      R"({"kind": "verify", "cases": 12, "seed": 5})");
  const ResultTable table = run(config_from_json(config_json));
  CHECK(table.rows.size() == 4);
  CHECK(table.flagged == 0);
  for (const auto& row : table.rows) {
    CHECK(row.status.rfind("ok:", 0) == 0);
  }
}

TEST_CASE("failures are flagged rows, not silent drops") {
  SUBCASE("a crushed sample reports the null retained outcome") {
    const nlohmann::json config_json = nlohmann::json::parse(R"({
      "model": {"name": "von_neumann", "params": {"modes": 16}},
      "channel": {"name": "wva",
                  "params": {"theta_star": -2.0943951023931953}},
      "x": 0.0,
      "outputs": ["gamma"],
      "seed": 2
    })");
    const ResultTable table = run(config_from_json(config_json));
    REQUIRE(table.rows.size() == 1);
    CHECK(table.flagged == 1);
    CHECK(table.rows.front().status.find("null retained outcome") !=
          std::string::npos);
    CHECK_FALSE(table.rows.front().values[1].has_value());
  }

  SUBCASE("a corrupted measurement document reports its invariant") {
    const nlohmann::json config_json = nlohmann::json::parse(R"({
      "model": {"name": "two_level", "params": {"delta": 1.0}},
      "channel": {"name": "povm", "params": {"document": {
        "dim": 2,
        "elements": [
          {"label": "keep", "matrix": [[[0.9, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.9, 0.0]]]},
          {"label": "rest", "matrix": [[[0.3, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.3, 0.0]]]}
        ],
        "retained": ["keep"]
      }}},
      "x": 0.1,
      "outputs": ["gamma"],
      "seed": 2
    })");
    const ResultTable table = run(config_from_json(config_json));
    CHECK(table.flagged == 1);
    CHECK(table.rows.front().status.find("identity") != std::string::npos);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(
      config_from_json(nlohmann::json::parse(R"({"kind": "nonsense"})")),
      Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(
                      R"({"model": {"name": "two_level"}})")),
                  Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({
      "model": {"name": "two_level"},
      "channel": {"name": "scaled_rho"},
      "sweep": {"variable": "volume", "grid": {"values": [1.0]}}
    })")),
                  Error);
  // unknown models surface when the run starts
  const ExperimentConfig config = config_from_json(nlohmann::json::parse(R"({
      "model": {"name": "no_such_model"},
      "channel": {"name": "scaled_rho", "params": {"lambda": 0.2}}
    })"));
  CHECK_THROWS_AS(run(config), Error);
}

TEST_CASE("CSV shape") {
  const nlohmann::json config_json = nlohmann::json::parse(R"({
    "model": {"name": "two_level", "params": {"delta": 1.0}},
    "channel": {"name": "two_level_lcc", "params": {"lambda": 0.5}},
    "x": 0.2,
    "outputs": ["gamma", "c", "eta", "p_check", "I_rho", "I_post", "residuals"],
    "seed": 4
  })");
  const ResultTable table = run(config_from_json(config_json));
  const std::string csv = table.to_csv();
  CHECK(csv.rfind("# {", 0) == 0);
  CHECK(csv.find("x,gamma,c,eta,p_check,I_rho,I_post,residual_cross,"
                 "residual_perp,status\n") != std::string::npos);
  // single channel: columns stay unprefixed
  CHECK(table.columns.size() == 9);  // x + 6 scalars + 2 residual columns
}
