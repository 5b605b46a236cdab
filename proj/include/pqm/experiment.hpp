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

// Experiment runner: sweeps a model/channel configuration over a parameter
// grid and emits a CSV table, or runs the randomized verification suites.
// Reruns with the same config and seed produce byte-identical CSV bodies;
// only the '#'-prefixed metadata line (timestamp) may differ.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqm/suites.hpp"

namespace pqm {

struct ChannelConfig {
  std::string name;
  std::string label;
  nlohmann::json params = nlohmann::json::object();
};

struct SweepConfig {
  std::string variable;        // x, theta, epsilon, lambda or ratio
  std::vector<double> grid;
};

struct ExperimentConfig {
  std::string kind = "sweep";  // "sweep" or "verify"
  std::string model_name;
  nlohmann::json model_params = nlohmann::json::object();
  std::vector<ChannelConfig> channels;
  double x = 0.0;              // evaluation point when not sweeping x
  SweepConfig sweep;
  std::vector<std::string> outputs;
  std::uint64_t seed = 1;
  int threads = 1;
  // verify kind
  std::vector<std::string> suites;
  int cases = 60;

  nlohmann::json to_json() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);

struct ResultRow {
  std::vector<std::optional<double>> values;
  std::string status = "ok";
};

struct ResultTable {
  std::vector<std::string> columns;  // without the trailing status column
  std::vector<ResultRow> rows;
  std::string metadata;              // JSON payload of the '#' line
  int flagged = 0;                   // rows with a non-ok status

  std::string to_csv() const;
};

ResultTable run(const ExperimentConfig& config);

struct VerifySummary {
  std::vector<SuiteResult> suites;
  bool passed = true;

  nlohmann::json to_json() const;
};

VerifySummary run_verification(const ExperimentConfig& config);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace pqm
