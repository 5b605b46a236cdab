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

// Command-line experiment runner. All domain work goes through the C API;
// this binary only parses flags, moves files around and renders output.
//
// Exit codes: 0 success, 1 suite/row failure, 2 configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqm/capi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;

struct StringGuard {
  char* text = nullptr;
  ~StringGuard() { pqm_string_free(text); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return out.good();
}

int config_exit_for(pqm_status status) {
  switch (status) {
    case PQM_ERR_PARSE:
    case PQM_ERR_NOT_FOUND:
    case PQM_ERR_INVALID_ARGUMENT:
    case PQM_ERR_IO:
      return kExitConfigError;
    case PQM_ERR_SUITE_FAILED:
      return kExitFailure;
    default:
      return kExitFailure;
  }
}

void report_error(pqm_status status) {
  std::cerr << "error (" << pqm_status_name(status) << "): " << pqm_last_error()
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"postselected-metrology compression experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config_path, "config JSON path");
    if (config_required) opt->required();
    cmd->add_option("--out", out_path, "output path ('-' for stdout)");
    cmd->add_option("--seed", seed, "seed override")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--threads", threads, "worker threads for sweeps");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run a sweep config, emit CSV");
  add_common(run_cmd, true);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the randomized verification suites");
  add_common(verify_cmd, false);
  CLI::App* catalog_cmd =
      app.add_subcommand("catalog", "list built-in models and channels");
  catalog_cmd->add_option("--out", out_path, "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  pqm_run_options options{};
  options.has_seed = seed_given ? 1 : 0;
  options.seed = seed;
  options.threads = threads;

  if (catalog_cmd->parsed()) {
    StringGuard catalog;
    const pqm_status status = pqm_catalog(&catalog.text);
    if (status != PQM_OK) {
      report_error(status);
      return kExitFailure;
    }
    return write_output(out_path, std::string(catalog.text) + "\n")
               ? kExitOk
               : kExitConfigError;
  }

  std::string config_text;
  if (!config_path.empty()) {
    try {
      config_text = read_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfigError;
    }
  }

  if (run_cmd->parsed()) {
    StringGuard csv;
    int flagged = 0;
    const pqm_status status =
        pqm_run(config_text.c_str(), &options, &csv.text, &flagged);
    if (status != PQM_OK) {
      report_error(status);
      return config_exit_for(status);
    }
    if (!write_output(out_path, csv.text)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitConfigError;
    }
    if (flagged > 0) {
      std::cerr << flagged << " row(s) flagged with errors\n";
      return kExitFailure;
    }
    return kExitOk;
  }

  // verify
  StringGuard report;
  const pqm_status status = pqm_verify(
      config_text.empty() ? nullptr : config_text.c_str(), &options,
      &report.text);
  if (status != PQM_OK && status != PQM_ERR_SUITE_FAILED) {
    report_error(status);
    return config_exit_for(status);
  }

  try {
    const nlohmann::json summary = nlohmann::json::parse(report.text);
    for (const auto& suite : summary.at("suites")) {
      std::cout << (suite.at("failures").get<int>() == 0 ? "PASS " : "FAIL ")
                << suite.at("name").get<std::string>() << ": "
                << suite.at("cases").get<int>() << " cases, max residual "
                << suite.at("max_residual").get<double>() << "\n";
      for (const auto& msg : suite.at("messages")) {
        std::cout << "    " << msg.get<std::string>() << "\n";
      }
    }
  } catch (const std::exception&) {
    std::cout << report.text << "\n";
  }
  if (!out_path.empty()) {
    write_output(out_path, std::string(report.text) + "\n");
  }
  return status == PQM_OK ? kExitOk : kExitFailure;
}
