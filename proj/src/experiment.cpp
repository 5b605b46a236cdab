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

#include "pqm/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <ctime>
#include <thread>

#include "pqm/models.hpp"
#include "pqm/version.hpp"

namespace pqm {

namespace {

using nlohmann::json;

std::vector<double> parse_grid(const json& j) {
  std::vector<double> grid;
  if (j.contains("values")) {
    for (const auto& v : j.at("values")) grid.push_back(v.get<double>());
  } else {
    const double start = j.at("start").get<double>();
    const double stop = j.at("stop").get<double>();
    const int count = j.at("count").get<int>();
    if (count < 1) {
      throw Error(ErrorCode::Parse, "grid count must be at least 1");
    }
    const std::string scale = j.contains("scale") ? j.at("scale").get<std::string>()
                                                  : std::string("linear");
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0
                                  : static_cast<double>(i) / (count - 1);
      if (scale == "linear") {
        grid.push_back(start + t * (stop - start));
      } else if (scale == "log") {
        if (start * stop <= 0.0) {
          throw Error(ErrorCode::Parse,
                      "log grids need endpoints of the same nonzero sign");
        }
        grid.push_back(start * std::pow(stop / start, t));
      } else {
        throw Error(ErrorCode::Parse, "unknown grid scale '" + scale + "'");
      }
    }
  }
  if (grid.empty()) {
    throw Error(ErrorCode::Parse, "sweep grid is empty");
  }
  return grid;
}

const std::vector<std::string> kSweepVariables = {"x", "theta", "epsilon",
                                                  "lambda", "ratio"};

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig config;
  try {
    if (j.contains("kind")) config.kind = j.at("kind").get<std::string>();
    if (config.kind != "sweep" && config.kind != "verify") {
      throw Error(ErrorCode::Parse, "config kind must be 'sweep' or 'verify'");
    }
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) config.threads = j.at("threads").get<int>();
    if (j.contains("cases")) config.cases = j.at("cases").get<int>();
    if (j.contains("suites")) {
      for (const auto& s : j.at("suites")) {
        config.suites.push_back(s.get<std::string>());
      }
    }
    if (config.kind == "verify") {
      if (config.suites.empty()) {
        config.suites = {"qfi", "povm", "lcc", "restricted"};
      }
      return config;
    }

    const json& model = j.at("model");
    config.model_name = model.at("name").get<std::string>();
    if (model.contains("params")) config.model_params = model.at("params");

    json channel_list = json::array();
    if (j.contains("channels")) {
      channel_list = j.at("channels");
    } else if (j.contains("channel")) {
      channel_list.push_back(j.at("channel"));
    } else {
      throw Error(ErrorCode::Parse, "config needs 'channel' or 'channels'");
    }
    for (const auto& c : channel_list) {
      ChannelConfig cc;
      cc.name = c.at("name").get<std::string>();
      cc.label = c.contains("label") ? c.at("label").get<std::string>() : cc.name;
      if (c.contains("params")) cc.params = c.at("params");
      config.channels.push_back(std::move(cc));
    }

    if (j.contains("x")) config.x = j.at("x").get<double>();
    if (j.contains("sweep")) {
      const json& sweep = j.at("sweep");
      config.sweep.variable = sweep.at("variable").get<std::string>();
      bool known = false;
      for (const auto& v : kSweepVariables) known |= v == config.sweep.variable;
      if (!known) {
        throw Error(ErrorCode::Parse,
                    "unknown sweep variable '" + config.sweep.variable + "'");
      }
      config.sweep.grid = parse_grid(sweep.at("grid"));
    } else {
      config.sweep.variable = "x";
      config.sweep.grid = {config.x};
    }

    if (j.contains("outputs")) {
      for (const auto& o : j.at("outputs")) {
        config.outputs.push_back(o.get<std::string>());
      }
    } else {
      config.outputs = {"gamma", "c", "eta"};
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config parse: ") + e.what());
  }
  return config;
}

json ExperimentConfig::to_json() const {
  json channels_json = json::array();
  for (const auto& c : channels) {
    channels_json.push_back(
        json{{"name", c.name}, {"label", c.label}, {"params", c.params}});
  }
  return json{{"kind", kind},
              {"model", json{{"name", model_name}, {"params", model_params}}},
              {"channels", std::move(channels_json)},
              {"x", x},
              {"sweep", json{{"variable", sweep.variable},
                             {"grid", json{{"values", sweep.grid}}}}},
              {"outputs", outputs},
              {"seed", seed},
              {"threads", threads},
              {"suites", suites},
              {"cases", cases}};
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

namespace {

std::string format_double(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  if (ec != std::errc()) return "0";
  return std::string(buffer, end);
}

std::string hex64(std::uint64_t v) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

// One output name can expand to several columns.
std::vector<std::string> output_columns(const std::string& output) {
  if (output == "residuals") return {"residual_cross", "residual_perp"};
  return {output};
}

std::vector<std::optional<double>> output_values(
    const std::string& output, const CompressionReport& report) {
  if (output == "gamma") return {report.gamma};
  if (output == "one_minus_gamma") return {1.0 - report.gamma};
  if (output == "c" || output == "capacity") return {report.capacity};
  if (output == "eta" || output == "gain") return {report.gain};
  if (output == "p_check") return {report.retained_probability};
  if (output == "I_rho") return {report.qfi_input};
  if (output == "I_post") {
    double total = 0.0;
    for (const auto& row : report.ledger) {
      if (row.retained) total += row.postselected_qfi;
    }
    return {total};
  }
  if (output == "residuals") {
    return {report.residuals.cross, report.residuals.perp_max_normalized};
  }
  throw Error(ErrorCode::Parse, "unknown output '" + output + "'");
}

json patched(const json& params, const std::string& key, double value) {
  json out = params;
  out[key] = value;
  return out;
}

ResultRow evaluate_point(const ExperimentConfig& config, const Model& base,
                         double value) {
  const bool sweep_x = config.sweep.variable == "x";
  const double eval_x = sweep_x ? value : config.x;

  ResultRow row;
  row.values.push_back(value);

  // A non-x sweep variable patches both the model and channel parameters;
  // builders read only the keys they know.
  std::optional<Model> rebuilt;
  if (!sweep_x) {
    rebuilt = build_model(
        config.model_name,
        patched(config.model_params, config.sweep.variable, value));
  }
  const Model& model = rebuilt ? *rebuilt : base;

  for (const auto& channel : config.channels) {
    const std::size_t cells =
        [&] {
          std::size_t n = 0;
          for (const auto& o : config.outputs) n += output_columns(o).size();
          return n;
        }();
    try {
      const json params =
          sweep_x ? channel.params
                  : patched(channel.params, config.sweep.variable, value);
      const PovmSet povm = build_channel(model, channel.name, params, eval_x);
      const CompressionReport report =
          compression_report(model.family, eval_x, povm);
      std::vector<std::optional<double>> cells_out;
      for (const auto& output : config.outputs) {
        for (auto& v : output_values(output, report)) {
          if (v && !std::isfinite(*v)) {
            throw Error(ErrorCode::Internal,
                        "non-finite value in output '" + output + "'");
          }
          cells_out.push_back(v);
        }
      }
      row.values.insert(row.values.end(), cells_out.begin(), cells_out.end());
    } catch (const Error& e) {
      for (std::size_t i = 0; i < cells; ++i) row.values.push_back(std::nullopt);
      row.status = row.status == "ok" ? channel.label + ": " + e.what()
                                      : row.status + "; " + channel.label +
                                            ": " + e.what();
    }
  }
  return row;
}

}  // namespace

VerifySummary run_verification(const ExperimentConfig& config) {
  VerifySummary summary;
  std::vector<std::string> suites = config.suites;
  if (suites.empty()) suites = {"qfi", "povm", "lcc", "restricted"};
  for (const auto& name : suites) {
    summary.suites.push_back(run_suite(name, config.seed, config.cases));
    summary.passed = summary.passed && summary.suites.back().passed();
  }
  return summary;
}

json VerifySummary::to_json() const {
  json list = json::array();
  for (const auto& s : suites) {
    list.push_back(json{{"name", s.name},
                        {"cases", s.cases},
                        {"failures", s.failures},
                        {"max_residual", s.max_residual},
                        {"messages", s.messages}});
  }
  return json{{"passed", passed}, {"suites", std::move(list)}};
}

ResultTable run(const ExperimentConfig& config) {
  ResultTable table;
  const std::string canonical = config.to_json().dump();
  table.metadata = json{{"config_hash", hex64(fnv1a_hash(canonical))},
                        {"version", kVersion},
                        {"seed", config.seed},
                        {"generated", timestamp_utc()}}
                       .dump();

  if (config.kind == "verify") {
    table.columns = {"suite_index", "cases", "failures", "max_residual"};
    const VerifySummary summary = run_verification(config);
    for (std::size_t i = 0; i < summary.suites.size(); ++i) {
      const SuiteResult& s = summary.suites[i];
      ResultRow row;
      row.values = {static_cast<double>(i), static_cast<double>(s.cases),
                    static_cast<double>(s.failures), s.max_residual};
      row.status = (s.passed() ? "ok:" : "fail:") + s.name;
      if (!s.passed()) ++table.flagged;
      table.rows.push_back(std::move(row));
    }
    return table;
  }

  table.columns.push_back(config.sweep.variable);
  for (const auto& channel : config.channels) {
    for (const auto& output : config.outputs) {
      for (const auto& col : output_columns(output)) {
        table.columns.push_back(config.channels.size() == 1
                                    ? col
                                    : col + "." + channel.label);
      }
    }
  }

  const Model base = build_model(config.model_name, config.model_params);
  const std::size_t points = config.sweep.grid.size();
  table.rows.resize(points);

  const int threads = std::max(1, config.threads);
  if (threads == 1 || points <= 1) {
    for (std::size_t i = 0; i < points; ++i) {
      table.rows[i] = evaluate_point(config, base, config.sweep.grid[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < points;
           i = next.fetch_add(1)) {
        table.rows[i] = evaluate_point(config, base, config.sweep.grid[i]);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min<std::size_t>(threads, points);
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& row : table.rows) {
    if (row.status != "ok") ++table.flagged;
  }
  return table;
}

std::string ResultTable::to_csv() const {
  std::string out = "# " + metadata + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += columns[i];
    out += ',';
  }
  out += "status\n";
  for (const auto& row : rows) {
    for (const auto& v : row.values) {
      if (v) out += format_double(*v);
      out += ',';
    }
    // Statuses may carry arbitrary error text; keep the CSV well formed.
    std::string status = row.status;
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    out += status;
    out += '\n';
  }
  return out;
}

}  // namespace pqm
