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

#include "pqm/capi.h"

#include <cstring>
#include <string>

#include "pqm/experiment.hpp"
#include "pqm/io_json.hpp"
#include "pqm/models.hpp"
#include "pqm/version.hpp"

struct pqm_model {
  pqm::Model model;
};

struct pqm_povm {
  pqm::PovmSet povm;
};

namespace {

thread_local std::string g_last_error;

pqm_status status_of(pqm::ErrorCode code) {
  using pqm::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return PQM_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return PQM_ERR_PARSE;
    case ErrorCode::NotFound: return PQM_ERR_NOT_FOUND;
    case ErrorCode::NotHermitian: return PQM_ERR_NOT_HERMITIAN;
    case ErrorCode::NotPsd: return PQM_ERR_NOT_PSD;
    case ErrorCode::InvariantViolation: return PQM_ERR_INVARIANT;
    case ErrorCode::NullRetainedOutcome: return PQM_ERR_NULL_RETAINED;
    case ErrorCode::StationaryPoint: return PQM_ERR_STATIONARY;
    case ErrorCode::DerivativeQuality: return PQM_ERR_DERIVATIVE;
    case ErrorCode::Io: return PQM_ERR_IO;
    case ErrorCode::Internal: return PQM_ERR_INTERNAL;
  }
  return PQM_ERR_INTERNAL;
}

template <typename Fn>
pqm_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const pqm::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PQM_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PQM_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

nlohmann::json parse_json(const char* text, const char* what) {
  if (text == nullptr) {
    throw pqm::Error(pqm::ErrorCode::InvalidArgument,
                     std::string(what) + " must not be NULL");
  }
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw pqm::Error(pqm::ErrorCode::Parse,
                     std::string(what) + " is not valid JSON");
  }
  return j;
}

}  // namespace

extern "C" {

const char* pqm_version(void) { return pqm::kVersion; }

const char* pqm_status_name(pqm_status status) {
  switch (status) {
    case PQM_OK: return "ok";
    case PQM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case PQM_ERR_PARSE: return "parse_error";
    case PQM_ERR_NOT_FOUND: return "not_found";
    case PQM_ERR_NOT_HERMITIAN: return "not_hermitian";
    case PQM_ERR_NOT_PSD: return "not_psd";
    case PQM_ERR_INVARIANT: return "invariant_violation";
    case PQM_ERR_NULL_RETAINED: return "null_retained_outcome";
    case PQM_ERR_STATIONARY: return "stationary_point";
    case PQM_ERR_DERIVATIVE: return "derivative_quality";
    case PQM_ERR_IO: return "io_error";
    case PQM_ERR_SUITE_FAILED: return "suite_failed";
    case PQM_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* pqm_last_error(void) { return g_last_error.c_str(); }

void pqm_string_free(char* text) { delete[] text; }

pqm_status pqm_catalog(char** out_json) {
  return guarded([&]() -> pqm_status {
    if (out_json == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "out_json is NULL");
    }
    const pqm::Catalog& cat = pqm::catalog();
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : cat.models) {
      models.push_back(nlohmann::json{
          {"name", m.name}, {"summary", m.summary}, {"params", m.params}});
    }
    nlohmann::json channels = nlohmann::json::array();
    for (const auto& c : cat.channels) {
      channels.push_back(nlohmann::json{
          {"name", c.name}, {"summary", c.summary}, {"params", c.params}});
    }
    *out_json = copy_string(
        nlohmann::json{{"models", models}, {"channels", channels}}.dump(2));
    return PQM_OK;
  });
}

pqm_status pqm_model_create(const char* name, const char* params_json,
                            pqm_model** out_model) {
  return guarded([&]() -> pqm_status {
    if (name == nullptr || out_model == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument,
                       "name and out_model must not be NULL");
    }
    const nlohmann::json params =
        params_json == nullptr ? nlohmann::json::object()
                               : parse_json(params_json, "params_json");
    *out_model = new pqm_model{pqm::build_model(name, params)};
    return PQM_OK;
  });
}

void pqm_model_free(pqm_model* model) { delete model; }

pqm_status pqm_model_dim(const pqm_model* model, int* out_dim) {
  return guarded([&]() -> pqm_status {
    if (model == nullptr || out_dim == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    *out_dim = model->model.family.dim();
    return PQM_OK;
  });
}

pqm_status pqm_model_qfi(const pqm_model* model, double x, double* out_qfi) {
  return guarded([&]() -> pqm_status {
    if (model == nullptr || out_qfi == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    *out_qfi = pqm::qfi_pure(model->model.family, x);
    return PQM_OK;
  });
}

pqm_status pqm_channel_create(const pqm_model* model, const char* name,
                              const char* params_json, double x,
                              pqm_povm** out_povm) {
  return guarded([&]() -> pqm_status {
    if (model == nullptr || name == nullptr || out_povm == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    const nlohmann::json params =
        params_json == nullptr ? nlohmann::json::object()
                               : parse_json(params_json, "params_json");
    *out_povm = new pqm_povm{
        pqm::build_channel(model->model, name, params, x)};
    return PQM_OK;
  });
}

pqm_status pqm_povm_parse(const char* document_json, pqm_povm** out_povm) {
  return guarded([&]() -> pqm_status {
    if (out_povm == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "out_povm is NULL");
    }
    *out_povm = new pqm_povm{
        pqm::io::povm_from_json(parse_json(document_json, "document_json"))};
    return PQM_OK;
  });
}

pqm_status pqm_povm_dump(const pqm_povm* povm, char** out_json) {
  return guarded([&]() -> pqm_status {
    if (povm == nullptr || out_json == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    *out_json = copy_string(pqm::io::povm_to_json(povm->povm).dump());
    return PQM_OK;
  });
}

pqm_status pqm_povm_validate(const pqm_povm* povm,
                             char** out_diagnostics_json) {
  return guarded([&]() -> pqm_status {
    if (povm == nullptr || out_diagnostics_json == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    const pqm::PovmDiagnostics diag = pqm::validate(povm->povm);
    *out_diagnostics_json =
        copy_string(pqm::io::diagnostics_to_json(diag).dump());
    return diag.valid ? PQM_OK : PQM_ERR_INVARIANT;
  });
}

void pqm_povm_free(pqm_povm* povm) { delete povm; }

pqm_status pqm_compression_report(const pqm_model* model, double x,
                                  const pqm_povm* povm, char** out_json) {
  return guarded([&]() -> pqm_status {
    if (model == nullptr || povm == nullptr || out_json == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    const pqm::CompressionReport report =
        pqm::compression_report(model->model.family, x, povm->povm);
    *out_json = copy_string(pqm::io::report_to_json(report).dump());
    return PQM_OK;
  });
}

pqm_status pqm_saturation_report(const pqm_model* model, double x,
                                 const pqm_povm* povm, char** out_json) {
  return guarded([&]() -> pqm_status {
    if (model == nullptr || povm == nullptr || out_json == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "NULL argument");
    }
    nlohmann::json list = nlohmann::json::array();
    for (const auto& report :
         pqm::saturation_report(povm->povm, model->model.family, x)) {
      list.push_back(pqm::io::saturation_to_json(report));
    }
    *out_json = copy_string(list.dump());
    return PQM_OK;
  });
}

pqm_status pqm_run(const char* config_json, const pqm_run_options* options,
                   char** out_csv, int* out_flagged_rows) {
  return guarded([&]() -> pqm_status {
    if (out_csv == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument, "out_csv is NULL");
    }
    pqm::ExperimentConfig config =
        pqm::config_from_json(parse_json(config_json, "config_json"));
    if (options != nullptr) {
      if (options->has_seed) config.seed = options->seed;
      if (options->threads > 0) config.threads = options->threads;
    }
    const pqm::ResultTable table = pqm::run(config);
    *out_csv = copy_string(table.to_csv());
    if (out_flagged_rows != nullptr) *out_flagged_rows = table.flagged;
    return PQM_OK;
  });
}

pqm_status pqm_verify(const char* config_json, const pqm_run_options* options,
                      char** out_report_json) {
  return guarded([&]() -> pqm_status {
    if (out_report_json == nullptr) {
      throw pqm::Error(pqm::ErrorCode::InvalidArgument,
                       "out_report_json is NULL");
    }
    pqm::ExperimentConfig config;
    config.kind = "verify";
    if (config_json != nullptr) {
      config = pqm::config_from_json(parse_json(config_json, "config_json"));
    }
    if (config.suites.empty()) {
      config.suites = {"qfi", "povm", "lcc", "restricted"};
    }
    if (options != nullptr) {
      if (options->has_seed) config.seed = options->seed;
    }
    const pqm::VerifySummary summary = pqm::run_verification(config);
    *out_report_json = copy_string(summary.to_json().dump(2));
    if (!summary.passed) {
      g_last_error = "one or more verification suites failed";
      return PQM_ERR_SUITE_FAILED;
    }
    return PQM_OK;
  });
}

}  // extern "C"
