/* Copyright 2026 The pqm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the postselected-metrology compression library.
 *
 * Handles are opaque; every function returns a pqm_status and writes its
 * result through out-parameters. On failure, pqm_last_error() returns a
 * thread-local description of what went wrong. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * pqm_string_free(). Structured inputs and outputs (parameters, POVM
 * documents, reports, run configurations) are JSON text.
 */

#ifndef PQM_CAPI_H
#define PQM_CAPI_H

#include <stdint.h>

#if defined(_WIN32) || defined(_WIN64)
#define PQM_API __declspec(dllexport)
#else
#define PQM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pqm_status {
  PQM_OK = 0,
  PQM_ERR_INVALID_ARGUMENT = 1,
  PQM_ERR_PARSE = 2,
  PQM_ERR_NOT_FOUND = 3,
  PQM_ERR_NOT_HERMITIAN = 4,
  PQM_ERR_NOT_PSD = 5,
  PQM_ERR_INVARIANT = 6,
  PQM_ERR_NULL_RETAINED = 7,
  PQM_ERR_STATIONARY = 8,
  PQM_ERR_DERIVATIVE = 9,
  PQM_ERR_IO = 10,
  PQM_ERR_SUITE_FAILED = 11,
  PQM_ERR_INTERNAL = 12
} pqm_status;

typedef struct pqm_model pqm_model;
typedef struct pqm_povm pqm_povm;

PQM_API const char* pqm_version(void);
PQM_API const char* pqm_status_name(pqm_status status);
/* Thread-local message describing the most recent failure; empty if none. */
PQM_API const char* pqm_last_error(void);
PQM_API void pqm_string_free(char* text);

/* Catalog of built-in models and channels, as JSON. */
PQM_API pqm_status pqm_catalog(char** out_json);

PQM_API pqm_status pqm_model_create(const char* name, const char* params_json,
                                    pqm_model** out_model);
PQM_API void pqm_model_free(pqm_model* model);
PQM_API pqm_status pqm_model_dim(const pqm_model* model, int* out_dim);
PQM_API pqm_status pqm_model_qfi(const pqm_model* model, double x,
                                 double* out_qfi);

PQM_API pqm_status pqm_channel_create(const pqm_model* model, const char* name,
                                      const char* params_json, double x,
                                      pqm_povm** out_povm);
PQM_API pqm_status pqm_povm_parse(const char* document_json,
                                  pqm_povm** out_povm);
PQM_API pqm_status pqm_povm_dump(const pqm_povm* povm, char** out_json);
PQM_API pqm_status pqm_povm_validate(const pqm_povm* povm,
                                     char** out_diagnostics_json);
PQM_API void pqm_povm_free(pqm_povm* povm);

/* Loss/capacity/gain report of a channel on a model at x, as JSON. */
PQM_API pqm_status pqm_compression_report(const pqm_model* model, double x,
                                          const pqm_povm* povm,
                                          char** out_json);
/* Saturation-condition residuals per element, as a JSON array. */
PQM_API pqm_status pqm_saturation_report(const pqm_model* model, double x,
                                         const pqm_povm* povm,
                                         char** out_json);

typedef struct pqm_run_options {
  int has_seed;       /* nonzero: override the config seed */
  uint64_t seed;
  int threads;        /* <= 0: use the config value */
} pqm_run_options;

/* Runs a sweep or verify configuration and returns the CSV text. Rows that
 * failed are flagged in the CSV and counted in out_flagged_rows. */
PQM_API pqm_status pqm_run(const char* config_json,
                           const pqm_run_options* options, char** out_csv,
                           int* out_flagged_rows);

/* Runs the randomized verification suites named in the config (all four
 * when config_json is NULL). Returns PQM_ERR_SUITE_FAILED when any suite
 * fails; the JSON report is produced either way. */
PQM_API pqm_status pqm_verify(const char* config_json,
                              const pqm_run_options* options,
                              char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* PQM_CAPI_H */
