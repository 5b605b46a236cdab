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

// JSON interchange. Complex entries are [re, im] pairs, matrices are
// row-major nested arrays, documents carry explicit dims. Doubles use the
// shortest round-trip representation, so import/export is bit-exact.

#pragma once

#include <json.hpp>

#include "pqm/lcc.hpp"
#include "pqm/povm.hpp"
#include "pqm/restricted.hpp"

namespace pqm::io {

using nlohmann::json;

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"dim": n, "entries": [[re, im], ...]}
json state_to_json(const CVector& v);
CVector state_from_json(const json& j);

// {"dim": n, "elements": [{"label": ..., "matrix": ...}], "retained": [...]}
json povm_to_json(const PovmSet& povm);
PovmSet povm_from_json(const json& j);

json diagnostics_to_json(const PovmDiagnostics& diag);
json ledger_row_to_json(const QfiLedgerRow& row);
json report_to_json(const CompressionReport& report);
json saturation_to_json(const SaturationReport& report);

// {"kind": "product"|"sum", "h_a": ..., "h_b": ...,
//  product: "phi_a": ..., "phi_b": ...,
//  sum: "subspaces": [{"weight": p, "phi_a": ..., "phi_b": ...}, ...]}
BipartiteModel bipartite_from_json(const json& j);
json bipartite_to_json(const BipartiteModel& model);

}  // namespace pqm::io
