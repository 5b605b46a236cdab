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

#include "pqm/io_json.hpp"

namespace pqm::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::Parse, "JSON parse: " + what);
}

double number_at(const json& j) {
  if (!j.is_number()) parse_error("expected a number");
  return j.get<double>();
}

}  // namespace

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    parse_error("complex entries are [re, im] pairs");
  }
  return Complex(number_at(j[0]), number_at(j[1]));
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v[i]));
  }
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("expected a nonempty array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  }
  return v;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) parse_error("expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) parse_error("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      parse_error("matrix rows have inconsistent lengths");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c]);
    }
  }
  return m;
}

json state_to_json(const CVector& v) {
  return json{{"dim", v.size()}, {"entries", vector_to_json(v)}};
}

CVector state_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("entries")) {
    parse_error("state documents need 'dim' and 'entries'");
  }
  CVector v = vector_from_json(j.at("entries"));
  if (v.size() != j.at("dim").get<Eigen::Index>()) {
    parse_error("state 'dim' does not match the entry count");
  }
  return v;
}

json povm_to_json(const PovmSet& povm) {
  json elements = json::array();
  for (const auto& e : povm.elements) {
    elements.push_back(
        json{{"label", e.label}, {"matrix", matrix_to_json(e.matrix)}});
  }
  json retained = json::array();
  for (const auto& label : povm.retained) retained.push_back(label);
  return json{{"dim", povm.dim()}, {"elements", std::move(elements)},
              {"retained", std::move(retained)}};
}

PovmSet povm_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("elements")) {
    parse_error("POVM documents need 'dim' and 'elements'");
  }
  PovmSet povm;
  const auto dim = j.at("dim").get<Eigen::Index>();
  for (const auto& e : j.at("elements")) {
    if (!e.contains("label") || !e.contains("matrix")) {
      parse_error("POVM elements need 'label' and 'matrix'");
    }
    CMatrix m = matrix_from_json(e.at("matrix"));
    if (m.rows() != dim || m.cols() != dim) {
      parse_error("POVM element dimension does not match 'dim'");
    }
    povm.elements.push_back({e.at("label").get<std::string>(), std::move(m)});
  }
  if (j.contains("retained")) {
    for (const auto& label : j.at("retained")) {
      povm.retained.insert(label.get<std::string>());
    }
  }
  return povm;
}

json diagnostics_to_json(const PovmDiagnostics& diag) {
  return json{{"valid", diag.valid},
              {"completeness_residual", diag.completeness_residual},
              {"failures", diag.failures},
              {"psd_residuals", diag.psd_residuals}};
}

json ledger_row_to_json(const QfiLedgerRow& row) {
  return json{{"label", row.label},
              {"retained", row.retained},
              {"null_outcome", row.null_outcome},
              {"probability", row.probability},
              {"classical_fi", row.classical_fi},
              {"postselected_qfi", row.postselected_qfi},
              {"joint_qfi", row.joint_qfi},
              {"outcome_qfi", row.outcome_qfi}};
}

json report_to_json(const CompressionReport& report) {
  json ledger = json::array();
  for (const auto& row : report.ledger) ledger.push_back(ledger_row_to_json(row));
  return json{{"gamma", report.gamma},
              {"capacity", report.capacity},
              {"gain", report.gain},
              {"retained_count", report.retained_count},
              {"efficient", report.efficient},
              {"qfi_input", report.qfi_input},
              {"retained_probability", report.retained_probability},
              {"cross_residual", report.residuals.cross},
              {"perp_residual_max", report.residuals.perp_max},
              {"perp_residual_max_normalized",
               report.residuals.perp_max_normalized},
              {"ledger", std::move(ledger)}};
}

namespace {

json condition_to_json(const ConditionResidual& r) {
  return json{{"residual", r.raw},
              {"normalized", r.normalized},
              {"satisfied", r.satisfied},
              {"degenerate", r.degenerate}};
}

}  // namespace

json saturation_to_json(const SaturationReport& report) {
  return json{
      {"label", report.label},
      {"classification", report.classification.kind == OutcomeClass::Null
                             ? "null"
                             : "regular"},
      {"trivial", report.classification.trivial},
      {"probability", report.classification.probability},
      {"conditions",
       json{{"joint_saturation", condition_to_json(report.joint_saturation)},
            {"post_state_zero", condition_to_json(report.post_state_zero)},
            {"classical_zero", condition_to_json(report.classical_zero)},
            {"post_state_saturation",
             condition_to_json(report.post_state_saturation)},
            {"classical_saturation",
             condition_to_json(report.classical_saturation)}}}};
}

BipartiteModel bipartite_from_json(const json& j) {
  if (!j.contains("kind") || !j.contains("h_a") || !j.contains("h_b")) {
    parse_error("bipartite models need 'kind', 'h_a' and 'h_b'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const CMatrix h_a = matrix_from_json(j.at("h_a"));
  const CMatrix h_b = matrix_from_json(j.at("h_b"));
  if (kind == "product") {
    if (!j.contains("phi_a") || !j.contains("phi_b")) {
      parse_error("product models need 'phi_a' and 'phi_b'");
    }
    return BipartiteModel::product(h_a, h_b, vector_from_json(j.at("phi_a")),
                                   vector_from_json(j.at("phi_b")));
  }
  if (kind == "sum") {
    if (!j.contains("subspaces")) parse_error("sum models need 'subspaces'");
    std::vector<Subspace> subspaces;
    for (const auto& s : j.at("subspaces")) {
      if (!s.contains("weight") || !s.contains("phi_a") || !s.contains("phi_b")) {
        parse_error("subspaces need 'weight', 'phi_a' and 'phi_b'");
      }
      subspaces.push_back({s.at("weight").get<double>(),
                           vector_from_json(s.at("phi_a")),
                           vector_from_json(s.at("phi_b"))});
    }
    return BipartiteModel::sum(h_a, h_b, std::move(subspaces));
  }
  parse_error("unknown bipartite kind '" + kind + "'");
}

json bipartite_to_json(const BipartiteModel& model) {
  json out{{"dims", json::array({model.dim_a(), model.dim_b()})},
           {"h_a", matrix_to_json(model.h_a())},
           {"h_b", matrix_to_json(model.h_b())}};
  if (model.kind() == BipartiteModel::Kind::Product) {
    out["kind"] = "product";
    out["phi_a"] = vector_to_json(model.subspaces().front().phi_a);
    out["phi_b"] = vector_to_json(model.subspaces().front().phi_b);
  } else {
    out["kind"] = "sum";
    json subspaces = json::array();
    for (const auto& s : model.subspaces()) {
      subspaces.push_back(json{{"weight", s.weight},
                               {"phi_a", vector_to_json(s.phi_a)},
                               {"phi_b", vector_to_json(s.phi_b)}});
    }
    out["subspaces"] = std::move(subspaces);
  }
  return out;
}

}  // namespace pqm::io
