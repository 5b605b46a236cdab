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

#include "pqm/lcc.hpp"

#include <cmath>

namespace pqm {

namespace {

constexpr double kGaugeTolerance = 1e-9;
constexpr double kEfficiencyMargin = 1e-9;

void require_weights(const std::vector<double>& q) {
  if (q.empty()) {
    throw Error(ErrorCode::InvalidArgument, "gauge needs at least one outcome");
  }
  double sum = 0.0;
  for (double w : q) {
    if (w <= 0.0 || w > 1.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "outcome weights must lie in (0, 1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kGaugeTolerance) {
    throw Error(ErrorCode::InvalidArgument, "outcome weights must sum to 1");
  }
}

void require_lambda(const std::vector<double>& lambda) {
  for (double l : lambda) {
    if (l <= 0.0 || l >= 1.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "gauge strengths must lie in (0, 1)");
    }
  }
}

std::string keep_label(int index, int count) {
  return count == 1 ? "keep" : "keep" + std::to_string(index + 1);
}

}  // namespace

GaugeSpec GaugeSpec::scaled_rho(std::vector<double> lambda,
                                std::vector<double> q) {
  if (q.empty()) {
    q.assign(lambda.size(), 1.0 / static_cast<double>(lambda.size()));
  }
  if (q.size() != lambda.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "gauge weight and strength lists differ in length");
  }
  require_weights(q);
  require_lambda(lambda);
  GaugeSpec g;
  g.kind = Kind::ScaledRho;
  g.q = std::move(q);
  g.lambda = std::move(lambda);
  return g;
}

GaugeSpec GaugeSpec::identity_shift(double lambda) {
  require_lambda({lambda});
  GaugeSpec g;
  g.kind = Kind::IdentityShift;
  g.q = {1.0};
  g.lambda = {lambda};
  return g;
}

GaugeSpec GaugeSpec::custom(std::vector<CMatrix> gauges,
                            std::vector<double> q) {
  if (gauges.size() != q.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "gauge operator and weight lists differ in length");
  }
  require_weights(q);
  GaugeSpec g;
  g.kind = Kind::Custom;
  g.q = std::move(q);
  g.gauges = std::move(gauges);
  return g;
}

int GaugeSpec::retained_count() const { return static_cast<int>(q.size()); }

LosslessResiduals lossless_residuals(const StateAt& s, const PovmSet& povm) {
  if (povm.retained.empty()) {
    throw Error(ErrorCode::InvalidArgument, "channel has no retained outcomes");
  }
  const CVector psi_perp = s.psi_perp();
  const int d = povm.dim();
  CMatrix kept_sum = CMatrix::Zero(d, d);
  LosslessResiduals r;
  for (const auto& e : povm.elements) {
    if (!povm.is_retained(e.label)) continue;
    kept_sum += e.matrix;
    const double p = s.psi.dot(e.matrix * s.psi).real();
    const double raw = std::abs(s.perp.dot(e.matrix * s.psi));
    r.perp_max = std::max(r.perp_max, raw);
    r.perp_max_normalized =
        std::max(r.perp_max_normalized,
                 raw / std::sqrt(s.g * p + tol::kResidualFloor));
  }
  r.cross = std::abs(psi_perp.dot(kept_sum * psi_perp).real() - 1.0);
  return r;
}

LosslessResiduals lossless_residuals(const ParametricPureState& state,
                                     double x, const PovmSet& povm) {
  return lossless_residuals(at(state, x), povm);
}

CompressionReport finalize_report(std::vector<QfiLedgerRow> ledger,
                                  double qfi_input) {
  CompressionReport report;
  report.qfi_input = qfi_input;
  report.ledger = std::move(ledger);

  double kept_probability = 0.0;
  double kept_weighted_qfi = 0.0;  // sum of p * I_post over kept outcomes
  double kept_gain_qfi = 0.0;      // sum of I_post over kept outcomes
  for (const auto& row : report.ledger) {
    if (!row.retained) continue;
    if (row.null_outcome) {
      throw Error(ErrorCode::NullRetainedOutcome,
                  "null retained outcome '" + row.label +
                      "': the kept state would carry no information");
    }
    ++report.retained_count;
    kept_probability += row.probability;
    kept_weighted_qfi += row.probability * row.postselected_qfi;
    kept_gain_qfi += row.postselected_qfi;
  }
  if (report.retained_count == 0) {
    throw Error(ErrorCode::InvalidArgument, "channel has no retained outcomes");
  }

  report.retained_probability = kept_probability;
  report.capacity = 1.0 / kept_probability;
  report.gain = kept_gain_qfi / qfi_input;
  double gamma = 1.0 - kept_weighted_qfi / qfi_input;
  if (gamma < 0.0 && gamma > -kGaugeTolerance) gamma = 0.0;
  report.gamma = gamma;
  report.efficient = report.capacity > 1.0 + kEfficiencyMargin &&
                     kept_probability > tol::kNullProbability;
  return report;
}

CompressionReport compression_report(const StateAt& s, const PovmSet& povm) {
  require_valid(povm);
  if (povm.retained.empty()) {
    throw Error(ErrorCode::InvalidArgument, "channel has no retained outcomes");
  }

  std::vector<QfiLedgerRow> rows;
  rows.reserve(povm.elements.size());
  for (const auto& e : povm.elements) {
    QfiLedgerRow row;
    row.label = e.label;
    row.retained = povm.is_retained(e.label);
    const Classification cls = classify(e.matrix, s);
    row.null_outcome = cls.kind == OutcomeClass::Null;
    row.probability = cls.probability;
    row.classical_fi = classical_fi(s, e.matrix);
    row.postselected_qfi = postselected_state_qfi(s, e.matrix);
    row.joint_qfi = row.classical_fi + row.probability * row.postselected_qfi;
    row.outcome_qfi = outcome_qfi(s, e.matrix);
    rows.push_back(std::move(row));
  }

  CompressionReport report = finalize_report(std::move(rows), qfi_pure(s));
  report.residuals = lossless_residuals(s, povm);
  return report;
}

CompressionReport compression_report(const ParametricPureState& state,
                                     double x, const PovmSet& povm) {
  return compression_report(at(state, x), povm);
}

namespace {

void validate_custom_gauge(const CMatrix& gauge, const StateAt& s,
                           double* lambda_out) {
  const double scale = std::max(1.0, gauge.norm());
  if (!is_hermitian(gauge)) {
    throw Error(ErrorCode::InvalidArgument, "gauge operator must be Hermitian");
  }
  const CVector psi_perp = s.psi_perp();
  const double perp_perp = std::abs(psi_perp.dot(gauge * psi_perp));
  const double perp_psi = std::abs(psi_perp.dot(gauge * s.psi));
  const Complex lam = s.psi.dot(gauge * s.psi);
  if (perp_perp > kGaugeTolerance * scale || perp_psi > kGaugeTolerance * scale) {
    throw Error(ErrorCode::InvariantViolation,
                "gauge operator leaks onto the sensitive direction "
                "(residuals " + std::to_string(perp_perp) + ", " +
                std::to_string(perp_psi) + ")");
  }
  if (std::abs(lam.imag()) > kGaugeTolerance * scale || lam.real() <= 0.0 ||
      lam.real() >= 1.0) {
    throw Error(ErrorCode::InvariantViolation,
                "gauge strength <psi|Lambda|psi> must lie in (0, 1)");
  }
  *lambda_out = lam.real();
}

}  // namespace

PovmSet build_compression_channel(const StateAt& s, const GaugeSpec& gauge) {
  const int d = static_cast<int>(s.psi.size());
  const CMatrix rho = s.rho();
  const CMatrix rho_perp = s.rho_perp();
  const int count = gauge.retained_count();

  std::vector<CMatrix> gauges;
  gauges.reserve(count);
  switch (gauge.kind) {
    case GaugeSpec::Kind::ScaledRho:
      for (double l : gauge.lambda) gauges.push_back(l * rho);
      break;
    case GaugeSpec::Kind::IdentityShift: {
      const CMatrix complement = identity(d) - rho - rho_perp;
      gauges.push_back(gauge.lambda.front() * rho + complement);
      break;
    }
    case GaugeSpec::Kind::Custom: {
      for (const auto& g : gauge.gauges) {
        if (g.rows() != d || g.cols() != d) {
          throw Error(ErrorCode::InvalidArgument,
                      "gauge operator has wrong dimension");
        }
        double lambda = 0.0;
        validate_custom_gauge(g, s, &lambda);
        gauges.push_back(g);
      }
      break;
    }
  }

  PovmSet povm;
  CMatrix kept_sum = CMatrix::Zero(d, d);
  for (int i = 0; i < count; ++i) {
    CMatrix e = gauge.q[i] * rho_perp + gauges[i];
    if (!is_psd(e)) {
      throw Error(ErrorCode::NotPsd,
                  "gauge makes retained element non-positive");
    }
    kept_sum += e;
    const std::string label = keep_label(i, count);
    povm.elements.push_back({label, std::move(e)});
    povm.retained.insert(label);
  }
  CMatrix rest = identity(d) - kept_sum;
  if (!is_psd(rest)) {
    throw Error(ErrorCode::NotPsd,
                "retained elements exceed identity; discarded remainder "
                "is non-positive");
  }
  povm.elements.push_back({"rest", std::move(rest)});
  require_valid(povm);
  return povm;
}

PovmSet build_compression_channel(const ParametricPureState& state, double x,
                                  const GaugeSpec& gauge) {
  return build_compression_channel(at(state, x), gauge);
}

CMatrix two_level_lossless_element(double x, double delta, double lambda) {
  if (lambda <= 0.0 || lambda > 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "gauge strength must lie in (0, 1]");
  }
  const double c = std::cos(0.5 * x * delta);
  const double sn = std::sin(0.5 * x * delta);
  CMatrix e(2, 2);
  e(0, 0) = lambda * c * c + sn * sn;
  e(1, 1) = c * c + lambda * sn * sn;
  e(0, 1) = Complex(0.0, (1.0 - lambda) * sn * c);
  e(1, 0) = std::conj(e(0, 1));
  return e;
}

PovmSet two_level_channel(double x, double delta, double lambda) {
  PovmSet povm;
  CMatrix keep = two_level_lossless_element(x, delta, lambda);
  povm.elements.push_back({"keep", keep});
  povm.elements.push_back({"rest", identity(2) - keep});
  povm.retained.insert("keep");
  return povm;
}

CVector postselected_sensitivity(const ParametricPureState& state, double x,
                                 double q, double lambda) {
  if (q <= 0.0 || q > 1.0 || lambda <= 0.0 || lambda >= 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "need q in (0, 1] and lambda in (0, 1)");
  }
  const StateAt s = at(state, x);
  const CVector dv = state.dpsi(x);
  return dv + (std::sqrt(q / lambda) - 1.0) * std::sqrt(s.g) * s.psi_perp();
}

}  // namespace pqm
