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

#include "pqm/povm.hpp"

#include <cmath>

namespace pqm {

namespace {

constexpr double kCompleteness = 1e-9;
// sqrt(E)|v> counts as annihilated below this squared-norm scale.
constexpr double kAnnihilated = 1e-14;

double normalize_residual(double raw, const StateAt& s, double p) {
  return raw / std::sqrt(s.g * p + tol::kResidualFloor);
}

}  // namespace

int PovmSet::dim() const {
  return elements.empty() ? 0 : static_cast<int>(elements.front().matrix.rows());
}

const PovmElement& PovmSet::element(const std::string& label) const {
  for (const auto& e : elements) {
    if (e.label == label) return e;
  }
  throw Error(ErrorCode::NotFound, "no POVM element labeled '" + label + "'");
}

PovmDiagnostics validate(const PovmSet& povm) {
  PovmDiagnostics diag;
  if (povm.elements.empty()) {
    diag.failures.push_back("POVM has no elements");
    return diag;
  }
  const int d = povm.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  std::set<std::string> labels;
  for (const auto& e : povm.elements) {
    if (e.matrix.rows() != d || e.matrix.cols() != d) {
      diag.failures.push_back("element '" + e.label + "' has wrong dimension");
      diag.psd_residuals.push_back(0.0);
      continue;
    }
    if (!labels.insert(e.label).second) {
      diag.failures.push_back("duplicate label '" + e.label + "'");
    }
    if (!is_hermitian(e.matrix)) {
      diag.failures.push_back("element '" + e.label + "' is not Hermitian");
      diag.psd_residuals.push_back(0.0);
      continue;
    }
    const double min_eig = min_eigenvalue(e.matrix);
    diag.psd_residuals.push_back(min_eig < 0.0 ? -min_eig : 0.0);
    const double scale = std::max(1.0, e.matrix.norm());
    if (min_eig < -tol::kSymmetry * scale) {
      diag.failures.push_back("element '" + e.label + "' is not PSD (eigenvalue " +
                              std::to_string(min_eig) + ")");
    }
    sum += e.matrix;
  }
  diag.completeness_residual = (sum - identity(d)).norm();
  if (diag.completeness_residual > kCompleteness) {
    diag.failures.push_back("elements do not sum to identity (residual " +
                            std::to_string(diag.completeness_residual) + ")");
  }
  for (const auto& label : povm.retained) {
    if (labels.count(label) == 0) {
      diag.failures.push_back("retained label '" + label +
                              "' names no element");
    }
  }
  diag.valid = diag.failures.empty();
  return diag;
}

void require_valid(const PovmSet& povm) {
  const PovmDiagnostics diag = validate(povm);
  if (!diag.valid) {
    std::string msg = "invalid POVM:";
    for (const auto& f : diag.failures) msg += " " + f + ";";
    throw Error(ErrorCode::InvariantViolation, msg);
  }
}

Classification classify(const CMatrix& e, const StateAt& s) {
  if (!is_psd(e)) {
    throw Error(ErrorCode::NotPsd, "classify: operator is not PSD");
  }
  Classification c;
  c.probability = s.psi.dot(e * s.psi).real();
  c.kind = c.probability < tol::kNullProbability ? OutcomeClass::Null
                                                 : OutcomeClass::Regular;
  const double diag = s.perp.dot(e * s.perp).real();
  c.trivial = diag <= kAnnihilated * std::max(1.0, s.g);
  return c;
}

Classification classify(const CMatrix& e, const ParametricPureState& state,
                        double x) {
  return classify(e, at(state, x));
}

const char* condition_name(SaturationCondition c) {
  switch (c) {
    case SaturationCondition::JointSaturation: return "joint_saturation";
    case SaturationCondition::PostStateZero: return "post_state_zero";
    case SaturationCondition::ClassicalZero: return "classical_zero";
    case SaturationCondition::PostStateSaturation:
      return "post_state_saturation";
    case SaturationCondition::ClassicalSaturation:
      return "classical_saturation";
  }
  return "unknown";
}

namespace {

ConditionResidual from_raw(double raw, const StateAt& s, double p) {
  ConditionResidual r;
  r.raw = raw;
  r.normalized = normalize_residual(raw, s, p);
  r.satisfied = r.normalized <= tol::kConditionSatisfied;
  return r;
}

// Residuals of the proportionality conditions sqrt(E)|perp> = c sqrt(E)|psi>.
// Returns the norm of the component of sqrt(E)|perp> orthogonal to
// sqrt(E)|psi>, and the proportionality coefficient.
struct Proportionality {
  double orthogonal_norm = 0.0;
  Complex coefficient = 0.0;
  bool degenerate = false;  // both images vanish
  bool image_psi_zero = false;
};

Proportionality proportionality(const CMatrix& e, const StateAt& s) {
  const CMatrix root = psd_sqrt(e);
  const CVector u = root * s.perp;
  const CVector v = root * s.psi;
  Proportionality out;
  const double v2 = v.squaredNorm();
  const double u2 = u.squaredNorm();
  if (v2 <= kAnnihilated) {
    out.image_psi_zero = true;
    if (u2 <= kAnnihilated * std::max(1.0, s.g)) {
      out.degenerate = true;
      return out;
    }
    out.orthogonal_norm = std::sqrt(u2);
    return out;
  }
  out.coefficient = v.dot(u) / v2;
  out.orthogonal_norm = (u - out.coefficient * v).norm();
  return out;
}

}  // namespace

ConditionResidual check_joint_saturation(const CMatrix& e, const StateAt& s) {
  const Complex cross = s.perp.dot(e * s.psi);
  const double p = s.psi.dot(e * s.psi).real();
  return from_raw(std::abs(cross.imag()), s, p);
}

ConditionResidual check_classical_zero(const CMatrix& e, const StateAt& s) {
  const Complex cross = s.perp.dot(e * s.psi);
  const double p = s.psi.dot(e * s.psi).real();
  return from_raw(std::abs(cross.real()), s, p);
}

ConditionResidual check_post_state_saturation(const CMatrix& e,
                                              const StateAt& s) {
  const Complex cross = s.perp.dot(e * s.psi);
  const double p = s.psi.dot(e * s.psi).real();
  const double diag = s.perp.dot(e * s.perp).real();
  ConditionResidual r = from_raw(std::abs(cross), s, p);
  if (p <= kAnnihilated && diag <= kAnnihilated * std::max(1.0, s.g)) {
    r.degenerate = true;
    r.satisfied = true;
  }
  return r;
}

ConditionResidual check_post_state_zero(const CMatrix& e, const StateAt& s) {
  const double p = s.psi.dot(e * s.psi).real();
  const Proportionality prop = proportionality(e, s);
  ConditionResidual r = from_raw(prop.orthogonal_norm, s, p);
  if (prop.degenerate) {
    r.degenerate = true;
    r.satisfied = true;
    r.raw = r.normalized = 0.0;
  }
  return r;
}

ConditionResidual check_classical_saturation(const CMatrix& e,
                                             const StateAt& s) {
  const double p = s.psi.dot(e * s.psi).real();
  const Proportionality prop = proportionality(e, s);
  ConditionResidual r;
  if (prop.degenerate) {
    r.degenerate = true;
    r.satisfied = true;
    return r;
  }
  // Off-proportionality plus the imaginary part of the coefficient, weighted
  // back to the same units as the proportionality residual.
  const double im_part =
      prop.image_psi_zero ? 0.0 : std::abs(prop.coefficient.imag()) * std::sqrt(p);
  return from_raw(std::hypot(prop.orthogonal_norm, im_part), s, p);
}

ConditionResidual check_condition(SaturationCondition c, const CMatrix& e,
                                  const StateAt& s) {
  switch (c) {
    case SaturationCondition::JointSaturation:
      return check_joint_saturation(e, s);
    case SaturationCondition::PostStateZero:
      return check_post_state_zero(e, s);
    case SaturationCondition::ClassicalZero:
      return check_classical_zero(e, s);
    case SaturationCondition::PostStateSaturation:
      return check_post_state_saturation(e, s);
    case SaturationCondition::ClassicalSaturation:
      return check_classical_saturation(e, s);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown saturation condition");
}

SaturationReport saturation_report(const PovmElement& element,
                                   const StateAt& s) {
  SaturationReport r;
  r.label = element.label;
  r.classification = classify(element.matrix, s);
  r.joint_saturation = check_joint_saturation(element.matrix, s);
  r.post_state_zero = check_post_state_zero(element.matrix, s);
  r.classical_zero = check_classical_zero(element.matrix, s);
  r.post_state_saturation = check_post_state_saturation(element.matrix, s);
  r.classical_saturation = check_classical_saturation(element.matrix, s);
  return r;
}

std::vector<SaturationReport> saturation_report(const PovmSet& povm,
                                                const ParametricPureState& state,
                                                double x) {
  const StateAt s = at(state, x);
  std::vector<SaturationReport> out;
  out.reserve(povm.elements.size());
  for (const auto& e : povm.elements) {
    out.push_back(saturation_report(e, s));
  }
  return out;
}

KrausChannel kraus_from(const PovmSet& povm) {
  require_valid(povm);
  KrausChannel channel;
  channel.operators.reserve(povm.elements.size());
  for (const auto& e : povm.elements) {
    channel.operators.push_back({e.label, psd_sqrt(e.matrix)});
  }
  return channel;
}

PovmSet povm_from(const KrausChannel& channel) {
  PovmSet povm;
  povm.elements.reserve(channel.operators.size());
  for (const auto& k : channel.operators) {
    povm.elements.push_back({k.label, k.matrix.adjoint() * k.matrix});
  }
  require_valid(povm);
  return povm;
}

}  // namespace pqm
