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

// POVM and measurement-channel representations, their validation, the
// regular/null classification of elements on a probed state, and residual
// checkers for the five saturation conditions relating an element's QFI
// ledger entries:
//
//   joint saturation            Im<perp|E|psi> = 0        <=> I_joint = I_E
//   post-state zero             sqrt(E)|perp> prop. sqrt(E)|psi>, complex c
//                                                         <=> I_post = 0
//   classical zero              Re<perp|E|psi> = 0        <=> I_cl = 0
//   post-state saturation       <perp|E|psi> = 0          <=> p I_post = I_E
//   classical saturation        sqrt(E)|perp> = c sqrt(E)|psi>, real c
//                                                         <=> I_cl = I_E
//
// Residuals are reported raw and normalized by sqrt(g*p) so that "satisfied"
// is scale-free. When sqrt(E) annihilates both vectors the proportionality
// conditions hold degenerately; the report keeps that case distinct.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "pqm/qfi.hpp"
#include "pqm/state.hpp"

namespace pqm {

struct PovmElement {
  std::string label;
  CMatrix matrix;
};

struct PovmSet {
  std::vector<PovmElement> elements;
  std::set<std::string> retained;

  int dim() const;
  bool is_retained(const std::string& label) const {
    return retained.count(label) > 0;
  }
  const PovmElement& element(const std::string& label) const;
};

struct KrausOperator {
  std::string label;
  CMatrix matrix;
};

struct KrausChannel {
  std::vector<KrausOperator> operators;
};

struct PovmDiagnostics {
  bool valid = false;
  double completeness_residual = 0.0;  // |sum E - I|
  std::vector<std::string> failures;   // one entry per violated element
  std::vector<double> psd_residuals;   // most negative eigenvalue, per element
};

// Checks PSD of every element, completeness of the sum, and that retained
// labels exist and partition cleanly. Reports; does not throw.
PovmDiagnostics validate(const PovmSet& povm);

// Throwing variant for construction-time use.
void require_valid(const PovmSet& povm);

enum class OutcomeClass { Regular, Null };

struct Classification {
  OutcomeClass kind = OutcomeClass::Regular;
  // sqrt(E)|perp> = 0: the element carries no QFI at all and is excluded
  // from the saturation analysis.
  bool trivial = false;
  double probability = 0.0;
};

Classification classify(const CMatrix& e, const StateAt& s);
Classification classify(const CMatrix& e, const ParametricPureState& state,
                        double x);

enum class SaturationCondition {
  JointSaturation,
  PostStateZero,
  ClassicalZero,
  PostStateSaturation,
  ClassicalSaturation,
};

const char* condition_name(SaturationCondition c);

struct ConditionResidual {
  double raw = 0.0;
  double normalized = 0.0;  // raw / sqrt(g*p + floor)
  bool satisfied = false;
  bool degenerate = false;  // sqrt(E) annihilates both vectors
};

ConditionResidual check_joint_saturation(const CMatrix& e, const StateAt& s);
ConditionResidual check_post_state_zero(const CMatrix& e, const StateAt& s);
ConditionResidual check_classical_zero(const CMatrix& e, const StateAt& s);
ConditionResidual check_post_state_saturation(const CMatrix& e,
                                              const StateAt& s);
ConditionResidual check_classical_saturation(const CMatrix& e,
                                             const StateAt& s);

ConditionResidual check_condition(SaturationCondition c, const CMatrix& e,
                                  const StateAt& s);

struct SaturationReport {
  std::string label;
  Classification classification;
  ConditionResidual joint_saturation;
  ConditionResidual post_state_zero;
  ConditionResidual classical_zero;
  ConditionResidual post_state_saturation;
  ConditionResidual classical_saturation;
};

SaturationReport saturation_report(const PovmElement& element,
                                   const StateAt& s);
std::vector<SaturationReport> saturation_report(const PovmSet& povm,
                                                const ParametricPureState& state,
                                                double x);

// Canonical measurement operators K = sqrt(E). Any K = U sqrt(E) implements
// the same statistics; only the canonical gauge is ever generated.
KrausChannel kraus_from(const PovmSet& povm);

// Statistics of a measurement channel: E = K^dagger K per operator. Accepts
// any operator gauge; completeness is validated.
PovmSet povm_from(const KrausChannel& channel);

}  // namespace pqm
