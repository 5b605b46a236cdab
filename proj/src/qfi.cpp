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

#include "pqm/qfi.hpp"

#include <cmath>

namespace pqm {

namespace {

void require_psd(const CMatrix& e) {
  if (!is_psd(e)) {
    throw Error(ErrorCode::NotPsd, "measurement operator is not PSD");
  }
}

struct Overlaps {
  double p;        // <psi|E|psi>
  Complex cross;   // <perp|E|psi>
  double diagonal; // <perp|E|perp>
};

Overlaps overlaps(const StateAt& s, const CMatrix& e) {
  const CVector e_psi = e * s.psi;
  Overlaps o;
  o.p = s.psi.dot(e_psi).real();
  o.cross = s.perp.dot(e_psi);
  o.diagonal = s.perp.dot(e * s.perp).real();
  return o;
}

}  // namespace

double qfi_pure(const StateAt& s) { return 4.0 * s.g; }

double qfi_pure(const ParametricPureState& state, double x) {
  return qfi_pure(at(state, x));
}

double outcome_qfi(const StateAt& s, const CMatrix& e) {
  require_psd(e);
  return 4.0 * s.perp.dot(e * s.perp).real();
}

double outcome_qfi(const ParametricPureState& state, double x,
                   const CMatrix& e) {
  return outcome_qfi(at(state, x), e);
}

double classical_fi(const StateAt& s, const CMatrix& e) {
  require_psd(e);
  const Overlaps o = overlaps(s, e);
  if (o.p < tol::kNullProbability) {
    // Limiting value for a null element.
    return 4.0 * o.diagonal;
  }
  const double re = o.cross.real();
  return 4.0 * re * re / o.p;
}

double classical_fi(const ParametricPureState& state, double x,
                    const CMatrix& e) {
  return classical_fi(at(state, x), e);
}

double postselected_state_qfi(const StateAt& s, const CMatrix& e) {
  require_psd(e);
  const Overlaps o = overlaps(s, e);
  if (o.p < tol::kNullProbability) {
    return 0.0;
  }
  const double value =
      4.0 * (o.diagonal * o.p - std::norm(o.cross)) / (o.p * o.p);
  // Cauchy-Schwarz guarantees non-negativity; clip rounding noise.
  return value < 0.0 ? 0.0 : value;
}

double postselected_state_qfi(const ParametricPureState& state, double x,
                              const CMatrix& e) {
  return postselected_state_qfi(at(state, x), e);
}

double joint_outcome_qfi(const StateAt& s, const CMatrix& e) {
  require_psd(e);
  const Overlaps o = overlaps(s, e);
  if (o.p < tol::kNullProbability) {
    return 4.0 * o.diagonal;
  }
  const double im = o.cross.imag();
  return 4.0 * o.diagonal - 4.0 * im * im / o.p;
}

double joint_outcome_qfi(const ParametricPureState& state, double x,
                         const CMatrix& e) {
  return joint_outcome_qfi(at(state, x), e);
}

RhoPerpIdentities rho_perp_identities(const ParametricPureState& state,
                                      double x) {
  const StateAt s = at(state, x);
  if (s.g <= tol::kNullProbability) {
    throw Error(ErrorCode::StationaryPoint,
                "stationary point: rho_perp undefined");
  }
  const CVector dv = state.dpsi(x);
  const CMatrix rho = s.rho();
  const CMatrix drho = dv * s.psi.adjoint() + s.psi * dv.adjoint();

  RhoPerpIdentities out;
  out.rho_perp = (drho * drho) / s.g - rho;
  out.perp_psi_dyad = 0.5 * ((drho * rho - rho * drho) + drho);
  return out;
}

}  // namespace pqm
