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

// Quantum Fisher information functionals for pure parametric states and their
// per-outcome decomposition under a generalized measurement.
//
// For a POVM element E with p = <psi|E|psi>, d = |perp derivative>:
//   outcome QFI            I_E      = 4 <d|E|d>
//   classical FI           I_cl     = 4 (Re<d|E|psi>)^2 / p
//   retained-state QFI     I_post   = 4 (<d|E|d> p - |<d|E|psi>|^2) / p^2
//   joint outcome QFI      I_joint  = I_E - 4 (Im<d|E|psi>)^2 / p
// with I_joint = I_cl + p * I_post and I_joint <= I_E.
//
// Null elements (p below kNullProbability) carry purely classical information
// in the limit: I_cl -> I_E and I_post -> 0, which is what these functions
// return for them.

#pragma once

#include <string>
#include <vector>

#include "pqm/state.hpp"

namespace pqm {

double qfi_pure(const StateAt& s);
double qfi_pure(const ParametricPureState& state, double x);

double outcome_qfi(const StateAt& s, const CMatrix& e);
double outcome_qfi(const ParametricPureState& state, double x,
                   const CMatrix& e);

double classical_fi(const StateAt& s, const CMatrix& e);
double classical_fi(const ParametricPureState& state, double x,
                    const CMatrix& e);

double postselected_state_qfi(const StateAt& s, const CMatrix& e);
double postselected_state_qfi(const ParametricPureState& state, double x,
                              const CMatrix& e);

double joint_outcome_qfi(const StateAt& s, const CMatrix& e);
double joint_outcome_qfi(const ParametricPureState& state, double x,
                         const CMatrix& e);

struct QfiLedgerRow {
  std::string label;
  bool retained = false;
  bool null_outcome = false;
  double probability = 0.0;
  double classical_fi = 0.0;
  double postselected_qfi = 0.0;
  double joint_qfi = 0.0;     // classical_fi + probability * postselected_qfi
  double outcome_qfi = 0.0;
};

// Closed forms for the perpendicular-derivative dyads in terms of the density
// matrix alone:
//   rho_perp        = (d_x rho)^2 / g - rho
//   |perp><psi|     = ([d_x rho, rho] + d_x rho) / 2
// Requires g > kNullProbability (non-stationary point).
struct RhoPerpIdentities {
  CMatrix rho_perp;
  CMatrix perp_psi_dyad;
};

RhoPerpIdentities rho_perp_identities(const ParametricPureState& state,
                                      double x);

}  // namespace pqm
