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

#pragma once

#include <functional>

#include "pqm/linalg.hpp"
#include "pqm/types.hpp"

namespace pqm {

// A differentiable family x -> |psi_x> of unit vectors. The derivative is
// either supplied analytically or obtained by central differences with one
// Richardson refinement; disagreement between refinement levels above
// kDerivativeQuality is treated as a non-smooth family and rejected.
//
// Families must come with a differentiable global-phase convention. The
// perpendicular derivative is phase-insensitive, so any residual <psi|dpsi>
// overlap (real from norm drift, imaginary from the phase convention) is
// projected out when forming it.
class ParametricPureState {
 public:
  enum class DerivativeMode { Analytic, FiniteDifference };

  using VectorFn = std::function<CVector(double)>;

  static ParametricPureState analytic(int dim, VectorFn psi, VectorFn dpsi);
  static ParametricPureState finite_difference(int dim, VectorFn psi,
                                               double step_scale = 1e-5);

  int dim() const { return dim_; }
  DerivativeMode derivative_mode() const { return mode_; }

  // Unit norm is enforced to 1e-10 at every evaluation.
  CVector psi(double x) const;
  CVector dpsi(double x) const;

  // |dpsi> - <psi|dpsi>|psi>, orthogonal to |psi> by construction.
  CVector perp_derivative(double x) const;

 private:
  ParametricPureState(int dim, VectorFn psi, VectorFn dpsi, DerivativeMode mode,
                      double step_scale)
      : dim_(dim),
        psi_(std::move(psi)),
        dpsi_(std::move(dpsi)),
        mode_(mode),
        step_scale_(step_scale) {}

  int dim_;
  VectorFn psi_;
  VectorFn dpsi_;
  DerivativeMode mode_;
  double step_scale_;
};

// State, perpendicular derivative and g = <perp|perp> at a fixed parameter
// value; avoids re-deriving the family inside every functional.
struct StateAt {
  CVector psi;
  CVector perp;
  double g = 0.0;

  CMatrix rho() const { return projector(psi); }
  // Normalized vector along the perpendicular derivative.
  CVector psi_perp() const;
  // rho_perp, the projector along the perpendicular derivative.
  CMatrix rho_perp() const;
};

StateAt at(const ParametricPureState& state, double x);

}  // namespace pqm
