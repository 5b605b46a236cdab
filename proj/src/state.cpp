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

#include "pqm/state.hpp"

#include <cmath>

namespace pqm {

ParametricPureState ParametricPureState::analytic(int dim, VectorFn psi,
                                                  VectorFn dpsi) {
  if (dim <= 0) {
    throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
  }
  return ParametricPureState(dim, std::move(psi), std::move(dpsi),
                             DerivativeMode::Analytic, 0.0);
}

ParametricPureState ParametricPureState::finite_difference(int dim,
                                                           VectorFn psi,
                                                           double step_scale) {
  if (dim <= 0) {
    throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
  }
  if (step_scale <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "step scale must be positive");
  }
  return ParametricPureState(dim, std::move(psi), nullptr,
                             DerivativeMode::FiniteDifference, step_scale);
}

CVector ParametricPureState::psi(double x) const {
  CVector v = psi_(x);
  if (v.size() != dim_) {
    throw Error(ErrorCode::InvariantViolation,
                "state family returned a vector of wrong dimension");
  }
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvariantViolation,
                "state family returned non-finite entries");
  }
  if (std::abs(v.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvariantViolation,
                "state family is not unit norm at x = " + std::to_string(x));
  }
  return v;
}

CVector ParametricPureState::dpsi(double x) const {
  if (mode_ == DerivativeMode::Analytic) {
    CVector v = dpsi_(x);
    if (v.size() != dim_ || !v.allFinite()) {
      throw Error(ErrorCode::InvariantViolation,
                  "derivative returned an invalid vector");
    }
    return v;
  }
  const double h = step_scale_ * std::max(1.0, std::abs(x));
  auto central = [&](double step) {
    return ((psi(x + step) - psi(x - step)) / (2.0 * step)).eval();
  };
  const CVector coarse = central(h);
  const CVector fine = central(h / 2.0);
  const CVector richardson = (4.0 * fine - coarse) / 3.0;
  const double disagreement = (richardson - fine).norm();
  if (disagreement > tol::kDerivativeQuality *
                         std::max(1.0, richardson.norm())) {
    throw Error(ErrorCode::DerivativeQuality,
                "finite-difference refinement levels disagree by " +
                    std::to_string(disagreement) +
                    "; family looks non-smooth at x = " + std::to_string(x));
  }
  return richardson;
}

CVector ParametricPureState::perp_derivative(double x) const {
  const CVector v = psi(x);
  const CVector dv = dpsi(x);
  // A norm-preserving family has a purely imaginary <psi|dpsi>; a real part
  // means the supplied derivative does not belong to this family.
  const Complex overlap = v.dot(dv);
  if (std::abs(overlap.real()) >
      tol::kDerivativeQuality * std::max(1.0, dv.norm())) {
    throw Error(ErrorCode::InvariantViolation,
                "derivative does not preserve the norm: Re<psi|dpsi> = " +
                    std::to_string(overlap.real()));
  }
  return dv - overlap * v;
}

CVector StateAt::psi_perp() const {
  if (g <= tol::kNullProbability) {
    throw Error(ErrorCode::StationaryPoint,
                "stationary point: perpendicular direction undefined");
  }
  return perp / std::sqrt(g);
}

CMatrix StateAt::rho_perp() const {
  const CVector n = psi_perp();
  return projector(n);
}

StateAt at(const ParametricPureState& state, double x) {
  StateAt s;
  s.psi = state.psi(x);
  s.perp = state.perp_derivative(x);
  s.g = s.perp.squaredNorm();
  return s;
}

}  // namespace pqm
