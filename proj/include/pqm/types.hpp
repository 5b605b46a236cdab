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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pqm {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

namespace tol {

// Hermiticity / PSD acceptance, relative to the operator scale.
inline constexpr double kSymmetry = 1e-10;
// Eigendecomposition and operator-square-root reconstruction.
inline constexpr double kReconstruction = 1e-9;
// Probability below which an outcome counts as null on the probed state.
inline constexpr double kNullProbability = 1e-14;
// Scale-free floor used when normalizing residuals by sqrt(g*p).
inline constexpr double kResidualFloor = 1e-30;
// Threshold on satisfied saturation conditions (normalized residuals).
inline constexpr double kConditionSatisfied = 1e-9;
// Disagreement allowed between finite-difference refinement levels.
inline constexpr double kDerivativeQuality = 1e-6;

}  // namespace tol

enum class ErrorCode {
  InvalidArgument,
  Parse,
  NotFound,
  NotHermitian,
  NotPsd,
  InvariantViolation,
  NullRetainedOutcome,
  StationaryPoint,
  DerivativeQuality,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pqm
