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

// Seeded randomized property suites over the QFI, measurement, compression
// and restricted-channel modules, plus the deterministic generators they
// draw from. Sampling is built on raw 64-bit engine output so a seed fixes
// every byte of the results on any platform.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pqm/lcc.hpp"
#include "pqm/povm.hpp"
#include "pqm/restricted.hpp"
#include "pqm/state.hpp"

namespace pqm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);
  double normal();                       // Box-Muller on raw engine output
  Complex complex_normal();
  int index(int n);                      // {0, ..., n-1}

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

CMatrix random_hermitian(Rng& rng, int dim);
// PSD with spectrum strictly inside [0, 1].
CMatrix random_subidentity_psd(Rng& rng, int dim);
CVector random_unit_vector(Rng& rng, int dim);
CMatrix random_unitary(Rng& rng, int dim);
// A complete POVM with `outcomes` elements, exactly summing to identity.
PovmSet random_povm(Rng& rng, int dim, int outcomes);
// exp(-i x H)|v0> with a random generator; analytic derivative.
ParametricPureState random_state_family(Rng& rng, int dim);

// What a randomized measurement-operator draw should be biased towards.
enum class ElementKind {
  Generic,            // random PSD, no structure
  RealSpan,           // real combination of psi / perp / rest directions
  DiagonalSpan,       // a rho + b rho_perp + c (rest projector)
  RankOne,            // random |v><v|
  OptimalProjective,  // projector onto (psi +- psi_perp)/sqrt(2)
  CompressionElement, // scaled-state construction element
  NearNull,           // rho_perp of a slightly displaced state
  ExactNull,          // rho_perp at the probed point
};

CMatrix make_element(Rng& rng, ElementKind kind, const StateAt& s,
                     const ParametricPureState& family, double x);

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<std::string> messages;  // one per failure, truncated

  bool passed() const { return failures == 0; }
};

// Decomposition identities, monotonicity, completeness, finite-difference
// consistency and the null-element limit.
SuiteResult run_qfi_suite(std::uint64_t seed, int cases);

// Bidirectional saturation-condition equivalences on a mixed engineered +
// generic ensemble across d in {2, 3, 4, 8}, plus measurement-operator
// completeness after the square-root map.
SuiteResult run_povm_suite(std::uint64_t seed, int cases);

// Soundness of randomized gauge constructions: lossless residuals, loss
// below 1e-8, capacity and gain identities, the d = 2 forced gauge, and the
// sensitivity formula against finite differences.
SuiteResult run_lcc_suite(std::uint64_t seed, int cases);

// Equivalence of the reduced-picture evaluation with the lifted full-space
// evaluation, subspace orthogonality, cross-term cancellation, and the
// subsystem loss formula.
SuiteResult run_restricted_suite(std::uint64_t seed, int cases);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int cases);
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases);

}  // namespace pqm
