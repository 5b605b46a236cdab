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

// Postselection restricted to one subsystem of a bipartite pure state.
//
// For an A-only channel E^A (x) I_B, the lossless conditions reduce to
//   Tr(rho_perp_A sum_keep E^A) = 1,   Tr(C_A E^A) = 0 per kept outcome,
// with Tr(rho_A sum_keep E^A) < 1, where C_AB = |perp><psi| and rho_perp_AB,
// rho_A are its companions, each partial-traced over B. Restricted channels
// are generically lossy; two families admit nearly lossless constructions:
// weakly entangled product-coupling models, and non-interacting sum-coupling
// models with an entangled initial state, where the loss scales as
// (dh_B/dh_A)^2 plus a term linear in the channel's probe weight epsilon.

#pragma once

#include <memory>
#include <vector>

#include "pqm/lcc.hpp"
#include "pqm/povm.hpp"
#include "pqm/state.hpp"

namespace pqm {

// Shift H by a constant so its expectation in the given state vanishes.
CMatrix gauge_shift(const CMatrix& h, const CVector& state);
CMatrix gauge_shift(const CMatrix& h, const CMatrix& rho);

// One term of the entangled initial state of a sum-coupling model:
// weight p_k, subsystem-A state phi_a (fixed mean local energy), and its
// orthonormal partner phi_b on B.
struct Subspace {
  double weight = 0.0;
  CVector phi_a;
  CVector phi_b;
};

class BipartiteModel {
 public:
  enum class Kind {
    Product,  // H = x * (H_A tensor H_B), separable initial state
    Sum,      // H = x * (H_A + H_B), entangled initial state
  };

  static BipartiteModel product(CMatrix h_a, CMatrix h_b, CVector phi_a,
                                CVector phi_b);
  // Local Hamiltonians are gauge-shifted so both have zero expectation in
  // the initial state; the subspace orthogonality relations
  //   H_A phi_k ⊥ phi_k,  phi_k ⊥ phi_l,  H_A phi_k ⊥ phi_l,
  //   H_A phi_k ⊥ H_A phi_l
  // are validated at construction.
  static BipartiteModel sum(CMatrix h_a, CMatrix h_b,
                            std::vector<Subspace> subspaces);

  Kind kind() const { return kind_; }
  int dim_a() const { return static_cast<int>(h_a_.rows()); }
  int dim_b() const { return static_cast<int>(h_b_.rows()); }
  TensorSpace space() const { return TensorSpace{{dim_a(), dim_b()}}; }

  const CMatrix& h_a() const { return h_a_; }  // shifted
  const CMatrix& h_b() const { return h_b_; }  // shifted
  const CVector& initial_state() const { return initial_; }
  const std::vector<Subspace>& subspaces() const { return subspaces_; }
  // Common pre-shift mean local energy of the phi_k (sum models).
  double subspace_energy() const { return energy_; }

  // Full Hamiltonian on A tensor B (shifted locals).
  CMatrix hamiltonian() const;
  // exp(-i x H) |psi_0> with analytic derivative.
  ParametricPureState family() const;
  // Local evolution exp(-i x H_A).
  CMatrix evolution_a(double x) const;

 private:
  BipartiteModel() = default;

  Kind kind_ = Kind::Product;
  CMatrix h_a_, h_b_;
  CVector initial_;
  std::vector<Subspace> subspaces_;
  double energy_ = 0.0;
  struct SpectralCache;
  std::shared_ptr<const SpectralCache> cache_;
};

struct ReducedQuantities {
  CMatrix c_a;          // Tr_B |perp><psi|
  CMatrix rho_perp_a;   // Tr_B of the normalized perp projector
  CMatrix rho_a;        // reduced state
  double g = 0.0;       // input QFI / 4
  double delta_h_a = 0.0;  // sqrt Var(H_A) in the reduced initial state
  double delta_h_b = 0.0;
};

ReducedQuantities reduced_quantities(const BipartiteModel& model, double x);

struct RestrictedResiduals {
  double cross = 0.0;                 // |Tr(rho_perp_A sum_keep E) - 1|
  double perp_max = 0.0;              // max_keep |Tr(C_A E)|
  double perp_max_normalized = 0.0;
  double retained_probability = 0.0;  // Tr(rho_A sum_keep E), must be < 1
};

RestrictedResiduals restricted_lossless_residuals(const BipartiteModel& model,
                                                  double x,
                                                  const PovmSet& povm_on_a);

// Compression report evaluated purely from the reduced quantities; agrees
// with compression_report on the lifted channel E tensor I_B.
CompressionReport restricted_report(const BipartiteModel& model, double x,
                                    const PovmSet& povm_on_a);

// E tensor I_B with labels and retained set preserved.
PovmSet lift_to_full(const PovmSet& povm_on_a, int dim_b);

// Weak-entanglement construction for product-coupling models at x -> 0.
// With <H_A> = 0: E_w = q_w rho_perp_A + epsilon |phi_A><phi_A| (lossless,
// capacity 1/(L epsilon)). With <H_A> != 0 but <H_B> = 0: E_w = q_w
// rho_perp_A (capacity <H_A^2>/<H_A>^2). Requires one local expectation to
// vanish; otherwise the Hamiltonian must be re-gauged first.
PovmSet weak_entanglement_channel(const BipartiteModel& product_model,
                                  std::vector<double> q, double epsilon);

// Energy-subspace construction for sum-coupling models:
//   E_w = sum_k r_wk |phi_k_perp><phi_k_perp| + epsilon P_supp
// with phi_k_perp = H_A phi_k / sqrt(Var_k), zero-variance subspaces
// omitted, and P_supp the projector onto span{phi_k}. Each column of r must
// sum to 1. When `conjugate` is set (default) the elements are carried to
// the evaluation point by the local evolution, which makes the construction
// exact at every x.
PovmSet energy_subspace_channel(const BipartiteModel& sum_model, double x,
                                const std::vector<std::vector<double>>& r,
                                double epsilon, bool conjugate = true);
// Single retained outcome, r_k = 1 for every subspace.
PovmSet energy_subspace_channel(const BipartiteModel& sum_model, double x,
                                double epsilon, bool conjugate = true);

struct LossScalingPoint {
  double ratio = 0.0;    // dh_B / dh_A
  double epsilon = 0.0;
  double gamma = 0.0;
  double capacity = 0.0;
  double gain = 0.0;
  double predicted_gamma = 0.0;  // ratio^2 / (1 + ratio^2)
  double retained_probability = 0.0;
};

struct LossScalingReport {
  std::vector<LossScalingPoint> points;  // ratio grid x epsilon grid
  double ratio_exponent = 0.0;    // fitted d log(gamma - floor) / d log ratio
  double epsilon_exponent = 0.0;  // fitted d log(gamma - floor) / d log eps
};

// Sweeps copies of the model with H_B rescaled to hit each target ratio.
LossScalingReport loss_scaling_report(const BipartiteModel& sum_model,
                                      double x,
                                      const std::vector<double>& epsilon_grid,
                                      const std::vector<double>& ratio_grid);

// Least-squares slope of log(y) against log(x).
double fitted_loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys);

}  // namespace pqm
