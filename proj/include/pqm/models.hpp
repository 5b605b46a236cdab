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

// Built-in parametric state families and postselection channels: the
// two-level rotation family, the spin-meter coupling model in a truncated
// Hermite-Gaussian meter basis, and a three-qubit entangled sum-coupling
// example, plus generic product/sum model builders addressable by name.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqm/restricted.hpp"
#include "pqm/state.hpp"

namespace pqm {

// psi_x = cos(x*delta/2)|0> + i sin(x*delta/2)|1>; QFI = delta^2 at every x.
struct TwoLevelFamily {
  double delta = 1.0;

  ParametricPureState family() const;
};

// cos(theta/2)|0> + sin(theta/2)|1>.
CVector spin_angle_state(double theta);

// Momentum operator on the first `modes` Hermite-Gaussian modes of width
// sigma (ground-state position variance sigma^2). Tridiagonal:
//   <n-1|P|n> = -i sqrt(n) / (2 sigma),
// so the ground-state momentum variance is 1/(4 sigma^2).
CMatrix meter_momentum(double sigma, int modes);

// Spin-1/2 coupled to a meter through H = x * sigma_z tensor P. The spin
// factor is the slow index. Evolution is by exact eigendecomposition of the
// generator, so the family is exactly unitary on the truncated space.
class VonNeumannModel {
 public:
  VonNeumannModel(double theta, double sigma, int modes);

  double theta() const { return theta_; }
  double sigma() const { return sigma_; }
  int modes() const { return modes_; }
  int dim() const { return 2 * modes_; }

  const CMatrix& momentum() const { return momentum_; }
  ParametricPureState family() const;

  // The same physics as a product-coupling bipartite model; postselection
  // acts on the spin, or on the meter when `meter_side` is set (which swaps
  // the factor order of the model, not of this family).
  BipartiteModel product_model(bool meter_side = false) const;

 private:
  double theta_;
  double sigma_;
  int modes_;
  CMatrix momentum_;
  struct Cache;
  std::shared_ptr<const Cache> cache_;
};

// Binary spin postselection |phi_theta*><phi_theta*| tensor I on the full
// spin-meter space.
PovmSet spin_projection_channel(const VonNeumannModel& model,
                                double theta_star);
// The nearly-orthogonal choice theta_star = theta - pi + 2 epsilon; loses
// cos^2(theta + epsilon) of the QFI as x -> 0.
PovmSet wva_channel(const VonNeumannModel& model, double theta_star);
// Lossless spin postselection: theta_star = -theta away from theta = pi/2,
// and -theta + 2 epsilon at theta = pi/2.
PovmSet qubit_lcc_channel(const VonNeumannModel& model, double theta,
                          double epsilon);
// Meter-side postselection I tensor (|mode1><mode1| + eps |mode0><mode0|).
PovmSet meter_lcc_channel(const VonNeumannModel& model, double epsilon);

// Two qubits (A) coupled only through entanglement to one qubit (B):
// H_A = omega0 (sigma_z^1 + sigma_z^2), H_B = delta_b sigma_z, initial state
// sqrt(p1) |phi1_A>|phi_theta> + sqrt(p2) |phi2_A>|phi_(theta-pi)> with
// phi1 = (|00>+|11>)/sqrt2 and phi2 = (|01>+|10>)/sqrt2.
struct ThreeQubitModel {
  double omega0 = 1.0;
  double delta_b = 1.0;
  double theta = 0.0;
  double p1 = 0.5;

  // Solves for delta_b so that dh_B/dh_A hits the given ratio.
  static ThreeQubitModel from_ratio(double omega0, double ratio, double theta,
                                    double p1);

  double delta_h_a() const;
  double delta_h_b() const;
  BipartiteModel model() const;
};

// A named model: always usable as a state family, with the bipartite or
// model-specific structure attached when it exists.
struct Model {
  std::string name;
  ParametricPureState family;
  std::optional<BipartiteModel> bipartite;
  std::optional<VonNeumannModel> von_neumann;
  std::optional<TwoLevelFamily> two_level;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::vector<std::string> params;
};

struct Catalog {
  std::vector<CatalogEntry> models;
  std::vector<CatalogEntry> channels;
};

const Catalog& catalog();

Model build_model(const std::string& name, const nlohmann::json& params);

// Builds the named postselection channel for a model, as a POVM on the
// model's full space, constructed at the evaluation point x (overridable
// through an "x_star" parameter where the channel is state-dependent).
PovmSet build_channel(const Model& model, const std::string& name,
                      const nlohmann::json& params, double x);

}  // namespace pqm
