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

#include "pqm/models.hpp"

#include <cmath>

#include "pqm/io_json.hpp"

namespace pqm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double param(const nlohmann::json& params, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
  if (params.contains(key)) {
    if (!params.at(key).is_number()) {
      throw Error(ErrorCode::Parse, "parameter '" + key + "' must be a number");
    }
    return params.at(key).get<double>();
  }
  if (fallback) return *fallback;
  throw Error(ErrorCode::InvalidArgument, "missing parameter '" + key + "'");
}

}  // namespace

ParametricPureState TwoLevelFamily::family() const {
  const double d = delta;
  return ParametricPureState::analytic(
      2,
      [d](double x) {
        CVector v(2);
        v[0] = std::cos(0.5 * x * d);
        v[1] = Complex(0.0, std::sin(0.5 * x * d));
        return v;
      },
      [d](double x) {
        CVector v(2);
        v[0] = -0.5 * d * std::sin(0.5 * x * d);
        v[1] = Complex(0.0, 0.5 * d * std::cos(0.5 * x * d));
        return v;
      });
}

CVector spin_angle_state(double theta) {
  CVector v(2);
  v[0] = std::cos(0.5 * theta);
  v[1] = std::sin(0.5 * theta);
  return v;
}

CMatrix meter_momentum(double sigma, int modes) {
  if (modes < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least two meter modes");
  }
  if (sigma <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "meter width must be positive");
  }
  CMatrix p = CMatrix::Zero(modes, modes);
  for (int n = 1; n < modes; ++n) {
    const double coupling = std::sqrt(static_cast<double>(n)) / (2.0 * sigma);
    p(n - 1, n) = Complex(0.0, -coupling);
    p(n, n - 1) = Complex(0.0, coupling);
  }
  return p;
}

struct VonNeumannModel::Cache {
  EigResult momentum_eig;
  CVector meter_coeffs;  // eigenbasis coefficients of the ground mode
};

VonNeumannModel::VonNeumannModel(double theta, double sigma, int modes)
    : theta_(theta), sigma_(sigma), modes_(modes),
      momentum_(meter_momentum(sigma, modes)) {
  auto cache = std::make_shared<Cache>();
  cache->momentum_eig = herm_eig(momentum_);
  cache->meter_coeffs =
      cache->momentum_eig.eigenvectors.adjoint() * basis_vector(modes, 0);
  cache_ = std::move(cache);
}

ParametricPureState VonNeumannModel::family() const {
  const auto cache = cache_;
  const int modes = modes_;
  const double theta = theta_;

  // The generator sigma_z tensor P is block diagonal, so the meter factor
  // evolves with exp(-ixP) under spin up and exp(+ixP) under spin down.
  auto meter_at = [cache, modes](double x, int sign, bool derivative) {
    const EigResult& eig = cache->momentum_eig;
    CVector phases(modes);
    for (int i = 0; i < modes; ++i) {
      const double w = sign * eig.eigenvalues[i];
      Complex factor = std::exp(Complex(0.0, -x * w));
      if (derivative) factor *= Complex(0.0, -w);
      phases[i] = factor * cache->meter_coeffs[i];
    }
    return (eig.eigenvectors * phases).eval();
  };

  auto assemble = [meter_at, modes, theta](double x, bool derivative) {
    CVector v = CVector::Zero(2 * modes);
    v.segment(0, modes) = std::cos(0.5 * theta) * meter_at(x, +1, derivative);
    v.segment(modes, modes) =
        std::sin(0.5 * theta) * meter_at(x, -1, derivative);
    return v;
  };

  return ParametricPureState::analytic(
      2 * modes, [assemble](double x) { return assemble(x, false); },
      [assemble](double x) { return assemble(x, true); });
}

BipartiteModel VonNeumannModel::product_model(bool meter_side) const {
  const CMatrix sigma_z = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
  const CVector spin = spin_angle_state(theta_);
  const CVector meter0 = basis_vector(modes_, 0);
  if (meter_side) {
    return BipartiteModel::product(momentum_, sigma_z, meter0, spin);
  }
  return BipartiteModel::product(sigma_z, momentum_, spin, meter0);
}

PovmSet spin_projection_channel(const VonNeumannModel& model,
                                double theta_star) {
  const CMatrix keep =
      tensor(projector(spin_angle_state(theta_star)), identity(model.modes()));
  PovmSet povm;
  povm.elements.push_back({"keep", keep});
  povm.elements.push_back({"rest", identity(model.dim()) - keep});
  povm.retained.insert("keep");
  return povm;
}

PovmSet wva_channel(const VonNeumannModel& model, double theta_star) {
  return spin_projection_channel(model, theta_star);
}

PovmSet qubit_lcc_channel(const VonNeumannModel& model, double theta,
                          double epsilon) {
  const bool at_half_pi = std::abs(std::cos(theta)) <= 1e-12;
  const double theta_star = at_half_pi ? -theta + 2.0 * epsilon : -theta;
  return spin_projection_channel(model, theta_star);
}

PovmSet meter_lcc_channel(const VonNeumannModel& model, double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "probe weight must lie in [0, 1]");
  }
  const int modes = model.modes();
  CMatrix meter = CMatrix::Zero(modes, modes);
  meter(1, 1) = 1.0;
  meter(0, 0) = epsilon;
  const CMatrix keep = tensor(identity(2), meter);
  PovmSet povm;
  povm.elements.push_back({"keep", keep});
  povm.elements.push_back({"rest", identity(model.dim()) - keep});
  povm.retained.insert("keep");
  return povm;
}

double ThreeQubitModel::delta_h_a() const {
  return 2.0 * omega0 * std::sqrt(p1);
}

double ThreeQubitModel::delta_h_b() const {
  const double p2 = 1.0 - p1;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return 2.0 * delta_b * std::sqrt(p1 * p2 * c * c + 0.25 * s * s);
}

ThreeQubitModel ThreeQubitModel::from_ratio(double omega0, double ratio,
                                            double theta, double p1) {
  ThreeQubitModel m{omega0, 1.0, theta, p1};
  const double unit = m.delta_h_b();  // dh_B at delta_b = 1
  if (unit <= 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "this (theta, p1) gives no B-side fluctuation to scale");
  }
  m.delta_b = ratio * m.delta_h_a() / unit;
  return m;
}

BipartiteModel ThreeQubitModel::model() const {
  if (p1 <= 0.0 || p1 >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "p1 must lie in (0, 1)");
  }
  const CMatrix sigma_z = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
  const CMatrix h_a =
      omega0 * (tensor(sigma_z, identity(2)) + tensor(identity(2), sigma_z));
  const CMatrix h_b = delta_b * sigma_z;

  CVector phi1 = CVector::Zero(4);
  phi1[0] = phi1[3] = 1.0 / std::sqrt(2.0);
  CVector phi2 = CVector::Zero(4);
  phi2[1] = phi2[2] = 1.0 / std::sqrt(2.0);

  std::vector<Subspace> subspaces{
      {p1, phi1, spin_angle_state(theta)},
      {1.0 - p1, phi2, spin_angle_state(theta - kPi)},
  };
  return BipartiteModel::sum(h_a, h_b, std::move(subspaces));
}

const Catalog& catalog() {
  static const Catalog entries{
      {
          {"two_level", "single-qubit rotation family, QFI = delta^2",
           {"delta"}},
          {"von_neumann",
           "spin-1/2 coupled to a truncated Hermite-Gaussian meter",
           {"theta", "sigma", "modes"}},
          {"three_qubit",
           "two entangled qubits probed while a third evolves freely",
           {"omega0", "delta_b|ratio", "theta", "p1"}},
          {"product_bipartite", "generic H = x (H_A tensor H_B) model",
           {"h_a", "h_b", "phi_a", "phi_b"}},
          {"sum_bipartite", "generic H = x (H_A + H_B) model",
           {"h_a", "h_b", "subspaces"}},
      },
      {
          {"wva", "nearly orthogonal spin postselection", {"theta_star"}},
          {"qubit_lcc", "lossless spin postselection", {"theta", "epsilon"}},
          {"meter_lcc", "meter-side postselection", {"epsilon"}},
          {"two_level_lcc", "exact two-level compression element",
           {"lambda", "x_star"}},
          {"scaled_rho", "state-scaled gauge construction",
           {"lambda", "q", "x_star"}},
          {"identity_shift", "identity-shifted single-outcome construction",
           {"lambda", "x_star"}},
          {"energy_subspace", "subsystem channel from energy subspaces",
           {"epsilon", "conjugate"}},
          {"weak_entanglement", "subsystem channel for product couplings",
           {"epsilon", "q"}},
          {"povm", "explicit POVM document", {"document"}},
      },
  };
  return entries;
}

Model build_model(const std::string& name, const nlohmann::json& params) {
  if (name == "two_level") {
    TwoLevelFamily two_level{param(params, "delta", 1.0)};
    return Model{name, two_level.family(), std::nullopt, std::nullopt,
                 two_level};
  }
  if (name == "von_neumann") {
    VonNeumannModel vn(param(params, "theta", kPi / 3.0),
                       param(params, "sigma", 1.0),
                       static_cast<int>(param(params, "modes", 40)));
    return Model{name, vn.family(), vn.product_model(false), vn, std::nullopt};
  }
  if (name == "three_qubit") {
    ThreeQubitModel tq;
    tq.omega0 = param(params, "omega0", 1.0);
    tq.theta = param(params, "theta", kPi / 3.0);
    tq.p1 = param(params, "p1", 2.0 / 3.0);
    if (params.contains("ratio")) {
      tq = ThreeQubitModel::from_ratio(tq.omega0, param(params, "ratio"),
                                       tq.theta, tq.p1);
    } else {
      tq.delta_b = param(params, "delta_b", 1.0);
    }
    BipartiteModel model = tq.model();
    ParametricPureState family = model.family();
    return Model{name, std::move(family), std::move(model), std::nullopt,
                 std::nullopt};
  }
  if (name == "product_bipartite" || name == "sum_bipartite") {
    nlohmann::json doc = params;
    doc["kind"] = name == "product_bipartite" ? "product" : "sum";
    BipartiteModel model = io::bipartite_from_json(doc);
    ParametricPureState family = model.family();
    return Model{name, std::move(family), std::move(model), std::nullopt,
                 std::nullopt};
  }
  throw Error(ErrorCode::NotFound, "unknown model '" + name + "'");
}

namespace {

std::vector<double> number_list(const nlohmann::json& j) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
    return out;
  }
  if (!j.is_array()) {
    throw Error(ErrorCode::Parse, "expected a number or an array of numbers");
  }
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

const VonNeumannModel& require_von_neumann(const Model& model,
                                           const std::string& channel) {
  if (!model.von_neumann) {
    throw Error(ErrorCode::InvalidArgument,
                "channel '" + channel + "' needs the von_neumann model");
  }
  return *model.von_neumann;
}

const BipartiteModel& require_bipartite(const Model& model,
                                        const std::string& channel) {
  if (!model.bipartite) {
    throw Error(ErrorCode::InvalidArgument,
                "channel '" + channel + "' needs a bipartite model");
  }
  return *model.bipartite;
}

}  // namespace

PovmSet build_channel(const Model& model, const std::string& name,
                      const nlohmann::json& params, double x) {
  if (name == "wva") {
    return wva_channel(require_von_neumann(model, name),
                       param(params, "theta_star"));
  }
  if (name == "qubit_lcc") {
    const VonNeumannModel& vn = require_von_neumann(model, name);
    return qubit_lcc_channel(vn, param(params, "theta", vn.theta()),
                             param(params, "epsilon", 1e-2));
  }
  if (name == "meter_lcc") {
    return meter_lcc_channel(require_von_neumann(model, name),
                             param(params, "epsilon"));
  }
  if (name == "two_level_lcc") {
    if (!model.two_level) {
      throw Error(ErrorCode::InvalidArgument,
                  "channel 'two_level_lcc' needs the two_level model");
    }
    return two_level_channel(param(params, "x_star", x),
                             model.two_level->delta,
                             param(params, "lambda"));
  }
  if (name == "scaled_rho") {
    if (!params.contains("lambda")) {
      throw Error(ErrorCode::InvalidArgument, "missing parameter 'lambda'");
    }
    std::vector<double> lambda = number_list(params.at("lambda"));
    std::vector<double> q;
    if (params.contains("q")) q = number_list(params.at("q"));
    return build_compression_channel(model.family,
                                     param(params, "x_star", x),
                                     GaugeSpec::scaled_rho(lambda, q));
  }
  if (name == "identity_shift") {
    return build_compression_channel(
        model.family, param(params, "x_star", x),
        GaugeSpec::identity_shift(param(params, "lambda")));
  }
  if (name == "energy_subspace") {
    const BipartiteModel& bm = require_bipartite(model, name);
    const bool conjugate =
        params.contains("conjugate") ? params.at("conjugate").get<bool>() : true;
    PovmSet on_a =
        energy_subspace_channel(bm, x, param(params, "epsilon"), conjugate);
    return lift_to_full(on_a, bm.dim_b());
  }
  if (name == "weak_entanglement") {
    const BipartiteModel& bm = require_bipartite(model, name);
    std::vector<double> q;
    if (params.contains("q")) q = number_list(params.at("q"));
    PovmSet on_a =
        weak_entanglement_channel(bm, q, param(params, "epsilon", 1e-4));
    return lift_to_full(on_a, bm.dim_b());
  }
  if (name == "povm") {
    if (!params.contains("document")) {
      throw Error(ErrorCode::InvalidArgument,
                  "channel 'povm' needs a 'document'");
    }
    return io::povm_from_json(params.at("document"));
  }
  throw Error(ErrorCode::NotFound, "unknown channel '" + name + "'");
}

}  // namespace pqm
