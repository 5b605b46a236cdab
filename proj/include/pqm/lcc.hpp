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

// Construction and verification of lossless compression channels.
//
// A postselection channel with retained outcomes {E_w} is lossless when
//   <psi_perp| sum_keep E_w |psi_perp> = 1   (all QFI reaches the kept set)
//   <perp|E_w|psi> = 0 for every kept w      (kept statistics carry none)
// and every kept element is regular. Retained elements of such a channel
// decompose as E_w = q_w rho_perp + Lambda_w with sum q_w = 1, where the
// gauge operator Lambda_w carries no QFI:
//   <psi_perp|Lambda|psi_perp> = <psi_perp|Lambda|psi> = 0,
//   <psi|Lambda|psi> = lambda_w in (0,1).
// The channel then compresses with capacity c = 1/sum lambda_w and gain
// eta = sum q_w/lambda_w.

#pragma once

#include "pqm/povm.hpp"
#include "pqm/qfi.hpp"
#include "pqm/state.hpp"

namespace pqm {

struct GaugeSpec {
  enum class Kind {
    // Lambda_w = lambda_w * rho_x. The only admissible gauge in d = 2.
    ScaledRho,
    // Lambda = lambda rho_x + (projector on the complement of
    // span{psi, psi_perp}); the single retained element becomes
    // E = (lambda - 1) rho_x + I.
    IdentityShift,
    // Caller-supplied Lambda_w, validated against the gauge constraints.
    Custom,
  };

  Kind kind = Kind::ScaledRho;
  std::vector<double> q;       // weights over retained outcomes, sum to 1
  std::vector<double> lambda;  // ScaledRho / IdentityShift: each in (0,1)
  std::vector<CMatrix> gauges; // Custom only

  static GaugeSpec scaled_rho(std::vector<double> lambda,
                              std::vector<double> q = {});
  static GaugeSpec identity_shift(double lambda);
  static GaugeSpec custom(std::vector<CMatrix> gauges, std::vector<double> q);

  int retained_count() const;
};

struct LosslessResiduals {
  // |<psi_perp| sum_keep E |psi_perp> - 1|
  double cross = 0.0;
  // max over kept outcomes of |<perp|E_w|psi>|, raw and scale-free.
  double perp_max = 0.0;
  double perp_max_normalized = 0.0;
};

struct CompressionReport {
  double gamma = 0.0;       // QFI loss per input sample, in [0, 1]
  double capacity = 0.0;    // 1 / sum of retained probabilities
  double gain = 0.0;        // retained QFI per detected sample / input QFI
  int retained_count = 0;
  bool efficient = false;   // capacity in (1, inf)
  double qfi_input = 0.0;
  double retained_probability = 0.0;
  LosslessResiduals residuals;
  std::vector<QfiLedgerRow> ledger;
};

// Evaluates a postselection channel on a state family at x. Every retained
// outcome must be regular; a null retained outcome is rejected (it would
// leave no information in the kept state).
CompressionReport compression_report(const ParametricPureState& state,
                                     double x, const PovmSet& povm);
CompressionReport compression_report(const StateAt& s, const PovmSet& povm);

// Aggregates ledger rows into loss/capacity/gain. Rejects retained null
// rows. Residuals are left for the caller to fill in.
CompressionReport finalize_report(std::vector<QfiLedgerRow> ledger,
                                  double qfi_input);

LosslessResiduals lossless_residuals(const StateAt& s, const PovmSet& povm);
LosslessResiduals lossless_residuals(const ParametricPureState& state,
                                     double x, const PovmSet& povm);

// Builds the retained elements q_w rho_perp + Lambda_w at the construction
// point x and appends the remainder I - sum as a single discarded element.
// Positivity of every element and of the remainder is checked, not assumed.
PovmSet build_compression_channel(const ParametricPureState& state, double x,
                                  const GaugeSpec& gauge);
PovmSet build_compression_channel(const StateAt& s, const GaugeSpec& gauge);

// Exact closed-form retained element for the two-level family
// psi_x = cos(x*delta/2)|0> + i sin(x*delta/2)|1>, lossless at every x:
// the scaled-state gauge is the only admissible one in d = 2, giving
// E = lambda rho_x + rho_perp_x.
CMatrix two_level_lossless_element(double x, double delta, double lambda);
PovmSet two_level_channel(double x, double delta, double lambda);

// Parameter derivative of the normalized retained state for the canonical
// measurement operator K = sqrt(q) rho_perp + sqrt(lambda) rho:
//   |dpsi> + (sqrt(q/lambda) - 1) sqrt(g) |psi_perp>.
// Its component orthogonal to |psi| has squared norm (q/lambda) g, i.e. the
// per-outcome gain times the input QFI over 4.
CVector postselected_sensitivity(const ParametricPureState& state, double x,
                                 double q, double lambda);

}  // namespace pqm
