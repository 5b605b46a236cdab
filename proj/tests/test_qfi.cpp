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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pqm/models.hpp"
#include "pqm/qfi.hpp"
#include "pqm/suites.hpp"

using namespace pqm;

namespace {

// cos(x d / 2)|0> + i sin(x d / 2)|1> and its symbolic derivative.
ParametricPureState two_level(double delta) {
  return TwoLevelFamily{delta}.family();
}

}  // namespace

TEST_CASE("perpendicular derivative") {
  SUBCASE("two-level family at x = 0, symbolic oracle") {
    const double delta = 0.8;
    const CVector perp = two_level(delta).perp_derivative(0.0);
    CHECK(std::abs(perp[0]) <= 1e-14);
    CHECK(std::abs(perp[1] - Complex(0.0, 0.5 * delta)) <= 1e-14);
    CHECK(perp.squaredNorm() == doctest::Approx(delta * delta / 4.0));
  }

  SUBCASE("parameter-independent family has a vanishing derivative") {
    const ParametricPureState constant = ParametricPureState::analytic(
        3, [](double) { return basis_vector(3, 0); },
        [](double) { return CVector(CVector::Zero(3)); });
    CHECK(constant.perp_derivative(0.7).norm() == 0.0);
    CHECK(qfi_pure(constant, -1.2) == 0.0);
  }

  SUBCASE("spin-meter model at x = 0") {
    const double theta = 1.0471975511965976;  // pi/3
    const double sigma = 1.0;
    const VonNeumannModel model(theta, sigma, 24);
    const CVector perp = model.family().perp_derivative(0.0);
    // (1/2 sigma) (cos(theta/2)|0> - sin(theta/2)|1>) tensor mode1
    CVector expected = CVector::Zero(model.dim());
    expected[1] = std::cos(0.5 * theta) / (2.0 * sigma);
    expected[model.modes() + 1] = -std::sin(0.5 * theta) / (2.0 * sigma);
    CHECK((perp - expected).norm() <= 1e-12);
  }

  SUBCASE("orthogonality to the state at every probed point") {
    Rng rng(21);
    for (int d : {2, 4, 7}) {
      const ParametricPureState family = random_state_family(rng, d);
      for (double x : {-0.9, 0.1, 1.4}) {
        const CVector psi = family.psi(x);
        const CVector perp = family.perp_derivative(x);
        CHECK(std::abs(psi.dot(perp)) <= 1e-9 * std::max(1.0, perp.norm()));
      }
    }
  }

  SUBCASE("a discontinuous family fails the refinement guard") {
    const ParametricPureState jump = ParametricPureState::finite_difference(
        2, [](double x) {
          CVector v(2);
          const double a = x >= 0.5 ? x + 0.1 : x;
          v[0] = std::cos(a);
          v[1] = std::sin(a);
          return v;
        });
    CHECK_THROWS_AS(jump.perp_derivative(0.5), Error);
  }
}

TEST_CASE("pure-state QFI") {
  SUBCASE("two-level closed form at every x") {
    const double delta = 1.7;
    const ParametricPureState family = two_level(delta);
    for (double x : {-2.0, -0.3, 0.0, 0.4, 3.0}) {
      CHECK(qfi_pure(family, x) == doctest::Approx(delta * delta).epsilon(1e-12));
    }
  }

  SUBCASE("spin-meter model: 1/sigma^2 within truncation tolerance") {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const VonNeumannModel model(0.9, sigma, 40);
      const ParametricPureState family = model.family();
      for (double x : {0.0, 0.2, -0.45}) {
        CHECK(std::abs(qfi_pure(family, x) * sigma * sigma - 1.0) <= 1e-8);
      }
    }
  }
}

TEST_CASE("outcome QFI") {
  Rng rng(22);
  const ParametricPureState family = random_state_family(rng, 4);
  const double x = 0.3;
  const StateAt s = at(family, x);

  CHECK(outcome_qfi(s, identity(4)) == doctest::Approx(qfi_pure(s)));
  CHECK(outcome_qfi(s, s.rho_perp()) == doctest::Approx(qfi_pure(s)));
  CHECK(outcome_qfi(s, s.rho()) <= 1e-12 * std::max(1.0, qfi_pure(s)));

  CMatrix indefinite = identity(4);
  indefinite(0, 0) = -1.0;
  CHECK_THROWS_AS(outcome_qfi(s, indefinite), Error);
}

TEST_CASE("classical Fisher information") {
  SUBCASE("complete element carries no statistics") {
    Rng rng(23);
    const ParametricPureState family = random_state_family(rng, 5);
    CHECK(classical_fi(family, 0.1, identity(5)) <= 1e-18);
  }

  SUBCASE("two-level projective outcome against the symbolic probability") {
    const double delta = 1.1;
    const double x = 0.37;
    const ParametricPureState family = two_level(delta);
    const CMatrix e = projector(basis_vector(2, 0));
    const double expected =
        delta * delta * std::pow(std::sin(0.5 * x * delta), 2);
    CHECK(classical_fi(family, x, e) == doctest::Approx(expected).epsilon(1e-10));
    // and against direct differentiation of p(x)
    const double fd = oracle::classical_fi_fd(
        [&](double y) { return family.psi(y); }, e, x);
    CHECK(classical_fi(family, x, e) == doctest::Approx(fd).epsilon(1e-7));
  }

  SUBCASE("null element returns the limiting value") {
    Rng rng(24);
    const ParametricPureState family = random_state_family(rng, 4);
    const StateAt s = at(family, -0.2);
    const CMatrix e = s.rho_perp();
    CHECK(classical_fi(s, e) == doctest::Approx(outcome_qfi(s, e)));
    CHECK(postselected_state_qfi(s, e) == 0.0);
  }
}

TEST_CASE("retained-state QFI") {
  SUBCASE("complete element keeps everything") {
    Rng rng(25);
    const ParametricPureState family = random_state_family(rng, 3);
    const StateAt s = at(family, 0.8);
    CHECK(postselected_state_qfi(s, identity(3)) ==
          doctest::Approx(qfi_pure(s)));
  }

  SUBCASE("rank-one elements leave no information in the state") {
    Rng rng(26);
    const ParametricPureState family = random_state_family(rng, 4);
    const StateAt s = at(family, 0.1);
    const CVector v = (s.psi + 0.7 * s.psi_perp() +
                       0.3 * random_unit_vector(rng, 4)).normalized();
    CHECK(postselected_state_qfi(s, projector(v)) <=
          1e-10 * std::max(1.0, qfi_pure(s)));
  }

  SUBCASE("two-level compression element amplifies by 1/lambda") {
    const double delta = 1.0, x = 0.3, lambda = 0.25;
    const ParametricPureState family = two_level(delta);
    const StateAt s = at(family, x);
    const CMatrix e = two_level_lossless_element(x, delta, lambda);
    // direct evaluation from raw overlaps
    const oracle::RawFunctionals raw =
        oracle::raw_functionals(s.psi, s.perp, e);
    const double value = postselected_state_qfi(s, e);
    CHECK(value == doctest::Approx(raw.retained).epsilon(1e-12));
    CHECK(value == doctest::Approx(4.0 * qfi_pure(s)).epsilon(1e-9));
  }
}

TEST_CASE("joint outcome QFI") {
  Rng rng(27);

  SUBCASE("complete element") {
    const ParametricPureState family = random_state_family(rng, 4);
    const StateAt s = at(family, -0.6);
    CHECK(joint_outcome_qfi(s, identity(4)) == doctest::Approx(qfi_pure(s)));
  }

  SUBCASE("both routes agree on random elements, d = 4") {
    const ParametricPureState family = random_state_family(rng, 4);
    const StateAt s = at(family, 0.25);
    for (int i = 0; i < 25; ++i) {
      const CMatrix e = random_subidentity_psd(rng, 4);
      const double p = s.psi.dot(e * s.psi).real();
      const double via_decomposition =
          classical_fi(s, e) + p * postselected_state_qfi(s, e);
      const double direct = joint_outcome_qfi(s, e);
      CHECK(direct == doctest::Approx(via_decomposition).epsilon(1e-9));
      // and never above the outcome QFI
      CHECK(direct <= outcome_qfi(s, e) + 1e-9 * std::max(1.0, qfi_pure(s)));
    }
  }

  SUBCASE("vanishing imaginary overlap saturates the outcome QFI") {
    const ParametricPureState family = random_state_family(rng, 5);
    const StateAt s = at(family, 0.4);
    const CMatrix e = 0.4 * s.rho() + 0.5 * s.rho_perp();
    CHECK(joint_outcome_qfi(s, e) ==
          doctest::Approx(outcome_qfi(s, e)).epsilon(1e-10));
  }
}

TEST_CASE("density-matrix identities for the perpendicular dyads") {
  SUBCASE("two dimensions force the complement") {
    const ParametricPureState family = two_level(1.0);
    for (double x : {-0.5, 0.0, 0.9}) {
      const RhoPerpIdentities ids = rho_perp_identities(family, x);
      const CMatrix rho = projector(family.psi(x));
      CHECK((ids.rho_perp - (identity(2) - rho)).norm() <= 1e-10);
    }
  }

  SUBCASE("random five-dimensional family") {
    Rng rng(28);
    const ParametricPureState family = random_state_family(rng, 5);
    const double x = 0.15;
    const StateAt s = at(family, x);
    const RhoPerpIdentities ids = rho_perp_identities(family, x);
    const double scale = std::max(1.0, s.g);
    CHECK((ids.rho_perp - s.rho_perp()).norm() <= 1e-9 * scale);
    CHECK((ids.perp_psi_dyad - s.perp * s.psi.adjoint()).norm() <=
          1e-9 * scale);
  }

  SUBCASE("the dyad acts on psi as the perpendicular derivative") {
    Rng rng(29);
    const ParametricPureState family = random_state_family(rng, 4);
    const double x = -0.35;
    const StateAt s = at(family, x);
    const RhoPerpIdentities ids = rho_perp_identities(family, x);
    CHECK((ids.perp_psi_dyad * s.psi - s.perp).norm() <=
          1e-9 * std::max(1.0, s.perp.norm()));
  }

  SUBCASE("stationary families are rejected") {
    const ParametricPureState constant = ParametricPureState::analytic(
        2, [](double) { return basis_vector(2, 0); },
        [](double) { return CVector(CVector::Zero(2)); });
    CHECK_THROWS_WITH_AS(rho_perp_identities(constant, 0.0),
                         doctest::Contains("stationary"), Error);
  }
}

TEST_CASE("null-element limit of the classical information") {
  const ParametricPureState family = two_level(1.0);
  const double x = 0.2;
  const StateAt s = at(family, x);
  const double target = outcome_qfi(s, s.rho_perp());

  double previous = 1.0;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const CMatrix e = at(family, x + delta).rho_perp();
    CHECK(classify(e, s).kind == OutcomeClass::Regular);
    const double gap = std::abs(classical_fi(s, e) - target) / target;
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-4);
}

TEST_CASE("randomized qfi property suite") {
  const SuiteResult result = run_qfi_suite(31, 40);
  for (const auto& message : result.messages) INFO(message);
  CHECK(result.failures == 0);
}
