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
#include "pqm/lcc.hpp"
#include "pqm/models.hpp"
#include "pqm/povm.hpp"
#include "pqm/suites.hpp"

using namespace pqm;

namespace {

// A real-amplitude rotation family; its optimal projective basis is the
// pair (psi +- psi_perp)/sqrt(2).
ParametricPureState real_rotation(double delta) {
  return ParametricPureState::analytic(
      2,
      [delta](double x) {
        CVector v(2);
        v[0] = std::cos(0.5 * x * delta);
        v[1] = std::sin(0.5 * x * delta);
        return v;
      },
      [delta](double x) {
        CVector v(2);
        v[0] = -0.5 * delta * std::sin(0.5 * x * delta);
        v[1] = 0.5 * delta * std::cos(0.5 * x * delta);
        return v;
      });
}

}  // namespace

TEST_CASE("POVM validation") {
  SUBCASE("single identity element") {
    PovmSet povm;
    povm.elements.push_back({"all", identity(3)});
    CHECK(validate(povm).valid);
  }

  SUBCASE("two-way split of the identity") {
    PovmSet povm;
    povm.elements.push_back({"a", 0.6 * identity(2)});
    povm.elements.push_back({"b", 0.4 * identity(2)});
    CHECK(validate(povm).valid);
  }

  SUBCASE("over-complete set reports the excess norm") {
    Rng rng(41);
    const CMatrix rho = projector(random_unit_vector(rng, 3));
    PovmSet povm;
    povm.elements.push_back({"all", identity(3)});
    povm.elements.push_back({"extra", rho});
    const PovmDiagnostics diag = validate(povm);
    CHECK_FALSE(diag.valid);
    CHECK(diag.completeness_residual == doctest::Approx(rho.norm()));
  }

  SUBCASE("negative element and unknown retained label are reported") {
    PovmSet povm;
    CMatrix bad = identity(2);
    bad(0, 0) = -0.2;
    povm.elements.push_back({"bad", bad});
    povm.elements.push_back({"rest", identity(2) - bad});
    povm.retained.insert("ghost");
    const PovmDiagnostics diag = validate(povm);
    CHECK_FALSE(diag.valid);
    CHECK(diag.failures.size() >= 2);
  }
}

TEST_CASE("regular/null classification") {
  Rng rng(42);
  const ParametricPureState family = random_state_family(rng, 4);
  const double x = 0.3;
  const StateAt s = at(family, x);

  const Classification on_state = classify(s.rho(), s);
  CHECK(on_state.kind == OutcomeClass::Regular);
  CHECK(on_state.trivial);  // the state projector sees no signal direction

  const Classification orthogonal = classify(s.rho_perp(), s);
  CHECK(orthogonal.kind == OutcomeClass::Null);
  CHECK_FALSE(orthogonal.trivial);

  const Classification displaced = classify(at(family, x + 1e-3).rho_perp(), s);
  CHECK(displaced.kind == OutcomeClass::Regular);
  CHECK(displaced.probability > 0.0);
  CHECK(displaced.probability < 1e-4);
}

TEST_CASE("joint-saturation condition") {
  SUBCASE("real operator on a real family") {
    const ParametricPureState family = real_rotation(1.2);
    const StateAt s = at(family, 0.4);
    Rng rng(43);
    Eigen::MatrixXd sym(2, 2);
    sym << 0.7, 0.2, 0.2, 0.5;
    const CMatrix e = sym.cast<Complex>();
    CHECK(check_joint_saturation(e, s).raw <= 1e-14);
  }

  SUBCASE("two-level compression element satisfies it at any point") {
    const double delta = 1.0;
    for (double x : {-0.8, 0.0, 0.5}) {
      const StateAt s = at(TwoLevelFamily{delta}.family(), x);
      const CMatrix e = two_level_lossless_element(x, delta, 0.3);
      CHECK(check_joint_saturation(e, s).raw <= 1e-10);
    }
  }

  SUBCASE("an imaginary cross dyad breaks it") {
    Rng rng(44);
    const ParametricPureState family = random_state_family(rng, 3);
    const StateAt s = at(family, 0.2);
    const CVector perp_hat = s.psi_perp();
    const CMatrix dyad = Complex(0, 1) * perp_hat * s.psi.adjoint() -
                         Complex(0, 1) * s.psi * perp_hat.adjoint();
    const CMatrix e = 0.25 * (dyad + 2.0 * identity(3));
    REQUIRE(is_psd(e));
    const ConditionResidual res = check_joint_saturation(e, s);
    CHECK(res.raw > 1e-3);
    CHECK_FALSE(res.satisfied);
    // and the joint QFI is strictly below the outcome QFI
    CHECK(joint_outcome_qfi(s, e) < outcome_qfi(s, e) - 1e-6);
  }
}

TEST_CASE("post-state-zero condition") {
  Rng rng(45);
  const ParametricPureState family = random_state_family(rng, 4);
  const StateAt s = at(family, -0.1);

  SUBCASE("the state projector aligns both images") {
    CHECK(check_post_state_zero(s.rho(), s).satisfied);
  }

  SUBCASE("rank-one elements always satisfy it") {
    const CVector v =
        (0.6 * s.psi + 0.8 * s.psi_perp()).normalized();
    const ConditionResidual res = check_post_state_zero(projector(v), s);
    CHECK(res.satisfied);
    CHECK(postselected_state_qfi(s, projector(v)) <=
          1e-10 * std::max(1.0, qfi_pure(s)));
  }

  SUBCASE("residual matches the retained-state QFI on the identity") {
    const CMatrix e = identity(4);
    const ConditionResidual res = check_post_state_zero(e, s);
    const double p = 1.0;
    CHECK(4.0 * res.raw * res.raw ==
          doctest::Approx(postselected_state_qfi(s, e) * p * p).epsilon(1e-9));
  }

  SUBCASE("general residual-to-QFI relation") {
    for (int i = 0; i < 10; ++i) {
      const CMatrix e = random_subidentity_psd(rng, 4);
      const double p = s.psi.dot(e * s.psi).real();
      const ConditionResidual res = check_post_state_zero(e, s);
      CHECK(4.0 * res.raw * res.raw ==
            doctest::Approx(postselected_state_qfi(s, e) * p)
                .epsilon(1e-8));
    }
  }
}

TEST_CASE("classical-zero condition") {
  Rng rng(46);
  const ParametricPureState family = random_state_family(rng, 3);
  const StateAt s = at(family, 0.6);

  CHECK(check_classical_zero(identity(3), s).raw <= 1e-14);

  const double delta = 1.4, x = 0.3;
  const StateAt s2 = at(TwoLevelFamily{delta}.family(), x);
  CHECK(check_classical_zero(two_level_lossless_element(x, delta, 0.2), s2).raw
        <= 1e-10);

  const CMatrix generic = random_subidentity_psd(rng, 3);
  const ConditionResidual res = check_classical_zero(generic, s);
  CHECK(res.raw > 1e-6);
  CHECK(classical_fi(s, generic) > 1e-9);
}

TEST_CASE("post-state-saturation condition") {
  SUBCASE("the identity on a two-level space") {
    const StateAt s = at(TwoLevelFamily{1.0}.family(), 0.2);
    CHECK(check_post_state_saturation(identity(2), s).raw <= 1e-14);
  }

  SUBCASE("scaled-state gauge elements satisfy it") {
    Rng rng(47);
    const ParametricPureState family = random_state_family(rng, 4);
    const StateAt s = at(family, 0.3);
    const CMatrix e = 0.7 * s.rho_perp() + 0.2 * s.rho();
    const ConditionResidual res = check_post_state_saturation(e, s);
    CHECK(res.normalized <= 1e-10);
    const double p = s.psi.dot(e * s.psi).real();
    CHECK(p * postselected_state_qfi(s, e) ==
          doctest::Approx(outcome_qfi(s, e)).epsilon(1e-9));
  }

  SUBCASE("generic elements fail it") {
    Rng rng(48);
    const ParametricPureState family = random_state_family(rng, 4);
    const StateAt s = at(family, 0.3);
    const CMatrix e = random_subidentity_psd(rng, 4);
    CHECK(check_post_state_saturation(e, s).normalized > 1e-6);
  }
}

TEST_CASE("classical-saturation condition") {
  SUBCASE("optimal projective basis of a real rotation family") {
    const ParametricPureState family = real_rotation(1.0);
    const double x = 0.4;
    const StateAt s = at(family, x);
    const CVector plus = ((s.psi + s.psi_perp()) / std::sqrt(2.0)).eval();
    const CVector minus = ((s.psi - s.psi_perp()) / std::sqrt(2.0)).eval();

    double statistics_total = 0.0;
    for (const CVector& w : {plus, minus}) {
      const CMatrix e = projector(w);
      const ConditionResidual res = check_classical_saturation(e, s);
      CHECK(res.normalized <= 1e-9);
      CHECK(classical_fi(s, e) ==
            doctest::Approx(outcome_qfi(s, e)).epsilon(1e-9));
      statistics_total += classical_fi(s, e);
    }
    CHECK(statistics_total == doctest::Approx(qfi_pure(s)).epsilon(1e-9));
  }

  SUBCASE("the state projector satisfies it trivially") {
    const StateAt s = at(TwoLevelFamily{1.0}.family(), 0.25);
    const ConditionResidual res = check_classical_saturation(s.rho(), s);
    CHECK(res.satisfied);
    CHECK(res.raw <= 1e-12);
  }

  SUBCASE("the identity fails on the complex two-level family at x != 0") {
    const StateAt s = at(TwoLevelFamily{1.0}.family(), 0.45);
    const ConditionResidual res = check_classical_saturation(identity(2), s);
    CHECK(res.normalized > 1e-3);
    CHECK(classical_fi(s, identity(2)) < outcome_qfi(s, identity(2)));
  }
}

TEST_CASE("square-root measurement channel") {
  SUBCASE("identity and projective sets map to themselves") {
    PovmSet povm;
    povm.elements.push_back({"all", identity(3)});
    const KrausChannel channel = kraus_from(povm);
    CHECK((channel.operators.front().matrix - identity(3)).norm() <= 1e-12);

    Rng rng(49);
    const CMatrix basis = random_unitary(rng, 3);
    PovmSet projective;
    for (int k = 0; k < 3; ++k) {
      projective.elements.push_back(
          {"p" + std::to_string(k), projector(basis.col(k).eval())});
    }
    const KrausChannel proj_channel = kraus_from(projective);
    for (int k = 0; k < 3; ++k) {
      CHECK((proj_channel.operators[k].matrix -
             projective.elements[k].matrix).norm() <= 1e-10);
    }
  }

  SUBCASE("random sets stay complete after the square root") {
    Rng rng(50);
    const PovmSet povm = random_povm(rng, 5, 4);
    const KrausChannel channel = kraus_from(povm);
    CMatrix sum = CMatrix::Zero(5, 5);
    for (const auto& k : channel.operators) {
      sum += k.matrix.adjoint() * k.matrix;
    }
    CHECK((sum - identity(5)).norm() <= 1e-9);
  }

  SUBCASE("operator gauge does not change the statistics") {
    Rng rng(51);
    const PovmSet povm = random_povm(rng, 4, 3);
    KrausChannel channel = kraus_from(povm);
    // rotate every operator; K -> U K leaves K^dagger K alone
    for (auto& k : channel.operators) {
      k.matrix = random_unitary(rng, 4) * k.matrix;
    }
    const PovmSet back = povm_from(channel);
    for (std::size_t i = 0; i < povm.elements.size(); ++i) {
      CHECK((back.elements[i].matrix - povm.elements[i].matrix).norm() <=
            1e-10);
    }
  }
}

TEST_CASE("bidirectional saturation equivalences, randomized") {
  const SuiteResult result = run_povm_suite(52, 160);
  for (const auto& message : result.messages) INFO(message);
  CHECK(result.failures == 0);
}
