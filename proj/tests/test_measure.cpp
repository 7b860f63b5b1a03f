// Copyright 2026 The Qutrit Twin Authors
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

#include <cmath>

#include <doctest.h>

#include "qutrit/measure.hpp"
#include "qutrit/spin1.hpp"
#include "support/random.hpp"

using namespace qutrit;
using qutrit::testing::max_abs;
using qutrit::testing::Random;

namespace {

Basis computational(std::size_t n) {
    Basis b;
    for (std::size_t i = 0; i < n; ++i) {
        b.push_back(StateVector::basis(n, i));
    }
    return b;
}

} // namespace

TEST_CASE("basis validation") {
    Basis b = computational(3);
    CHECK_NOTHROW(validate_basis(b, 3));
    CHECK_THROWS_AS(validate_basis(b, 2), ValidationError);
    b[2] = b[1];
    CHECK_THROWS_AS(validate_basis(b, 3), ValidationError);
}

TEST_CASE("upsilon in the computational basis") {
    const JointDistribution q = q_matrix(upsilon(), computational(3), computational(3));
    CHECK(max_abs(q.probs().cast<Complex>() - CMatrix::Identity(3, 3) / 3.0) < 1e-14);
    CHECK(std::abs(conditional_probability(upsilon(), projector(StateVector::basis(3, 1)),
                                           projector(StateVector::basis(3, 1)), Party::A) -
                   1.0) < 1e-12);
}

TEST_CASE("zones") {
    CHECK(zone_of(0.0, 0.0, 1.0) == Zone::I);
    CHECK(zone_of(0.0, 2.0, 1.0) == Zone::II);
    CHECK(zone_of(2.0, 0.0, 1.0) == Zone::III);
    CHECK(zone_of(2.0, 2.0, 1.0) == Zone::IV);
    CHECK(zone_of(1.0, 1.0, 1.0) == Zone::IV);
    CHECK(zone_name(Zone::III) == "III");

    const auto m = ProjectiveMeasurement::from_basis(computational(3));
    const DensityOperator z1 = zone_state(upsilon(), m, m, Zone::I);
    CHECK(max_abs(z1.matrix() - projector(upsilon()).matrix()) < 1e-14);
    const DensityOperator z4 = zone_state(upsilon(), m, m, Zone::IV);
    const DensityOperator z2 = zone_state(upsilon(), m, m, Zone::II);
    CHECK(max_abs(z4.matrix() - z2.matrix()) < 1e-14);
}

TEST_CASE("property: q matrix dual forms agree") {
    Random rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector psi = rng.state({3, 3});
        const QMatrixForms f = q_matrix_forms(psi, rng.basis(3), rng.basis(3));
        CHECK(f.max_disagreement() <= 1e-10);
        CHECK(std::abs(f.direct.sum() - 1.0) <= 1e-10);
    }
}

TEST_CASE("property: relative states rebuild the state") {
    Random rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector psi = rng.state({3, 3});
        const Basis ba = rng.basis(3);
        const Basis bb = rng.basis(3);
        CVector sum_a = CVector::Zero(9);
        for (const auto &t : relative_states(psi, Party::A, ba)) {
            CHECK(t.state.is_normalized());
            sum_a += t.coefficient * tensor(ba[t.index], t.state).amps();
        }
        CHECK((sum_a - psi.amps()).norm() < 1e-10);
        CVector sum_b = CVector::Zero(9);
        for (const auto &t : relative_states(psi, Party::B, bb)) {
            sum_b += t.coefficient * tensor(t.state, bb[t.index]).amps();
        }
        CHECK((sum_b - psi.amps()).norm() < 1e-10);
    }
}

TEST_CASE("property: measurements on different parties commute") {
    Random rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityOperator rho = rng.density({3, 3});
        const auto ma = ProjectiveMeasurement::from_basis(rng.basis(3));
        const auto mb = ProjectiveMeasurement::from_basis(rng.basis(3));
        const auto ab = party_measure(party_measure(rho, Party::A, ma), Party::B, mb);
        const auto ba = party_measure(party_measure(rho, Party::B, mb), Party::A, ma);
        CHECK(max_abs(ab.matrix() - ba.matrix()) <= 1e-10);
    }
}

TEST_CASE("property: product states factorize") {
    Random rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector a = rng.state({3});
        const StateVector b = rng.state({3});
        const StateVector psi = tensor(a, b);
        const Operator pa = projector(rng.state({3}));
        const Operator pb = projector(rng.state({3}));
        const double joint = joint_probability(psi, pa, pb);
        const double prod = marginal_probability(psi, Party::A, pa) *
                            marginal_probability(psi, Party::B, pb);
        CHECK(std::abs(joint - prod) <= 1e-10);
    }
}

TEST_CASE("von Neumann measurement is idempotent and trace preserving") {
    Random rng(15);
    const DensityOperator rho = rng.density({3});
    const auto m = ProjectiveMeasurement::from_basis(rng.basis(3));
    const DensityOperator once = vn_measure(rho, m);
    const DensityOperator twice = vn_measure(once, m);
    CHECK(max_abs(once.matrix() - twice.matrix()) < 1e-12);
    CHECK(std::abs(once.matrix().trace() - Complex(1.0)) < 1e-12);
}
