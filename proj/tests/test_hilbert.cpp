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

#include <array>
#include <cmath>

#include <doctest.h>

#include "qutrit/hilbert.hpp"
#include "support/random.hpp"

using namespace qutrit;
using qutrit::testing::max_abs;
using qutrit::testing::Random;

TEST_CASE("basis vectors and row-major tensor order") {
    const StateVector a = StateVector::basis(3, 1);
    const StateVector b = StateVector::basis(3, 2);
    const StateVector ab = tensor(a, b);
    CHECK(ab.dims() == Dims{3, 3});
    CHECK(std::abs(ab[5] - Complex(1.0)) < 1e-15);
    CHECK(total_dim({3, 2, 3}) == 18);
    CHECK(strides({3, 2, 3}) == std::vector<std::size_t>{6, 3, 1});
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS((void)StateVector::basis(3, 3), ValidationError);
    CHECK_THROWS_AS(StateVector(Dims{3}, CVector::Zero(4)), ValidationError);
    CHECK_THROWS_AS(Operator(Dims{2}, CMatrix::Identity(3, 3)), ValidationError);
    CMatrix bad = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator(Operator({2}, bad)), ValidationError);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator(Operator({2}, bad)), ValidationError);
    CHECK_THROWS_AS((void)StateVector(Dims{3}, CVector::Zero(3)).normalized(), ValidationError);
}

TEST_CASE("operator predicates") {
    Random rng(1);
    const Operator u({3}, rng.unitary(3));
    CHECK(u.is_unitary());
    CHECK_FALSE(u.is_projector());
    const Operator p = projector(rng.state({3}));
    CHECK(p.is_projector());
    CHECK(p.is_hermitian());
    CHECK(max_abs((u * u.adjoint()).matrix() - CMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("property: tensor and embed agree") {
    Random rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Operator a({3}, rng.unitary(3));
        const Operator b({2}, rng.unitary(2));
        const Operator full = tensor(a, b);
        const Operator viaembed = embed(a, {3, 2}, 0) * embed(b, {3, 2}, 1);
        CHECK(max_abs(full.matrix() - viaembed.matrix()) < 1e-12);
        const StateVector x = rng.state({3});
        const StateVector y = rng.state({2});
        const StateVector lhs = apply(full, tensor(x, y));
        const StateVector rhs = tensor(apply(a, x), apply(b, y));
        CHECK((lhs.amps() - rhs.amps()).norm() < 1e-12);
    }
}

TEST_CASE("property: partial trace of products recovers the factors") {
    Random rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator ra = rng.density({3}, 2);
        const DensityOperator rb = rng.density({2}, 2);
        const DensityOperator rab(tensor(ra.op(), rb.op()));
        const std::array<std::size_t, 1> keep_a{0};
        const std::array<std::size_t, 1> keep_b{1};
        CHECK(max_abs(partial_trace(rab, keep_a).matrix() - ra.matrix()) < 1e-12);
        CHECK(max_abs(partial_trace(rab, keep_b).matrix() - rb.matrix()) < 1e-12);
    }
}

TEST_CASE("property: partial trace preserves trace and positivity") {
    Random rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator rho = rng.density({3, 2, 3}, 4);
        const std::array<std::size_t, 2> keep{0, 2};
        const DensityOperator red = partial_trace(rho, keep);
        CHECK(red.dims() == Dims{3, 3});
        CHECK(std::abs(red.matrix().trace() - Complex(1.0)) < 1e-12);
        CHECK(red.eigenvalues().front() > -1e-12);
    }
}

TEST_CASE("property: permuting subsystems") {
    Random rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector a = rng.state({3});
        const StateVector b = rng.state({2});
        const StateVector c = rng.state({3});
        const StateVector abc = tensor(tensor(a, b), c);
        const std::array<std::size_t, 3> order{2, 0, 1};
        const StateVector p = permute_subsystems(abc, order);
        CHECK(p.dims() == Dims{3, 3, 2});
        CHECK((p.amps() - tensor(tensor(c, a), b).amps()).norm() < 1e-12);
    }
}

TEST_CASE("expectation and fidelity") {
    Random rng(6);
    const StateVector psi = rng.state({3});
    const DensityOperator rho = DensityOperator::pure(psi);
    CHECK(std::abs(expectation(rho, projector(psi)) - 1.0) < 1e-12);
    CHECK(std::abs(fidelity(psi, psi) - 1.0) < 1e-12);
    const auto ev = hermitian_eigenvalues(rho.matrix());
    CHECK(std::abs(ev.back() - 1.0) < 1e-12);
    CHECK(std::abs(ev.front()) < 1e-12);
}
