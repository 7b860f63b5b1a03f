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

#include "qutrit/signed.hpp"
#include "qutrit/signed_io.hpp"
#include "qutrit/spin1.hpp"
#include "support/random.hpp"

using namespace qutrit;
using qutrit::testing::max_abs;
using qutrit::testing::Random;

namespace {

/// Coefficients c_kj of upsilon over xi_k (x) xi_j, in units of 1/3,
/// from an independent rational solve of the 81x81 system.
constexpr int kUpsilonThirds[9][9] = {
    {1, 0, 0, 0, -1, -1, 0, 1, 1},
    {0, 1, 0, -1, 0, -1, 1, 0, 1},
    {0, 0, 1, -1, -1, 0, 1, 1, 0},
    {0, -1, -1, 2, 0, 0, 0, 0, 0},
    {-1, 0, -1, 0, 2, 0, 0, 0, 0},
    {-1, -1, 0, 0, 0, 2, 0, 0, 0},
    {0, 1, 1, 0, 0, 0, -2, 0, 0},
    {1, 0, 1, 0, 0, 0, 0, -2, 0},
    {1, 1, 0, 0, 0, 0, 0, 0, -2},
};

Basis computational() {
    return {StateVector::basis(3, 0), StateVector::basis(3, 1), StateVector::basis(3, 2)};
}

} // namespace

TEST_CASE("product basis spans all two-qutrit operators") {
    CHECK(xi_basis().states.size() == 9);
    CHECK(xi_product_rank() == 81);
}

TEST_CASE("upsilon decomposition table") {
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    for (int k = 0; k < 9; ++k) {
        for (int j = 0; j < 9; ++j) {
            CHECK(std::abs(d.table()(k, j) - kUpsilonThirds[k][j] / 3.0) <= 1e-10);
        }
    }
    const SignedSplit s = split(d);
    CHECK(s.n_plus == 18);
    CHECK(s.n_minus == 15);
    CHECK(std::abs(s.kappa - 7.0) <= 1e-10);
    CHECK(std::abs(d.kappa() - 7.0) <= 1e-10);
    CHECK(d.residual() <= 1e-10);
    REQUIRE(s.rho_minus.has_value());
    CHECK(s.rho_plus.eigenvalues().front() > -1e-12);
    CHECK(s.rho_minus->eigenvalues().front() > -1e-12);
    const CMatrix rebuilt = s.kappa * s.rho_plus.matrix() - (s.kappa - 1.0) * s.rho_minus->matrix();
    CHECK(max_abs(rebuilt - projector(upsilon()).matrix()) <= 1e-10);
}

TEST_CASE("product states need no negative part") {
    const StateVector p = tensor(xi_basis().states[3], xi_basis().states[7]);
    const SignedDecomposition d = decompose(DensityOperator::pure(p));
    CHECK(d.terms().size() == 1);
    const SignedSplit s = split(d);
    CHECK(s.n_minus == 0);
    CHECK_FALSE(s.rho_minus.has_value());
    CHECK(std::abs(s.kappa - 1.0) < 1e-12);
}

TEST_CASE("property: decomposition reconstructs random states") {
    Random rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityOperator rho = rng.density({3, 3}, 1 + rng.index(9));
        const SignedDecomposition d = decompose(rho);
        CHECK(d.residual() <= 1e-10);
        CHECK(max_abs(d.reconstruct().matrix() - rho.matrix()) <= 1e-10);
        double sum = 0.0;
        for (const auto &t : d.terms()) {
            sum += t.lambda;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-10);
        const SignedSplit s = split(d);
        CHECK(s.n_plus + s.n_minus == d.terms().size());
    }
}

TEST_CASE("property: counters reproduce Born probabilities") {
    Random rng(72);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator rho = rng.density({3, 3});
        const SignedDecomposition d = decompose(rho);
        const Basis ba = rng.basis(3);
        const Basis bb = rng.basis(3);
        const CounterExpectations e = counter_expectations(d, ba, bb);
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                const auto ia = static_cast<Eigen::Index>(a);
                const auto ib = static_cast<Eigen::Index>(b);
                const double p = expectation(rho, tensor(projector(ba[a]), projector(bb[b])));
                CHECK(std::abs(e.n_plus(ia, ib) - e.n_minus(ia, ib) - p) <= 1e-10);
            }
        }
        CHECK(std::abs(e.total_plus - e.total_minus - 1.0) <= 1e-10);
    }
}

TEST_CASE("upsilon counter expectations") {
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    const CounterExpectations e = counter_expectations(d, computational(), computational());
    for (Eigen::Index a = 0; a < 3; ++a) {
        for (Eigen::Index b = 0; b < 3; ++b) {
            CHECK(std::abs(e.n_plus(a, b) - (a == b ? 4.0 / 3.0 : 0.5)) <= 1e-10);
            CHECK(std::abs(e.n_minus(a, b) - (a == b ? 1.0 : 0.5)) <= 1e-10);
        }
        CHECK(std::abs(e.n_plus_a(a) - 7.0 / 3.0) <= 1e-10);
        CHECK(std::abs(e.n_minus_a(a) - 2.0) <= 1e-10);
        CHECK(std::abs(e.n_plus_b(a) - 7.0 / 3.0) <= 1e-10);
        CHECK(std::abs(e.n_minus_b(a) - 2.0) <= 1e-10);
    }
    CHECK(std::abs(e.total_plus - 7.0) <= 1e-10);
    CHECK(std::abs(e.total_minus - 6.0) <= 1e-10);
    const Operator p00 = tensor(projector(StateVector::basis(3, 0)),
                                projector(StateVector::basis(3, 0)));
    CHECK(std::abs(signed_expectation(p00, d) - 1.0 / 3.0) <= 1e-10);
}

TEST_CASE("counter simulation") {
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    const CounterTally one = simulate(d, computational(), computational(), 1, 5);
    CHECK(one.n_plus.sum() == 1);
    CHECK(one.n_minus.sum() == 1);
    CHECK_THROWS_AS((void)simulate(d, computational(), computational(), 0), ValidationError);
    const CounterTally par = simulate(d, computational(), computational(), 20000, 9);
    const CounterTally ser =
        simulate(d, computational(), computational(), 20000, 9, kernels::Execution::Serial);
    CHECK(par.n_plus == ser.n_plus);
    CHECK(par.n_minus == ser.n_minus);
    CHECK(std::abs(par.estimate.sum() - 1.0) < 1e-9);
}

TEST_CASE("property: simulation error shrinks like one over root trials") {
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    const Eigen::MatrixXd exact = Eigen::MatrixXd::Identity(3, 3) / 3.0;
    auto rms = [&](std::uint64_t trials) {
        double acc = 0.0;
        const int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            const CounterTally t = simulate(d, computational(), computational(), trials,
                                            1000 + static_cast<std::uint64_t>(s));
            acc += (t.estimate - exact).squaredNorm() / 9.0;
        }
        return std::sqrt(acc / seeds);
    };
    const double small = rms(2000);
    const double large = rms(32000);
    // Sixteen times the trials should cut the error by about four.
    CHECK(small / large > 2.5);
    CHECK(small / large < 6.5);
}

TEST_CASE("export formats") {
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    const auto j = decomposition_json(d);
    CHECK(j.at("schema") == 1);
    CHECK(j.at("terms").size() == 33);
    CHECK(j.at("n_plus") == 18);
    CHECK(j.at("terms")[0].at("k") == 1);
    const std::string csv = decomposition_csv(d);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-2.0) == "-2");
}
