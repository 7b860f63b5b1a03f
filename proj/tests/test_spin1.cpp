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

#include "qutrit/spin1.hpp"
#include "support/random.hpp"

using namespace qutrit;
using qutrit::testing::max_abs;
using qutrit::testing::Random;

namespace {

CMatrix comm(const CMatrix &a, const CMatrix &b) { return a * b - b * a; }

const CMatrix kI3 = CMatrix::Identity(3, 3);

} // namespace

TEST_CASE("spin-1 algebra") {
    const SpinTriple s = spin_operators();
    const Complex i(0.0, 1.0);
    CHECK(max_abs(comm(s.x.matrix(), s.y.matrix()) - i * s.z.matrix()) < 1e-14);
    CHECK(max_abs(comm(s.y.matrix(), s.z.matrix()) - i * s.x.matrix()) < 1e-14);
    CHECK(max_abs(comm(s.z.matrix(), s.x.matrix()) - i * s.y.matrix()) < 1e-14);
    const CMatrix casimir = s.x.matrix() * s.x.matrix() + s.y.matrix() * s.y.matrix() +
                            s.z.matrix() * s.z.matrix();
    CHECK(max_abs(casimir - 2.0 * kI3) < 1e-14);
}

TEST_CASE("property: squared component is one minus the direction projector") {
    Random rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const Direction v(rng.unit_vector());
        const CMatrix j = spin_component(v).matrix();
        CHECK(max_abs(j * j - (kI3 - projector(v.ket()).matrix())) < 1e-12);
    }
}

TEST_CASE("property: K eigenbasis and squares") {
    Random rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const Frame f = rng.frame();
        const Operator k = k_operator(f);
        const Basis b = frame_basis(f);
        for (std::size_t i = 0; i < 3; ++i) {
            const CVector kv = k.matrix() * b[i].amps();
            CHECK((kv - static_cast<double>(kKValues[i]) * b[i].amps()).norm() < 1e-12);
        }
        const SpinTriple sq = squares_from_k(k);
        const auto axis_sq = [&](std::size_t a) {
            const CMatrix j = spin_component(f.axis(a)).matrix();
            return CMatrix(j * j);
        };
        CHECK(max_abs(sq.x.matrix() - axis_sq(0)) < 1e-12);
        CHECK(max_abs(sq.y.matrix() - axis_sq(1)) < 1e-12);
        CHECK(max_abs(sq.z.matrix() - axis_sq(2)) < 1e-12);
        CHECK(max_abs(sq.x.matrix() + sq.y.matrix() + sq.z.matrix() - 2.0 * kI3) < 1e-12);
    }
}

TEST_CASE("frames") {
    CHECK_THROWS_AS(Frame(-Eigen::Matrix3d::Identity()), ValidationError);
    Eigen::Matrix3d skew = Eigen::Matrix3d::Identity();
    skew(0, 1) = 1e-4;
    CHECK_THROWS_AS(Frame{skew}, ValidationError);
    const auto [snapped, adjusted] = Frame::from_rows_approx(skew);
    CHECK(adjusted);
    CHECK((snapped.rotation() * snapped.rotation().transpose() -
           Eigen::Matrix3d::Identity()).norm() < 1e-12);
    const auto [exact, untouched] = Frame::from_rows_approx(Eigen::Matrix3d::Identity());
    CHECK_FALSE(untouched);
    skew(0, 1) = 0.1;
    CHECK_THROWS_AS((void)Frame::from_rows_approx(skew), ValidationError);
    CHECK_THROWS_AS(Direction(Vec3(1.0, 1.0, 0.0)), ValidationError);
    CHECK(std::abs(Direction::normalized(Vec3(3.0, 4.0, 0.0)).vec()(1) - 0.8) < 1e-15);
}

TEST_CASE("equal and primed frame tables") {
    const JointDistribution same = ck_table(Frame::standard(), Frame::standard());
    CHECK(max_abs(same.probs().cast<Complex>() - kI3 / 3.0) < 1e-15);

    // Independent evaluation of (1/3)|<kappa_j|kappa'_k>|^2 with the primed
    // axes y, (x+z)/sqrt2, (x-z)/sqrt2.
    const double expected[3][3] = {{0.0, 1.0 / 6.0, 1.0 / 6.0},
                                   {1.0 / 3.0, 0.0, 0.0},
                                   {0.0, 1.0 / 6.0, 1.0 / 6.0}};
    const JointDistribution t = ck_table(Frame::standard(), Frame::primed());
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            CHECK(std::abs(t(a, b) - expected[a][b]) <= 1e-12);
        }
    }
}

TEST_CASE("property: outcome tables of upsilon have uniform marginals") {
    Random rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Frame fa = rng.frame();
        const Frame fb = rng.frame();
        const JointDistribution t = ck_table(fa, fb);
        CHECK((t.marginal_a().array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
        CHECK((t.marginal_b().array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
        const JointDistribution q = q_matrix(upsilon(), frame_basis(fa), frame_basis(fb));
        CHECK((t.probs() - q.probs()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("property: upsilon keeps its form in any real rotated product basis") {
    Random rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const Basis b = frame_basis(rng.frame());
        const StateVector ups = upsilon();
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                const double amp = std::abs(inner(tensor(b[i], b[j]), ups));
                CHECK(std::abs(amp - (i == j ? 1.0 / std::sqrt(3.0) : 0.0)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("twin sampling") {
    Random rng(25);
    const Frame f = rng.frame();
    const TwinReport r = twin_check(f, 30000, 7);
    CHECK(r.discordant == 0);
    CHECK(r.spin_holds);
    for (double z : r.z_score) {
        CHECK(std::abs(z) < 5.0);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        double sum = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
            sum += r.induced[i][a];
        }
        CHECK(std::abs(sum - 2.0) < 1e-12);
    }
    const TwinReport s = twin_check(f, 30000, 7, kernels::Execution::Serial);
    CHECK(s.counts == r.counts);
    CHECK_THROWS_AS((void)twin_check(f, 0), ValidationError);
}
