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
#include <vector>

#include <doctest.h>

#include "qutrit/kernels.hpp"
#include "qutrit/rng.hpp"
#include "support/random.hpp"

using namespace qutrit;
using qutrit::testing::Random;

TEST_CASE("substreams are deterministic and distinct") {
    Substream a(42, 7);
    Substream b(42, 7);
    Substream c(42, 8);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("cumulative tables and draws") {
    const std::vector<double> w{0.0, 2.0, 0.0, 2.0, 0.0};
    const auto cum = kernels::cumulative_of(w);
    CHECK(cum == std::vector<double>{0.0, 0.5, 0.5, 1.0, 1.0});
    CHECK(kernels::draw_index(cum, 0.0) == 1);
    CHECK(kernels::draw_index(cum, 0.4999) == 1);
    CHECK(kernels::draw_index(cum, 0.5) == 3);
    CHECK(kernels::draw_index(cum, 0.9999999) == 3);
    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS((void)kernels::cumulative_of(zero), ValidationError);
}

TEST_CASE("parallel tally equals serial tally") {
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    const auto cum = kernels::cumulative_of(w);
    auto trial = [&](Substream &rng, std::uint64_t *c) {
        ++c[kernels::draw_index(cum, rng.uniform())];
        ++c[kernels::draw_index(cum, rng.uniform())];
    };
    const auto serial = kernels::tally_serial(4, 20000, 99, trial);
    for (int threads : {1, 2, 3, 8}) {
        CHECK(kernels::tally_parallel(4, 20000, 99, trial, threads) == serial);
    }
    std::uint64_t total = 0;
    for (auto c : serial) {
        total += c;
    }
    CHECK(total == 40000);
}

TEST_CASE("property: strided local update equals full embedding") {
    Random rng(41);
    const Dims dims{3, 2, 3, 3};
    const std::vector<std::vector<std::size_t>> target_sets{{0}, {1}, {3}, {0, 2}, {2, 0},
                                                            {1, 3, 0}, {3, 1}};
    for (int trial = 0; trial < 20; ++trial) {
        const CVector amps = rng.state(dims).amps();
        for (const auto &t : target_sets) {
            std::size_t d = 1;
            for (auto i : t) {
                d *= dims[i];
            }
            const CMatrix u = rng.unitary(d);
            const CVector fast = kernels::apply_local(amps, dims, t, u);
            const CVector ref = kernels::apply_local_reference(amps, dims, t, u);
            CHECK((fast - ref).norm() < 1e-12);
        }
    }
}

TEST_CASE("local update rejects bad targets") {
    const Dims dims{3, 3};
    const CVector amps = CVector::Zero(9);
    const std::array<std::size_t, 2> repeated{0, 0};
    const std::array<std::size_t, 1> out_of_range{2};
    const std::array<std::size_t, 1> ok{0};
    CHECK_THROWS_AS((void)kernels::apply_local(amps, dims, repeated, CMatrix::Identity(9, 9)),
                    ValidationError);
    CHECK_THROWS_AS((void)kernels::apply_local(amps, dims, out_of_range, CMatrix::Identity(3, 3)),
                    ValidationError);
    CHECK_THROWS_AS((void)kernels::apply_local(amps, dims, ok, CMatrix::Identity(2, 2)),
                    ValidationError);
}
