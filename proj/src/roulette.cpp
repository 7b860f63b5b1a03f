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

#include "qutrit/roulette.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qutrit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWidthSum = 1e-12;

} // namespace

Roulette::Roulette(std::vector<Sector> sectors) : sectors_(std::move(sectors)) {
    if (sectors_.empty()) {
        throw ValidationError("roulette: no sectors");
    }
    std::vector<double> w;
    double total = 0.0;
    for (const auto &s : sectors_) {
        if (!(s.width >= 0.0) || !std::isfinite(s.width)) {
            throw ValidationError("roulette: sector widths must be nonnegative");
        }
        w.push_back(s.width);
        total += s.width;
        rows_ = std::max(rows_, s.a + 1);
        cols_ = std::max(cols_, s.b + 1);
    }
    if (std::abs(total - 1.0) > kWidthSum) {
        throw ValidationError("roulette: widths sum to " + std::to_string(total));
    }
    cum_ = kernels::cumulative_of(w);
}

Roulette build_roulette(const JointDistribution &dist) {
    std::vector<Sector> s;
    for (std::size_t a = 0; a < dist.rows(); ++a) {
        for (std::size_t b = 0; b < dist.cols(); ++b) {
            s.push_back({a, b, dist(a, b)});
        }
    }
    return Roulette(std::move(s));
}

const Sector &spin(const Roulette &r, double phi) {
    if (!(phi >= 0.0 && phi < kTwoPi)) {
        throw ValidationError("spin: phi must lie in [0, 2 pi)");
    }
    return r.sectors()[kernels::draw_index(r.cumulative(), phi / kTwoPi)];
}

kernels::Counts spin_counts(const Roulette &r, std::uint64_t spins, std::uint64_t seed,
                            kernels::Execution exec) {
    return kernels::tally(exec, r.sectors().size(), spins, seed,
                          [&](Substream &rng, std::uint64_t *c) {
                              ++c[kernels::draw_index(r.cumulative(), rng.uniform())];
                          });
}

std::string_view order_name(ChainOrder o) {
    return o == ChainOrder::AFirst ? "a-first" : "b-first";
}

ChainOrder parse_order(std::string_view name) {
    if (name == "a-first") {
        return ChainOrder::AFirst;
    }
    if (name == "b-first") {
        return ChainOrder::BFirst;
    }
    throw ValidationError("unknown chain order: " + std::string(name));
}

ChainSampler::ChainSampler(const StateVector &psi, const Basis &basis_a,
                           const Basis &basis_b, ChainOrder order)
    : order_(order) {
    if (psi.dims().size() != 2) {
        throw ValidationError("chain sampler: state must have two parties");
    }
    validate_basis(basis_a, psi.dims()[0]);
    validate_basis(basis_b, psi.dims()[1]);
    rows_ = basis_a.size();
    cols_ = basis_b.size();

    const bool a_first = order == ChainOrder::AFirst;
    const Basis &first = a_first ? basis_a : basis_b;
    const Basis &second = a_first ? basis_b : basis_a;
    const Party first_party = a_first ? Party::A : Party::B;

    std::vector<double> marginal;
    for (const auto &f : first) {
        const double p = marginal_probability(psi, first_party, projector(f));
        marginal.push_back(p <= kTol.probability_clamp ? 0.0 : p);
    }
    first_ = kernels::cumulative_of(marginal);
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (marginal[i] == 0.0) {
            second_.emplace_back();
            continue;
        }
        std::vector<double> cond;
        const Operator pf = projector(first[i]);
        for (const auto &s : second) {
            const Operator ps = projector(s);
            cond.push_back(a_first ? conditional_probability(psi, pf, ps, Party::A)
                                   : conditional_probability(psi, ps, pf, Party::B));
        }
        second_.push_back(kernels::cumulative_of(cond));
    }
}

std::pair<std::size_t, std::size_t> ChainSampler::draw(Substream &rng) const {
    const std::size_t f = kernels::draw_index(first_, rng.uniform());
    const std::size_t s = kernels::draw_index(second_[f], rng.uniform());
    return order_ == ChainOrder::AFirst ? std::pair{f, s} : std::pair{s, f};
}

std::pair<std::size_t, std::size_t> chain_sample(const StateVector &psi,
                                                 const Basis &basis_a,
                                                 const Basis &basis_b, ChainOrder order,
                                                 std::uint64_t seed) {
    Substream rng(seed, 0);
    return ChainSampler(psi, basis_a, basis_b, order).draw(rng);
}

kernels::Counts chain_counts(const ChainSampler &s, std::uint64_t draws,
                             std::uint64_t seed, kernels::Execution exec) {
    const std::size_t cols = s.cols();
    return kernels::tally(exec, s.rows() * cols, draws, seed,
                          [&](Substream &rng, std::uint64_t *c) {
                              const auto [a, b] = s.draw(rng);
                              ++c[a * cols + b];
                          });
}

} // namespace qutrit
