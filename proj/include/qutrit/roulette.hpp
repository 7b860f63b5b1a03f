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

/**
 * @file roulette.hpp
 * Hidden-variable samplers for joint outcomes.
 *
 * The roulette spins one pointer over sectors sized by the joint
 * probabilities, so it needs both parties' settings. The chain samplers draw
 * one party from its marginal and the other from the conditional law.
 */
#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qutrit/kernels.hpp"
#include "qutrit/measure.hpp"
#include "qutrit/rng.hpp"

namespace qutrit {

struct Sector {
    std::size_t a = 0;
    std::size_t b = 0;
    double width = 0.0;
};

/// Sectors in row-major (a, b) order, each owning [lo, hi) of the unit
/// circle measured in turns.
class Roulette {
  public:
    /// Widths must be nonnegative and sum to 1 within 1e-12.
    explicit Roulette(std::vector<Sector> sectors);

    [[nodiscard]] const std::vector<Sector> &sectors() const noexcept { return sectors_; }
    /// Upper bounds hi of the sectors; the last is exactly 1.
    [[nodiscard]] const std::vector<double> &cumulative() const noexcept { return cum_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  private:
    std::vector<Sector> sectors_;
    std::vector<double> cum_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
};

[[nodiscard]] Roulette build_roulette(const JointDistribution &dist);

/// Sector hit by pointer angle phi in [0, 2 pi). Throws ValidationError
/// otherwise.
[[nodiscard]] const Sector &spin(const Roulette &r, double phi);

/// Hits per sector over `spins` uniform angles.
[[nodiscard]] kernels::Counts
spin_counts(const Roulette &r, std::uint64_t spins, std::uint64_t seed = kDefaultSeed,
            kernels::Execution exec = kernels::Execution::Parallel);

enum class ChainOrder { AFirst, BFirst };

[[nodiscard]] std::string_view order_name(ChainOrder o);
/// Accepts a-first and b-first.
[[nodiscard]] ChainOrder parse_order(std::string_view name);

/// First party from its marginal, second from the conditional given the
/// first outcome. Zero-probability first outcomes are never drawn, so their
/// conditionals are never needed.
class ChainSampler {
  public:
    ChainSampler(const StateVector &psi, const Basis &basis_a, const Basis &basis_b,
                 ChainOrder order);

    [[nodiscard]] std::pair<std::size_t, std::size_t> draw(Substream &rng) const;
    [[nodiscard]] ChainOrder order() const noexcept { return order_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  private:
    ChainOrder order_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> first_;
    std::vector<std::vector<double>> second_;  ///< empty where the first outcome is impossible
};

/// One draw from substream (seed, 0).
[[nodiscard]] std::pair<std::size_t, std::size_t>
chain_sample(const StateVector &psi, const Basis &basis_a, const Basis &basis_b,
             ChainOrder order, std::uint64_t seed = kDefaultSeed);

/// Joint counts over `draws` independent draws, row-major (a, b).
[[nodiscard]] kernels::Counts
chain_counts(const ChainSampler &s, std::uint64_t draws, std::uint64_t seed = kDefaultSeed,
             kernels::Execution exec = kernels::Execution::Parallel);

} // namespace qutrit
