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
 * @file rng.hpp
 * Counter-addressed random substreams.
 *
 * Every Monte-Carlo trial draws from its own SplitMix64 stream keyed by
 * (seed, trial index). A trial's numbers do not depend on which thread runs
 * it or in which order, so parallel tallies reproduce the serial ones bit
 * for bit.
 */
#pragma once

#include <cstdint>

namespace qutrit {

inline constexpr std::uint64_t kDefaultSeed = 12345;

class Substream {
  public:
    Substream(std::uint64_t seed, std::uint64_t index) noexcept
        : state_(mix(mix(seed) + index * kGolden)) {}

    std::uint64_t next() noexcept {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace qutrit
