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
 * @file kernels.hpp
 * Data-parallel inner loops.
 *
 * Each OpenMP kernel has a serial counterpart with the same contract. The
 * serial versions are the references the tests and the benchmark compare
 * against.
 */
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qutrit/hilbert.hpp"
#include "qutrit/rng.hpp"

namespace qutrit::kernels {

using Counts = std::vector<std::uint64_t>;

enum class Execution { Serial, Parallel };

/// Inverse-CDF lookup: first cell whose cumulative bound exceeds u. Cells of
/// zero width are never returned. `cumulative` must be nondecreasing and end
/// at 1.
[[nodiscard]] std::size_t draw_index(std::span<const double> cumulative, double u);

/// Running sums of `weights`, rescaled so the last entry is exactly 1.
[[nodiscard]] std::vector<double> cumulative_of(std::span<const double> weights);

/// Runs `trial(Substream&, std::uint64_t* counts)` for every trial index in
/// order on one thread.
template <class Trial>
[[nodiscard]] Counts tally_serial(std::size_t cells, std::uint64_t trials,
                                  std::uint64_t seed, Trial &&trial) {
    Counts counts(cells, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Substream rng(seed, t);
        trial(rng, counts.data());
    }
    return counts;
}

/// Same contract as tally_serial. Trials are spread over threads with
/// per-thread tallies merged at the end; integer sums make the result
/// independent of the thread count. `threads <= 0` uses the OpenMP default.
template <class Trial>
[[nodiscard]] Counts tally_parallel(std::size_t cells, std::uint64_t trials,
                                    std::uint64_t seed, Trial &&trial,
                                    int threads = 0) {
    Counts counts(cells, 0);
    const auto n = static_cast<std::int64_t>(trials);
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
#endif
    {
        Counts local(cells, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t t = 0; t < n; ++t) {
            Substream rng(seed, static_cast<std::uint64_t>(t));
            trial(rng, local.data());
        }
#ifdef _OPENMP
#pragma omp critical(qutrit_tally_merge)
#endif
        for (std::size_t c = 0; c < cells; ++c) {
            counts[c] += local[c];
        }
    }
    return counts;
}

/// Dispatches to tally_serial or tally_parallel.
template <class Trial>
[[nodiscard]] Counts tally(Execution exec, std::size_t cells, std::uint64_t trials,
                           std::uint64_t seed, Trial &&trial) {
    if (exec == Execution::Serial) {
        return tally_serial(cells, trials, seed, std::forward<Trial>(trial));
    }
    return tally_parallel(cells, trials, seed, std::forward<Trial>(trial));
}

/// Applies `u` to the subsystems `targets` (in that order) of a register
/// state with `dims`, leaving the rest untouched. Parallel over the
/// untouched index space; never forms the full-dimension matrix.
[[nodiscard]] CVector apply_local(const CVector &amps, const Dims &dims,
                                  std::span<const std::size_t> targets,
                                  const CMatrix &u);

/// Serial reference for apply_local: materializes the full embedded
/// operator and multiplies.
[[nodiscard]] CVector apply_local_reference(const CVector &amps, const Dims &dims,
                                            std::span<const std::size_t> targets,
                                            const CMatrix &u);

} // namespace qutrit::kernels
