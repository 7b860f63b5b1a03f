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
 * @file ks.hpp
 * Finite Kochen-Specker colouring.
 *
 * A colouring maps every ray to 0 or 1 so that each orthogonal triple gets
 * exactly one 0 and no two orthogonal rays are both 0.
 */
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <utility>
#include <vector>

#include "qutrit/spin1.hpp"

namespace qutrit {

using Triple = std::array<std::size_t, 3>;

/// Rays and orthogonal triples over them. Input directions are normalized,
/// identified up to sign (first nonzero coordinate made positive) and
/// merged when they agree within 1e-6; triple indices are remapped onto the
/// merged rays.
class TriplesSet {
  public:
    /// Throws ValidationError for a zero direction, an index out of range, a
    /// triple that repeats a ray, or a triple that is not mutually
    /// orthogonal within 1e-6. When `triples` is empty every orthogonal
    /// triple among the rays is used.
    TriplesSet(const std::vector<Vec3> &directions, const std::vector<Triple> &triples);

    [[nodiscard]] const std::vector<Vec3> &rays() const noexcept { return rays_; }
    [[nodiscard]] const std::vector<Triple> &triples() const noexcept { return triples_; }
    /// All orthogonal ray pairs, listed once with first < second.
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>> &
    orthogonal_pairs() const noexcept {
        return pairs_;
    }
    /// Ray index of input direction i.
    [[nodiscard]] std::size_t ray_of(std::size_t i) const { return ray_of_.at(i); }

  private:
    std::vector<Vec3> rays_;
    std::vector<std::size_t> ray_of_;
    std::vector<Triple> triples_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Parses the plain-text format: `#` starts a comment; lines of three
/// numbers are directions; a line `triples` switches to lines of three
/// zero-based direction indices. An optional `directions` line may open the
/// first section.
[[nodiscard]] TriplesSet read_triples(std::istream &in);
[[nodiscard]] TriplesSet read_triples_file(const std::filesystem::path &path);

struct KsResult {
    bool satisfiable = false;
    /// Per-ray value when satisfiable.
    std::optional<std::vector<int>> assignment;
    /// Search nodes visited; with satisfiable == false this is the size of
    /// the exhausted search tree.
    std::uint64_t nodes = 0;
};

/// Exhaustive backtracking with unit propagation.
[[nodiscard]] KsResult ks_satisfiable(const TriplesSet &ts);

/// True if `values` (one per ray) is a valid colouring.
[[nodiscard]] bool ks_valid(const TriplesSet &ts, const std::vector<int> &values);

} // namespace qutrit
