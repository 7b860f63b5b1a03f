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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qutrit {

inline constexpr std::string_view kVersion = "0.1.0";

/// Numerical tolerances shared by every module.
struct Tolerances {
    double algebraic = 1e-10;          ///< identities, norms, traces
    double spectral = 1e-9;            ///< smallest admissible eigenvalue is -spectral
    double frame = 1e-9;               ///< frame orthonormality and unit directions
    double ray_match = 1e-6;           ///< identifying directions up to sign
    double zero_coefficient = 1e-9;    ///< signed decomposition coefficients
    double probability_clamp = 1e-12;  ///< negative probabilities clamped to zero
};

inline constexpr Tolerances kTol{};

/// Input violates a documented precondition (bad dims, non-normalized state,
/// invalid frame, malformed file). The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string &what)
        : std::invalid_argument(what) {}
};

/// A configured size bound was exceeded.
class DimensionLimitError : public ValidationError {
  public:
    explicit DimensionLimitError(const std::string &what)
        : ValidationError(what) {}
};

} // namespace qutrit
