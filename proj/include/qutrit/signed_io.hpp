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
 * @file signed_io.hpp
 * Decomposition export.
 *
 * JSON schema 1:
 *
 *     {"schema": 1,
 *      "terms": [{"k": 1, "j": 5, "lambda": -0.333...}, ...],
 *      "table": [[c11, ..., c19], ..., [c91, ..., c99]],
 *      "kappa": 7.0, "n_plus": 18, "n_minus": 15, "residual": 3e-16}
 *
 * k (party A) and j (party B) run 1..9 in xi order. CSV is the 9x9 table,
 * one row per k, no header.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "qutrit/signed.hpp"

namespace qutrit {

[[nodiscard]] nlohmann::ordered_json decomposition_json(const SignedDecomposition &d);
[[nodiscard]] std::string decomposition_csv(const SignedDecomposition &d);

/// Shortest decimal that round-trips.
[[nodiscard]] std::string format_double(double x);

} // namespace qutrit
