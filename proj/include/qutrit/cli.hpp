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
 * @file cli.hpp
 * Command-line front end.
 *
 * Subcommands: ck-table, zones, twin-circuit, decompose, signed-sim,
 * roulette, chain, ks-check. Common flags: --seed, --trials,
 * --format json|csv, --tolerance.
 *
 * Exit codes: 0 success, 2 invalid input, 1 internal failure. A report
 * whose checks fail still exits 0; see "all_checks_pass".
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qutrit/spin1.hpp"

namespace qutrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "standard", "primed", or nine numbers row by row separated by commas,
/// semicolons or whitespace. Near-orthonormal rows are snapped to the
/// nearest rotation; the flag reports whether that happened.
[[nodiscard]] std::pair<Frame, bool> parse_frame(const std::string &spec);

} // namespace qutrit::cli
