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
 * @file possibility.hpp
 * Possibility relations: which (setting, outcome) pairs a probability table
 * admits, with the per-setting minimal and maximal admitted outcomes.
 */
#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qutrit/measure.hpp"
#include "qutrit/spin1.hpp"

namespace qutrit {

/// Joint outcome probabilities of one pair of measurement settings.
struct OutcomeTable {
    std::string setting_a;
    std::string setting_b;
    JointDistribution dist;
};

using SettingOutcome = std::pair<std::string, std::size_t>;

/// setting -> admitted outcomes. Every listed setting admits at least one.
using PossibilityRelation = std::map<std::string, std::set<std::size_t>>;

struct PossibilityReport {
    std::set<std::pair<SettingOutcome, SettingOutcome>> q_ab;
    PossibilityRelation q_a;
    PossibilityRelation q_b;
    std::map<std::string, std::size_t> jbot_a, jtop_a, jbot_b, jtop_b;
    /// All tables have two outcomes per party.
    bool binary = false;
    /// For binary outcomes: each admitted set equals {Jbot, Jtop}.
    bool union_identity = false;
};

/// Pairs with probability above `threshold` are admitted. Throws
/// ValidationError for a negative threshold or an empty table list.
[[nodiscard]] PossibilityReport
possibility_relation(const std::vector<OutcomeTable> &tables, double threshold = 1e-12);

/// Single table; settings are named "A" and "B".
[[nodiscard]] PossibilityReport possibility_relation(const JointDistribution &table,
                                                     double threshold = 1e-12);

/// Outcomes of J_v^2 (x) J_w^2 on a two-qutrit state. Index 0 is J^2 = 0
/// (projector |v><v|), index 1 is J^2 = 1.
[[nodiscard]] JointDistribution spin_square_table(const StateVector &psi,
                                                  const Direction &v,
                                                  const Direction &w);

} // namespace qutrit
