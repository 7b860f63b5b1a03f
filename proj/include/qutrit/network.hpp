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
 * @file network.hpp
 * Unitary measurement circuits with explicit carriers.
 *
 * A measurement writes its outcome into a carrier system instead of
 * collapsing the state. The twin circuits start from upsilon on the two
 * systems with both carriers in |0>; the register order is
 * sysA, carA, sysB, carB, then any extra subsystems.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qutrit/hilbert.hpp"
#include "qutrit/spin1.hpp"

namespace qutrit {

inline constexpr std::size_t kDefaultRegisterLimit = 59049;  // 3^10

/// Normalized state whose subsystems carry unique names.
class Register {
  public:
    Register(StateVector state, std::vector<std::string> names);

    [[nodiscard]] const StateVector &state() const noexcept { return state_; }
    [[nodiscard]] const std::vector<std::string> &names() const noexcept { return names_; }
    [[nodiscard]] const Dims &dims() const noexcept { return state_.dims(); }
    [[nodiscard]] bool has(std::string_view name) const;
    /// Throws ValidationError for an unknown name.
    [[nodiscard]] std::size_t index_of(std::string_view name) const;

  private:
    StateVector state_;
    std::vector<std::string> names_;
};

/// Unitary (within 1e-10) acting on the named subsystems, in order.
class Gate {
  public:
    Gate(Operator op, std::vector<std::string> acts_on);

    [[nodiscard]] const Operator &op() const noexcept { return op_; }
    [[nodiscard]] const std::vector<std::string> &acts_on() const noexcept { return acts_on_; }
    /// Same matrix on other subsystems.
    [[nodiscard]] Gate bind(std::vector<std::string> names) const;

  private:
    Operator op_;
    std::vector<std::string> acts_on_;
};

/// Applies `g`; target dimensions must match the gate.
[[nodiscard]] Register apply(const Register &r, const Gate &g);

/// Appends a new subsystem in state `s` at the end of the register.
[[nodiscard]] Register append(const Register &r, const std::string &name,
                              const StateVector &s);

/// sum_j P_j^F (x) U^j with U|k> = |k+1 mod 3>; on (sys, car).
[[nodiscard]] Gate measurement_gate(const Frame &f);

/// |kappa_j^F>|k> -> |kappa_k^F>|j>; on (sys, car).
[[nodiscard]] Gate swap_gate(const Frame &f);

/// |k>|j> -> |k>|k-j mod 3>; on (car1, car2).
[[nodiscard]] Gate compare_gate();

/// Entries omega^(-jk)/sqrt3, omega = exp(2 pi i/3); on (car).
[[nodiscard]] Gate inverse_fourier3();

/// w_j = w . (axis j of F).
[[nodiscard]] Vec3 frame_components(const Direction &w, const Frame &f);

/// P^w (x) 1 + (1 - P^w) (x) X on a system and a two-level carrier, with
/// |kappa^w> = sum_j w_j |kappa_j^F>. The carrier ends in the J_w^2 value.
[[nodiscard]] Gate direction_gate(const Direction &w, const Frame &f);

/// 0, 1, 2 when w is axis x, y, z of F (up to sign, 1e-9), otherwise -1.
[[nodiscard]] int n_index(const Frame &f, const Direction &w);

/// a (-) b: 0 when equal, 1 otherwise.
[[nodiscard]] constexpr int ominus(int a, int b) noexcept { return a == b ? 0 : 1; }

/// |c1>|c2>|c> -> |c1>|c2>|c XOR ((n (-) c1) (-) c2)> with n = n_index(F, w),
/// evaluated left to right. c1 is ternary, c2 has `c2_dim` levels and c is a
/// qubit. Throws ValidationError when w is not an axis of F.
[[nodiscard]] Gate frame_compare_gate(const Frame &f, const Direction &w,
                                      std::size_t c2_dim = 2);

enum class TwinVariant { MM, MMC, XX, XXCF, MMW };

[[nodiscard]] std::string_view variant_name(TwinVariant v);
/// Accepts mm, mmc, xx, xxcf, mmw.
[[nodiscard]] TwinVariant parse_variant(std::string_view name);

/// upsilon on (sysA, sysB) with carA = |0>, carB = |0> of dimension
/// `carrier_b_dim`.
[[nodiscard]] Register twin_initial_register(std::size_t carrier_b_dim = 3);

/// Runs a twin variant. MMW needs `w`; its carrier B is a qubit.
[[nodiscard]] Register run_twin_circuit(TwinVariant v, const Frame &f,
                                        const std::optional<Direction> &w = std::nullopt);

/// Adds a comparison qubit "cmp" in |0> and applies frame_compare_gate on
/// (carA, carB, cmp).
[[nodiscard]] Register append_comparison(const Register &r, const Frame &f,
                                         const Direction &w);

/// Replaces each basis state |k> of every listed carrier by |k>^(x)m. The
/// copies of carrier c are named c, c.2, ..., c.m and sit next to it.
/// Throws DimensionLimitError when the result would exceed `limit`.
[[nodiscard]] Register replicate_carriers(const Register &r, std::size_t m,
                                          const std::vector<std::string> &carriers,
                                          std::size_t limit = kDefaultRegisterLimit);

/// Componentwise compare_gate on (a.i, b.i) for replicated carriers a, b.
[[nodiscard]] Register compare_replicated(const Register &r, const std::string &a,
                                          const std::string &b, std::size_t m);

/// Closed-form final states of the twin circuits, assembled from the frame
/// basis without applying any gate. MMW omits the comparison qubit.
[[nodiscard]] StateVector twin_reference_state(TwinVariant v, const Frame &f,
                                               const std::optional<Direction> &w = std::nullopt);

/// Probability that each named subsystem is found in the given
/// computational basis value.
[[nodiscard]] double outcome_probability(
    const Register &r, const std::vector<std::pair<std::string, std::size_t>> &values);

struct Branch {
    std::vector<std::size_t> label;     ///< carrier outcomes, in the order requested
    double weight = 0.0;
    StateVector relative_state;         ///< normalized, on the other subsystems
    std::vector<std::string> names;     ///< subsystems of relative_state
};

/// Splits the register by computational outcomes of `carriers`. Branches
/// of weight below 1e-20 are dropped.
[[nodiscard]] std::vector<Branch> branches(const Register &r,
                                           const std::vector<std::string> &carriers);

} // namespace qutrit
