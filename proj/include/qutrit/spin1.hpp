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
 * @file spin1.hpp
 * Spin-1 observables in the Cartesian basis |x>, |y>, |z>.
 *
 * Convention: (J_a)_bc = -i eps_abc, so J_v^2 = 1 - |v><v| for a real unit
 * vector v and K^F = Jx^2 - Jy^2 = |y><y| - |x><x| is diagonal in the frame
 * basis with eigenvalues -1, +1, 0 on kappa_1, kappa_2, kappa_3.
 */
#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "qutrit/hilbert.hpp"
#include "qutrit/kernels.hpp"
#include "qutrit/measure.hpp"
#include "qutrit/rng.hpp"

namespace qutrit {

using Vec3 = Eigen::Vector3d;

/// Real unit 3-vector (norm 1 within 1e-9).
class Direction {
  public:
    explicit Direction(const Vec3 &v);

    /// Rescales any nonzero vector.
    [[nodiscard]] static Direction normalized(const Vec3 &v);

    [[nodiscard]] const Vec3 &vec() const noexcept { return v_; }
    [[nodiscard]] StateVector ket() const;

  private:
    Vec3 v_;
};

/// Right-handed orthonormal frame; row i of the rotation is axis i.
class Frame {
  public:
    /// Strict: unit rows, pairwise orthogonal and det +1, all within 1e-9.
    explicit Frame(const Eigen::Matrix3d &rows);

    /// Nearest rotation (polar factor) to `rows`. Throws ValidationError if
    /// any entry moves by more than `max_adjust` or the input is
    /// orientation-reversing. The flag reports whether anything moved
    /// beyond the strict tolerance.
    [[nodiscard]] static std::pair<Frame, bool>
    from_rows_approx(const Eigen::Matrix3d &rows, double max_adjust = 1e-3);

    [[nodiscard]] static Frame standard();
    /// x' = y, y' = (x+z)/sqrt2, z' = (x-z)/sqrt2.
    [[nodiscard]] static Frame primed();

    [[nodiscard]] const Eigen::Matrix3d &rotation() const noexcept { return r_; }
    [[nodiscard]] Direction axis(std::size_t i) const;

  private:
    Eigen::Matrix3d r_;
};

struct SpinTriple {
    Operator x;
    Operator y;
    Operator z;
};

/// Eigenvalues of K in frame-basis order.
inline constexpr std::array<int, 3> kKValues{-1, 1, 0};

[[nodiscard]] SpinTriple spin_operators();

/// v.J for a direction v.
[[nodiscard]] Operator spin_component(const Direction &v);

/// K^F = (x.J)^2 - (y.J)^2.
[[nodiscard]] Operator k_operator(const Frame &f);

/// Jx^2 = 1 - (K^2-K)/2, Jy^2 = 1 - (K^2+K)/2, Jz^2 = K^2, read in the frame
/// that produced K.
[[nodiscard]] SpinTriple squares_from_k(const Operator &k);

/// kappa_i^F = sum_j R_ij e_j.
[[nodiscard]] Basis frame_basis(const Frame &f);

/// (|xx> + |yy> + |zz>) / sqrt3.
[[nodiscard]] StateVector upsilon();

/// (1/3) <kappa_j^A|kappa_k^B>^2, indexed (A axis, B axis).
[[nodiscard]] JointDistribution ck_table(const Frame &fa, const Frame &fb);

struct TwinReport {
    std::uint64_t trials = 0;
    std::array<std::array<std::uint64_t, 3>, 3> counts{};  ///< (A outcome, B outcome)
    std::uint64_t discordant = 0;
    std::array<double, 3> frequency{};  ///< per K value, in kKValues order
    std::array<double, 3> z_score{};    ///< against 1/3
    /// <kappa_i|J_a^2|kappa_i> for a = x, y, z of the frame.
    std::array<std::array<double, 3>, 3> induced{};
    bool spin_holds = false;  ///< every observed triple is an arrangement of (1,0,1)
};

/// Samples K^F (x) K^F on upsilon from its exact distribution.
[[nodiscard]] TwinReport
twin_check(const Frame &f, std::uint64_t trials, std::uint64_t seed = kDefaultSeed,
           kernels::Execution exec = kernels::Execution::Parallel);

} // namespace qutrit
