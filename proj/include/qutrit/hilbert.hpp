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
 * @file hilbert.hpp
 * Dense complex linear algebra on registers of small subsystems.
 *
 * A register is described by its list of subsystem dimensions. Amplitudes
 * and matrix entries are stored row-major over the subsystems: subsystem 0
 * varies slowest, so `tensor(a, b)` places `a` on the left exactly as the
 * written product a (x) b.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qutrit/config.hpp"

namespace qutrit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

/// Product of the subsystem dimensions.
[[nodiscard]] std::size_t total_dim(const Dims &dims);

/// Row-major strides, `strides(d)[i]` is the flat-index step of subsystem i.
[[nodiscard]] std::vector<std::size_t> strides(const Dims &dims);

class StateVector {
  public:
    /// Throws ValidationError if the length is not the product of `dims` or
    /// any amplitude is non-finite.
    StateVector(Dims dims, CVector amps);

    /// |index> in a single subsystem of dimension `dim` (zero-based).
    [[nodiscard]] static StateVector basis(std::size_t dim, std::size_t index);

    [[nodiscard]] const Dims &dims() const noexcept { return dims_; }
    [[nodiscard]] const CVector &amps() const noexcept { return amps_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }

    [[nodiscard]] double norm() const { return amps_.norm(); }
    [[nodiscard]] bool
    is_normalized(double tol = kTol.algebraic) const;
    /// Throws ValidationError on a zero vector.
    [[nodiscard]] StateVector normalized() const;

  private:
    Dims dims_;
    CVector amps_;
};

class Operator {
  public:
    /// Throws ValidationError unless `entries` is square with side
    /// `total_dim(dims)` and finite.
    Operator(Dims dims, CMatrix entries);

    [[nodiscard]] static Operator identity(const Dims &dims);

    [[nodiscard]] const Dims &dims() const noexcept { return dims_; }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }

    [[nodiscard]] bool is_hermitian(double tol = kTol.algebraic) const;
    [[nodiscard]] bool is_unitary(double tol = kTol.algebraic) const;
    [[nodiscard]] bool is_projector(double tol = kTol.algebraic) const;
    [[nodiscard]] Operator adjoint() const;

    friend Operator operator*(const Operator &a, const Operator &b);
    friend Operator operator+(const Operator &a, const Operator &b);
    friend Operator operator-(const Operator &a, const Operator &b);
    friend Operator operator*(Complex s, const Operator &a);

  private:
    Dims dims_;
    CMatrix m_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
  public:
    /// Validates trace (1e-10), hermiticity (1e-10) and the spectrum
    /// (smallest eigenvalue >= -1e-9); throws ValidationError otherwise.
    explicit DensityOperator(Operator op);

    /// |psi><psi| of a normalized state.
    [[nodiscard]] static DensityOperator pure(const StateVector &psi);

    [[nodiscard]] const Operator &op() const noexcept { return op_; }
    [[nodiscard]] const CMatrix &matrix() const noexcept { return op_.matrix(); }
    [[nodiscard]] const Dims &dims() const noexcept { return op_.dims(); }

    /// Ascending eigenvalues with values in (-1e-9, 0) clamped to zero.
    [[nodiscard]] std::vector<double> eigenvalues() const;

  private:
    Operator op_;
};

/// Kronecker product; dims are concatenated left to right.
[[nodiscard]] StateVector tensor(const StateVector &a, const StateVector &b);
[[nodiscard]] Operator tensor(const Operator &a, const Operator &b);

/// |v><v| for a normalized v.
[[nodiscard]] Operator projector(const StateVector &v);

/// Reduced state on the subsystems in `keep` (in the order they appear in
/// the register). Throws ValidationError for an empty, duplicated or
/// out-of-range keep set.
[[nodiscard]] DensityOperator partial_trace(const DensityOperator &rho,
                                            std::span<const std::size_t> keep);

/// Tr(rho O) for Hermitian O; the imaginary residue is checked against
/// 1e-10 and dropped.
[[nodiscard]] double expectation(const DensityOperator &rho, const Operator &o);

// Small helpers used across modules.

[[nodiscard]] Complex inner(const StateVector &a, const StateVector &b);
[[nodiscard]] double fidelity(const StateVector &a, const StateVector &b);
[[nodiscard]] StateVector apply(const Operator &o, const StateVector &v);

/// Ascending eigenvalues of a Hermitian matrix.
[[nodiscard]] std::vector<double> hermitian_eigenvalues(const CMatrix &m);

/// Operator `local` acting on subsystem `which` of a register with `dims`,
/// identity elsewhere.
[[nodiscard]] Operator embed(const Operator &local, const Dims &dims,
                             std::size_t which);

/// Reorders subsystems: subsystem i of the result is subsystem `order[i]`
/// of `v`.
[[nodiscard]] StateVector permute_subsystems(const StateVector &v,
                                             std::span<const std::size_t> order);

} // namespace qutrit
