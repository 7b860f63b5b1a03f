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
 * @file signed.hpp
 * Signed product decompositions of two-qutrit states.
 *
 * Any two-qutrit density operator is a real combination of the 81 products
 * rho_k (x) rho_j of the projectors onto the nine xi states. Splitting the
 * coefficients by sign gives rho = kappa rho+ - (kappa-1) rho- with rho+ and
 * rho- separable, and a pair of classical sources whose counter difference
 * reproduces the joint outcome statistics.
 *
 * Indices here are zero-based; the export uses 1..9.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qutrit/hilbert.hpp"
#include "qutrit/kernels.hpp"
#include "qutrit/measure.hpp"
#include "qutrit/rng.hpp"

namespace qutrit {

struct XiBasis {
    std::vector<StateVector> states;     ///< xi_1..xi_9
    std::vector<Operator> density_ops;   ///< |xi_k><xi_k|
};

/// |1>, |2>, |3>, (|2>+|3>)/sqrt2, (|3>+|1>)/sqrt2, (|1>+|2>)/sqrt2,
/// (|2>+i|3>)/sqrt2, (|3>+i|1>)/sqrt2, (|1>+i|2>)/sqrt2.
[[nodiscard]] const XiBasis &xi_basis();

/// Rank of the 81 products rho_k (x) rho_j as vectors in the real space of
/// Hermitian 9x9 matrices.
[[nodiscard]] std::size_t xi_product_rank();

/// lambda rho_k (x) rho_j with k on party A, j on party B.
struct SignedTerm {
    double lambda = 0.0;
    std::size_t k = 0;
    std::size_t j = 0;
};

class SignedDecomposition {
  public:
    SignedDecomposition(std::vector<SignedTerm> terms, Eigen::MatrixXd table,
                        double residual);

    [[nodiscard]] const std::vector<SignedTerm> &terms() const noexcept { return terms_; }
    /// 9x9 coefficients c_kj, dropped entries exactly 0.
    [[nodiscard]] const Eigen::MatrixXd &table() const noexcept { return table_; }
    /// Frobenius norm of the reconstruction error.
    [[nodiscard]] double residual() const noexcept { return residual_; }
    /// Sum of the positive coefficients.
    [[nodiscard]] double kappa() const;
    [[nodiscard]] Operator reconstruct() const;

  private:
    std::vector<SignedTerm> terms_;
    Eigen::MatrixXd table_;
    double residual_;
};

/// Solves the 81 real equations. Coefficients with magnitude below 1e-9
/// are dropped. Throws std::logic_error if the residual exceeds 1e-10.
[[nodiscard]] SignedDecomposition decompose(const DensityOperator &target);

struct SignedSplit {
    std::vector<SignedTerm> positive;   ///< lambda > 0
    std::vector<SignedTerm> negative;   ///< lambda < 0
    std::vector<double> p_plus;         ///< lambda / kappa
    std::vector<double> p_minus;        ///< |lambda| / (kappa - 1)
    double kappa = 1.0;
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    DensityOperator rho_plus;
    std::optional<DensityOperator> rho_minus;  ///< empty when no negative terms
};

/// Throws std::logic_error if kappa rho+ - (kappa-1) rho- misses the
/// reconstruction by more than 1e-10.
[[nodiscard]] SignedSplit split(const SignedDecomposition &d);

/// kappa Tr(rho+ O) - (kappa-1) Tr(rho- O).
[[nodiscard]] double signed_expectation(const Operator &o, const SignedDecomposition &d);

struct CounterExpectations {
    Eigen::MatrixXd n_plus;     ///< <N+(j,k)>, (A outcome, B outcome)
    Eigen::MatrixXd n_minus;
    Eigen::VectorXd n_plus_a;   ///< <N+(a)>
    Eigen::VectorXd n_minus_a;
    Eigen::VectorXd n_plus_b;
    Eigen::VectorXd n_minus_b;
    double total_plus = 0.0;    ///< kappa
    double total_minus = 0.0;   ///< kappa - 1
};

/// <N+-(a,b)> = sum over terms of that sign |lambda| <a|rho_k|a><b|rho_j|b>.
/// Per-party counts sum the joint counts over the other party's outcome.
[[nodiscard]] CounterExpectations counter_expectations(const SignedDecomposition &d,
                                                       const Basis &basis_a,
                                                       const Basis &basis_b);

struct CounterTally {
    std::uint64_t trials = 0;
    Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic> n_plus;
    Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic> n_minus;
    double kappa = 1.0;
    /// kappa f+ - (kappa-1) f- with f = count / trials.
    Eigen::MatrixXd estimate;
};

/// Each trial draws one term from each source and one local outcome per
/// factor. Throws ValidationError for trials == 0.
[[nodiscard]] CounterTally
simulate(const SignedDecomposition &d, const Basis &basis_a, const Basis &basis_b,
         std::uint64_t trials, std::uint64_t seed = kDefaultSeed,
         kernels::Execution exec = kernels::Execution::Parallel);

} // namespace qutrit
