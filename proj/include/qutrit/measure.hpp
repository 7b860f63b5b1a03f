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
 * @file measure.hpp
 * Bipartite measurement probabilities, von Neumann measurement maps and the
 * four-zone evolution of a two-party state under local clocks.
 *
 * Bipartite states have exactly two subsystems: party A is subsystem 0,
 * party B is subsystem 1.
 */
#pragma once

#include <string_view>
#include <vector>

#include "qutrit/hilbert.hpp"

namespace qutrit {

enum class Party { A, B };

/// Ordered, orthonormal, complete list of states of one subsystem.
using Basis = std::vector<StateVector>;

/// Throws ValidationError unless `basis` holds `dim` orthonormal vectors of
/// dimension `dim`.
void validate_basis(const Basis &basis, std::size_t dim);

/// Ordered list of mutually orthogonal projectors summing to the identity.
/// Projectors need not be rank one.
class ProjectiveMeasurement {
  public:
    explicit ProjectiveMeasurement(std::vector<Operator> projectors);

    [[nodiscard]] static ProjectiveMeasurement from_basis(const Basis &basis);

    [[nodiscard]] const std::vector<Operator> &projectors() const noexcept {
        return projectors_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return projectors_.size(); }
    [[nodiscard]] const Dims &dims() const { return projectors_.front().dims(); }

  private:
    std::vector<Operator> projectors_;
};

/// Probabilities indexed by (outcome of A, outcome of B). Entries down to
/// -1e-12 are clamped to zero; the total must be 1 within 1e-10.
class JointDistribution {
  public:
    explicit JointDistribution(Eigen::MatrixXd probs);

    [[nodiscard]] const Eigen::MatrixXd &probs() const noexcept { return p_; }
    [[nodiscard]] std::size_t rows() const noexcept {
        return static_cast<std::size_t>(p_.rows());
    }
    [[nodiscard]] std::size_t cols() const noexcept {
        return static_cast<std::size_t>(p_.cols());
    }
    [[nodiscard]] double operator()(std::size_t a, std::size_t b) const {
        return p_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    [[nodiscard]] Eigen::VectorXd marginal_a() const { return p_.rowwise().sum(); }
    [[nodiscard]] Eigen::VectorXd marginal_b() const {
        return p_.colwise().sum().transpose();
    }

  private:
    Eigen::MatrixXd p_;
};

/// <Psi| Pa (x) Pb |Psi>.
[[nodiscard]] double joint_probability(const StateVector &psi, const Operator &pa,
                                       const Operator &pb);

/// <Psi| P (x) 1 |Psi> for party A, <Psi| 1 (x) P |Psi> for party B.
[[nodiscard]] double marginal_probability(const StateVector &psi, Party party,
                                          const Operator &p);

/// P_ab / P_a when conditioning on A, P_ab / P_b when conditioning on B.
/// Throws ValidationError if the conditioning event has probability <= 1e-12.
[[nodiscard]] double conditional_probability(const StateVector &psi,
                                             const Operator &pa,
                                             const Operator &pb, Party given);

/// rho -> sum_m P_m rho P_m.
[[nodiscard]] DensityOperator vn_measure(const DensityOperator &rho,
                                         const ProjectiveMeasurement &m);

/// The measurement map of one party on a bipartite state, identity on the
/// other factor.
[[nodiscard]] DensityOperator party_measure(const DensityOperator &rho,
                                            Party party,
                                            const ProjectiveMeasurement &m);

/// Regions of the two-clock plane. `t < tau` means the local measurement
/// has not happened yet; ties fall on the measured side.
enum class Zone { I, II, III, IV };

[[nodiscard]] Zone zone_of(double t1, double t2, double tau);
[[nodiscard]] std::string_view zone_name(Zone z);

/// I: |Psi><Psi|, II: M_B, III: M_A, IV: M_A M_B.
[[nodiscard]] DensityOperator zone_state(const StateVector &psi,
                                         const ProjectiveMeasurement &ma,
                                         const ProjectiveMeasurement &mb, Zone z);

/// One term of the relative-state expansion Psi = sum_k alpha_k |a_k>|u_k>
/// (or sum_j beta_j |v_j>|b_j> when party B is measured).
struct RelativeTerm {
    std::size_t index;     ///< position of the basis vector
    Complex coefficient;   ///< alpha_k; |alpha_k| is the branch amplitude
    StateVector state;     ///< u_k, first nonzero amplitude real positive
};

/// Expands psi over `basis` on the measured party. Terms with zero
/// amplitude (below 1e-12) have no defined relative state and are omitted.
[[nodiscard]] std::vector<RelativeTerm>
relative_states(const StateVector &psi, Party measured, const Basis &basis);

/// The three routes to q_kj.
struct QMatrixForms {
    Eigen::MatrixXd direct;  ///< |<a_k (x) b_j|Psi>|^2
    Eigen::MatrixXd via_b;   ///< |beta_j <a_k|v_j>|^2
    Eigen::MatrixXd via_a;   ///< |alpha_k <b_j|u_k>|^2
    [[nodiscard]] double max_disagreement() const;
};

[[nodiscard]] QMatrixForms q_matrix_forms(const StateVector &psi,
                                          const Basis &basis_a,
                                          const Basis &basis_b);

/// Zone-IV outcome distribution. Computes all three forms and throws
/// std::logic_error if they disagree by more than 1e-10.
[[nodiscard]] JointDistribution q_matrix(const StateVector &psi,
                                         const Basis &basis_a,
                                         const Basis &basis_b);

} // namespace qutrit
