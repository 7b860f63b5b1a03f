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

#include "qutrit/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qutrit {

namespace {

void require_bipartite(const StateVector &psi) {
    if (psi.dims().size() != 2) {
        throw ValidationError("expected a bipartite state, got " +
                              std::to_string(psi.dims().size()) + " subsystems");
    }
}

std::size_t party_index(Party p) { return p == Party::A ? 0 : 1; }

void require_factor_projector(const Operator &p, std::size_t dim, const char *what) {
    if (p.dims().size() != 1 || p.dims()[0] != dim) {
        throw ValidationError(std::string(what) +
                              ": projector does not act on a factor of dimension " +
                              std::to_string(dim));
    }
    if (!p.is_projector()) {
        throw ValidationError(std::string(what) + ": operator is not a projector");
    }
}

// (<e| (x) 1)|psi> for party A, (1 (x) <e|)|psi> for party B.
CVector contract(const StateVector &psi, Party party, const StateVector &e) {
    const auto da = static_cast<Eigen::Index>(psi.dims()[0]);
    const auto db = static_cast<Eigen::Index>(psi.dims()[1]);
    // Row-major reshape: row index is A, column index is B.
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                         Eigen::RowMajor>>
        m(psi.amps().data(), da, db);
    if (party == Party::A) {
        return m.transpose() * e.amps().conjugate();
    }
    return m * e.amps().conjugate();
}

} // namespace

void validate_basis(const Basis &basis, std::size_t dim) {
    if (basis.size() != dim) {
        throw ValidationError("incomplete basis: " + std::to_string(basis.size()) +
                              " vectors for dimension " + std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (basis[i].dims() != Dims{dim}) {
            throw ValidationError("basis vector " + std::to_string(i) +
                                  " has the wrong dimension");
        }
        for (std::size_t j = i; j < dim; ++j) {
            const Complex g = inner(basis[i], basis[j]);
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(g - expect) > kTol.algebraic) {
                throw ValidationError("basis is not orthonormal at (" +
                                      std::to_string(i) + "," + std::to_string(j) +
                                      ")");
            }
        }
    }
}

// ---------------------------------------------------------------------------

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Operator> projectors)
    : projectors_(std::move(projectors)) {
    if (projectors_.empty()) {
        throw ValidationError("measurement: no projectors");
    }
    const Dims &dims = projectors_.front().dims();
    CMatrix sum = CMatrix::Zero(projectors_.front().matrix().rows(),
                                projectors_.front().matrix().cols());
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const auto &p = projectors_[i];
        if (p.dims() != dims) {
            throw ValidationError("measurement: projectors act on different spaces");
        }
        if (!p.is_projector()) {
            throw ValidationError("measurement: element " + std::to_string(i) +
                                  " is not a projector");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if ((p.matrix() * projectors_[j].matrix()).cwiseAbs().maxCoeff() >
                kTol.algebraic) {
                throw ValidationError("measurement: projectors " + std::to_string(j) +
                                      " and " + std::to_string(i) +
                                      " are not orthogonal");
            }
        }
        sum += p.matrix();
    }
    if ((sum - CMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() >
        kTol.algebraic) {
        throw ValidationError("measurement: projectors do not sum to identity");
    }
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const Basis &basis) {
    if (basis.empty()) {
        throw ValidationError("measurement: empty basis");
    }
    validate_basis(basis, basis.front().size());
    std::vector<Operator> ps;
    ps.reserve(basis.size());
    for (const auto &v : basis) {
        ps.push_back(projector(v));
    }
    return ProjectiveMeasurement(std::move(ps));
}

// ---------------------------------------------------------------------------

JointDistribution::JointDistribution(Eigen::MatrixXd probs) : p_(std::move(probs)) {
    if (p_.size() == 0) {
        throw ValidationError("joint distribution: empty table");
    }
    if (!p_.allFinite()) {
        throw ValidationError("joint distribution: non-finite entry");
    }
    for (Eigen::Index i = 0; i < p_.rows(); ++i) {
        for (Eigen::Index j = 0; j < p_.cols(); ++j) {
            if (p_(i, j) < -kTol.probability_clamp) {
                throw ValidationError("joint distribution: negative entry " +
                                      std::to_string(p_(i, j)));
            }
            if (p_(i, j) < 0.0) {
                p_(i, j) = 0.0;
            }
        }
    }
    if (std::abs(p_.sum() - 1.0) > kTol.algebraic) {
        throw ValidationError("joint distribution: total " + std::to_string(p_.sum()) +
                              " is not 1");
    }
}

// ---------------------------------------------------------------------------

double joint_probability(const StateVector &psi, const Operator &pa,
                         const Operator &pb) {
    require_bipartite(psi);
    require_factor_projector(pa, psi.dims()[0], "joint probability (A)");
    require_factor_projector(pb, psi.dims()[1], "joint probability (B)");
    const Operator both = tensor(pa, pb);
    return (psi.amps().adjoint() * both.matrix() * psi.amps())(0).real();
}

double marginal_probability(const StateVector &psi, Party party, const Operator &p) {
    require_bipartite(psi);
    const std::size_t which = party_index(party);
    require_factor_projector(p, psi.dims()[which], "marginal probability");
    const Operator full = embed(p, psi.dims(), which);
    return (psi.amps().adjoint() * full.matrix() * psi.amps())(0).real();
}

double conditional_probability(const StateVector &psi, const Operator &pa,
                               const Operator &pb, Party given) {
    const double joint = joint_probability(psi, pa, pb);
    const double cond = given == Party::A ? marginal_probability(psi, Party::A, pa)
                                          : marginal_probability(psi, Party::B, pb);
    if (cond <= kTol.probability_clamp) {
        throw ValidationError("conditional probability: conditioning event has "
                              "zero probability");
    }
    return joint / cond;
}

DensityOperator vn_measure(const DensityOperator &rho, const ProjectiveMeasurement &m) {
    if (rho.dims() != m.dims()) {
        throw ValidationError("vn_measure: measurement does not act on the state space");
    }
    CMatrix out = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto &p : m.projectors()) {
        out += p.matrix() * rho.matrix() * p.matrix();
    }
    return DensityOperator(Operator(rho.dims(), std::move(out)));
}

DensityOperator party_measure(const DensityOperator &rho, Party party,
                              const ProjectiveMeasurement &m) {
    if (rho.dims().size() != 2) {
        throw ValidationError("party_measure: state is not bipartite");
    }
    const std::size_t which = party_index(party);
    if (m.dims() != Dims{rho.dims()[which]}) {
        throw ValidationError("party_measure: measurement dimension does not match "
                              "the party's factor");
    }
    std::vector<Operator> lifted;
    lifted.reserve(m.size());
    for (const auto &p : m.projectors()) {
        lifted.push_back(embed(p, rho.dims(), which));
    }
    return vn_measure(rho, ProjectiveMeasurement(std::move(lifted)));
}

Zone zone_of(double t1, double t2, double tau) {
    const bool a_before = t1 < tau;
    const bool b_before = t2 < tau;
    if (a_before && b_before) {
        return Zone::I;
    }
    if (a_before) {
        return Zone::II;
    }
    if (b_before) {
        return Zone::III;
    }
    return Zone::IV;
}

std::string_view zone_name(Zone z) {
    switch (z) {
    case Zone::I:
        return "I";
    case Zone::II:
        return "II";
    case Zone::III:
        return "III";
    case Zone::IV:
        return "IV";
    }
    return "?";
}

DensityOperator zone_state(const StateVector &psi, const ProjectiveMeasurement &ma,
                           const ProjectiveMeasurement &mb, Zone z) {
    require_bipartite(psi);
    const auto rho = DensityOperator::pure(psi);
    switch (z) {
    case Zone::I:
        return rho;
    case Zone::II:
        return party_measure(rho, Party::B, mb);
    case Zone::III:
        return party_measure(rho, Party::A, ma);
    case Zone::IV:
        return party_measure(party_measure(rho, Party::B, mb), Party::A, ma);
    }
    throw std::logic_error("zone_state: unknown zone");
}

std::vector<RelativeTerm> relative_states(const StateVector &psi, Party measured,
                                          const Basis &basis) {
    require_bipartite(psi);
    const std::size_t which = party_index(measured);
    validate_basis(basis, psi.dims()[which]);
    const std::size_t other_dim = psi.dims()[1 - which];

    std::vector<RelativeTerm> terms;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const CVector w = contract(psi, measured, basis[k]);
        const double n = w.norm();
        if (n <= kTol.probability_clamp) {
            continue;
        }
        // Phase of the first entry that is not numerically zero.
        Complex phase = 1.0;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (std::abs(w(i)) > kTol.algebraic * n) {
                phase = w(i) / std::abs(w(i));
                break;
            }
        }
        const Complex alpha = n * phase;
        terms.push_back({k, alpha, StateVector({other_dim}, w / alpha)});
    }
    return terms;
}

double QMatrixForms::max_disagreement() const {
    return std::max((direct - via_a).cwiseAbs().maxCoeff(),
                    (direct - via_b).cwiseAbs().maxCoeff());
}

QMatrixForms q_matrix_forms(const StateVector &psi, const Basis &basis_a,
                            const Basis &basis_b) {
    require_bipartite(psi);
    validate_basis(basis_a, psi.dims()[0]);
    validate_basis(basis_b, psi.dims()[1]);
    const auto na = static_cast<Eigen::Index>(basis_a.size());
    const auto nb = static_cast<Eigen::Index>(basis_b.size());

    QMatrixForms f{Eigen::MatrixXd::Zero(na, nb), Eigen::MatrixXd::Zero(na, nb),
                   Eigen::MatrixXd::Zero(na, nb)};
    for (Eigen::Index k = 0; k < na; ++k) {
        for (Eigen::Index j = 0; j < nb; ++j) {
            const auto ab = tensor(basis_a[static_cast<std::size_t>(k)],
                                   basis_b[static_cast<std::size_t>(j)]);
            f.direct(k, j) = std::norm(inner(ab, psi));
        }
    }
    // Omitted (zero-amplitude) relative states leave zero rows / columns.
    for (const auto &t : relative_states(psi, Party::B, basis_b)) {
        for (Eigen::Index k = 0; k < na; ++k) {
            f.via_b(k, static_cast<Eigen::Index>(t.index)) =
                std::norm(t.coefficient *
                          inner(basis_a[static_cast<std::size_t>(k)], t.state));
        }
    }
    for (const auto &t : relative_states(psi, Party::A, basis_a)) {
        for (Eigen::Index j = 0; j < nb; ++j) {
            f.via_a(static_cast<Eigen::Index>(t.index), j) =
                std::norm(t.coefficient *
                          inner(basis_b[static_cast<std::size_t>(j)], t.state));
        }
    }
    return f;
}

JointDistribution q_matrix(const StateVector &psi, const Basis &basis_a,
                           const Basis &basis_b) {
    if (!psi.is_normalized()) {
        throw ValidationError("q_matrix: state is not normalized");
    }
    const auto f = q_matrix_forms(psi, basis_a, basis_b);
    const double gap = f.max_disagreement();
    if (gap > kTol.algebraic) {
        throw std::logic_error("q_matrix: relative-state forms disagree by " +
                               std::to_string(gap));
    }
    return JointDistribution(f.direct);
}

} // namespace qutrit
