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

#include "qutrit/spin1.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qutrit {

namespace {

const Dims kQutrit{3};

} // namespace

Direction::Direction(const Vec3 &v) : v_(v) {
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > kTol.frame) {
        throw ValidationError("direction is not a unit vector");
    }
}

Direction Direction::normalized(const Vec3 &v) {
    const double n = v.norm();
    if (!v.allFinite() || n == 0.0) {
        throw ValidationError("direction: zero or non-finite vector");
    }
    return Direction(v / n);
}

StateVector Direction::ket() const { return StateVector(kQutrit, v_.cast<Complex>()); }

Frame::Frame(const Eigen::Matrix3d &rows) : r_(rows) {
    if (!rows.allFinite()) {
        throw ValidationError("frame: non-finite entry");
    }
    const Eigen::Matrix3d gram = rows * rows.transpose();
    if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > kTol.frame) {
        throw ValidationError("frame: axes are not orthonormal");
    }
    if (std::abs(rows.determinant() - 1.0) > kTol.frame) {
        throw ValidationError("frame: determinant is not +1");
    }
}

std::pair<Frame, bool> Frame::from_rows_approx(const Eigen::Matrix3d &rows,
                                               double max_adjust) {
    if (!rows.allFinite()) {
        throw ValidationError("frame: non-finite entry");
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(rows, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d polar = svd.matrixU() * svd.matrixV().transpose();
    if (polar.determinant() < 0.0) {
        throw ValidationError("frame: axes are left-handed");
    }
    const double moved = (polar - rows).cwiseAbs().maxCoeff();
    if (moved > max_adjust) {
        throw ValidationError("frame: axes are not orthonormal (off by " +
                              std::to_string(moved) + ")");
    }
    if (moved <= kTol.frame) {
        try {
            return {Frame(rows), false};
        } catch (const ValidationError &) {
            // Gram residue can exceed the entry residue; fall through.
        }
    }
    return {Frame(polar), true};
}

Frame Frame::standard() { return Frame(Eigen::Matrix3d::Identity()); }

Frame Frame::primed() {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Matrix3d r;
    r << 0, 1, 0,
         h, 0, h,
         h, 0, -h;
    return Frame(r);
}

Direction Frame::axis(std::size_t i) const {
    if (i >= 3) {
        throw ValidationError("frame axis index out of range");
    }
    return Direction(r_.row(static_cast<Eigen::Index>(i)).transpose());
}

SpinTriple spin_operators() {
    const Complex i{0.0, 1.0};
    std::array<CMatrix, 3> j;
    for (auto &m : j) {
        m = CMatrix::Zero(3, 3);
    }
    // (J_a)_bc = -i eps_abc.
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        j[static_cast<std::size_t>(a)](b, c) = -i;
        j[static_cast<std::size_t>(a)](c, b) = i;
    }
    return {Operator(kQutrit, j[0]), Operator(kQutrit, j[1]), Operator(kQutrit, j[2])};
}

Operator spin_component(const Direction &v) {
    const auto s = spin_operators();
    const Vec3 &w = v.vec();
    return Operator(kQutrit, w(0) * s.x.matrix() + w(1) * s.y.matrix() +
                                 w(2) * s.z.matrix());
}

Operator k_operator(const Frame &f) {
    const CMatrix jx = spin_component(f.axis(0)).matrix();
    const CMatrix jy = spin_component(f.axis(1)).matrix();
    return Operator(kQutrit, jx * jx - jy * jy);
}

SpinTriple squares_from_k(const Operator &k) {
    if (k.size() != 3) {
        throw ValidationError("squares_from_k: K must be 3x3");
    }
    const CMatrix one = CMatrix::Identity(3, 3);
    const CMatrix k2 = k.matrix() * k.matrix();
    return {Operator(kQutrit, one - 0.5 * (k2 - k.matrix())),
            Operator(kQutrit, one - 0.5 * (k2 + k.matrix())),
            Operator(kQutrit, k2)};
}

Basis frame_basis(const Frame &f) {
    Basis out;
    out.reserve(3);
    for (std::size_t i = 0; i < 3; ++i) {
        out.push_back(f.axis(i).ket());
    }
    return out;
}

StateVector upsilon() {
    CVector a = CVector::Zero(9);
    const double s = 1.0 / std::sqrt(3.0);
    a(0) = s;
    a(4) = s;
    a(8) = s;
    return StateVector({3, 3}, a);
}

JointDistribution ck_table(const Frame &fa, const Frame &fb) {
    const Eigen::Matrix3d overlap = fa.rotation() * fb.rotation().transpose();
    return JointDistribution(overlap.cwiseAbs2() / 3.0);
}

TwinReport twin_check(const Frame &f, std::uint64_t trials, std::uint64_t seed,
                      kernels::Execution exec) {
    if (trials == 0) {
        throw ValidationError("twin_check: trials must be at least 1");
    }
    const Basis basis = frame_basis(f);
    const JointDistribution exact = q_matrix(upsilon(), basis, basis);
    std::array<double, 9> weights{};
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            weights[3 * a + b] = exact(a, b);
        }
    }
    const auto cumulative = kernels::cumulative_of(weights);
    const auto counts = kernels::tally(
        exec, 9, trials, seed, [&](Substream &rng, std::uint64_t *c) {
            ++c[kernels::draw_index(cumulative, rng.uniform())];
        });

    TwinReport rep;
    rep.trials = trials;
    const double n = static_cast<double>(trials);
    const double sd = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
    for (std::size_t a = 0; a < 3; ++a) {
        std::uint64_t row = 0;
        for (std::size_t b = 0; b < 3; ++b) {
            rep.counts[a][b] = counts[3 * a + b];
            row += counts[3 * a + b];
            if (a != b) {
                rep.discordant += counts[3 * a + b];
            }
        }
        rep.frequency[a] = static_cast<double>(row) / n;
        rep.z_score[a] = (static_cast<double>(row) - n / 3.0) / sd;
    }

    const SpinTriple sq = squares_from_k(k_operator(f));
    rep.spin_holds = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const CVector &kap = basis[i].amps();
        const std::array<const Operator *, 3> ops{&sq.x, &sq.y, &sq.z};
        std::array<double, 3> vals{};
        for (std::size_t a = 0; a < 3; ++a) {
            vals[a] = kap.dot(ops[a]->matrix() * kap).real();
            rep.induced[i][a] = vals[a];
        }
        if (rep.counts[i][i] == 0) {
            continue;
        }
        std::sort(vals.begin(), vals.end());
        const bool ok = std::abs(vals[0]) <= kTol.spectral &&
                        std::abs(vals[1] - 1.0) <= kTol.spectral &&
                        std::abs(vals[2] - 1.0) <= kTol.spectral;
        rep.spin_holds = rep.spin_holds && ok;
    }
    return rep;
}

} // namespace qutrit
