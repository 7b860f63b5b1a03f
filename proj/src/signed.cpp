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

#include "qutrit/signed.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qutrit {

namespace {

constexpr std::size_t kXi = 9;
constexpr std::size_t kPair = 9;     // two-qutrit dimension
constexpr std::size_t kReal = 81;    // real dimension of 9x9 Hermitian matrices

/// Real coordinates of a Hermitian matrix: diagonal, then real and
/// imaginary parts of the strict upper triangle.
Eigen::VectorXd hermitian_coords(const CMatrix &h) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(kReal));
    Eigen::Index p = 0;
    const auto n = h.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        v(p++) = h(i, i).real();
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            v(p++) = h(i, j).real();
            v(p++) = h(i, j).imag();
        }
    }
    return v;
}

CMatrix product_density(std::size_t k, std::size_t j) {
    const auto &xi = xi_basis();
    return kroneckerProduct(xi.density_ops[k].matrix(), xi.density_ops[j].matrix());
}

const Eigen::MatrixXd &system_matrix() {
    static const Eigen::MatrixXd a = [] {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(kReal), static_cast<Eigen::Index>(kReal));
        for (std::size_t k = 0; k < kXi; ++k) {
            for (std::size_t j = 0; j < kXi; ++j) {
                m.col(static_cast<Eigen::Index>(kXi * k + j)) =
                    hermitian_coords(product_density(k, j));
            }
        }
        return m;
    }();
    return a;
}

void check_basis(const Basis &b) {
    validate_basis(b, 3);
}

/// Born probabilities of basis outcomes on xi_k.
std::array<std::array<double, 3>, kXi> born_table(const Basis &b) {
    std::array<std::array<double, 3>, kXi> t{};
    const auto &xi = xi_basis();
    for (std::size_t k = 0; k < kXi; ++k) {
        for (std::size_t a = 0; a < 3; ++a) {
            t[k][a] = fidelity(b[a], xi.states[k]);
        }
    }
    return t;
}

} // namespace

const XiBasis &xi_basis() {
    static const XiBasis basis = [] {
        const double s = 1.0 / std::sqrt(2.0);
        const Complex i{0.0, 1.0};
        auto v = [](Complex a, Complex b, Complex c) {
            CVector x(3);
            x << a, b, c;
            return StateVector({3}, x);
        };
        XiBasis out;
        out.states = {
            v(1, 0, 0),         v(0, 1, 0),         v(0, 0, 1),
            v(0, s, s),         v(s, 0, s),         v(s, s, 0),
            v(0, s, i * s),     v(i * s, 0, s),     v(s, i * s, 0),
        };
        for (const auto &st : out.states) {
            out.density_ops.push_back(projector(st));
        }
        return out;
    }();
    return basis;
}

std::size_t xi_product_rank() {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system_matrix());
    return static_cast<std::size_t>(lu.rank());
}

SignedDecomposition::SignedDecomposition(std::vector<SignedTerm> terms,
                                         Eigen::MatrixXd table, double residual)
    : terms_(std::move(terms)), table_(std::move(table)), residual_(residual) {}

double SignedDecomposition::kappa() const {
    double k = 0.0;
    for (const auto &t : terms_) {
        if (t.lambda > 0.0) {
            k += t.lambda;
        }
    }
    return k;
}

Operator SignedDecomposition::reconstruct() const {
    CMatrix m = CMatrix::Zero(kPair, kPair);
    for (const auto &t : terms_) {
        m += t.lambda * product_density(t.k, t.j);
    }
    return Operator({3, 3}, m);
}

SignedDecomposition decompose(const DensityOperator &target) {
    if (target.dims() != Dims{3, 3}) {
        throw ValidationError("decompose: target must be a two-qutrit state");
    }
    static const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system_matrix());
    if (qr.rank() != static_cast<Eigen::Index>(kReal)) {
        throw std::logic_error("decompose: product basis is singular");
    }
    const Eigen::VectorXd c = qr.solve(hermitian_coords(target.matrix()));

    std::vector<SignedTerm> terms;
    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(kXi, kXi);
    for (std::size_t k = 0; k < kXi; ++k) {
        for (std::size_t j = 0; j < kXi; ++j) {
            const double lambda = c(static_cast<Eigen::Index>(kXi * k + j));
            if (std::abs(lambda) < kTol.zero_coefficient) {
                continue;
            }
            terms.push_back({lambda, k, j});
            table(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = lambda;
        }
    }
    SignedDecomposition d(std::move(terms), std::move(table), 0.0);
    const double residual = (d.reconstruct().matrix() - target.matrix()).norm();
    if (residual > kTol.algebraic) {
        throw std::logic_error("decompose: residual " + std::to_string(residual) +
                               " exceeds tolerance");
    }
    return {d.terms(), d.table(), residual};
}

SignedSplit split(const SignedDecomposition &d) {
    std::vector<SignedTerm> pos;
    std::vector<SignedTerm> neg;
    double kappa = 0.0;
    double minus = 0.0;
    for (const auto &t : d.terms()) {
        if (t.lambda > 0.0) {
            pos.push_back(t);
            kappa += t.lambda;
        } else {
            neg.push_back(t);
            minus -= t.lambda;
        }
    }
    if (pos.empty()) {
        throw std::logic_error("split: decomposition has no positive terms");
    }
    CMatrix rp = CMatrix::Zero(kPair, kPair);
    std::vector<double> p_plus;
    for (const auto &t : pos) {
        p_plus.push_back(t.lambda / kappa);
        rp += (t.lambda / kappa) * product_density(t.k, t.j);
    }
    std::optional<DensityOperator> rho_minus;
    std::vector<double> p_minus;
    CMatrix rm = CMatrix::Zero(kPair, kPair);
    if (!neg.empty()) {
        for (const auto &t : neg) {
            p_minus.push_back(-t.lambda / minus);
            rm += (-t.lambda / minus) * product_density(t.k, t.j);
        }
        rho_minus.emplace(Operator({3, 3}, rm));
    }
    const CMatrix back = kappa * rp - minus * rm;
    if ((back - d.reconstruct().matrix()).norm() > kTol.algebraic) {
        throw std::logic_error("split: sources do not reproduce the decomposition");
    }
    const std::size_t n_plus = pos.size();
    const std::size_t n_minus = neg.size();
    return SignedSplit{std::move(pos),
                       std::move(neg),
                       std::move(p_plus),
                       std::move(p_minus),
                       kappa,
                       n_plus,
                       n_minus,
                       DensityOperator(Operator({3, 3}, rp)),
                       std::move(rho_minus)};
}

double signed_expectation(const Operator &o, const SignedDecomposition &d) {
    if (o.size() != kPair) {
        throw ValidationError("signed_expectation: operator must act on two qutrits");
    }
    const SignedSplit s = split(d);
    double value = s.kappa * expectation(s.rho_plus, o);
    if (s.rho_minus) {
        value -= (s.kappa - 1.0) * expectation(*s.rho_minus, o);
    }
    return value;
}

CounterExpectations counter_expectations(const SignedDecomposition &d,
                                         const Basis &basis_a, const Basis &basis_b) {
    check_basis(basis_a);
    check_basis(basis_b);
    const auto pa = born_table(basis_a);
    const auto pb = born_table(basis_b);
    CounterExpectations e;
    e.n_plus = Eigen::MatrixXd::Zero(3, 3);
    e.n_minus = Eigen::MatrixXd::Zero(3, 3);
    for (const auto &t : d.terms()) {
        Eigen::MatrixXd &target = t.lambda > 0.0 ? e.n_plus : e.n_minus;
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                target(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                    std::abs(t.lambda) * pa[t.k][a] * pb[t.j][b];
            }
        }
    }
    e.n_plus_a = e.n_plus.rowwise().sum();
    e.n_minus_a = e.n_minus.rowwise().sum();
    e.n_plus_b = e.n_plus.colwise().sum().transpose();
    e.n_minus_b = e.n_minus.colwise().sum().transpose();
    e.total_plus = e.n_plus.sum();
    e.total_minus = e.n_minus.sum();
    return e;
}

CounterTally simulate(const SignedDecomposition &d, const Basis &basis_a,
                      const Basis &basis_b, std::uint64_t trials, std::uint64_t seed,
                      kernels::Execution exec) {
    if (trials == 0) {
        throw ValidationError("simulate: trials must be at least 1");
    }
    check_basis(basis_a);
    check_basis(basis_b);
    const SignedSplit s = split(d);
    const auto pa = born_table(basis_a);
    const auto pb = born_table(basis_b);

    std::array<std::vector<double>, kXi> cum_a;
    std::array<std::vector<double>, kXi> cum_b;
    for (std::size_t k = 0; k < kXi; ++k) {
        cum_a[k] = kernels::cumulative_of(pa[k]);
        cum_b[k] = kernels::cumulative_of(pb[k]);
    }
    const auto cum_plus = kernels::cumulative_of(s.p_plus);
    const std::vector<double> cum_minus =
        s.negative.empty() ? std::vector<double>{} : kernels::cumulative_of(s.p_minus);

    // Cells 0..8 count positive events (3a + b), 9..17 negative ones.
    const auto counts = kernels::tally(
        exec, 18, trials, seed, [&](Substream &rng, std::uint64_t *c) {
            const auto &tp = s.positive[kernels::draw_index(cum_plus, rng.uniform())];
            const std::size_t a = kernels::draw_index(cum_a[tp.k], rng.uniform());
            const std::size_t b = kernels::draw_index(cum_b[tp.j], rng.uniform());
            ++c[3 * a + b];
            if (cum_minus.empty()) {
                return;
            }
            const auto &tm = s.negative[kernels::draw_index(cum_minus, rng.uniform())];
            const std::size_t am = kernels::draw_index(cum_a[tm.k], rng.uniform());
            const std::size_t bm = kernels::draw_index(cum_b[tm.j], rng.uniform());
            ++c[9 + 3 * am + bm];
        });

    CounterTally t;
    t.trials = trials;
    t.kappa = s.kappa;
    t.n_plus.resize(3, 3);
    t.n_minus.resize(3, 3);
    t.estimate.resize(3, 3);
    const double n = static_cast<double>(trials);
    for (Eigen::Index a = 0; a < 3; ++a) {
        for (Eigen::Index b = 0; b < 3; ++b) {
            const auto cell = static_cast<std::size_t>(3 * a + b);
            t.n_plus(a, b) = counts[cell];
            t.n_minus(a, b) = counts[9 + cell];
            t.estimate(a, b) = s.kappa * static_cast<double>(counts[cell]) / n -
                               (s.kappa - 1.0) * static_cast<double>(counts[9 + cell]) / n;
        }
    }
    return t;
}

} // namespace qutrit
