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

#include "qutrit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qutrit {

namespace {

std::string dims_string(const Dims &dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

void require_same_dims(const Dims &a, const Dims &b, const char *what) {
    if (a != b) {
        throw ValidationError(std::string(what) + ": dimension mismatch " +
                              dims_string(a) + " vs " + dims_string(b));
    }
}

bool all_finite(const CMatrix &m) {
    return m.array().real().allFinite() && m.array().imag().allFinite();
}

// Splits a flat index into per-subsystem digits.
void decode(std::size_t index, const Dims &dims, std::vector<std::size_t> &digits) {
    digits.resize(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        digits[i] = index % dims[i];
        index /= dims[i];
    }
}

} // namespace

std::size_t total_dim(const Dims &dims) {
    std::size_t n = 1;
    for (auto d : dims) {
        n *= d;
    }
    return n;
}

std::vector<std::size_t> strides(const Dims &dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        s[i - 1] = s[i] * dims[i];
    }
    return s;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Dims dims, CVector amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (dims_.empty() ||
        std::any_of(dims_.begin(), dims_.end(), [](auto d) { return d == 0; })) {
        throw ValidationError("state vector: empty or zero dimension " +
                              dims_string(dims_));
    }
    if (static_cast<std::size_t>(amps_.size()) != total_dim(dims_)) {
        throw ValidationError("state vector: length " +
                              std::to_string(amps_.size()) +
                              " does not match dims " + dims_string(dims_));
    }
    if (!all_finite(amps_)) {
        throw ValidationError("state vector: non-finite amplitude");
    }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw ValidationError("basis state index " + std::to_string(index) +
                              " out of range for dimension " +
                              std::to_string(dim));
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector({dim}, std::move(v));
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw ValidationError("cannot normalize the zero vector");
    }
    return StateVector(dims_, amps_ / n);
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Dims dims, CMatrix entries)
    : dims_(std::move(dims)), m_(std::move(entries)) {
    const auto n = static_cast<Eigen::Index>(total_dim(dims_));
    if (dims_.empty() || m_.rows() != n || m_.cols() != n) {
        throw ValidationError("operator: shape " + std::to_string(m_.rows()) +
                              "x" + std::to_string(m_.cols()) +
                              " does not match dims " + dims_string(dims_));
    }
    if (!all_finite(m_)) {
        throw ValidationError("operator: non-finite entry");
    }
}

Operator Operator::identity(const Dims &dims) {
    const auto n = static_cast<Eigen::Index>(total_dim(dims));
    return Operator(dims, CMatrix::Identity(n, n));
}

bool Operator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
    const CMatrix prod = m_ * m_.adjoint();
    return (prod - CMatrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff() <=
           tol;
}

bool Operator::is_projector(double tol) const {
    return is_hermitian(tol) && (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::adjoint() const { return Operator(dims_, m_.adjoint()); }

Operator operator*(const Operator &a, const Operator &b) {
    require_same_dims(a.dims_, b.dims_, "operator product");
    return Operator(a.dims_, a.m_ * b.m_);
}

Operator operator+(const Operator &a, const Operator &b) {
    require_same_dims(a.dims_, b.dims_, "operator sum");
    return Operator(a.dims_, a.m_ + b.m_);
}

Operator operator-(const Operator &a, const Operator &b) {
    require_same_dims(a.dims_, b.dims_, "operator difference");
    return Operator(a.dims_, a.m_ - b.m_);
}

Operator operator*(Complex s, const Operator &a) {
    return Operator(a.dims_, s * a.m_);
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(Operator op) : op_(std::move(op)) {
    const Complex tr = op_.matrix().trace();
    if (std::abs(tr - 1.0) > kTol.algebraic) {
        throw ValidationError("density operator: trace " + std::to_string(tr.real()) +
                              (tr.imag() != 0.0 ? "+i" + std::to_string(tr.imag()) : "") +
                              " is not 1");
    }
    if (!op_.is_hermitian()) {
        throw ValidationError("density operator: not Hermitian");
    }
    const auto ev = hermitian_eigenvalues(op_.matrix());
    if (ev.front() < -kTol.spectral) {
        throw ValidationError("density operator: negative eigenvalue " +
                              std::to_string(ev.front()));
    }
}

DensityOperator DensityOperator::pure(const StateVector &psi) {
    return DensityOperator(projector(psi));
}

std::vector<double> DensityOperator::eigenvalues() const {
    auto ev = hermitian_eigenvalues(op_.matrix());
    for (auto &e : ev) {
        if (e < 0.0) {
            e = 0.0;
        }
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Free functions

StateVector tensor(const StateVector &a, const StateVector &b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    const auto nb = b.amps().size();
    CVector out(a.amps().size() * nb);
    for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
        out.segment(i * nb, nb) = a.amps()(i) * b.amps();
    }
    return StateVector(std::move(dims), std::move(out));
}

Operator tensor(const Operator &a, const Operator &b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    const auto na = a.matrix().rows();
    const auto nb = b.matrix().rows();
    CMatrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return Operator(std::move(dims), std::move(out));
}

Operator projector(const StateVector &v) {
    if (!v.is_normalized()) {
        throw ValidationError("projector: vector is not normalized (norm " +
                              std::to_string(v.norm()) + ")");
    }
    return Operator(v.dims(), v.amps() * v.amps().adjoint());
}

DensityOperator partial_trace(const DensityOperator &rho,
                              std::span<const std::size_t> keep) {
    const Dims &dims = rho.dims();
    if (keep.empty()) {
        throw ValidationError("partial trace: empty keep set");
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) {
            throw ValidationError("partial trace: subsystem " + std::to_string(k) +
                                  " out of range");
        }
        if (kept[k]) {
            throw ValidationError("partial trace: subsystem " + std::to_string(k) +
                                  " listed twice");
        }
        kept[k] = true;
    }

    // Kept subsystems in register order; the traced ones are the rest.
    Dims keep_dims;
    Dims trace_dims;
    std::vector<std::size_t> keep_idx;
    std::vector<std::size_t> trace_idx;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (kept[i]) {
            keep_dims.push_back(dims[i]);
            keep_idx.push_back(i);
        } else {
            trace_dims.push_back(dims[i]);
            trace_idx.push_back(i);
        }
    }

    const auto full_stride = strides(dims);
    const std::size_t nk = total_dim(keep_dims);
    const std::size_t nt = trace_dims.empty() ? 1 : total_dim(trace_dims);

    // Flat offset contributed by each kept / traced multi-index.
    std::vector<std::size_t> keep_offset(nk, 0);
    std::vector<std::size_t> trace_offset(nt, 0);
    std::vector<std::size_t> digits;
    for (std::size_t i = 0; i < nk; ++i) {
        decode(i, keep_dims, digits);
        for (std::size_t s = 0; s < keep_idx.size(); ++s) {
            keep_offset[i] += digits[s] * full_stride[keep_idx[s]];
        }
    }
    for (std::size_t t = 0; t < nt && !trace_dims.empty(); ++t) {
        decode(t, trace_dims, digits);
        for (std::size_t s = 0; s < trace_idx.size(); ++s) {
            trace_offset[t] += digits[s] * full_stride[trace_idx[s]];
        }
    }

    const CMatrix &m = rho.matrix();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(nk),
                                static_cast<Eigen::Index>(nk));
    for (std::size_t i = 0; i < nk; ++i) {
        for (std::size_t j = 0; j < nk; ++j) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < nt; ++t) {
                acc += m(static_cast<Eigen::Index>(keep_offset[i] + trace_offset[t]),
                         static_cast<Eigen::Index>(keep_offset[j] + trace_offset[t]));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityOperator(Operator(std::move(keep_dims), std::move(out)));
}

double expectation(const DensityOperator &rho, const Operator &o) {
    require_same_dims(rho.dims(), o.dims(), "expectation");
    if (!o.is_hermitian()) {
        throw ValidationError("expectation: observable is not Hermitian");
    }
    const Complex v = (rho.matrix() * o.matrix()).trace();
    if (std::abs(v.imag()) > kTol.algebraic) {
        throw ValidationError("expectation: imaginary residue " +
                              std::to_string(v.imag()));
    }
    return v.real();
}

Complex inner(const StateVector &a, const StateVector &b) {
    require_same_dims(a.dims(), b.dims(), "inner product");
    return a.amps().dot(b.amps());
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b));
}

StateVector apply(const Operator &o, const StateVector &v) {
    require_same_dims(o.dims(), v.dims(), "operator application");
    return StateVector(v.dims(), o.matrix() * v.amps());
}

std::vector<double> hermitian_eigenvalues(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Operator embed(const Operator &local, const Dims &dims, std::size_t which) {
    if (which >= dims.size()) {
        throw ValidationError("embed: subsystem index out of range");
    }
    if (local.dims().size() != 1 || local.dims()[0] != dims[which]) {
        throw ValidationError("embed: local operator dims " +
                              dims_string(local.dims()) + " do not fit subsystem " +
                              std::to_string(which) + " of " + dims_string(dims));
    }
    Operator out = which == 0 ? local : Operator::identity({dims[0]});
    for (std::size_t i = 1; i < dims.size(); ++i) {
        out = tensor(out, i == which ? local : Operator::identity({dims[i]}));
    }
    return out;
}

StateVector permute_subsystems(const StateVector &v,
                               std::span<const std::size_t> order) {
    const Dims &dims = v.dims();
    if (order.size() != dims.size()) {
        throw ValidationError("permute: order length does not match subsystem count");
    }
    std::vector<bool> seen(dims.size(), false);
    Dims new_dims(dims.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= dims.size() || seen[order[i]]) {
            throw ValidationError("permute: order is not a permutation");
        }
        seen[order[i]] = true;
        new_dims[i] = dims[order[i]];
    }
    const auto old_stride = strides(dims);
    CVector out(v.amps().size());
    std::vector<std::size_t> digits;
    for (std::size_t n = 0; n < v.size(); ++n) {
        decode(n, new_dims, digits);
        std::size_t old = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            old += digits[i] * old_stride[order[i]];
        }
        out(static_cast<Eigen::Index>(n)) = v.amps()(static_cast<Eigen::Index>(old));
    }
    return StateVector(std::move(new_dims), std::move(out));
}

} // namespace qutrit
