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

#include "qutrit/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

#include "qutrit/kernels.hpp"

namespace qutrit {

namespace {

constexpr double kBranchFloor = 1e-20;

CMatrix ket_bra(const CVector &a, const CVector &b) { return a * b.adjoint(); }

CVector unit(std::size_t dim, std::size_t i) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

std::vector<std::size_t> digits_of(std::size_t flat, const Dims &dims) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
        d[s] = flat % dims[s];
        flat /= dims[s];
    }
    return d;
}

} // namespace

Register::Register(StateVector state, std::vector<std::string> names)
    : state_(std::move(state)), names_(std::move(names)) {
    if (names_.size() != state_.dims().size()) {
        throw ValidationError("register: one name per subsystem required");
    }
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) {
        throw ValidationError("register: duplicate subsystem name");
    }
    if (!state_.is_normalized(kTol.algebraic)) {
        throw ValidationError("register: state is not normalized");
    }
}

bool Register::has(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t Register::index_of(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw ValidationError("register: no subsystem named " + std::string(name));
    }
    return static_cast<std::size_t>(it - names_.begin());
}

Gate::Gate(Operator op, std::vector<std::string> acts_on)
    : op_(std::move(op)), acts_on_(std::move(acts_on)) {
    if (acts_on_.size() != op_.dims().size()) {
        throw ValidationError("gate: one name per gate factor required");
    }
    if (!op_.is_unitary(kTol.algebraic)) {
        throw ValidationError("gate: matrix is not unitary");
    }
}

Gate Gate::bind(std::vector<std::string> names) const { return Gate(op_, std::move(names)); }

Register apply(const Register &r, const Gate &g) {
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < g.acts_on().size(); ++i) {
        const std::size_t t = r.index_of(g.acts_on()[i]);
        if (r.dims()[t] != g.op().dims()[i]) {
            throw ValidationError("gate factor " + g.acts_on()[i] +
                                  " does not match subsystem dimension");
        }
        targets.push_back(t);
    }
    CVector out = kernels::apply_local(r.state().amps(), r.dims(), targets, g.op().matrix());
    return Register(StateVector(r.dims(), std::move(out)), r.names());
}

Register append(const Register &r, const std::string &name, const StateVector &s) {
    auto names = r.names();
    names.push_back(name);
    return Register(tensor(r.state(), s), std::move(names));
}

Gate measurement_gate(const Frame &f) {
    const Basis kap = frame_basis(f);
    CMatrix shift = CMatrix::Zero(3, 3);
    for (Eigen::Index k = 0; k < 3; ++k) {
        shift((k + 1) % 3, k) = 1.0;
    }
    CMatrix m = CMatrix::Zero(9, 9);
    CMatrix power = CMatrix::Identity(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        m += kroneckerProduct(ket_bra(kap[j].amps(), kap[j].amps()), power);
        power = shift * power;
    }
    return Gate(Operator({3, 3}, m), {"sys", "car"});
}

Gate swap_gate(const Frame &f) {
    const Basis kap = frame_basis(f);
    CMatrix x = CMatrix::Zero(9, 9);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            x += kroneckerProduct(ket_bra(kap[k].amps(), kap[j].amps()),
                                  ket_bra(unit(3, j), unit(3, k)));
        }
    }
    return Gate(Operator({3, 3}, x), {"sys", "car"});
}

Gate compare_gate() {
    CMatrix c = CMatrix::Zero(9, 9);
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t out = (k + 3 - j) % 3;
            c(static_cast<Eigen::Index>(3 * k + out), static_cast<Eigen::Index>(3 * k + j)) = 1.0;
        }
    }
    return Gate(Operator({3, 3}, c), {"car1", "car2"});
}

Gate inverse_fourier3() {
    CMatrix f(3, 3);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const double phase = -2.0 * std::numbers::pi * (j * k % 3) / 3.0;
            f(j, k) = std::polar(1.0 / std::sqrt(3.0), phase);
        }
    }
    return Gate(Operator({3}, f), {"car"});
}

Vec3 frame_components(const Direction &w, const Frame &f) {
    return f.rotation() * w.vec();
}

Gate direction_gate(const Direction &w, const Frame &f) {
    const Vec3 comp = frame_components(w, f);
    const Basis kap = frame_basis(f);
    CVector kw = CVector::Zero(3);
    for (std::size_t j = 0; j < 3; ++j) {
        kw += comp(static_cast<Eigen::Index>(j)) * kap[j].amps();
    }
    const CMatrix pw = ket_bra(kw, kw);
    CMatrix flip(2, 2);
    flip << 0, 1, 1, 0;
    const CMatrix m = kroneckerProduct(pw, CMatrix::Identity(2, 2)).eval() +
                      kroneckerProduct(CMatrix::Identity(3, 3) - pw, flip).eval();
    return Gate(Operator({3, 2}, m), {"sys", "car"});
}

int n_index(const Frame &f, const Direction &w) {
    for (int i = 0; i < 3; ++i) {
        const Vec3 axis = f.rotation().row(i).transpose();
        if ((axis - w.vec()).cwiseAbs().maxCoeff() <= kTol.frame ||
            (axis + w.vec()).cwiseAbs().maxCoeff() <= kTol.frame) {
            return i;
        }
    }
    return -1;
}

Gate frame_compare_gate(const Frame &f, const Direction &w, std::size_t c2_dim) {
    const int n = n_index(f, w);
    if (n < 0) {
        throw ValidationError("frame comparison needs w along an axis of the frame");
    }
    if (c2_dim == 0) {
        throw ValidationError("frame comparison: carrier dimension must be positive");
    }
    const auto dim = static_cast<Eigen::Index>(3 * c2_dim * 2);
    CMatrix g = CMatrix::Zero(dim, dim);
    for (std::size_t c1 = 0; c1 < 3; ++c1) {
        for (std::size_t c2 = 0; c2 < c2_dim; ++c2) {
            const int fval = ominus(ominus(n, static_cast<int>(c1)), static_cast<int>(c2));
            for (std::size_t c = 0; c < 2; ++c) {
                const std::size_t out = c ^ static_cast<std::size_t>(fval);
                const std::size_t base = (c1 * c2_dim + c2) * 2;
                g(static_cast<Eigen::Index>(base + out), static_cast<Eigen::Index>(base + c)) = 1.0;
            }
        }
    }
    return Gate(Operator({3, c2_dim, 2}, g), {"car1", "car2", "cmp"});
}

std::string_view variant_name(TwinVariant v) {
    switch (v) {
    case TwinVariant::MM:
        return "mm";
    case TwinVariant::MMC:
        return "mmc";
    case TwinVariant::XX:
        return "xx";
    case TwinVariant::XXCF:
        return "xxcf";
    case TwinVariant::MMW:
        return "mmw";
    }
    return "?";
}

TwinVariant parse_variant(std::string_view name) {
    for (auto v : {TwinVariant::MM, TwinVariant::MMC, TwinVariant::XX, TwinVariant::XXCF,
                   TwinVariant::MMW}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    throw ValidationError("unknown circuit variant: " + std::string(name));
}

Register twin_initial_register(std::size_t carrier_b_dim) {
    const StateVector grown =
        tensor(tensor(upsilon(), StateVector::basis(3, 0)), StateVector::basis(carrier_b_dim, 0));
    // grown is (sysA, sysB, carA, carB).
    const std::array<std::size_t, 4> order{0, 2, 1, 3};
    return Register(permute_subsystems(grown, order), {"sysA", "carA", "sysB", "carB"});
}

Register run_twin_circuit(TwinVariant v, const Frame &f, const std::optional<Direction> &w) {
    if (v == TwinVariant::MMW) {
        if (!w) {
            throw ValidationError("mmw circuit needs a direction w");
        }
        Register r = twin_initial_register(2);
        r = apply(r, measurement_gate(f).bind({"sysA", "carA"}));
        return apply(r, direction_gate(*w, f).bind({"sysB", "carB"}));
    }
    Register r = twin_initial_register(3);
    const bool swap = v == TwinVariant::XX || v == TwinVariant::XXCF;
    const Gate local = swap ? swap_gate(f) : measurement_gate(f);
    r = apply(r, local.bind({"sysA", "carA"}));
    r = apply(r, local.bind({"sysB", "carB"}));
    if (v == TwinVariant::MMC || v == TwinVariant::XXCF) {
        r = apply(r, compare_gate().bind({"carA", "carB"}));
    }
    if (v == TwinVariant::XXCF) {
        r = apply(r, inverse_fourier3().bind({"carA"}));
    }
    return r;
}

Register append_comparison(const Register &r, const Frame &f, const Direction &w) {
    const std::size_t c2 = r.dims()[r.index_of("carB")];
    const Gate g = frame_compare_gate(f, w, c2).bind({"carA", "carB", "cmp"});
    return apply(append(r, "cmp", StateVector::basis(2, 0)), g);
}

Register replicate_carriers(const Register &r, std::size_t m,
                            const std::vector<std::string> &carriers, std::size_t limit) {
    if (m == 0) {
        throw ValidationError("replicate_carriers: m must be at least 1");
    }
    std::vector<std::size_t> copies(r.dims().size(), 1);
    for (const auto &c : carriers) {
        copies[r.index_of(c)] = m;
    }
    Dims dims;
    std::vector<std::string> names;
    double total = 1.0;
    for (std::size_t s = 0; s < r.dims().size(); ++s) {
        for (std::size_t i = 0; i < copies[s]; ++i) {
            dims.push_back(r.dims()[s]);
            names.push_back(i == 0 ? r.names()[s] : r.names()[s] + "." + std::to_string(i + 1));
            total *= static_cast<double>(r.dims()[s]);
        }
    }
    if (total > static_cast<double>(limit)) {
        throw DimensionLimitError("replicated register dimension " +
                                  std::to_string(static_cast<unsigned long long>(total)) +
                                  " exceeds limit " + std::to_string(limit));
    }
    const auto new_stride = strides(dims);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(total_dim(dims)));
    const CVector &amps = r.state().amps();
    for (std::size_t flat = 0; flat < static_cast<std::size_t>(amps.size()); ++flat) {
        const auto d = digits_of(flat, r.dims());
        std::size_t idx = 0;
        std::size_t pos = 0;
        for (std::size_t s = 0; s < d.size(); ++s) {
            for (std::size_t i = 0; i < copies[s]; ++i) {
                idx += d[s] * new_stride[pos++];
            }
        }
        out(static_cast<Eigen::Index>(idx)) = amps(static_cast<Eigen::Index>(flat));
    }
    return Register(StateVector(dims, std::move(out)), std::move(names));
}

Register compare_replicated(const Register &r, const std::string &a, const std::string &b,
                            std::size_t m) {
    Register out = r;
    const Gate c = compare_gate();
    for (std::size_t i = 1; i <= m; ++i) {
        const std::string suffix = i == 1 ? "" : "." + std::to_string(i);
        out = apply(out, c.bind({a + suffix, b + suffix}));
    }
    return out;
}

StateVector twin_reference_state(TwinVariant v, const Frame &f,
                                 const std::optional<Direction> &w) {
    const Basis kap = frame_basis(f);
    const double s = 1.0 / std::sqrt(3.0);
    const std::size_t cb_dim = v == TwinVariant::MMW ? 2 : 3;
    auto term = [&](const CVector &a, std::size_t ca, const CVector &b, std::size_t cb) {
        return tensor(tensor(tensor(StateVector({3}, a), StateVector::basis(3, ca)),
                             StateVector({3}, b)),
                      StateVector::basis(cb_dim, cb))
            .amps();
    };
    CVector out = CVector::Zero(static_cast<Eigen::Index>(27 * cb_dim));
    switch (v) {
    case TwinVariant::MM:
        for (std::size_t k = 0; k < 3; ++k) {
            out += s * term(kap[k].amps(), k, kap[k].amps(), k);
        }
        break;
    case TwinVariant::MMC:
        for (std::size_t k = 0; k < 3; ++k) {
            out += s * term(kap[k].amps(), k, kap[k].amps(), 0);
        }
        break;
    case TwinVariant::XX:
        for (std::size_t k = 0; k < 3; ++k) {
            out += s * term(kap[0].amps(), k, kap[0].amps(), k);
        }
        break;
    case TwinVariant::XXCF:
        out = term(kap[0].amps(), 0, kap[0].amps(), 0);
        break;
    case TwinVariant::MMW: {
        if (!w) {
            throw ValidationError("mmw reference needs a direction w");
        }
        const Vec3 comp = frame_components(*w, f);
        CVector kw = CVector::Zero(3);
        for (std::size_t j = 0; j < 3; ++j) {
            kw += comp(static_cast<Eigen::Index>(j)) * kap[j].amps();
        }
        for (std::size_t j = 0; j < 3; ++j) {
            const double wj = comp(static_cast<Eigen::Index>(j));
            out += s * term(kap[j].amps(), j, wj * kw, 0);
            out += s * term(kap[j].amps(), j, kap[j].amps() - wj * kw, 1);
        }
        break;
    }
    }
    return StateVector({3, 3, 3, cb_dim}, out);
}

double outcome_probability(const Register &r,
                           const std::vector<std::pair<std::string, std::size_t>> &values) {
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    for (const auto &[name, value] : values) {
        const std::size_t i = r.index_of(name);
        if (value >= r.dims()[i]) {
            throw ValidationError("outcome value out of range for " + name);
        }
        fixed.emplace_back(i, value);
    }
    const auto stride = strides(r.dims());
    const CVector &amps = r.state().amps();
    double p = 0.0;
    for (std::size_t flat = 0; flat < static_cast<std::size_t>(amps.size()); ++flat) {
        bool match = true;
        for (const auto &[i, value] : fixed) {
            if ((flat / stride[i]) % r.dims()[i] != value) {
                match = false;
                break;
            }
        }
        if (match) {
            p += std::norm(amps(static_cast<Eigen::Index>(flat)));
        }
    }
    return p;
}

std::vector<Branch> branches(const Register &r, const std::vector<std::string> &carriers) {
    std::vector<std::size_t> carrier_idx;
    std::vector<bool> is_carrier(r.dims().size(), false);
    for (const auto &c : carriers) {
        const std::size_t i = r.index_of(c);
        if (is_carrier[i]) {
            throw ValidationError("branches: carrier listed twice");
        }
        is_carrier[i] = true;
        carrier_idx.push_back(i);
    }
    Dims rest_dims;
    std::vector<std::string> rest_names;
    for (std::size_t s = 0; s < r.dims().size(); ++s) {
        if (!is_carrier[s]) {
            rest_dims.push_back(r.dims()[s]);
            rest_names.push_back(r.names()[s]);
        }
    }
    const std::size_t rest_total = total_dim(rest_dims);
    const auto rest_stride = strides(rest_dims);

    std::map<std::vector<std::size_t>, CVector> parts;
    const CVector &amps = r.state().amps();
    for (std::size_t flat = 0; flat < static_cast<std::size_t>(amps.size()); ++flat) {
        const Complex a = amps(static_cast<Eigen::Index>(flat));
        if (a == Complex{}) {
            continue;
        }
        const auto d = digits_of(flat, r.dims());
        std::vector<std::size_t> label;
        for (auto c : carrier_idx) {
            label.push_back(d[c]);
        }
        std::size_t idx = 0;
        std::size_t pos = 0;
        for (std::size_t s = 0; s < d.size(); ++s) {
            if (!is_carrier[s]) {
                idx += d[s] * rest_stride[pos++];
            }
        }
        auto [it, fresh] = parts.try_emplace(label);
        if (fresh) {
            it->second = CVector::Zero(static_cast<Eigen::Index>(rest_total));
        }
        it->second(static_cast<Eigen::Index>(idx)) = a;
    }

    std::vector<Branch> out;
    for (auto &[label, v] : parts) {
        const double w = v.squaredNorm();
        if (w <= kBranchFloor) {
            continue;
        }
        out.push_back({label, w, StateVector(rest_dims, v / std::sqrt(w)), rest_names});
    }
    return out;
}

} // namespace qutrit
