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

#include "qutrit/kernels.hpp"

#include <algorithm>
#include <string>

namespace qutrit::kernels {

namespace {

struct Layout {
    std::vector<std::size_t> target_offsets;  // flat offset of each local index
    std::vector<std::size_t> rest_offsets;    // flat offset of each spectator index
};

Layout make_layout(const Dims &dims, std::span<const std::size_t> targets,
                   const CMatrix &u) {
    std::vector<bool> is_target(dims.size(), false);
    std::size_t local_dim = 1;
    for (auto t : targets) {
        if (t >= dims.size() || is_target[t]) {
            throw ValidationError("apply_local: invalid target subsystem " +
                                  std::to_string(t));
        }
        is_target[t] = true;
        local_dim *= dims[t];
    }
    if (static_cast<std::size_t>(u.rows()) != local_dim ||
        static_cast<std::size_t>(u.cols()) != local_dim) {
        throw ValidationError("apply_local: gate size does not match target dims");
    }
    const auto stride = strides(dims);

    auto offsets = [&](const std::vector<std::size_t> &subs) {
        std::vector<std::size_t> out{0};
        // Row-major over `subs`: the last listed subsystem varies fastest.
        for (auto s : subs) {
            std::vector<std::size_t> next;
            next.reserve(out.size() * dims[s]);
            for (auto base : out) {
                for (std::size_t d = 0; d < dims[s]; ++d) {
                    next.push_back(base + d * stride[s]);
                }
            }
            out = std::move(next);
        }
        return out;
    };

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (!is_target[i]) {
            rest.push_back(i);
        }
    }
    return {offsets({targets.begin(), targets.end()}), offsets(rest)};
}

} // namespace

std::size_t draw_index(std::span<const double> cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        // u at or above the last bound only through rounding; take the last
        // cell of nonzero width.
        std::size_t i = cumulative.size() - 1;
        while (i > 0 && cumulative[i] == cumulative[i - 1]) {
            --i;
        }
        return i;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> cumulative_of(std::span<const double> weights) {
    std::vector<double> c(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        c[i] = acc;
    }
    if (acc <= 0.0) {
        throw ValidationError("cumulative table: weights sum to zero");
    }
    for (auto &x : c) {
        x /= acc;
    }
    // Trailing zero-width cells must share the exact upper bound.
    for (std::size_t i = c.size(); i-- > 0 && weights[i] == 0.0;) {
        c[i] = 1.0;
    }
    c.back() = 1.0;
    return c;
}

CVector apply_local(const CVector &amps, const Dims &dims,
                    std::span<const std::size_t> targets, const CMatrix &u) {
    if (static_cast<std::size_t>(amps.size()) != total_dim(dims)) {
        throw ValidationError("apply_local: amplitude length does not match dims");
    }
    const Layout layout = make_layout(dims, targets, u);
    const auto local = static_cast<Eigen::Index>(layout.target_offsets.size());
    const auto nrest = static_cast<std::int64_t>(layout.rest_offsets.size());

    CVector out(amps.size());
#pragma omp parallel
    {
        CVector x(local);
        CVector y(local);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < nrest; ++r) {
            const std::size_t base = layout.rest_offsets[static_cast<std::size_t>(r)];
            for (Eigen::Index l = 0; l < local; ++l) {
                x(l) = amps(static_cast<Eigen::Index>(
                    base + layout.target_offsets[static_cast<std::size_t>(l)]));
            }
            y.noalias() = u * x;
            for (Eigen::Index l = 0; l < local; ++l) {
                out(static_cast<Eigen::Index>(
                    base + layout.target_offsets[static_cast<std::size_t>(l)])) = y(l);
            }
        }
    }
    return out;
}

CVector apply_local_reference(const CVector &amps, const Dims &dims,
                              std::span<const std::size_t> targets,
                              const CMatrix &u) {
    const std::size_t n = total_dim(dims);
    if (static_cast<std::size_t>(amps.size()) != n) {
        throw ValidationError("apply_local: amplitude length does not match dims");
    }
    const Layout layout = make_layout(dims, targets, u);
    // Decompose each flat index into (spectator, local) once.
    std::vector<std::size_t> rest_of(n);
    std::vector<std::size_t> local_of(n);
    for (std::size_t r = 0; r < layout.rest_offsets.size(); ++r) {
        for (std::size_t l = 0; l < layout.target_offsets.size(); ++l) {
            const std::size_t flat = layout.rest_offsets[r] + layout.target_offsets[l];
            rest_of[flat] = r;
            local_of[flat] = l;
        }
    }
    const auto nn = static_cast<Eigen::Index>(n);
    CMatrix full = CMatrix::Zero(nn, nn);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rest_of[i] == rest_of[j]) {
                full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    u(static_cast<Eigen::Index>(local_of[i]),
                      static_cast<Eigen::Index>(local_of[j]));
            }
        }
    }
    return full * amps;
}

} // namespace qutrit::kernels
