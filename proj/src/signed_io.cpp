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

#include "qutrit/signed_io.hpp"

#include <array>
#include <charconv>

namespace qutrit {

std::string format_double(double x) {
    if (x == 0.0) {
        return "0";  // also folds -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

nlohmann::ordered_json decomposition_json(const SignedDecomposition &d) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    auto terms = nlohmann::ordered_json::array();
    for (const auto &t : d.terms()) {
        terms.push_back({{"k", t.k + 1}, {"j", t.j + 1}, {"lambda", t.lambda}});
    }
    j["terms"] = std::move(terms);
    auto table = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < d.table().rows(); ++k) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < d.table().cols(); ++c) {
            row.push_back(d.table()(k, c));
        }
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    const SignedSplit s = split(d);
    j["kappa"] = s.kappa;
    j["n_plus"] = s.n_plus;
    j["n_minus"] = s.n_minus;
    j["residual"] = d.residual();
    return j;
}

std::string decomposition_csv(const SignedDecomposition &d) {
    std::string out;
    for (Eigen::Index k = 0; k < d.table().rows(); ++k) {
        for (Eigen::Index c = 0; c < d.table().cols(); ++c) {
            if (c > 0) {
                out += ',';
            }
            out += format_double(d.table()(k, c));
        }
        out += '\n';
    }
    return out;
}

} // namespace qutrit
