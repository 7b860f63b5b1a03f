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

#include "qutrit/ks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace qutrit {

namespace {

Vec3 canonical_ray(const Vec3 &v) {
    const double n = v.norm();
    if (!v.allFinite() || n <= kTol.ray_match) {
        throw ValidationError("ks: zero or non-finite direction");
    }
    Vec3 u = v / n;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(u(i)) > kTol.ray_match) {
            if (u(i) < 0.0) {
                u = -u;
            }
            break;
        }
    }
    return u;
}

bool orthogonal(const Vec3 &a, const Vec3 &b) {
    return std::abs(a.dot(b)) <= kTol.ray_match;
}

} // namespace

TriplesSet::TriplesSet(const std::vector<Vec3> &directions,
                       const std::vector<Triple> &triples) {
    for (const auto &d : directions) {
        const Vec3 u = canonical_ray(d);
        std::size_t found = rays_.size();
        for (std::size_t r = 0; r < rays_.size(); ++r) {
            if ((rays_[r] - u).cwiseAbs().maxCoeff() <= kTol.ray_match) {
                found = r;
                break;
            }
        }
        if (found == rays_.size()) {
            rays_.push_back(u);
        }
        ray_of_.push_back(found);
    }

    const std::size_t n = rays_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (orthogonal(rays_[i], rays_[j])) {
                pairs_.emplace_back(i, j);
            }
        }
    }

    if (triples.empty()) {
        for (const auto &[i, j] : pairs_) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (orthogonal(rays_[i], rays_[k]) && orthogonal(rays_[j], rays_[k])) {
                    triples_.push_back({i, j, k});
                }
            }
        }
        return;
    }

    for (const auto &t : triples) {
        Triple r{};
        for (std::size_t s = 0; s < 3; ++s) {
            if (t[s] >= directions.size()) {
                throw ValidationError("ks: triple index " + std::to_string(t[s]) +
                                      " out of range");
            }
            r[s] = ray_of_[t[s]];
        }
        if (r[0] == r[1] || r[0] == r[2] || r[1] == r[2]) {
            throw ValidationError("ks: triple repeats a ray");
        }
        if (!orthogonal(rays_[r[0]], rays_[r[1]]) || !orthogonal(rays_[r[0]], rays_[r[2]]) ||
            !orthogonal(rays_[r[1]], rays_[r[2]])) {
            throw ValidationError("ks: triple (" + std::to_string(t[0]) + ", " +
                                  std::to_string(t[1]) + ", " + std::to_string(t[2]) +
                                  ") is not orthogonal");
        }
        std::sort(r.begin(), r.end());
        if (std::find(triples_.begin(), triples_.end(), r) == triples_.end()) {
            triples_.push_back(r);
        }
    }
}

TriplesSet read_triples(std::istream &in) {
    std::vector<Vec3> dirs;
    std::vector<Triple> triples;
    bool in_triples = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) {
            continue;
        }
        if (first == "directions") {
            in_triples = false;
            continue;
        }
        if (first == "triples") {
            in_triples = true;
            continue;
        }
        std::istringstream all(line);
        std::vector<double> nums;
        double x = 0.0;
        while (all >> x) {
            nums.push_back(x);
        }
        if (!all.eof() || nums.size() != 3) {
            throw ValidationError("ks: line " + std::to_string(lineno) +
                                  ": expected three numbers");
        }
        if (in_triples) {
            Triple t{};
            for (std::size_t s = 0; s < 3; ++s) {
                if (nums[s] < 0.0 || nums[s] != std::floor(nums[s])) {
                    throw ValidationError("ks: line " + std::to_string(lineno) +
                                          ": triple indices must be nonnegative integers");
                }
                t[s] = static_cast<std::size_t>(nums[s]);
            }
            triples.push_back(t);
        } else {
            dirs.emplace_back(nums[0], nums[1], nums[2]);
        }
    }
    if (dirs.empty()) {
        throw ValidationError("ks: no directions");
    }
    return TriplesSet(dirs, triples);
}

TriplesSet read_triples_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("ks: cannot open " + path.string());
    }
    return read_triples(in);
}

bool ks_valid(const TriplesSet &ts, const std::vector<int> &values) {
    if (values.size() != ts.rays().size()) {
        return false;
    }
    for (int v : values) {
        if (v != 0 && v != 1) {
            return false;
        }
    }
    for (const auto &t : ts.triples()) {
        if (values[t[0]] + values[t[1]] + values[t[2]] != 2) {
            return false;
        }
    }
    for (const auto &[i, j] : ts.orthogonal_pairs()) {
        if (values[i] == 0 && values[j] == 0) {
            return false;
        }
    }
    return true;
}

namespace {

constexpr int kUnset = -1;

class Solver {
  public:
    explicit Solver(const TriplesSet &ts) : ts_(ts), value_(ts.rays().size(), kUnset) {
        const std::size_t n = value_.size();
        triples_of_.resize(n);
        partners_.resize(n);
        for (std::size_t t = 0; t < ts.triples().size(); ++t) {
            for (auto r : ts.triples()[t]) {
                triples_of_[r].push_back(t);
            }
        }
        for (const auto &[i, j] : ts.orthogonal_pairs()) {
            partners_[i].push_back(j);
            partners_[j].push_back(i);
        }
        order_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            order_[i] = i;
        }
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return triples_of_[a].size() + partners_[a].size() >
                   triples_of_[b].size() + partners_[b].size();
        });
    }

    KsResult run() {
        KsResult res;
        res.satisfiable = search(0);
        res.nodes = nodes_;
        if (res.satisfiable) {
            res.assignment = value_;
        }
        return res;
    }

  private:
    // Assigns and propagates; returns false on conflict. Every assignment
    // is pushed on the trail so the caller can undo it.
    bool assign(std::size_t r, int v) {
        std::vector<std::pair<std::size_t, int>> queue{{r, v}};
        while (!queue.empty()) {
            const auto [x, val] = queue.back();
            queue.pop_back();
            if (value_[x] != kUnset) {
                if (value_[x] != val) {
                    return false;
                }
                continue;
            }
            value_[x] = val;
            trail_.push_back(x);
            if (val == 0) {
                for (auto p : partners_[x]) {
                    queue.emplace_back(p, 1);
                }
            }
            for (auto t : triples_of_[x]) {
                int zeros = 0;
                int ones = 0;
                for (auto y : ts_.triples()[t]) {
                    zeros += value_[y] == 0;
                    ones += value_[y] == 1;
                }
                if (zeros > 1 || ones > 2) {
                    return false;
                }
                for (auto y : ts_.triples()[t]) {
                    if (value_[y] != kUnset) {
                        continue;
                    }
                    if (zeros == 1) {
                        queue.emplace_back(y, 1);
                    } else if (ones == 2) {
                        queue.emplace_back(y, 0);
                    }
                }
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = kUnset;
            trail_.pop_back();
        }
    }

    bool search(std::size_t pos) {
        while (pos < order_.size() && value_[order_[pos]] != kUnset) {
            ++pos;
        }
        if (pos == order_.size()) {
            return true;
        }
        const std::size_t r = order_[pos];
        for (int v : {0, 1}) {
            ++nodes_;
            const std::size_t mark = trail_.size();
            if (assign(r, v) && search(pos + 1)) {
                return true;
            }
            undo_to(mark);
        }
        return false;
    }

    const TriplesSet &ts_;
    std::vector<int> value_;
    std::vector<std::vector<std::size_t>> triples_of_;
    std::vector<std::vector<std::size_t>> partners_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> trail_;
    std::uint64_t nodes_ = 0;
};

} // namespace

KsResult ks_satisfiable(const TriplesSet &ts) {
    KsResult res = Solver(ts).run();
    if (res.satisfiable && !ks_valid(ts, *res.assignment)) {
        throw std::logic_error("ks_satisfiable produced an invalid colouring");
    }
    return res;
}

} // namespace qutrit
