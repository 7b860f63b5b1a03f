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

#include "qutrit/possibility.hpp"

namespace qutrit {

namespace {

void extremes(const PossibilityRelation &q, std::map<std::string, std::size_t> &bot,
              std::map<std::string, std::size_t> &top) {
    for (const auto &[setting, outcomes] : q) {
        bot[setting] = *outcomes.begin();
        top[setting] = *outcomes.rbegin();
    }
}

bool union_holds(const PossibilityRelation &q,
                 const std::map<std::string, std::size_t> &bot,
                 const std::map<std::string, std::size_t> &top) {
    for (const auto &[setting, outcomes] : q) {
        const std::set<std::size_t> ends{bot.at(setting), top.at(setting)};
        if (ends != outcomes) {
            return false;
        }
    }
    return true;
}

} // namespace

PossibilityReport possibility_relation(const std::vector<OutcomeTable> &tables,
                                       double threshold) {
    if (!(threshold >= 0.0)) {
        throw ValidationError("possibility_relation: threshold must be >= 0");
    }
    if (tables.empty()) {
        throw ValidationError("possibility_relation: no tables");
    }
    PossibilityReport rep;
    rep.binary = true;
    for (const auto &t : tables) {
        rep.binary = rep.binary && t.dist.rows() == 2 && t.dist.cols() == 2;
        for (std::size_t a = 0; a < t.dist.rows(); ++a) {
            for (std::size_t b = 0; b < t.dist.cols(); ++b) {
                if (t.dist(a, b) > threshold) {
                    rep.q_ab.insert({{t.setting_a, a}, {t.setting_b, b}});
                    rep.q_a[t.setting_a].insert(a);
                    rep.q_b[t.setting_b].insert(b);
                }
            }
        }
    }
    extremes(rep.q_a, rep.jbot_a, rep.jtop_a);
    extremes(rep.q_b, rep.jbot_b, rep.jtop_b);
    rep.union_identity = rep.binary && union_holds(rep.q_a, rep.jbot_a, rep.jtop_a) &&
                         union_holds(rep.q_b, rep.jbot_b, rep.jtop_b);
    return rep;
}

PossibilityReport possibility_relation(const JointDistribution &table, double threshold) {
    return possibility_relation({OutcomeTable{"A", "B", table}}, threshold);
}

JointDistribution spin_square_table(const StateVector &psi, const Direction &v,
                                    const Direction &w) {
    if (psi.dims() != Dims{3, 3}) {
        throw ValidationError("spin_square_table: state must be two qutrits");
    }
    const Operator one = Operator::identity({3});
    const Operator pv = projector(v.ket());
    const Operator pw = projector(w.ket());
    const std::array<Operator, 2> ea{pv, one - pv};
    const std::array<Operator, 2> eb{pw, one - pw};
    Eigen::MatrixXd p(2, 2);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                joint_probability(psi, ea[a], eb[b]);
        }
    }
    return JointDistribution(p);
}

} // namespace qutrit
