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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qutrit/cli.hpp"
#include "qutrit/ks.hpp"
#include "qutrit/measure.hpp"
#include "qutrit/network.hpp"
#include "qutrit/signed.hpp"
#include "support/random.hpp"

using namespace qutrit;
using qutrit::testing::Random;
using json = nlohmann::json;

namespace {

// Pinned tolerances and budgets.
constexpr double kTableTol = 1e-12;
constexpr double kCoefficientTol = 1e-10;
constexpr double kExpectationTol = 1e-10;
constexpr double kMonteCarloTol = 5e-3;
constexpr std::uint64_t kMonteCarloTrials = 1'000'000;
constexpr std::uint64_t kMonteCarloSeed = kDefaultSeed;
constexpr double kCircuitTol = 1e-10;
constexpr double kTwinTol = 1e-9;
constexpr double kStructuralTol = 1e-10;
constexpr int kStructuralCases = 1000;

constexpr int kUpsilonThirds[9][9] = {
    {1, 0, 0, 0, -1, -1, 0, 1, 1},
    {0, 1, 0, -1, 0, -1, 1, 0, 1},
    {0, 0, 1, -1, -1, 0, 1, 1, 0},
    {0, -1, -1, 2, 0, 0, 0, 0, 0},
    {-1, 0, -1, 0, 2, 0, 0, 0, 0},
    {-1, -1, 0, 0, 0, 2, 0, 0, 0},
    {0, 1, 1, 0, 0, 0, -2, 0, 0},
    {1, 0, 1, 0, 0, 0, 0, -2, 0},
    {1, 1, 0, 0, 0, 0, 0, 0, -2},
};

struct Outcome {
    bool ok = true;
    std::string detail;
};

json cli_report(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run(args, out, err) != 0) {
        throw std::runtime_error("cli failed: " + err.str());
    }
    return json::parse(out.str());
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Basis computational() {
    return {StateVector::basis(3, 0), StateVector::basis(3, 1), StateVector::basis(3, 2)};
}

Outcome criterion1() {
    const double expected[3][3] = {{0.0, 1.0 / 6.0, 1.0 / 6.0},
                                   {1.0 / 3.0, 0.0, 0.0},
                                   {0.0, 1.0 / 6.0, 1.0 / 6.0}};
    const json j = cli_report({"ck-table", "--frame-a", "standard", "--frame-b", "primed"});
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            worst = std::max(worst, std::abs(j["result"]["table"][a][b].get<double>() -
                                             expected[a][b]));
        }
    }
    return {worst <= kTableTol, "max entry error " + num(worst)};
}

Outcome criterion2() {
    const json j = cli_report({"decompose", "--state", "upsilon"});
    double table[9][9] = {};
    for (const auto &t : j["result"]["terms"]) {
        table[t["k"].get<int>() - 1][t["j"].get<int>() - 1] = t["lambda"].get<double>();
    }
    double worst = 0.0;
    for (int k = 0; k < 9; ++k) {
        for (int i = 0; i < 9; ++i) {
            worst = std::max(worst, std::abs(table[k][i] - kUpsilonThirds[k][i] / 3.0));
        }
    }
    const int np = j["result"]["n_plus"];
    const int nm = j["result"]["n_minus"];
    const double kappa = j["result"]["kappa"];
    const double residual = j["result"]["residual"];
    const bool ok = worst <= kCoefficientTol && np == 18 && nm == 15 &&
                    std::abs(kappa - 7.0) <= kCoefficientTol && residual <= kCoefficientTol;
    return {ok, "max coefficient error " + num(worst) + ", n+ " + std::to_string(np) +
                    ", n- " + std::to_string(nm) + ", kappa " + num(kappa) + ", residual " +
                    num(residual)};
}

Outcome criterion3() {
    const SignedDecomposition d = decompose(DensityOperator::pure(upsilon()));
    const CounterExpectations e = counter_expectations(d, computational(), computational());
    double worst = 0.0;
    auto track = [&](double got, double want) {
        worst = std::max(worst, std::abs(got - want));
    };
    for (Eigen::Index a = 0; a < 3; ++a) {
        for (Eigen::Index b = 0; b < 3; ++b) {
            track(e.n_plus(a, b), a == b ? 4.0 / 3.0 : 0.5);
            track(e.n_minus(a, b), a == b ? 1.0 : 0.5);
        }
        track(e.n_plus_a(a), 7.0 / 3.0);
        track(e.n_minus_a(a), 2.0);
        track(e.n_plus_b(a), 7.0 / 3.0);
        track(e.n_minus_b(a), 2.0);
    }
    track(e.total_plus, 7.0);
    track(e.total_minus, 6.0);
    return {worst <= kExpectationTol, "max deviation " + num(worst)};
}

Outcome criterion4() {
    const json j = cli_report({"--seed", std::to_string(kMonteCarloSeed), "--trials",
                               std::to_string(kMonteCarloTrials), "signed-sim", "--state",
                               "upsilon"});
    const double err = j["result"]["max_abs_error"];
    const std::size_t negatives = j["result"]["negative_cells"].size();
    const bool ok = err <= kMonteCarloTol && negatives > 0;
    return {ok, "seed " + std::to_string(kMonteCarloSeed) + ", max cell error " + num(err) +
                    " (bound " + num(kMonteCarloTol) + "), negative cells " +
                    std::to_string(negatives)};
}

Outcome criterion5() {
    Random rng(5005);
    const double s3 = 1.0 / std::sqrt(3.0);
    double worst = 0.0;
    auto four = [](const StateVector &a, const StateVector &b, const StateVector &c,
                   const StateVector &d) { return tensor(tensor(tensor(a, b), c), d); };
    for (int trial = 0; trial < 25; ++trial) {
        const Frame f = rng.frame();
        const Basis k = frame_basis(f);
        auto e3 = [](std::size_t i) { return StateVector::basis(3, i); };

        CVector mm = CVector::Zero(81);
        for (std::size_t i = 0; i < 3; ++i) {
            mm += s3 * four(k[i], e3(i), k[i], e3(i)).amps();
        }
        const Register r_mm = run_twin_circuit(TwinVariant::MM, f);
        worst = std::max(worst, 1.0 - fidelity(r_mm.state(), StateVector({3, 3, 3, 3}, mm)));

        const Register r_mmc = run_twin_circuit(TwinVariant::MMC, f);
        worst = std::max(worst, 1.0 - outcome_probability(r_mmc, {{"carB", 0}}));

        const Register r_xx = run_twin_circuit(TwinVariant::XXCF, f);
        const CVector xx = four(k[0], e3(0), k[0], e3(0)).amps();
        worst = std::max(worst, (r_xx.state().amps() - xx).norm());

        for (std::size_t n = 0; n < 3; ++n) {
            CVector mw = CVector::Zero(54);
            for (std::size_t i = 0; i < 3; ++i) {
                mw += s3 * four(k[i], e3(i), k[i], StateVector::basis(2, i == n ? 0 : 1)).amps();
            }
            const Register r_w = run_twin_circuit(TwinVariant::MMW, f, f.axis(n));
            worst = std::max(worst, 1.0 - fidelity(r_w.state(), StateVector({3, 3, 3, 2}, mw)));
        }
    }
    return {worst <= kCircuitTol, "25 frames, worst deviation " + num(worst)};
}

Outcome criterion6() {
    Random rng(6006);
    double worst = 0.0;
    const StateVector ups = upsilon();
    for (int trial = 0; trial < 100; ++trial) {
        const Basis b = frame_basis(rng.frame());
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                const double amp = std::abs(inner(tensor(b[i], b[j]), ups));
                worst = std::max(worst, std::abs(amp - (i == j ? 1.0 / std::sqrt(3.0) : 0.0)));
            }
        }
    }
    return {worst <= kTwinTol, "100 rotations, worst amplitude deviation " + num(worst)};
}

bool brute_force(const TriplesSet &ts) {
    const std::size_t n = ts.rays().size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto v = [&](std::size_t i) { return static_cast<int>((mask >> i) & 1U); };
        bool ok = true;
        for (const auto &t : ts.triples()) {
            ok = ok && v(t[0]) + v(t[1]) + v(t[2]) == 2;
        }
        for (const auto &[a, b] : ts.orthogonal_pairs()) {
            ok = ok && (v(a) == 1 || v(b) == 1);
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

Outcome criterion7() {
    Random rng(7007);
    std::vector<Vec3> pool;
    for (int x = -1; x <= 2; ++x) {
        for (int y = -1; y <= 2; ++y) {
            for (int z = -1; z <= 2; ++z) {
                if (x || y || z) {
                    pool.emplace_back(x, y, z);
                }
            }
        }
    }
    int disagreements = 0;
    const int sets = 500;
    for (int trial = 0; trial < sets; ++trial) {
        std::vector<Vec3> dirs;
        const std::size_t n = 3 + rng.index(10);
        for (std::size_t i = 0; i < n; ++i) {
            dirs.push_back(pool[rng.index(pool.size())]);
        }
        const TriplesSet ts(dirs, {});
        const KsResult r = ks_satisfiable(ts);
        const bool valid = !r.satisfiable || ks_valid(ts, *r.assignment);
        disagreements += (r.satisfiable != brute_force(ts) || !valid) ? 1 : 0;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const TriplesSet peres = read_triples_file(QUTRIT_DATA_DIR "/peres33.txt");
    const KsResult pr = ks_satisfiable(peres);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = disagreements == 0 && !pr.satisfiable && secs < 1.0;
    return {ok, std::to_string(sets) + " small sets, " + std::to_string(disagreements) +
                    " disagreements; 33-direction set " +
                    (pr.satisfiable ? "SAT" : "UNSAT") + " in " + num(secs) + " s"};
}

Outcome criterion8() {
    Random rng(8008);
    int failures = 0;
    for (int trial = 0; trial < kStructuralCases; ++trial) {
        const Frame f = rng.frame();
        const Direction w(rng.unit_vector());
        bool ok = measurement_gate(f).op().is_unitary(kStructuralTol) &&
                  swap_gate(f).op().is_unitary(kStructuralTol) &&
                  direction_gate(w, f).op().is_unitary(kStructuralTol) &&
                  frame_compare_gate(f, f.axis(rng.index(3))).op().is_unitary(kStructuralTol);

        const DensityOperator rho = rng.density({3, 3});
        ok = ok && rho.op().is_hermitian(kStructuralTol) &&
             rho.eigenvalues().front() >= -kStructuralTol &&
             std::abs(rho.matrix().trace() - Complex(1.0)) <= kStructuralTol;

        const StateVector psi = rng.state({3, 3});
        const Basis ba = rng.basis(3);
        const Basis bb = rng.basis(3);
        ok = ok && q_matrix_forms(psi, ba, bb).max_disagreement() <= kStructuralTol;

        const auto ma = ProjectiveMeasurement::from_basis(ba);
        const auto mb = ProjectiveMeasurement::from_basis(bb);
        const auto ab = party_measure(party_measure(rho, Party::A, ma), Party::B, mb);
        const auto bab = party_measure(party_measure(rho, Party::B, mb), Party::A, ma);
        ok = ok && (ab.matrix() - bab.matrix()).cwiseAbs().maxCoeff() <= kStructuralTol;
        const DensityOperator z4 = zone_state(psi, ma, mb, Zone::IV);
        const auto pure_ab = party_measure(party_measure(DensityOperator::pure(psi), Party::B, mb),
                                           Party::A, ma);
        ok = ok && (z4.matrix() - pure_ab.matrix()).cwiseAbs().maxCoeff() <= kStructuralTol;

        const StateVector prod = tensor(rng.state({3}), rng.state({3}));
        const Operator pa = projector(ba[rng.index(3)]);
        const Operator pb = projector(bb[rng.index(3)]);
        ok = ok && std::abs(joint_probability(prod, pa, pb) -
                            marginal_probability(prod, Party::A, pa) *
                                marginal_probability(prod, Party::B, pb)) <= kStructuralTol;
        failures += ok ? 0 : 1;
    }
    return {failures == 0, std::to_string(kStructuralCases) + " randomized cases, " +
                               std::to_string(failures) + " failures"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "ck-table with standard and primed frames", 0.1, criterion1},
        {2, "upsilon signed decomposition table", 1.0, criterion2},
        {3, "upsilon counter expectations", 1.0, criterion3},
        {4, "signed-sim Monte-Carlo at 1e6 trials", 10.0, criterion4},
        {5, "twin circuits on 25 random frames", 1.0, criterion5},
        {6, "upsilon form under 100 random rotations", 1.0, criterion6},
        {7, "Kochen-Specker solver and 33-direction set", 30.0, criterion7},
        {8, "structural property suite", 30.0, criterion8},
    };
    int failed = 0;
    for (const auto &c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.ok && in_time;
        failed += pass ? 0 : 1;
        std::printf("criterion %d: %s  %s: %s [%.3f s, budget %.1f s%s]\n", c.id,
                    pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs, c.budget_s,
                    in_time ? "" : ", over budget");
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
