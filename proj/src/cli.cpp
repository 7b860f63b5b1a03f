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

#include "qutrit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qutrit/config.hpp"
#include "qutrit/ks.hpp"
#include "qutrit/measure.hpp"
#include "qutrit/network.hpp"
#include "qutrit/roulette.hpp"
#include "qutrit/signed.hpp"
#include "qutrit/signed_io.hpp"

namespace qutrit::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t trials = 0;
    std::string format = "json";
    double tolerance = 0.0;
    CLI::Option *trials_opt = nullptr;
    CLI::Option *tol_opt = nullptr;

    [[nodiscard]] std::uint64_t trials_or(std::uint64_t d) const {
        return trials_opt->count() > 0 ? trials : d;
    }
    [[nodiscard]] double tolerance_or(double d) const {
        return tol_opt->count() > 0 ? tolerance : d;
    }
};

struct Report {
    json config = json::object();
    json result = json::object();
    json checks = json::array();
    std::string csv;

    void check(const std::string &name, double value, double tol, bool ok) {
        checks.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"ok", ok}});
    }
    [[nodiscard]] bool all_ok() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const json &c) { return c.at("ok").get<bool>(); });
    }
};

json to_json(const Eigen::VectorXd &v);

json to_json(const Eigen::MatrixXd &m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        a.push_back(std::move(row));
    }
    return a;
}

json to_json(const Eigen::VectorXd &v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json to_json(const CVector &v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        a.push_back({v(i).real(), v(i).imag()});
    }
    return a;
}

std::string csv_matrix(const Eigen::MatrixXd &m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out += (j ? "," : "") + format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::vector<double> parse_numbers(const std::string &spec) {
    std::string s = spec;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::replace(s.begin(), s.end(), ';', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != tok.size()) {
            throw ValidationError("not a number: " + tok);
        }
        out.push_back(x);
    }
    return out;
}

json frame_json(const Frame &f, bool adjusted) {
    Eigen::MatrixXd r = f.rotation();
    return {{"rows", to_json(r)}, {"orthonormalized", adjusted}};
}

/// Pure and mixed two-qutrit states by name.
struct StateSpec {
    DensityOperator rho;
    std::optional<StateVector> pure;
};

StateSpec parse_state(const std::string &spec) {
    auto pure = [](StateVector v) { return StateSpec{DensityOperator::pure(v), v}; };
    if (spec == "upsilon") {
        return pure(upsilon());
    }
    if (spec == "mixed") {
        return {DensityOperator(Operator({3, 3}, CMatrix::Identity(9, 9) / 9.0)), std::nullopt};
    }
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        const auto nums = parse_numbers(spec.substr(colon + 1));
        const std::size_t limit = kind == "xi" ? 9 : 3;
        if ((kind == "xi" || kind == "basis") && nums.size() == 2) {
            std::array<std::size_t, 2> idx{};
            for (std::size_t i = 0; i < 2; ++i) {
                if (nums[i] < 1 || nums[i] > static_cast<double>(limit) ||
                    nums[i] != std::floor(nums[i])) {
                    throw ValidationError("state index out of range in " + spec);
                }
                idx[i] = static_cast<std::size_t>(nums[i]) - 1;
            }
            if (kind == "xi") {
                const auto &xi = xi_basis();
                return pure(tensor(xi.states[idx[0]], xi.states[idx[1]]));
            }
            return pure(tensor(StateVector::basis(3, idx[0]), StateVector::basis(3, idx[1])));
        }
    }
    throw ValidationError("unknown state: " + spec +
                          " (expected upsilon, mixed, xi:k,j or basis:a,b)");
}

const StateVector &require_pure(const StateSpec &s, const std::string &name) {
    if (!s.pure) {
        throw ValidationError("state " + name + " is not pure");
    }
    return *s.pure;
}

Direction parse_direction(const std::string &spec, const Frame &f) {
    if (spec == "x" || spec == "y" || spec == "z") {
        return f.axis(static_cast<std::size_t>(spec[0] - 'x'));
    }
    const auto nums = parse_numbers(spec);
    if (nums.size() != 3) {
        throw ValidationError("direction needs x, y, z or three numbers: " + spec);
    }
    return Direction::normalized(Vec3(nums[0], nums[1], nums[2]));
}

// --- subcommands -----------------------------------------------------------

void ck_table_cmd(const Common &c, const std::string &fa_spec, const std::string &fb_spec,
                  Report &rep) {
    const auto [fa, adj_a] = parse_frame(fa_spec);
    const auto [fb, adj_b] = parse_frame(fb_spec);
    rep.config["frame_a"] = frame_json(fa, adj_a);
    rep.config["frame_b"] = frame_json(fb, adj_b);
    const double tol = c.tolerance_or(1e-12);

    const JointDistribution t = ck_table(fa, fb);
    const JointDistribution q = q_matrix(upsilon(), frame_basis(fa), frame_basis(fb));
    rep.result["table"] = to_json(t.probs());
    rep.result["row_sums"] = to_json(t.marginal_a());
    rep.result["col_sums"] = to_json(t.marginal_b());
    json zeros = json::array();
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            if (t(a, b) <= kTol.probability_clamp) {
                zeros.push_back({a, b});
            }
        }
    }
    rep.result["impossible_pairs"] = std::move(zeros);

    const double sums = std::max((t.marginal_a().array() - 1.0 / 3.0).abs().maxCoeff(),
                                 (t.marginal_b().array() - 1.0 / 3.0).abs().maxCoeff());
    rep.check("row_and_column_sums_one_third", sums, tol, sums <= tol);
    const double dq = (t.probs() - q.probs()).cwiseAbs().maxCoeff();
    rep.check("equals_q_matrix_of_upsilon", dq, tol, dq <= tol);
    rep.csv = csv_matrix(t.probs());
}

void zones_cmd(const Common &c, const std::string &state, const std::string &fa_spec,
               const std::string &fb_spec, double tau, double t1, double t2, Report &rep) {
    const StateSpec s = parse_state(state);
    const StateVector &psi = require_pure(s, state);
    const auto [fa, adj_a] = parse_frame(fa_spec);
    const auto [fb, adj_b] = parse_frame(fb_spec);
    rep.config["state"] = state;
    rep.config["frame_a"] = frame_json(fa, adj_a);
    rep.config["frame_b"] = frame_json(fb, adj_b);
    rep.config["tau"] = tau;
    rep.config["t1"] = t1;
    rep.config["t2"] = t2;
    const double tol = c.tolerance_or(1e-10);

    const Basis ba = frame_basis(fa);
    const Basis bb = frame_basis(fb);
    const auto ma = ProjectiveMeasurement::from_basis(ba);
    const auto mb = ProjectiveMeasurement::from_basis(bb);

    rep.result["current_zone"] = std::string(zone_name(zone_of(t1, t2, tau)));
    json zones = json::array();
    Eigen::MatrixXd zone4(3, 3);
    for (auto z : {Zone::I, Zone::II, Zone::III, Zone::IV}) {
        const DensityOperator rho = zone_state(psi, ma, mb, z);
        Eigen::MatrixXd diag(3, 3);
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                diag(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    expectation(rho, tensor(projector(ba[a]), projector(bb[b])));
            }
        }
        if (z == Zone::IV) {
            zone4 = diag;
        }
        const double purity = (rho.matrix() * rho.matrix()).trace().real();
        zones.push_back({{"zone", std::string(zone_name(z))},
                         {"purity", purity},
                         {"product_basis_probabilities", to_json(diag)}});
    }
    rep.result["zones"] = std::move(zones);

    auto rel = [&](Party p, const Basis &b) {
        json out = json::array();
        for (const auto &t : relative_states(psi, p, b)) {
            out.push_back({{"index", t.index},
                           {"weight", std::norm(t.coefficient)},
                           {"state", to_json(t.state.amps())}});
        }
        return out;
    };
    rep.result["relative_states"] = {{"measured_a", rel(Party::A, ba)},
                                     {"measured_b", rel(Party::B, bb)}};

    const QMatrixForms forms = q_matrix_forms(psi, ba, bb);
    rep.result["q_matrix"] = to_json(forms.direct);
    const double dis = forms.max_disagreement();
    rep.check("q_matrix_forms_agree", dis, tol, dis <= tol);
    const double dz = (zone4 - forms.direct).cwiseAbs().maxCoeff();
    rep.check("zone_iv_matches_q_matrix", dz, tol, dz <= tol);
    const DensityOperator rho0 = DensityOperator::pure(psi);
    const DensityOperator ab = party_measure(party_measure(rho0, Party::B, mb), Party::A, ma);
    const DensityOperator ba_ = party_measure(party_measure(rho0, Party::A, ma), Party::B, mb);
    const double comm = (ab.matrix() - ba_.matrix()).cwiseAbs().maxCoeff();
    rep.check("measurement_order_independent", comm, tol, comm <= tol);
    rep.csv = csv_matrix(forms.direct);
}

void twin_cmd(const Common &c, const std::string &variant, const std::string &frame_spec,
              const std::string &direction, std::size_t m, std::size_t limit, Report &rep) {
    const TwinVariant v = parse_variant(variant);
    const auto [f, adj] = parse_frame(frame_spec);
    rep.config["variant"] = std::string(variant_name(v));
    rep.config["frame"] = frame_json(f, adj);
    rep.config["replicate"] = m;
    rep.config["limit"] = limit;
    const double tol = c.tolerance_or(1e-10);

    std::optional<Direction> w;
    if (v == TwinVariant::MMW) {
        if (direction.empty()) {
            throw ValidationError("mmw needs --direction");
        }
        w = parse_direction(direction, f);
        rep.config["direction"] = {w->vec()(0), w->vec()(1), w->vec()(2)};
        rep.result["frame_components"] = {frame_components(*w, f)(0),
                                          frame_components(*w, f)(1),
                                          frame_components(*w, f)(2)};
        rep.result["n_index"] = n_index(f, *w);
    }
    if (m == 0) {
        throw ValidationError("--replicate must be at least 1");
    }

    std::optional<Register> reg;
    std::vector<std::pair<std::string, std::size_t>> zero_on;
    if (m == 1) {
        reg = run_twin_circuit(v, f, w);
        const double fid = fidelity(reg->state(), twin_reference_state(v, f, w));
        rep.result["reference_fidelity"] = fid;
        rep.check("matches_closed_form", std::max(0.0, 1.0 - fid), tol, 1.0 - fid <= tol);
        if (v == TwinVariant::MMC) {
            zero_on = {{"carB", 0}};
        } else if (v == TwinVariant::XXCF) {
            zero_on = {{"carA", 0}, {"carB", 0}};
        } else if (v == TwinVariant::MMW && n_index(f, *w) >= 0) {
            reg = append_comparison(*reg, f, *w);
            zero_on = {{"cmp", 0}};
        }
    } else {
        if (v == TwinVariant::XXCF || v == TwinVariant::MMW) {
            throw ValidationError("--replicate supports mm, mmc and xx");
        }
        const TwinVariant base = v == TwinVariant::MMC ? TwinVariant::MM : v;
        reg = replicate_carriers(run_twin_circuit(base, f), m, {"carA", "carB"}, limit);
        if (v == TwinVariant::MMC) {
            reg = compare_replicated(*reg, "carA", "carB", m);
            zero_on.emplace_back("carB", 0);
            for (std::size_t i = 2; i <= m; ++i) {
                zero_on.emplace_back("carB." + std::to_string(i), 0);
            }
        }
    }

    rep.result["subsystems"] = reg->names();
    rep.result["dims"] = reg->dims();
    const double norm = reg->state().norm();
    rep.result["norm"] = norm;
    rep.check("norm_preserved", std::abs(norm - 1.0), tol, std::abs(norm - 1.0) <= tol);

    if (!zero_on.empty()) {
        const double p0 = outcome_probability(*reg, zero_on);
        json subs = json::array();
        for (const auto &z : zero_on) {
            subs.push_back(z.first);
        }
        const bool ok = 1.0 - p0 <= tol;
        rep.result["comparison"] = {{"subsystems", subs},
                                    {"p_zero", p0},
                                    {"register", ok ? "|0>" : "not |0>"}};
        rep.check("comparison_register_zero", std::max(0.0, 1.0 - p0), tol, ok);
    } else {
        rep.result["comparison"] = nullptr;
    }

    std::vector<std::string> carriers;
    for (const auto &n : reg->names()) {
        if (n != "sysA" && n != "sysB") {
            carriers.push_back(n);
        }
    }
    const Basis kap = frame_basis(f);
    json bl = json::array();
    double total = 0.0;
    rep.csv = "label,weight\n";
    for (const auto &b : branches(*reg, carriers)) {
        total += b.weight;
        json pair = nullptr;
        if (b.relative_state.dims() == Dims{3, 3}) {
            for (std::size_t i = 0; i < 3 && pair.is_null(); ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    if (1.0 - fidelity(b.relative_state, tensor(kap[i], kap[j])) <= 1e-9) {
                        pair = {i, j};
                        break;
                    }
                }
            }
        }
        bl.push_back({{"label", b.label}, {"weight", b.weight}, {"kappa_product", pair}});
        std::string label;
        for (auto x : b.label) {
            label += std::to_string(x);
        }
        rep.csv += label + "," + format_double(b.weight) + "\n";
    }
    rep.result["carriers"] = carriers;
    rep.result["branches"] = std::move(bl);
    rep.check("branch_weights_sum_to_one", std::abs(total - 1.0), tol,
              std::abs(total - 1.0) <= tol);
}

void decompose_cmd(const Common &c, const std::string &state, Report &rep) {
    const StateSpec s = parse_state(state);
    rep.config["state"] = state;
    const double tol = c.tolerance_or(1e-10);
    const SignedDecomposition d = decompose(s.rho);
    json j = decomposition_json(d);
    double sum = 0.0;
    for (const auto &t : d.terms()) {
        sum += t.lambda;
    }
    for (auto &[k, val] : j.items()) {
        if (k != "schema") {
            rep.result[k] = val;
        }
    }
    rep.result["n_terms"] = d.terms().size();
    rep.result["lambda_sum"] = sum;
    rep.check("residual", d.residual(), tol, d.residual() <= tol);
    rep.check("lambda_sum_is_one", std::abs(sum - 1.0), tol, std::abs(sum - 1.0) <= tol);
    rep.csv = decomposition_csv(d);
}

void signed_sim_cmd(const Common &c, const std::string &state, const std::string &fa_spec,
                    const std::string &fb_spec, Report &rep) {
    const StateSpec s = parse_state(state);
    const auto [fa, adj_a] = parse_frame(fa_spec);
    const auto [fb, adj_b] = parse_frame(fb_spec);
    const std::uint64_t trials = c.trials_or(1'000'000);
    const double tol = c.tolerance_or(5e-3);
    rep.config["state"] = state;
    rep.config["frame_a"] = frame_json(fa, adj_a);
    rep.config["frame_b"] = frame_json(fb, adj_b);
    rep.config["trials"] = trials;
    rep.config["tolerance"] = tol;

    const Basis ba = frame_basis(fa);
    const Basis bb = frame_basis(fb);
    const SignedDecomposition d = decompose(s.rho);
    const CounterTally t = simulate(d, ba, bb, trials, c.seed);
    const CounterExpectations e = counter_expectations(d, ba, bb);

    Eigen::MatrixXd exact(3, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            exact(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                expectation(s.rho, tensor(projector(ba[a]), projector(bb[b])));
        }
    }
    const Eigen::MatrixXd nplus = t.n_plus.cast<double>();
    const Eigen::MatrixXd nminus = t.n_minus.cast<double>();
    const double err = (t.estimate - exact).cwiseAbs().maxCoeff();
    json negative = json::array();
    for (Eigen::Index a = 0; a < 3; ++a) {
        for (Eigen::Index b = 0; b < 3; ++b) {
            if (t.estimate(a, b) < 0.0) {
                negative.push_back({a, b});
            }
        }
    }
    rep.result["kappa"] = t.kappa;
    rep.result["n_plus"] = to_json(nplus);
    rep.result["n_minus"] = to_json(nminus);
    rep.result["estimate"] = to_json(t.estimate);
    rep.result["exact"] = to_json(exact);
    rep.result["max_abs_error"] = err;
    rep.result["negative_cells"] = std::move(negative);
    rep.result["expected_counters"] = {{"n_plus", to_json(e.n_plus)},
                                       {"n_minus", to_json(e.n_minus)},
                                       {"n_plus_a", to_json(e.n_plus_a)},
                                       {"n_minus_a", to_json(e.n_minus_a)},
                                       {"n_plus_b", to_json(e.n_plus_b)},
                                       {"n_minus_b", to_json(e.n_minus_b)},
                                       {"total_plus", e.total_plus},
                                       {"total_minus", e.total_minus}};
    rep.check("max_abs_error", err, tol, err <= tol);

    rep.csv = "a,b,n_plus,n_minus,estimate,exact\n";
    for (Eigen::Index a = 0; a < 3; ++a) {
        for (Eigen::Index b = 0; b < 3; ++b) {
            rep.csv += std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(t.n_plus(a, b)) + "," + std::to_string(t.n_minus(a, b)) +
                       "," + format_double(t.estimate(a, b)) + "," +
                       format_double(exact(a, b)) + "\n";
        }
    }
}

/// Per-cell z-scores of counts against exact probabilities; cells with
/// probability 0 or 1 are checked for exact agreement instead.
void frequency_checks(const kernels::Counts &counts, const Eigen::MatrixXd &exact,
                      std::uint64_t n, double zmax, json &cells, Report &rep,
                      std::string &csv) {
    const auto cols = exact.cols();
    double worst = 0.0;
    std::uint64_t impossible_hits = 0;
    const double nn = static_cast<double>(n);
    for (Eigen::Index a = 0; a < exact.rows(); ++a) {
        for (Eigen::Index b = 0; b < cols; ++b) {
            const double p = exact(a, b);
            const std::uint64_t k = counts[static_cast<std::size_t>(a * cols + b)];
            double z = 0.0;
            if (p <= kTol.probability_clamp) {
                impossible_hits += k;
            } else if (p < 1.0 - kTol.probability_clamp) {
                z = (static_cast<double>(k) - nn * p) / std::sqrt(nn * p * (1.0 - p));
                worst = std::max(worst, std::abs(z));
            }
            cells.push_back({{"a", a},
                             {"b", b},
                             {"probability", p},
                             {"count", k},
                             {"frequency", static_cast<double>(k) / nn},
                             {"z", z}});
            csv += std::to_string(a) + "," + std::to_string(b) + "," + format_double(p) + "," +
                   std::to_string(k) + "," + format_double(static_cast<double>(k) / nn) + "\n";
        }
    }
    rep.check("max_abs_z", worst, zmax, worst <= zmax);
    rep.check("impossible_cells_never_hit", static_cast<double>(impossible_hits), 0.0,
              impossible_hits == 0);
}

void roulette_cmd(const Common &c, const std::string &state, const std::string &fa_spec,
                  const std::string &fb_spec, const std::optional<double> &phi, Report &rep) {
    const StateSpec s = parse_state(state);
    const StateVector &psi = require_pure(s, state);
    const auto [fa, adj_a] = parse_frame(fa_spec);
    const auto [fb, adj_b] = parse_frame(fb_spec);
    const std::uint64_t spins = c.trials_or(100'000);
    const double zmax = c.tolerance_or(4.0);
    rep.config["state"] = state;
    rep.config["frame_a"] = frame_json(fa, adj_a);
    rep.config["frame_b"] = frame_json(fb, adj_b);
    rep.config["trials"] = spins;
    rep.config["tolerance"] = zmax;

    const JointDistribution dist = q_matrix(psi, frame_basis(fa), frame_basis(fb));
    const Roulette r = build_roulette(dist);
    if (phi) {
        rep.config["phi"] = *phi;
        const Sector &hit = spin(r, *phi);
        rep.result["spin"] = {{"a", hit.a}, {"b", hit.b}};
    }
    json sectors = json::array();
    double lo = 0.0;
    for (std::size_t i = 0; i < r.sectors().size(); ++i) {
        const auto &sec = r.sectors()[i];
        sectors.push_back({{"a", sec.a}, {"b", sec.b}, {"width", sec.width},
                           {"lo", lo}, {"hi", r.cumulative()[i]}});
        lo = r.cumulative()[i];
    }
    rep.result["sectors"] = std::move(sectors);
    const auto counts = spin_counts(r, spins, c.seed);
    json cells = json::array();
    rep.csv = "a,b,width,count,frequency\n";
    frequency_checks(counts, dist.probs(), spins, zmax, cells, rep, rep.csv);
    rep.result["cells"] = std::move(cells);
}

void chain_cmd(const Common &c, const std::string &state, const std::string &fa_spec,
               const std::string &fb_spec, const std::string &order, Report &rep) {
    const StateSpec s = parse_state(state);
    const StateVector &psi = require_pure(s, state);
    const auto [fa, adj_a] = parse_frame(fa_spec);
    const auto [fb, adj_b] = parse_frame(fb_spec);
    const ChainOrder o = parse_order(order);
    const std::uint64_t draws = c.trials_or(100'000);
    const double zmax = c.tolerance_or(4.0);
    rep.config["state"] = state;
    rep.config["frame_a"] = frame_json(fa, adj_a);
    rep.config["frame_b"] = frame_json(fb, adj_b);
    rep.config["order"] = std::string(order_name(o));
    rep.config["trials"] = draws;
    rep.config["tolerance"] = zmax;

    const Basis ba = frame_basis(fa);
    const Basis bb = frame_basis(fb);
    const JointDistribution dist = q_matrix(psi, ba, bb);
    const ChainSampler sampler(psi, ba, bb, o);
    const auto counts = chain_counts(sampler, draws, c.seed);
    json cells = json::array();
    rep.csv = "a,b,probability,count,frequency\n";
    frequency_checks(counts, dist.probs(), draws, zmax, cells, rep, rep.csv);
    rep.result["cells"] = std::move(cells);
}

void ks_cmd(const std::string &file, Report &rep) {
    rep.config["file"] = file;
    const TriplesSet ts = read_triples_file(file);
    const KsResult res = ks_satisfiable(ts);
    rep.result["rays"] = ts.rays().size();
    rep.result["triples"] = ts.triples().size();
    rep.result["orthogonal_pairs"] = ts.orthogonal_pairs().size();
    rep.result["satisfiable"] = res.satisfiable;
    rep.result["nodes"] = res.nodes;
    rep.result["assignment"] = res.assignment ? json(*res.assignment) : json(nullptr);
    rep.csv = "rays,triples,orthogonal_pairs,satisfiable,nodes\n" +
              std::to_string(ts.rays().size()) + "," + std::to_string(ts.triples().size()) +
              "," + std::to_string(ts.orthogonal_pairs().size()) + "," +
              (res.satisfiable ? "true" : "false") + "," + std::to_string(res.nodes) + "\n";
}

} // namespace

std::pair<Frame, bool> parse_frame(const std::string &spec) {
    if (spec == "standard") {
        return {Frame::standard(), false};
    }
    if (spec == "primed") {
        return {Frame::primed(), false};
    }
    const auto nums = parse_numbers(spec);
    if (nums.size() != 9) {
        throw ValidationError("frame needs 9 numbers, got " + std::to_string(nums.size()));
    }
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = nums[static_cast<std::size_t>(3 * i + j)];
        }
    }
    return Frame::from_rows_approx(m);
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Qutrit twin-measurement experiments", "qutrit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    c.trials_opt = app.add_option("--trials", c.trials, "Trials or samples");
    app.add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    c.tol_opt = app.add_option("--tolerance", c.tolerance, "Tolerance for the report checks");

    std::string frame_a = "standard";
    std::string frame_b = "standard";
    std::string state = "upsilon";
    auto add_frames = [&](CLI::App *sub) {
        sub->add_option("--frame-a", frame_a, "Frame of party A")->capture_default_str();
        sub->add_option("--frame-b", frame_b, "Frame of party B")->capture_default_str();
    };
    auto add_state = [&](CLI::App *sub) {
        sub->add_option("--state", state, "upsilon, mixed, xi:k,j or basis:a,b")
            ->capture_default_str();
    };

    Report rep;
    std::function<void()> action;

    auto *ck = app.add_subcommand("ck-table", "Joint K-outcome table of upsilon for two frames");
    add_frames(ck);
    ck->callback([&] { action = [&] { ck_table_cmd(c, frame_a, frame_b, rep); }; });

    double tau = 0.0;
    double t1 = 1.0;
    double t2 = 1.0;
    auto *zn = app.add_subcommand("zones", "States and outcome table in the four clock zones");
    add_frames(zn);
    add_state(zn);
    zn->add_option("--tau", tau, "Local measurement time")->capture_default_str();
    zn->add_option("--t1", t1, "Clock of party A")->capture_default_str();
    zn->add_option("--t2", t2, "Clock of party B")->capture_default_str();
    zn->callback([&] {
        action = [&] { zones_cmd(c, state, frame_a, frame_b, tau, t1, t2, rep); };
    });

    std::string variant = "mm";
    std::string frame = "standard";
    std::string direction;
    std::size_t replicate = 1;
    std::size_t limit = kDefaultRegisterLimit;
    auto *tw = app.add_subcommand("twin-circuit", "No-collapse measurement circuits");
    tw->add_option("--variant", variant, "mm, mmc, xx, xxcf or mmw")->capture_default_str();
    tw->add_option("--frame", frame, "Measurement frame")->capture_default_str();
    tw->add_option("--direction", direction, "w for mmw: x, y, z or three numbers");
    tw->add_option("--replicate", replicate, "Copies per carrier")->capture_default_str();
    tw->add_option("--limit", limit, "Largest register dimension")->capture_default_str();
    tw->callback([&] {
        action = [&] { twin_cmd(c, variant, frame, direction, replicate, limit, rep); };
    });

    auto *dc = app.add_subcommand("decompose", "Signed product decomposition");
    add_state(dc);
    dc->callback([&] { action = [&] { decompose_cmd(c, state, rep); }; });

    auto *ss = app.add_subcommand("signed-sim", "Two-source counter simulation");
    add_state(ss);
    add_frames(ss);
    ss->callback([&] { action = [&] { signed_sim_cmd(c, state, frame_a, frame_b, rep); }; });

    std::optional<double> phi;
    auto *rl = app.add_subcommand("roulette", "Single-pointer joint-outcome sampler");
    add_state(rl);
    add_frames(rl);
    rl->add_option("--phi", phi, "Spin once at this angle in [0, 2 pi)");
    rl->callback([&] { action = [&] { roulette_cmd(c, state, frame_a, frame_b, phi, rep); }; });

    std::string order = "a-first";
    auto *ch = app.add_subcommand("chain", "Marginal-then-conditional sampler");
    add_state(ch);
    add_frames(ch);
    ch->add_option("--order", order, "a-first or b-first")->capture_default_str();
    ch->callback([&] {
        action = [&] { chain_cmd(c, state, frame_a, frame_b, order, rep); };
    });

    std::string file;
    auto *ks = app.add_subcommand("ks-check", "Kochen-Specker colourability of a direction set");
    ks->add_option("--file", file, "Direction-set file")->required();
    ks->callback([&] { action = [&] { ks_cmd(file, rep); }; });

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        action();
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitFailure;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (c.format == "csv") {
        out << rep.csv;
        return kExitOk;
    }
    json report;
    report["schema"] = 1;
    report["version"] = std::string(kVersion);
    report["command"] = command;
    json config;
    config["seed"] = c.seed;
    config["format"] = c.format;
    if (c.trials_opt->count() > 0) {
        config["trials"] = c.trials;
    }
    if (c.tol_opt->count() > 0) {
        config["tolerance"] = c.tolerance;
    }
    config.update(rep.config);
    report["config"] = std::move(config);
    report["result"] = std::move(rep.result);
    report["checks"] = rep.checks;
    report["all_checks_pass"] = rep.all_ok();
    out << report.dump(2) << '\n';
    return kExitOk;
}

} // namespace qutrit::cli
