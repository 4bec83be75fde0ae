// Copyright 2026 The superq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "superq/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "superq/errors.h"
#include "superq/superstate.h"

namespace superq {

using nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    std::stringstream ss;
    ss << std::setprecision(10) << x;
    return ss.str();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("Cannot read '" + path + "'.");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("Cannot write '" + path + "'.");
    }
    out << contents;
}

// nlohmann prints the shortest round-trip form; results are pinned to 17 significant digits instead.
void write_json(const ordered_json &j, int depth, std::ostream &out) {
    std::string pad(2 * (depth + 1), ' ');
    std::string close(2 * depth, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (const auto &[key, value] : j.items()) {
            out << (first ? "" : ",\n") << pad << ordered_json(key).dump() << ": ";
            write_json(value, depth + 1, out);
            first = false;
        }
        out << "\n" << close << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (size_t k = 0; k < j.size(); k++) {
            out << (k ? ",\n" : "") << pad;
            write_json(j[k], depth + 1, out);
        }
        out << "\n" << close << "]";
    } else if (j.is_number_float()) {
        double x = j.get<double>() + 0.0;
        if (!std::isfinite(x)) {
            out << "null";
            return;
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        std::string text = buf;
        if (text.find_first_of(".e") == std::string::npos) {
            text += ".0";
        }
        out << text;
    } else {
        out << j.dump();
    }
}

std::string json_text(const ordered_json &j) {
    std::stringstream ss;
    write_json(j, 0, ss);
    ss << "\n";
    return ss.str();
}

ordered_json strategy_json(const Strategy &s) {
    auto angles = [](const std::array<Angles, 2> &a) {
        auto list = ordered_json::array();
        for (const auto &x : a) {
            list.push_back(ordered_json{{"theta", x.theta}, {"phi", x.phi}});
        }
        return list;
    };
    ordered_json j;
    j["pA"] = s.p_a;
    j["pB"] = s.p_b;
    j["r"] = {s.r[0], s.r[1]};
    j["s"] = {s.s[0], s.s[1]};
    j["alice"] = angles(s.alice);
    j["bob"] = angles(s.bob);
    return j;
}

ordered_json tables_json(const OutcomeTables &tables) {
    ordered_json j;
    for (int i = 0; i < 2; i++) {
        for (int jj = 0; jj < 2; jj++) {
            ordered_json t;
            for (size_t k = 0; k < 9; k++) {
                t[ket_label(2, k)] = tables[i][jj][k];
            }
            j[std::to_string(i) + std::to_string(jj)] = t;
        }
    }
    return j;
}

Strategy parse_strategy(const nlohmann::json &doc) {
    const auto &j = doc.contains("strategy") ? doc.at("strategy") : doc;
    auto pair = [](const nlohmann::json &list, const char *key) {
        if (!list.is_array() || list.size() != 2) {
            throw InputError(std::string("Strategy field '") + key + "' must be a list of two entries.");
        }
        return list;
    };
    auto angles = [&](const char *key) {
        auto list = pair(j.at(key), key);
        std::array<Angles, 2> out;
        for (size_t k = 0; k < 2; k++) {
            out[k] = Angles{list[k].at("theta").get<double>(), list[k].at("phi").get<double>()};
        }
        return out;
    };
    Strategy s;
    s.p_a = j.at("pA").get<double>();
    s.p_b = j.at("pB").get<double>();
    auto r = pair(j.at("r"), "r");
    auto sv = pair(j.at("s"), "s");
    s.r = {r[0].get<double>(), r[1].get<double>()};
    s.s = {sv[0].get<double>(), sv[1].get<double>()};
    s.alice = angles("alice");
    s.bob = angles("bob");
    for (double x : s.to_params()) {
        if (!std::isfinite(x)) {
            throw InputError("Strategy parameters must be finite.");
        }
    }
    return s;
}

void validate_config(const OptimizeConfig &c) {
    if (c.restarts < 1) {
        throw InputError("--restarts must be at least 1.");
    }
    if (!(c.penalty_weight > 0) || !std::isfinite(c.penalty_weight)) {
        throw InputError("--penalty must be positive.");
    }
    if (!(c.tolerance >= 0) || !std::isfinite(c.tolerance)) {
        throw InputError("--tol must be nonnegative.");
    }
}

// ---------------------------------------------------------------------------------------------
// verify

double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Supernumber random_homogeneous(size_t order, bool odd, std::mt19937_64 &rng) {
    std::vector<Term> terms;
    for (Monomial m = 0; m < (Monomial{1} << order); m++) {
        if (monomial_is_odd(m) == odd) {
            terms.push_back(Term{m, complex(uniform(rng, -1, 1), uniform(rng, -1, 1))});
        }
    }
    return Supernumber::from_terms(order, std::move(terms));
}

Supermatrix random_matrix(size_t order, const Grading &rows, const Grading &cols, bool odd, std::mt19937_64 &rng) {
    Supermatrix m(order, rows, cols);
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t j = 0; j < cols.size(); j++) {
            m.at(i, j) = random_homogeneous(order, (rows[i] ^ cols[j]) ^ odd, rng);
        }
    }
    return m;
}

struct CheckSpec {
    const char *name;
    double tolerance;
    // Returns the worst residual. `fault` flips a sign in the expected side.
    std::function<double(bool fault, std::mt19937_64 &rng)> run;
};

const std::vector<CheckSpec> &checks() {
    static const std::vector<CheckSpec> all = {
        {"grade-adjoint-identity", 1e-12,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto g = standard_grading(2, 1);
             for (size_t order : {2, 4}) {
                 for (int rep = 0; rep < 10; rep++) {
                     for (bool ps : {false, true}) {
                         for (bool pz : {false, true}) {
                             auto s = random_matrix(order, g, g, ps, rng);
                             auto z = random_matrix(order, g, Grading{0}, pz, rng);
                             auto v = random_matrix(order, g, Grading{0}, rng() & 1, rng);
                             double sign = (ps && pz) != fault ? -1 : 1;
                             worst = std::max(worst, form(s * z, v).distance(form(z, s.grade_adjoint() * v) * sign));
                         }
                     }
                 }
             }
             return worst;
         }},
        {"grade-adjoint-involution", 1e-13,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto g = standard_grading(2, 1);
             for (int rep = 0; rep < 10; rep++) {
                 for (bool ps : {false, true}) {
                     auto s = random_matrix(4, g, g, ps, rng);
                     double sign = ps != fault ? -1 : 1;
                     worst = std::max(worst, s.grade_adjoint().grade_adjoint().distance(s * sign));
                 }
             }
             return worst;
         }},
        {"supertranspose-fourth-power", 1e-14,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto g = standard_grading(2, 1);
             auto h = standard_grading(1, 2);
             for (int rep = 0; rep < 10; rep++) {
                 for (bool ps : {false, true}) {
                     auto s = random_matrix(4, g, h, ps, rng);
                     auto st4 = s.supertranspose().supertranspose().supertranspose().supertranspose();
                     worst = std::max(worst, st4.distance(fault ? -s : s));
                 }
             }
             return worst;
         }},
        {"supertranspose-composition", 1e-13,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto g = standard_grading(2, 1);
             auto h = standard_grading(1, 2);
             for (int rep = 0; rep < 10; rep++) {
                 for (bool px : {false, true}) {
                     for (bool py : {false, true}) {
                         auto x = random_matrix(4, g, h, px, rng);
                         auto y = random_matrix(4, h, g, py, rng);
                         double sign = (px && py) != fault ? -1 : 1;
                         auto rhs = y.supertranspose() * x.supertranspose() * sign;
                         worst = std::max(worst, (x * y).supertranspose().distance(rhs));
                     }
                 }
             }
             return worst;
         }},
        {"s-matrix-closed-form", 1e-13,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             for (int rep = 0; rep < 20; rep++) {
                 double p = uniform(rng, -1, 1);
                 auto series = s_matrix_exp(Supernumber::eta(2, 1) * (2 * p));
                 worst = std::max(worst, series.distance(s_matrix(2, 1, fault ? -p : p)));
             }
             return worst;
         }},
        {"s-matrix-group-law", 1e-13,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             for (int rep = 0; rep < 20; rep++) {
                 double p = uniform(rng, -1, 1);
                 double q = uniform(rng, -1, 1);
                 auto prod = s_matrix(2, 1, p) * s_matrix(2, 1, q);
                 worst = std::max(worst, prod.distance(s_matrix(2, 1, fault ? p - q : p + q)));
             }
             return worst;
         }},
        {"superunitarity", 1e-12,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto id = Supermatrix::identity(2, superqubit_grading());
             for (int rep = 0; rep < 20; rep++) {
                 GroupElementParams params{uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI), uniform(rng, -1, 1)};
                 for (const auto &z : {group_element(2, 1, params), rotation(2, 1, params)}) {
                     worst = std::max(worst, (z.grade_adjoint() * z).distance(fault ? -id : id));
                 }
             }
             return worst;
         }},
        {"superqubit-normalization", 1e-13,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto one = Supernumber::one(2);
             for (int rep = 0; rep < 20; rep++) {
                 auto psi = superqubit(uniform(rng, -1, 1), uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI));
                 worst = std::max(worst, inner_product(psi, psi).distance(fault ? -one : one));
                 worst = std::max(worst, density_matrix(psi).supertrace().distance(fault ? -one : one));
             }
             return worst;
         }},
        {"berezin-conventions", 1e-15,
         [](bool fault, std::mt19937_64 &rng) {
             double sign = fault ? -1 : 1;
             auto eta = Supernumber::eta(2, 1);
             auto eta_h = Supernumber::eta_hash(2, 1);
             auto x = eta * eta_h;
             // ∫dη η = 1 and the double integral of η^# η is 1 when η^# is integrated first.
             double worst = std::abs(eta.berezin(1).body() - sign);
             worst = std::max(worst, std::abs((eta_h * eta).berezin(2).berezin(1).body() - sign));
             for (int rep = 0; rep < 20; rep++) {
                 double c = uniform(rng, -2, 2);
                 auto a = Supernumber::one(2) + x * c;
                 worst = std::max(worst, std::abs(a.modified_rogers() - (1 - sign * c)));
                 worst = std::max(worst, std::abs(a.rogers_r1() - (1 + sign * std::abs(c))));
             }
             return worst;
         }},
        {"transition-probability", 1e-12,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             for (int rep = 0; rep < 50; rep++) {
                 double p = uniform(rng, -1, 1);
                 double q = uniform(rng, -1, 1);
                 double t1 = uniform(rng, -M_PI, M_PI);
                 double f1 = uniform(rng, -M_PI, M_PI);
                 double t2 = uniform(rng, -M_PI, M_PI);
                 double f2 = uniform(rng, -M_PI, M_PI);
                 complex a = std::cos(t1);
                 complex b = std::polar(1.0, f1) * std::sin(t1);
                 complex c = std::cos(t2);
                 complex d = std::polar(1.0, f2) * std::sin(t2);
                 double overlap = std::norm(a * std::conj(c) + b * std::conj(d));
                 double expected = overlap * (1 - (fault ? -1 : 1) * (p - q) * (p - q));
                 double got = transition_probability(superqubit(q, c, d), superqubit(p, a, b));
                 worst = std::max(worst, std::abs(got - expected));
             }
             return worst;
         }},
        {"bullet-bullet-norm", 0,
         [](bool fault, std::mt19937_64 &) {
             auto bb = SuperState::basis_ket(4, {Outcome::BULLET, Outcome::BULLET});
             return inner_product(bb, bb).distance(Supernumber::one(4) * (fault ? 1.0 : -1.0));
         }},
        {"measurement-normalization", 1e-13,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             for (int rep = 0; rep < 10; rep++) {
                 auto u = upsilon(uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5));
                 GroupElementParams pa{uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI), uniform(rng, -0.5, 0.5)};
                 GroupElementParams pb{uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI), uniform(rng, -0.5, 0.5)};
                 auto probs = measure_grassmann(apply_local(rotation(4, 1, pa), rotation(4, 2, pb), u));
                 auto total = Supernumber::zero(4);
                 for (size_t k = 0; k < probs.size(); k++) {
                     total += (fault && k == 8) ? -probs[k] : probs[k];
                 }
                 worst = std::max(worst, total.distance(Supernumber::one(4)));
             }
             return worst;
         }},
        {"tensor-product-expansion", 1e-14,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             auto zz = SuperState::basis_ket(4, {Outcome::ZERO, Outcome::ZERO});
             for (int rep = 0; rep < 10; rep++) {
                 GroupElementParams pa{uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI), uniform(rng, -1, 1)};
                 GroupElementParams pb{uniform(rng, -M_PI, M_PI), uniform(rng, -M_PI, M_PI), uniform(rng, -1, 1)};
                 auto direct = apply_local(rotation(4, 1, pa), rotation(4, 2, pb), zz);
                 auto a = superqubit(pa.p, pa.theta, pa.phi, 4, 1);
                 auto b = superqubit(pb.p, pb.theta, pb.phi, 4, 2);
                 auto product = tensor(a, b);
                 // The odd-odd component carries the sign from moving an odd coefficient past |•>.
                 auto expected = a.coeff(2) * b.coeff(2) * (fault ? 1.0 : -1.0);
                 worst = std::max(worst, direct.coeff(8).distance(expected));
                 for (size_t k = 0; k < 9; k++) {
                     worst = std::max(worst, direct.coeff(k).distance(product.coeff(k)));
                 }
             }
             return worst;
         }},
        {"compactification", 1e-12,
         [](bool fault, std::mt19937_64 &rng) {
             double worst = 0;
             for (int rep = 0; rep < 100; rep++) {
                 double p = uniform(rng, -50, 50);
                 double c = compactify(p);
                 worst = std::max(worst, (c < -0.5 || c >= 0.5) ? 1.0 : 0.0);
                 worst = std::max(worst, std::abs(compactify(p + (fault ? M_PI : 2 * M_PI)) - c));
                 for (double prob : measure_real(superqubit(c, uniform(rng, 0, M_PI), 0))) {
                     worst = std::max({worst, -prob, prob - 1});
                 }
             }
             return worst;
         }},
        {"chsh-baselines", 1e-12,
         [](bool fault, std::mt19937_64 &) {
             double tsirelson = std::pow(std::cos(M_PI / 8), 2);
             double worst = std::abs(win_prob(Strategy::tsirelson()) - (fault ? 1 - tsirelson : tsirelson));
             worst = std::max(worst, std::abs(classical_win_prob() - 0.75));
             worst = std::max(worst, std::abs(win_prob(Strategy{}) - 0.75));
             return worst;
         }},
    };
    return all;
}

// ---------------------------------------------------------------------------------------------
// subcommands

int cmd_verify(bool verbose, const std::string &inject_fault, std::ostream &out, std::ostream &err) {
    auto results = run_verify_suite(inject_fault);
    size_t width = 0;
    for (const auto &r : results) {
        width = std::max(width, r.name.size());
    }
    std::vector<std::string> failed;
    for (const auto &r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw((int)width) << r.name;
        if (verbose) {
            out << "  residual=" << std::scientific << std::setprecision(3) << r.residual
                << "  tol=" << r.tolerance << std::defaultfloat;
        }
        out << "\n";
        if (!r.passed) {
            failed.push_back(r.name);
        }
    }
    out << (results.size() - failed.size()) << "/" << results.size() << " checks passed\n";
    for (const auto &name : failed) {
        err << "verify: identity '" << name << "' failed\n";
    }
    return failed.empty() ? EXIT_OK : EXIT_CHECK_FAILED;
}

void warn_if_unphysical(double p, std::ostream &err) {
    if (!is_physical(p)) {
        err << "warning: p = " << fmt(p) << " is not physical (|p| > 1/2)\n";
    }
}

int cmd_state(double p, double theta, double phi, const std::string &json_out, std::ostream &out, std::ostream &err) {
    warn_if_unphysical(p, err);
    auto psi = superqubit(p, theta, phi);
    auto probs = measure_real(psi);
    out << "|psi> = " << psi.str() << "\n";
    for (size_t k = 0; k < 3; k++) {
        out << "P(" << ket_label(1, k) << ") = " << fmt(probs[k]) << "\n";
    }
    if (!json_out.empty()) {
        ordered_json j;
        j["p"] = p;
        j["theta"] = theta;
        j["phi"] = phi;
        j["physical"] = is_physical(p);
        j["state"] = ordered_json::parse(psi.to_json());
        j["probabilities"] = probs;
        write_file(json_out, json_text(j));
    }
    return EXIT_OK;
}

// Real transition factor 1 - (p - q)^2 over [-1, 1]^2 with the s1/s2 region flags.
std::string transition_grid_csv(size_t n) {
    std::stringstream ss;
    ss << "p,q,factor,s1,s2\n" << std::setprecision(17);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            double p = -1 + 2.0 * a / (n - 1);
            double q = -1 + 2.0 * b / (n - 1);
            auto pp = physical_pair(p, q);
            ss << p << "," << q << "," << 1 - (p - q) * (p - q) << "," << pp.s1 << "," << pp.s2 << "\n";
        }
    }
    return ss.str();
}

int cmd_transition(const std::vector<double> &v, std::ostream &out, std::ostream &err) {
    double p = v[0];
    double q = v[3];
    auto pp = physical_pair(p, q);
    if (!pp.s2) {
        err << "warning: (p, q) = (" << fmt(p) << ", " << fmt(q) << ") is not physical (|p|, |q| must be <= 1/2)\n";
    }
    auto psi = superqubit(p, v[1], v[2]);
    auto phi = superqubit(q, v[4], v[5]);
    out << "<phi|psi> = " << inner_product(phi, psi) << "\n";
    out << "p_G = " << grassmann_transition(phi, psi) << "\n";
    out << "P = " << fmt(transition_probability(phi, psi)) << "\n";
    return EXIT_OK;
}

int cmd_chsh_eval(
    const std::string &path, const std::string &json_out, const std::string &csv_out, std::ostream &out) {
    Strategy s = strategy_from_json(read_file(path));
    auto ev = evaluate(s);
    auto text = evaluation_json(s, ev);
    if (json_out.empty()) {
        out << text;
    } else {
        write_file(json_out, text);
        out << "p_win = " << fmt(ev.p_win) << "\nviolation = " << fmt(ev.violation) << "\n";
    }
    if (!csv_out.empty()) {
        write_file(csv_out, tables_csv(ev.tables));
    }
    return EXIT_OK;
}

int cmd_chsh_optimize(
    const OptimizeConfig &config,
    const std::string &json_out,
    const std::string &csv_out,
    std::ostream &out,
    std::ostream &err) {
    validate_config(config);
    auto result = optimize(config);
    auto text = optimization_json(config, result);
    if (json_out.empty()) {
        out << text;
    } else {
        write_file(json_out, text);
        if (result.feasible) {
            out << "p_win = " << fmt(result.p_win) << "\nviolation = " << fmt(result.violation) << "\n";
        }
    }
    if (!result.feasible) {
        err << "chsh-optimize: no restart produced a point within tolerance " << config.tolerance << "\n";
        return EXIT_CHECK_FAILED;
    }
    if (!csv_out.empty()) {
        write_file(csv_out, tables_csv(result.tables));
    }
    return EXIT_OK;
}

int cmd_baseline(OptimizeConfig config, const std::string &json_out, std::ostream &out, std::ostream &err) {
    config.quantum_only = true;
    validate_config(config);
    double classical = classical_win_prob();
    double tsirelson_strategy = win_prob(Strategy::tsirelson());
    auto quantum = optimize(config);
    out << "classical (16 deterministic strategies) = " << fmt(classical) << "\n";
    out << "Tsirelson strategy = " << fmt(tsirelson_strategy) << "\n";
    out << "cos^2(pi/8) = " << fmt(std::pow(std::cos(M_PI / 8), 2)) << "\n";
    if (quantum.feasible) {
        out << "quantum-only optimum = " << fmt(quantum.p_win) << "\n";
    }
    if (!json_out.empty()) {
        ordered_json j;
        j["classical"] = classical;
        j["tsirelson_strategy"] = tsirelson_strategy;
        j["quantum_only"] = ordered_json::parse(optimization_json(config, quantum));
        write_file(json_out, json_text(j));
    }
    if (!quantum.feasible) {
        err << "baseline: quantum-only search found no feasible point\n";
        return EXIT_CHECK_FAILED;
    }
    return EXIT_OK;
}

}  // namespace

Strategy strategy_from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
        return parse_strategy(doc);
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("Malformed strategy JSON: ") + e.what());
    }
}

std::string strategy_to_json(const Strategy &strat) {
    return json_text(strategy_json(strat));
}

std::string evaluation_json(const Strategy &strat, const Evaluation &ev) {
    ordered_json j;
    j["strategy"] = strategy_json(strat);
    j["result"] = {{"p_win", ev.p_win}, {"violation", ev.violation}, {"tables", tables_json(ev.tables)}};
    return json_text(j);
}

std::string optimization_json(const OptimizeConfig &config, const OptimizationResult &result) {
    ordered_json j;
    j["seed"] = config.seed;
    j["restarts"] = config.restarts;
    j["max_iters"] = config.max_iters;
    j["penalty_weight"] = config.penalty_weight;
    j["tolerance"] = config.tolerance;
    j["quantum_only"] = config.quantum_only;
    if (result.feasible) {
        j["strategy"] = strategy_json(result.strategy);
        j["result"] = {
            {"feasible", true},
            {"p_win", result.p_win},
            {"violation", result.violation},
            {"best_restart", result.best_restart},
            {"iterations", result.iterations},
            {"evaluations", result.evaluations},
            {"tables", tables_json(result.tables)},
        };
    } else {
        j["strategy"] = nullptr;
        j["result"] = {{"feasible", false}, {"evaluations", result.evaluations}};
    }
    return json_text(j);
}

void apply_config_json(const std::string &text, OptimizeConfig &config) {
    try {
        auto j = nlohmann::json::parse(text);
        if (!j.is_object()) {
            throw InputError("Config JSON must be an object.");
        }
        if (j.contains("seed")) {
            config.seed = j.at("seed").get<uint64_t>();
        }
        if (j.contains("restarts")) {
            config.restarts = j.at("restarts").get<size_t>();
        }
        if (j.contains("max_iters")) {
            config.max_iters = j.at("max_iters").get<size_t>();
        }
        if (j.contains("penalty_weight")) {
            config.penalty_weight = j.at("penalty_weight").get<double>();
        }
        if (j.contains("tolerance")) {
            config.tolerance = j.at("tolerance").get<double>();
        }
        if (j.contains("quantum_only")) {
            config.quantum_only = j.at("quantum_only").get<bool>();
        }
        if (j.contains("threads")) {
            config.threads = j.at("threads").get<size_t>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("Malformed config JSON: ") + e.what());
    }
}

std::string tables_csv(const OutcomeTables &tables) {
    std::stringstream ss;
    ss << "i,j,outcome,probability\n" << std::setprecision(17);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (size_t k = 0; k < 9; k++) {
                ss << i << "," << j << "," << ket_label(2, k) << "," << tables[i][j][k] + 0.0 << "\n";
            }
        }
    }
    return ss.str();
}

std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    for (const auto &c : checks()) {
        names.push_back(c.name);
    }
    return names;
}

std::vector<VerifyCheck> run_verify_suite(const std::string &inject_fault) {
    if (!inject_fault.empty()) {
        auto names = verify_check_names();
        if (std::find(names.begin(), names.end(), inject_fault) == names.end()) {
            throw InputError("Unknown check '" + inject_fault + "' for --inject-fault.");
        }
    }
    std::vector<VerifyCheck> out;
    for (const auto &c : checks()) {
        std::mt19937_64 rng(20260101);
        double residual = c.run(c.name == inject_fault, rng);
        out.push_back({c.name, residual, c.tolerance, residual <= c.tolerance});
    }
    return out;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Grassmann algebra, superqubit and CHSH toolkit."};
    app.require_subcommand(1);

    bool verbose = false;
    std::string inject_fault;
    auto *verify = app.add_subcommand("verify", "Run the algebraic property suite.");
    verify->add_flag("--verbose,-v", verbose, "Print residual magnitudes.");
    verify->add_option("--inject-fault", inject_fault, "Flip a sign in the named check (harness hook).");

    std::vector<double> state_args;
    std::string json_out;
    std::string csv_out;
    auto *state = app.add_subcommand("state", "Print a superqubit S(2p eta)U(theta, phi)|0> and its probabilities.");
    state->add_option("args", state_args, "Displacement p and Bloch angles theta, phi.")
        ->type_name("P THETA PHI")
        ->expected(3)
        ->required();
    state->add_option("--json", json_out, "Write the state and probabilities as JSON.");

    std::vector<double> transition_args;
    size_t grid = 41;
    auto *transition = app.add_subcommand("transition", "Transition probability between two superqubits.");
    transition->add_option("args", transition_args, "psi(p, theta, phi) and phi(q, theta2, phi2).")
        ->type_name("P THETA PHI Q THETA2 PHI2")
        ->expected(6);
    transition->add_option("--csv", csv_out, "Write the (p, q) grid of 1 - (p - q)^2 with the s1/s2 flags.");
    transition->add_option("--grid", grid, "Grid points per axis for --csv.")->check(CLI::Range(size_t{2}, size_t{100000}));

    std::string strategy_path;
    auto *chsh_eval = app.add_subcommand("chsh-eval", "Evaluate a CHSH strategy file.");
    chsh_eval->add_option("strategy", strategy_path, "Strategy JSON file.")->required();
    chsh_eval->add_option("--json", json_out, "Write the result JSON here instead of stdout.");
    chsh_eval->add_option("--csv", csv_out, "Write the 36 outcome probabilities as CSV.");

    OptimizeConfig config;
    std::string config_path;
    uint64_t seed = 0;
    size_t restarts = 0;
    size_t max_iters = 0;
    double penalty = 0;
    double tol = 0;
    size_t threads = 0;
    bool quantum_only = false;
    auto add_search_options = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "Master seed.");
        sub->add_option("--restarts", restarts, "Number of restarts.");
        sub->add_option("--max-iters", max_iters, "Iteration cap per Nelder-Mead run.");
        sub->add_option("--penalty", penalty, "Initial quadratic penalty weight.");
        sub->add_option("--tol", tol, "Largest accepted constraint violation.");
        sub->add_option("--threads", threads, "Worker threads for restarts (0 = all cores). Output is unchanged.");
        sub->add_option("--json", json_out, "Write the result JSON here instead of stdout.");
    };
    auto *chsh_opt = app.add_subcommand("chsh-optimize", "Multi-start constrained maximization of the CHSH win probability.");
    chsh_opt->add_option("config", config_path, "Optional config JSON; flags override its values.");
    add_search_options(chsh_opt);
    chsh_opt->add_option("--csv", csv_out, "Write the 36 outcome probabilities as CSV.");
    chsh_opt->add_flag("--quantum-only", quantum_only, "Pin the displacements to zero.");

    auto *baseline = app.add_subcommand("baseline", "Classical and quantum CHSH values.");
    add_search_options(baseline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return EXIT_OK;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return EXIT_OK;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    }

    auto apply_flags = [&](CLI::App *sub) {
        if (sub->count("--seed")) {
            config.seed = seed;
        }
        if (sub->count("--restarts")) {
            config.restarts = restarts;
        }
        if (sub->count("--max-iters")) {
            config.max_iters = max_iters;
        }
        if (sub->count("--penalty")) {
            config.penalty_weight = penalty;
        }
        if (sub->count("--tol")) {
            config.tolerance = tol;
        }
        if (sub->count("--threads")) {
            config.threads = threads;
        }
    };

    try {
        if (*verify) {
            return cmd_verify(verbose, inject_fault, out, err);
        }
        if (*state) {
            return cmd_state(state_args[0], state_args[1], state_args[2], json_out, out, err);
        }
        if (*transition) {
            if (transition_args.empty() && csv_out.empty()) {
                throw InputError("transition needs P THETA PHI Q THETA2 PHI2 or --csv OUT.");
            }
            if (!csv_out.empty()) {
                write_file(csv_out, transition_grid_csv(grid));
            }
            return transition_args.empty() ? EXIT_OK : cmd_transition(transition_args, out, err);
        }
        if (*chsh_eval) {
            return cmd_chsh_eval(strategy_path, json_out, csv_out, out);
        }
        if (*chsh_opt) {
            if (!config_path.empty()) {
                apply_config_json(read_file(config_path), config);
            }
            apply_flags(chsh_opt);
            if (quantum_only) {
                config.quantum_only = true;
            }
            return cmd_chsh_optimize(config, json_out, csv_out, out, err);
        }
        if (*baseline) {
            apply_flags(baseline);
            return cmd_baseline(config, json_out, out, err);
        }
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_INPUT_ERROR;
    }
    return EXIT_INPUT_ERROR;
}

}  // namespace superq
