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

#include "superq/chsh.h"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "superq/errors.h"
#include "superq/superstate.h"

namespace superq {

namespace {

constexpr size_t ORDER = 4;

Supermatrix local_rotation(size_t pair, double displacement, const Angles &angles) {
    return rotation(ORDER, pair, {angles.theta, angles.phi, displacement});
}

// Dense arithmetic on CΛ_4 for the optimizer's inner loop. Every table is read off the generic
// Supernumber implementation, so the two paths share conventions.
constexpr size_t DENSE = 1 << ORDER;
using Dense = std::array<complex, DENSE>;

inline complex cmul(complex a, complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

using DenseMatrix = std::array<std::array<Dense, 3>, 3>;

Dense to_dense(const Supernumber &x) {
    Dense out{};
    for (const auto &t : x.terms()) {
        out[t.mono] = t.coeff;
    }
    return out;
}

DenseMatrix to_dense(const Supermatrix &z) {
    DenseMatrix out;
    for (size_t a = 0; a < 3; a++) {
        for (size_t b = 0; b < 3; b++) {
            out[a][b] = to_dense(z.at(a, b));
        }
    }
    return out;
}

struct DenseTables {
    std::array<std::array<double, DENSE>, DENSE> sign{};
    std::array<uint8_t, DENSE> hash_target{};
    std::array<double, DENSE> hash_sign{};
    std::array<complex, DENSE> rogers_weight{};
    std::array<bool, DENSE> odd{};
    // S(2pη) on pair k is s_poly[k-1][0] + p s_poly[k-1][1] + p^2 s_poly[k-1][2].
    std::array<std::array<DenseMatrix, 3>, 2> s_poly;

    DenseTables() {
        for (Monomial a = 0; a < DENSE; a++) {
            odd[a] = monomial_is_odd(a);
            for (Monomial b = 0; b < DENSE; b++) {
                sign[a][b] = merge_sign(a, b);
            }
            auto h = Supernumber::from_terms(ORDER, {Term{a, 1}}).hash();
            hash_target[a] = (uint8_t)h.terms()[0].mono;
            hash_sign[a] = h.terms()[0].coeff.real();
            if (!odd[a]) {
                double re = Supernumber::from_terms(ORDER, {Term{a, 1}}).modified_rogers();
                double im = -Supernumber::from_terms(ORDER, {Term{a, complex(0, 1)}}).modified_rogers();
                rogers_weight[a] = {re, im};
            }
        }
        for (size_t pair = 1; pair <= 2; pair++) {
            auto s0 = to_dense(s_matrix(ORDER, pair, 0));
            auto sp = to_dense(s_matrix(ORDER, pair, 1));
            auto sm = to_dense(s_matrix(ORDER, pair, -1));
            auto &poly = s_poly[pair - 1];
            for (size_t r = 0; r < 3; r++) {
                for (size_t c = 0; c < 3; c++) {
                    for (size_t x = 0; x < DENSE; x++) {
                        poly[0][r][c][x] = s0[r][c][x];
                        poly[1][r][c][x] = (sp[r][c][x] - sm[r][c][x]) / 2.0;
                        poly[2][r][c][x] = (sp[r][c][x] + sm[r][c][x]) / 2.0 - s0[r][c][x];
                    }
                }
            }
        }
    }
};

const DenseTables &dense_tables() {
    static const DenseTables tables;
    return tables;
}

void dense_mul_add(const DenseTables &t, const Dense &a, const Dense &b, double scale, Dense &out) {
    uint8_t na = 0;
    uint8_t nb = 0;
    std::array<uint8_t, DENSE> ia;
    std::array<uint8_t, DENSE> ib;
    for (uint8_t x = 0; x < DENSE; x++) {
        if (a[x] != 0.0) {
            ia[na++] = x;
        }
        if (b[x] != 0.0) {
            ib[nb++] = x;
        }
    }
    for (uint8_t p = 0; p < na; p++) {
        uint8_t x = ia[p];
        for (uint8_t q = 0; q < nb; q++) {
            uint8_t y = ib[q];
            if (!(x & y)) {
                out[x | y] += cmul(a[x], b[y]) * (t.sign[x][y] * scale);
            }
        }
    }
}

// S(2 displacement η) U(angles) on the given pair.
DenseMatrix dense_rotation(const DenseTables &t, size_t pair, double displacement, const Angles &angles) {
    complex alpha = std::cos(angles.theta);
    complex beta = std::polar(1.0, angles.phi) * std::sin(angles.theta);
    complex u[2][2] = {{alpha, -std::conj(beta)}, {beta, std::conj(alpha)}};
    const auto &poly = t.s_poly[pair - 1];
    double powers[3] = {1, displacement, displacement * displacement};
    DenseMatrix s{};
    for (size_t d = 0; d < 3; d++) {
        for (size_t r = 0; r < 3; r++) {
            for (size_t c = 0; c < 3; c++) {
                for (size_t x = 0; x < DENSE; x++) {
                    s[r][c][x] += poly[d][r][c][x] * powers[d];
                }
            }
        }
    }
    DenseMatrix out{};
    for (size_t r = 0; r < 3; r++) {
        for (size_t c = 0; c < 2; c++) {
            for (size_t x = 0; x < DENSE; x++) {
                out[r][c][x] = cmul(s[r][0][x], u[0][c]) + cmul(s[r][1][x], u[1][c]);
            }
        }
        out[r][2] = s[r][2];
    }
    return out;
}

OutcomeTables dense_outcome_tables(const Strategy &strat) {
    const auto &t = dense_tables();
    auto up = upsilon(strat.p_a, strat.p_b).right_column();
    std::array<Dense, 9> u;
    for (size_t k = 0; k < 9; k++) {
        u[k] = to_dense(up.at(k, 0));
    }
    OutcomeTables out;
    for (int j = 0; j < 2; j++) {
        auto zb = dense_rotation(t, 2, strat.s[j], strat.bob[j]);
        // (I ⊗ Z_B) carries no grading sign.
        std::array<Dense, 9> w{};
        for (size_t m = 0; m < 3; m++) {
            for (size_t n = 0; n < 3; n++) {
                for (size_t k = 0; k < 3; k++) {
                    dense_mul_add(t, zb[n][k], u[m * 3 + k], 1, w[m * 3 + n]);
                }
            }
        }
        for (int i = 0; i < 2; i++) {
            auto za = dense_rotation(t, 1, strat.r[i], strat.alice[i]);
            for (size_t m = 0; m < 3; m++) {
                for (size_t n = 0; n < 3; n++) {
                    // (Z_A ⊗ I) picks up (-1)^{(|m| + |m'|)|n|}.
                    Dense v{};
                    for (size_t k = 0; k < 3; k++) {
                        double sign = (n == 2 && ((m == 2) != (k == 2))) ? -1 : 1;
                        dense_mul_add(t, za[m][k], w[k * 3 + n], sign, v);
                    }
                    bool odd_ket = (m == 2) != (n == 2);
                    if (odd_ket) {
                        for (size_t x = 0; x < DENSE; x++) {
                            if (t.odd[x]) {
                                v[x] = -v[x];
                            }
                        }
                    }
                    Dense hv{};
                    for (size_t x = 0; x < DENSE; x++) {
                        hv[t.hash_target[x]] = std::conj(v[x]) * t.hash_sign[x];
                    }
                    Dense prod{};
                    dense_mul_add(t, v, hv, 1, prod);
                    double p = 0;
                    for (size_t x = 0; x < DENSE; x++) {
                        p += t.rogers_weight[x].real() * prod[x].real() - t.rogers_weight[x].imag() * prod[x].imag();
                    }
                    double sign = (odd_ket ? -1.0 : 1.0) * metric_sign(2, m * 3 + n);
                    out[i][j][m * 3 + n] = sign * p;
                }
            }
        }
    }
    return out;
}

double clamp_displacement(double x) {
    return std::clamp(x, -DISPLACEMENT_BOUND, DISPLACEMENT_BOUND);
}

double excess(double x) {
    return std::max(0.0, std::abs(x) - DISPLACEMENT_BOUND);
}

double probability_violation(const OutcomeTables &tables) {
    double v = 0;
    for (const auto &row : tables) {
        for (const auto &table : row) {
            for (double p : table) {
                v = std::max({v, -p, p - 1});
            }
        }
    }
    return v;
}

Strategy scale_displacements(const Strategy &strat, double t) {
    Strategy out = strat;
    out.p_a *= t;
    out.p_b *= t;
    for (size_t k = 0; k < 2; k++) {
        out.r[k] *= t;
        out.s[k] *= t;
    }
    return out;
}

Strategy clamp_strategy(const Strategy &strat) {
    Strategy out = strat;
    out.p_a = clamp_displacement(out.p_a);
    out.p_b = clamp_displacement(out.p_b);
    for (size_t k = 0; k < 2; k++) {
        out.r[k] = clamp_displacement(out.r[k]);
        out.s[k] = clamp_displacement(out.s[k]);
    }
    return out;
}

// Maps the free search coordinates onto a strategy. Quantum-only searches see only the 8 angles.
struct SearchSpace {
    bool quantum_only;
    double penalty_weight;
    size_t evaluations = 0;

    size_t dim() const {
        return quantum_only ? NUM_STRATEGY_PARAMS - NUM_SUPER_PARAMS : NUM_STRATEGY_PARAMS;
    }

    std::array<double, NUM_STRATEGY_PARAMS> expand(const gsl_vector *x) const {
        std::array<double, NUM_STRATEGY_PARAMS> params{};
        size_t offset = quantum_only ? NUM_SUPER_PARAMS : 0;
        for (size_t k = 0; k < dim(); k++) {
            params[offset + k] = gsl_vector_get(x, k);
        }
        return params;
    }

    void store(const Strategy &strat, gsl_vector *x) const {
        auto params = strat.to_params();
        size_t offset = quantum_only ? NUM_SUPER_PARAMS : 0;
        for (size_t k = 0; k < dim(); k++) {
            gsl_vector_set(x, k, params[offset + k]);
        }
    }

    Strategy strategy(const gsl_vector *x) const {
        return clamp_strategy(Strategy::from_params(expand(x)));
    }
};

double negated_objective(const gsl_vector *x, void *data) {
    auto *space = static_cast<SearchSpace *>(data);
    space->evaluations++;
    auto raw = Strategy::from_params(space->expand(x));
    double outside = box_excess(raw);
    auto ev = evaluate(clamp_strategy(raw));
    double v = std::max(ev.violation, 0.0);
    return -(ev.p_win - space->penalty_weight * (v * v + outside * outside));
}

struct RestartOutcome {
    bool feasible = false;
    Strategy strategy;
    Evaluation evaluation;
    size_t iterations = 0;
    size_t evaluations = 0;
};

Strategy random_start(std::mt19937_64 &rng, bool quantum_only) {
    std::uniform_real_distribution<double> displacement(-DISPLACEMENT_BOUND, DISPLACEMENT_BOUND);
    std::uniform_real_distribution<double> polar(0, M_PI);
    std::uniform_real_distribution<double> azimuth(-M_PI, M_PI);
    Strategy s;
    for (auto *a : {&s.alice[0], &s.alice[1], &s.bob[0], &s.bob[1]}) {
        a->theta = polar(rng);
        a->phi = azimuth(rng);
    }
    if (!quantum_only) {
        s.p_a = displacement(rng);
        s.p_b = displacement(rng);
        for (size_t k = 0; k < 2; k++) {
            s.r[k] = displacement(rng);
            s.s[k] = displacement(rng);
        }
    }
    return s;
}

// One Nelder-Mead run from x (updated in place). Returns the iterations used.
size_t nelder_mead(SearchSpace &space, gsl_vector *x, double super_step, double angle_step, size_t max_iters) {
    size_t n = space.dim();
    gsl_multimin_function fn{&negated_objective, n, &space};
    gsl_vector *step = gsl_vector_alloc(n);
    for (size_t k = 0; k < n; k++) {
        bool angle = space.quantum_only || k >= NUM_SUPER_PARAMS;
        gsl_vector_set(step, k, angle ? angle_step : super_step);
    }
    gsl_multimin_fminimizer *m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(m, &fn, x, step);
    size_t iter = 0;
    while (iter < max_iters) {
        iter++;
        if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-10) == GSL_SUCCESS) {
            break;
        }
    }
    gsl_vector_memcpy(x, gsl_multimin_fminimizer_x(m));
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(step);
    return iter;
}

struct Stage {
    double weight_factor;
    double super_step;
    double angle_step;
};

// A coarse run, a re-initialized run, then runs with shrinking simplices under a growing penalty.
constexpr Stage SCHEDULE[] = {
    {1, 0.1, 0.5},
    {1, 0.05, 0.1},
    {1e2, 1e-2, 2e-2},
    {1e4, 1e-3, 2e-3},
    {1e6, 1e-4, 2e-4},
};

RestartOutcome run_restart(const OptimizeConfig &config, size_t restart) {
    std::seed_seq seq{(uint32_t)config.seed, (uint32_t)(config.seed >> 32), (uint32_t)restart,
                      (uint32_t)((uint64_t)restart >> 32)};
    std::mt19937_64 rng(seq);
    Strategy start = restore_feasibility(random_start(rng, config.quantum_only), config.tolerance);

    RestartOutcome out;
    Strategy end = start;
    if (config.max_iters > 0) {
        SearchSpace space{config.quantum_only, config.penalty_weight};
        gsl_vector *x = gsl_vector_alloc(space.dim());
        space.store(start, x);
        for (const auto &stage : SCHEDULE) {
            space.penalty_weight = config.penalty_weight * stage.weight_factor;
            out.iterations += nelder_mead(space, x, stage.super_step, stage.angle_step, config.max_iters);
        }
        end = restore_feasibility(space.strategy(x), config.tolerance);
        out.evaluations = space.evaluations;
        gsl_vector_free(x);
    }
    out.strategy = end;
    out.evaluation = evaluate(end);
    out.feasible = out.evaluation.violation <= config.tolerance;
    return out;
}

}  // namespace

std::array<double, NUM_STRATEGY_PARAMS> Strategy::to_params() const {
    return {p_a,         p_b,       r[0],         r[1],       s[0],         s[1],       alice[0].theta,
            alice[0].phi, alice[1].theta, alice[1].phi, bob[0].theta, bob[0].phi, bob[1].theta, bob[1].phi};
}

Strategy Strategy::from_params(const std::array<double, NUM_STRATEGY_PARAMS> &x) {
    Strategy s;
    s.p_a = x[0];
    s.p_b = x[1];
    s.r = {x[2], x[3]};
    s.s = {x[4], x[5]};
    s.alice = {Angles{x[6], x[7]}, Angles{x[8], x[9]}};
    s.bob = {Angles{x[10], x[11]}, Angles{x[12], x[13]}};
    return s;
}

Strategy Strategy::tsirelson() {
    Strategy s;
    s.alice = {Angles{0, 0}, Angles{M_PI / 4, 0}};
    s.bob = {Angles{M_PI / 8, 0}, Angles{-M_PI / 8, 0}};
    return s;
}

bool Strategy::is_quantum() const {
    return p_a == 0 && p_b == 0 && r[0] == 0 && r[1] == 0 && s[0] == 0 && s[1] == 0;
}

bool is_winning_outcome(int i, int j, size_t outcome) {
    if (outcome >= 9) {
        throw DimensionError("Outcome index out of range.");
    }
    int a = outcome / 3 == 0 ? 0 : 1;
    int b = outcome % 3 == 0 ? 0 : 1;
    return (a ^ b) == (i & j);
}

OutcomeTable outcome_probs(int i, int j, const Strategy &strat) {
    if ((i != 0 && i != 1) || (j != 0 && j != 1)) {
        throw DomainError("Referee bits must be 0 or 1.");
    }
    auto za = local_rotation(1, strat.r[i], strat.alice[i]);
    auto zb = local_rotation(2, strat.s[j], strat.bob[j]);
    auto probs = measure_real(apply_local(za, zb, upsilon(strat.p_a, strat.p_b)));
    OutcomeTable out;
    std::copy(probs.begin(), probs.end(), out.begin());
    return out;
}

OutcomeTables all_outcome_probs(const Strategy &strat) {
    return dense_outcome_tables(strat);
}

double win_prob(const OutcomeTables &tables) {
    double total = 0;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (size_t k = 0; k < 9; k++) {
                if (is_winning_outcome(i, j, k)) {
                    total += tables[i][j][k];
                }
            }
        }
    }
    return total / 4;
}

double win_prob(const Strategy &strat) {
    return win_prob(all_outcome_probs(strat));
}

double box_excess(const Strategy &strat) {
    return std::max({excess(strat.p_a), excess(strat.p_b), excess(strat.r[0]), excess(strat.r[1]), excess(strat.s[0]),
                     excess(strat.s[1])});
}

double constraint_violation(const Strategy &strat, const OutcomeTables &tables) {
    return std::max(box_excess(strat), probability_violation(tables));
}

double constraint_violation(const Strategy &strat) {
    return constraint_violation(strat, all_outcome_probs(strat));
}

Evaluation evaluate(const Strategy &strat) {
    Evaluation ev;
    ev.tables = all_outcome_probs(strat);
    ev.p_win = win_prob(ev.tables);
    ev.violation = constraint_violation(strat, ev.tables);
    return ev;
}

double classical_win_prob() {
    double best = 0;
    for (int bits = 0; bits < 16; bits++) {
        int a[2] = {bits & 1, bits >> 1 & 1};
        int b[2] = {bits >> 2 & 1, bits >> 3 & 1};
        int wins = 0;
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                wins += (a[i] ^ b[j]) == (i & j);
            }
        }
        best = std::max(best, wins / 4.0);
    }
    return best;
}

Strategy restore_feasibility(const Strategy &strat, double tolerance) {
    Strategy clamped = clamp_strategy(strat);
    if (constraint_violation(clamped) <= tolerance) {
        return clamped;
    }
    // t = 0 is an ordinary qubit strategy, whose probabilities are valid.
    double lo = 0;
    double hi = 1;
    for (int k = 0; k < 60; k++) {
        double mid = (lo + hi) / 2;
        if (constraint_violation(scale_displacements(clamped, mid)) <= tolerance) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return scale_displacements(clamped, lo);
}

OptimizationResult optimize(const OptimizeConfig &config) {
    if (config.restarts == 0) {
        throw DomainError("optimize needs at least one restart.");
    }
    if (!(config.penalty_weight > 0) || !(config.tolerance >= 0)) {
        throw DomainError("optimize needs a positive penalty weight and a nonnegative tolerance.");
    }
    std::vector<RestartOutcome> outcomes(config.restarts);
    size_t threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = std::min(threads, config.restarts);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t r = next++; r < config.restarts; r = next++) {
            outcomes[r] = run_restart(config, r);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    OptimizationResult result;
    result.seed = config.seed;
    result.restarts = config.restarts;
    for (size_t r = 0; r < outcomes.size(); r++) {
        const auto &o = outcomes[r];
        result.evaluations += o.evaluations;
        if (!o.feasible) {
            continue;
        }
        if (!result.feasible || o.evaluation.p_win > result.p_win) {
            result.feasible = true;
            result.strategy = o.strategy;
            result.p_win = o.evaluation.p_win;
            result.violation = o.evaluation.violation;
            result.tables = o.evaluation.tables;
            result.best_restart = r;
            result.iterations = o.iterations;
        }
    }
    return result;
}

}  // namespace superq
