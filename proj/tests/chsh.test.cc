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

#include <cmath>
#include <iostream>

#include "gtest/gtest.h"

#include "superq/errors.h"
#include "superq/superstate.h"
#include "test_util.test.h"

using namespace superq;

namespace {

double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Strategy random_strategy(std::mt19937_64 &rng, double bound) {
    std::array<double, NUM_STRATEGY_PARAMS> x;
    for (size_t k = 0; k < NUM_STRATEGY_PARAMS; k++) {
        x[k] = k < NUM_SUPER_PARAMS ? uniform(rng, -bound, bound) : uniform(rng, -M_PI, M_PI);
    }
    return Strategy::from_params(x);
}

}  // namespace

TEST(chsh, params_roundtrip) {
    auto &rng = test_rng();
    auto s = random_strategy(rng, 0.5);
    ASSERT_EQ(Strategy::from_params(s.to_params()), s);
    auto x = s.to_params();
    ASSERT_EQ(x[0], s.p_a);
    ASSERT_EQ(x[5], s.s[1]);
    ASSERT_EQ(x[8], s.alice[1].theta);
    ASSERT_EQ(x[13], s.bob[1].phi);
    ASSERT_TRUE(Strategy::tsirelson().is_quantum());
    ASSERT_FALSE(s.is_quantum());
}

TEST(chsh, winning_outcome_sets) {
    // Indices 3m + n over {0, 1, •}.
    std::vector<size_t> usual = {0, 4, 5, 7, 8};
    std::vector<size_t> both_one = {1, 2, 3, 6};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            const auto &expected = (i & j) ? both_one : usual;
            for (size_t k = 0; k < 9; k++) {
                bool in = std::find(expected.begin(), expected.end(), k) != expected.end();
                ASSERT_EQ(is_winning_outcome(i, j, k), in) << i << j << " " << ket_label(2, k);
            }
        }
    }
    ASSERT_THROW(is_winning_outcome(0, 0, 9), DimensionError);
    ASSERT_THROW(outcome_probs(2, 0, Strategy{}), DomainError);
}

TEST(chsh, fast_tables_match_generic_composition) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 30; rep++) {
        auto s = random_strategy(rng, rep < 15 ? 0.5 : 3);
        auto tables = all_outcome_probs(s);
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                auto generic = outcome_probs(i, j, s);
                for (size_t k = 0; k < 9; k++) {
                    ASSERT_NEAR(tables[i][j][k], generic[k], 1e-13);
                }
            }
        }
    }
}

TEST(chsh, outcome_probabilities_sum_to_one) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 100; rep++) {
        auto tables = all_outcome_probs(random_strategy(rng, rep < 50 ? 0.5 : 2));
        for (const auto &row : tables) {
            for (const auto &t : row) {
                double total = 0;
                for (double p : t) {
                    total += p;
                }
                ASSERT_NEAR(total, 1, 1e-10);
            }
        }
    }
}

TEST(chsh, identity_settings_give_upsilon_table) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 10; rep++) {
        Strategy s;
        s.p_a = uniform(rng, -0.5, 0.5);
        s.p_b = uniform(rng, -0.5, 0.5);
        auto expected = measure_real(upsilon(s.p_a, s.p_b));
        auto tables = all_outcome_probs(s);
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                for (size_t k = 0; k < 9; k++) {
                    ASSERT_NEAR(tables[i][j][k], expected[k], 1e-15);
                }
            }
        }
    }
}

TEST(chsh, quantum_strategies_match_qubit_oracle) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 100; rep++) {
        auto s = random_strategy(rng, 0);
        ASSERT_TRUE(s.is_quantum());
        ASSERT_NEAR(win_prob(s), qubit_chsh_win_prob(s), 1e-10);
        auto tables = all_outcome_probs(s);
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                for (size_t m = 0; m < 3; m++) {
                    ASSERT_NEAR(tables[i][j][m * 3 + 2], 0, 1e-15);
                    ASSERT_NEAR(tables[i][j][6 + m], 0, 1e-15);
                }
            }
        }
    }
}

TEST(chsh, tsirelson_and_zero_strategies) {
    double tsirelson = std::pow(std::cos(M_PI / 8), 2);
    ASSERT_NEAR(win_prob(Strategy::tsirelson()), tsirelson, 1e-12);
    ASSERT_NEAR(qubit_chsh_win_prob(Strategy::tsirelson()), tsirelson, 1e-12);
    // All-zero angles: both parties always answer 0 on the Bell state.
    ASSERT_NEAR(win_prob(Strategy{}), 0.75, 1e-15);
    ASSERT_EQ(constraint_violation(Strategy{}), 0);
}

TEST(chsh, classical_value) {
    ASSERT_EQ(classical_win_prob(), 0.75);
    // Independent count over all answer functions.
    double best = 0;
    for (int a0 = 0; a0 < 2; a0++) {
        for (int a1 = 0; a1 < 2; a1++) {
            for (int b0 = 0; b0 < 2; b0++) {
                for (int b1 = 0; b1 < 2; b1++) {
                    int wins = ((a0 ^ b0) == 0) + ((a0 ^ b1) == 0) + ((a1 ^ b0) == 0) + ((a1 ^ b1) == 1);
                    best = std::max(best, wins / 4.0);
                }
            }
        }
    }
    ASSERT_EQ(best, classical_win_prob());
}

TEST(chsh, party_exchange_symmetry) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 20; rep++) {
        auto s = random_strategy(rng, 0.5);
        Strategy t = s;
        std::swap(t.p_a, t.p_b);
        std::swap(t.r, t.s);
        std::swap(t.alice, t.bob);
        ASSERT_NEAR(win_prob(s), win_prob(t), 1e-13);
    }
}

TEST(chsh, constraint_violation) {
    Strategy s;
    s.p_a = 0.9;
    ASSERT_GE(constraint_violation(s), 0.4);
    ASSERT_NEAR(box_excess(s), 0.4, 1e-15);
    s.p_a = -0.5;
    ASSERT_EQ(box_excess(s), 0);
    auto &rng = test_rng();
    bool saw_negative = false;
    for (int rep = 0; rep < 200; rep++) {
        auto t = random_strategy(rng, 0.5);
        auto ev = evaluate(t);
        double outside = 0;
        for (const auto &row : ev.tables) {
            for (const auto &table : row) {
                for (double p : table) {
                    outside = std::max({outside, -p, p - 1});
                }
            }
        }
        ASSERT_EQ(ev.violation, outside);
        saw_negative |= outside > 0;
        if (ev.violation <= 1e-9) {
            ASSERT_LE(ev.p_win, 1);
        }
    }
    // Locally rotated Υ does produce negative probabilities inside the box.
    ASSERT_TRUE(saw_negative);
}

TEST(chsh, restore_feasibility) {
    auto &rng = test_rng();
    for (int rep = 0; rep < 30; rep++) {
        auto s = random_strategy(rng, 0.8);
        auto r = restore_feasibility(s, 1e-9);
        ASSERT_LE(constraint_violation(r), 1e-9);
        ASSERT_EQ(r.alice, s.alice);
        ASSERT_EQ(r.bob, s.bob);
    }
    Strategy ok;
    ok.p_a = 0.1;
    ASSERT_EQ(restore_feasibility(ok, 1e-9), ok);
}

TEST(chsh, optimize_without_iterations_returns_start) {
    OptimizeConfig config;
    config.seed = 17;
    config.restarts = 1;
    config.max_iters = 0;
    auto result = optimize(config);
    ASSERT_TRUE(result.feasible);
    ASSERT_EQ(result.iterations, 0);
    ASSERT_EQ(result.evaluations, 0);
    ASSERT_EQ(result.best_restart, 0);
    ASSERT_LE(result.violation, config.tolerance);
    // Already feasible, so restoring it again is the identity.
    ASSERT_EQ(restore_feasibility(result.strategy, config.tolerance), result.strategy);
    ASSERT_EQ(evaluate(result.strategy).p_win, result.p_win);
}

TEST(chsh, optimize_is_deterministic_across_threads) {
    OptimizeConfig config;
    config.seed = 5;
    config.restarts = 6;
    config.max_iters = 150;
    auto a = optimize(config);
    config.threads = 3;
    auto b = optimize(config);
    ASSERT_TRUE(a.feasible);
    ASSERT_EQ(a.strategy, b.strategy);
    ASSERT_EQ(a.p_win, b.p_win);
    ASSERT_EQ(a.best_restart, b.best_restart);
    ASSERT_EQ(a.evaluations, b.evaluations);
    config.seed = 6;
    auto c = optimize(config);
    ASSERT_FALSE(c.strategy == a.strategy);
}

TEST(chsh, optimize_result_is_recomputable_and_feasible) {
    OptimizeConfig config;
    config.seed = 3;
    config.restarts = 4;
    config.max_iters = 300;
    auto result = optimize(config);
    ASSERT_TRUE(result.feasible);
    auto ev = evaluate(result.strategy);
    ASSERT_NEAR(ev.p_win, result.p_win, 1e-10);
    ASSERT_LE(ev.violation, 1e-9);
    ASSERT_LE(box_excess(result.strategy), 0);
    for (const auto &row : result.tables) {
        for (const auto &table : row) {
            for (double p : table) {
                ASSERT_GE(p, -1e-9);
                ASSERT_LE(p, 1 + 1e-9);
            }
        }
    }
    ASSERT_LE(result.p_win, 1);
}

TEST(chsh, optimize_never_reports_points_outside_tolerance) {
    // With zero tolerance, even rounding noise in a qubit strategy can disqualify a restart.
    OptimizeConfig config;
    config.seed = 11;
    config.restarts = 3;
    config.max_iters = 100;
    config.tolerance = 0;
    auto result = optimize(config);
    if (result.feasible) {
        ASSERT_EQ(result.violation, 0);
    }
    config.restarts = 0;
    ASSERT_THROW(optimize(config), DomainError);
}

TEST(chsh, quantum_only_search_reaches_tsirelson) {
    OptimizeConfig config;
    config.seed = 2;
    config.restarts = 4;
    config.quantum_only = true;
    auto result = optimize(config);
    ASSERT_TRUE(result.feasible);
    ASSERT_TRUE(result.strategy.is_quantum());
    ASSERT_NEAR(result.p_win, std::pow(std::cos(M_PI / 8), 2), 1e-6);
}

TEST(chsh, rounded_optimum_parameters) {
    // Four-digit near-optimal parameters, angles listed as π/2 - θ; recorded, not asserted.
    Strategy s;
    s.p_a = -0.5;
    s.r = {-0.3450, -0.3465};
    s.alice = {Angles{M_PI / 2 - 1.7768, 0}, Angles{M_PI / 2 + 1.7749, 0}};
    s.bob = {Angles{0, 0}, Angles{M_PI / 2 + M_PI / 4, 0}};
    auto ev = evaluate(s);
    RecordProperty("p_win", std::to_string(ev.p_win));
    RecordProperty("violation", std::to_string(ev.violation));
    std::cout << "rounded optimum parameters: p_win = " << ev.p_win << ", violation = " << ev.violation << "\n";
    auto restored = restore_feasibility(s, 1e-9);
    std::cout << "after feasibility restoration: p_win = " << win_prob(restored) << "\n";
}
