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

#ifndef _SUPERQ_CHSH_H
#define _SUPERQ_CHSH_H

#include <array>
#include <cstdint>
#include <vector>

namespace superq {

/// Bloch angles of a measurement setting: U(cos θ, e^{iφ} sin θ).
struct Angles {
    double theta = 0;
    double phi = 0;
    bool operator==(const Angles &other) const = default;
};

constexpr size_t NUM_STRATEGY_PARAMS = 14;
constexpr size_t NUM_SUPER_PARAMS = 6;
/// Largest allowed |p_A|, |p_B|, |r_i|, |s_j|.
constexpr double DISPLACEMENT_BOUND = 0.5;

/// A full CHSH strategy for a shared Υ(p_A, p_B).
///
/// Alice's local operation for input bit i is S(2 r_i η_A) U(alice[i]), Bob's for input bit j is
/// S(2 s_j η_B) U(bob[j]).
struct Strategy {
    double p_a = 0;
    double p_b = 0;
    std::array<double, 2> r{};
    std::array<double, 2> s{};
    std::array<Angles, 2> alice{};
    std::array<Angles, 2> bob{};

    /// [p_A, p_B, r0, r1, s0, s1, θA0, φA0, θA1, φA1, θB0, φB0, θB1, φB1].
    std::array<double, NUM_STRATEGY_PARAMS> to_params() const;
    static Strategy from_params(const std::array<double, NUM_STRATEGY_PARAMS> &params);

    /// Optimal qubit strategy on the Bell state: Alice θ ∈ {0, π/4}, Bob θ ∈ {π/8, -π/8}.
    static Strategy tsirelson();
    bool is_quantum() const;
    bool operator==(const Strategy &other) const = default;
};

/// Probabilities of the nine outcomes |mn>, indexed 3m + n with 2 = •.
using OutcomeTable = std::array<double, 9>;
/// tables[i][j] for referee bits i (Alice) and j (Bob).
using OutcomeTables = std::array<std::array<OutcomeTable, 2>, 2>;

/// Whether outcome index (3m + n) wins for referee bits (i, j). Outcomes 1 and • both announce bit 1.
bool is_winning_outcome(int i, int j, size_t outcome);

OutcomeTable outcome_probs(int i, int j, const Strategy &strat);
OutcomeTables all_outcome_probs(const Strategy &strat);

/// Uniform 1/4 average over (i, j) of the winning outcome mass.
double win_prob(const OutcomeTables &tables);
double win_prob(const Strategy &strat);

/// Excess of the displacements beyond DISPLACEMENT_BOUND (max over the six).
double box_excess(const Strategy &strat);
/// max(box excess, distance of any of the 36 probabilities outside [0, 1]).
double constraint_violation(const Strategy &strat, const OutcomeTables &tables);
double constraint_violation(const Strategy &strat);

struct Evaluation {
    OutcomeTables tables;
    double p_win;
    double violation;
};
Evaluation evaluate(const Strategy &strat);

/// Best winning probability over the 16 deterministic classical strategies (a_i, b_j bits).
double classical_win_prob();

struct OptimizeConfig {
    uint64_t seed = 1;
    size_t restarts = 200;
    size_t max_iters = 2000;
    double penalty_weight = 1e3;
    /// Largest constraint violation accepted as feasible.
    double tolerance = 1e-9;
    /// Pin p_A = p_B = r = s = 0 and search only the angles.
    bool quantum_only = false;
    /// Worker threads for restarts (0 = hardware concurrency). Does not affect results.
    size_t threads = 1;
};

struct OptimizationResult {
    /// False when no restart produced a point within tolerance; the other fields are then unset.
    bool feasible = false;
    Strategy strategy;
    double p_win = 0;
    double violation = 0;
    OutcomeTables tables{};
    uint64_t seed = 0;
    size_t restarts = 0;
    /// Index of the restart that produced the reported strategy.
    size_t best_restart = 0;
    /// Simplex iterations used by that restart.
    size_t iterations = 0;
    /// Objective evaluations over all restarts.
    size_t evaluations = 0;
};

/// Seeded multi-start Nelder-Mead maximization of win_prob - penalty * violation^2.
///
/// Restart r starts from a point drawn with an RNG seeded by (seed, r), pulled into the
/// feasible set by shrinking the displacements, and the end point of each local search is
/// restored the same way. The best feasible restart wins, ties going to the lower index.
OptimizationResult optimize(const OptimizeConfig &config);

/// Largest t in [0, 1] (by bisection) such that scaling the six displacements by t is feasible.
/// Displacements are first clamped to the box. Returns the restored strategy.
Strategy restore_feasibility(const Strategy &strat, double tolerance);

}  // namespace superq

#endif
