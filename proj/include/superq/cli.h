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

#ifndef _SUPERQ_CLI_H
#define _SUPERQ_CLI_H

#include <iostream>
#include <string>
#include <vector>

#include "superq/chsh.h"

namespace superq {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CHECK_FAILED = 1;
constexpr int EXIT_INPUT_ERROR = 2;

/// Reads a strategy from either a bare strategy object or any document with a "strategy" key.
Strategy strategy_from_json(const std::string &text);
std::string strategy_to_json(const Strategy &strat);

/// {"strategy": ..., "result": {"p_win", "violation", "tables"}}.
std::string evaluation_json(const Strategy &strat, const Evaluation &ev);
/// Config keys, "strategy" and "result" for an optimization run.
std::string optimization_json(const OptimizeConfig &config, const OptimizationResult &result);
/// Applies any of "seed", "restarts", "max_iters", "penalty_weight", "tolerance", "quantum_only",
/// "threads" found in the JSON document to `config`.
void apply_config_json(const std::string &text, OptimizeConfig &config);
/// Rows "i,j,outcome,probability" for the 36 probabilities.
std::string tables_csv(const OutcomeTables &tables);

struct VerifyCheck {
    std::string name;
    double residual;
    double tolerance;
    bool passed;
};
/// The property suite run by `verify`. A check named in `inject_fault` has a sign flipped in its oracle.
std::vector<VerifyCheck> run_verify_suite(const std::string &inject_fault = "");
std::vector<std::string> verify_check_names();

/// Entry point of the command-line tool. Returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace superq

#endif
