// Copyright 2026 The qpt Authors
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

#ifndef QPT_CLI_H
#define QPT_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpt/boolfn.h"
#include "qpt/rng.h"

namespace qpt {

/// Invalid configuration; the message names the offending field.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::string subcommand;
    int n = 4;
    int t = 2;
    int m = 2;
    double epsilon = 0.25;
    double delta = 0.1;
    int64_t trials = 1;
    uint64_t seed = 1;
    /// Builtin name with optional `:key=value,...` parameters, or `@path`.
    std::string function_spec = "majority";
    /// Sample sizes for baseline-triangle.
    std::vector<int> q{8, 16, 32, 64};
    /// Monte Carlo triples for three-fold-check (0 = exact paths only).
    int64_t samples = 0;
    /// Largest t for ensemble-distinguish (0 = ceil(2/eps)).
    int t_max = 0;
    std::string output;
    std::string csv;
    /// Worker threads (0 = hardware concurrency). Not echoed.
    unsigned threads = 0;
};

const std::vector<std::string> &subcommand_names();

/// The fields that determine a run, in a fixed order.
nlohmann::ordered_json config_to_json(const ExperimentConfig &config);
ExperimentConfig config_from_json(const nlohmann::json &j);

struct ResolvedFunction {
    BooleanFunction f;
    /// Drawn from the trial stream rather than fixed by the function string.
    bool random;
};

/// Resolves a function spec at arity n. Parameters:
///   i=<coordinate>                      dictator, antidictator
///   h=<hex|@path|random|balanced>       mm, mm_dual (n is the arity of h)
///   a=, b=, c=<hex|@path|random>        triple, pair (n is the set arity)
/// `h=random` draws through the MM ensemble sampler (bias at most
/// 2^(-n/3)); `balanced` draws h with exactly 2^(n-1) ones.
ResolvedFunction resolve_function(const std::string &spec, int n, RngStream &rng);
bool function_spec_is_random(const std::string &spec);

struct ExperimentResult {
    /// schema, config, trials, aggregates, oracle; no wall-clock field.
    nlohmann::ordered_json record;
};

ExperimentResult run_experiment(const ExperimentConfig &config);

/// Command-line entry point. Exit codes: 0 success, 2 usage error,
/// 3 capability error, 1 any other failure.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qpt

#endif
