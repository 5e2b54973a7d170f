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

#include "qpt/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "qpt/closed_forms.h"
#include "qpt/ensembles.h"
#include "qpt/errors.h"
#include "qpt/linalg.h"
#include "qpt/parallel.h"
#include "qpt/spectra.h"
#include "qpt/testers.h"
#include "qpt/three_fold.h"

namespace qpt {

using nlohmann::ordered_json;

const std::vector<std::string> &subcommand_names() {
    static const std::vector<std::string> names{
        "test-monotonicity",
        "test-symmetry",
        "test-triangle-freeness",
        "test-mm",
        "intersection2",
        "twin-spectrum",
        "three-fold-check",
        "ensemble-distinguish",
        "baseline-triangle",
        "oracle",
    };
    return names;
}

ordered_json config_to_json(const ExperimentConfig &c) {
    ordered_json j;
    j["subcommand"] = c.subcommand;
    j["n"] = c.n;
    j["t"] = c.t;
    j["m"] = c.m;
    j["epsilon"] = c.epsilon;
    j["delta"] = c.delta;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["function"] = c.function_spec;
    j["q"] = c.q;
    j["samples"] = c.samples;
    j["t_max"] = c.t_max;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
    ExperimentConfig c;
    try {
        c.subcommand = j.at("subcommand").get<std::string>();
        c.n = j.at("n").get<int>();
        c.t = j.at("t").get<int>();
        c.m = j.at("m").get<int>();
        c.epsilon = j.at("epsilon").get<double>();
        c.delta = j.at("delta").get<double>();
        c.trials = j.at("trials").get<int64_t>();
        c.seed = j.at("seed").get<uint64_t>();
        c.function_spec = j.at("function").get<std::string>();
        c.q = j.at("q").get<std::vector<int>>();
        c.samples = j.at("samples").get<int64_t>();
        c.t_max = j.at("t_max").get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    return c;
}

namespace {

struct FunctionSpec {
    std::string name;
    std::map<std::string, std::string> params;
    std::string path;
};

FunctionSpec parse_spec(const std::string &spec) {
    FunctionSpec out;
    if (spec.empty()) {
        throw UsageError("function: empty function spec");
    }
    if (spec[0] == '@') {
        out.path = spec.substr(1);
        return out;
    }
    size_t colon = spec.find(':');
    out.name = spec.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw UsageError("function: malformed parameter '" + item + "'");
            }
            out.params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    const auto &names = builtin_names();
    if (std::find(names.begin(), names.end(), out.name) == names.end()) {
        throw UsageError("function: unknown builtin '" + out.name + "'");
    }
    for (const auto &[k, v] : out.params) {
        if (k != "i" && k != "h" && k != "a" && k != "b" && k != "c") {
            throw UsageError("function: unknown parameter '" + k + "'");
        }
    }
    return out;
}

bool is_random_value(const std::string &v) {
    return v == "random" || v == "balanced";
}

BooleanFunction parameter_function(const std::string &value, int n, RngStream &rng) {
    if (value == "random") {
        return sample_uniform_function(n, rng);
    }
    if (value == "balanced") {
        return sample_balanced_function(n, rng);
    }
    BooleanFunction f = value[0] == '@' ? read_truth_table(value.substr(1)) : from_hex(value);
    return f;
}

}  // namespace

bool function_spec_is_random(const std::string &spec) {
    FunctionSpec s = parse_spec(spec);
    for (const auto &[k, v] : s.params) {
        if (is_random_value(v)) {
            return true;
        }
    }
    return false;
}

ResolvedFunction resolve_function(const std::string &spec, int n, RngStream &rng) {
    FunctionSpec s = parse_spec(spec);
    if (!s.path.empty()) {
        return {read_truth_table(s.path), false};
    }
    bool random = false;
    BuiltinParams params;
    for (const auto &[k, v] : s.params) {
        random = random || is_random_value(v);
        if (k == "i") {
            try {
                params.coordinate = std::stoi(v);
            } catch (const std::exception &) {
                throw UsageError("function: coordinate i must be an integer");
            }
        }
    }
    if ((s.name == "mm" || s.name == "mm_dual") && s.params.count("h") && s.params.at("h") == "random") {
        MmDraw draw = sample_mm_pair(n, s.name == "mm" ? MmFamily::F1 : MmFamily::F2, rng);
        return {draw.f, true};
    }
    for (const char *key : {"h", "a", "b", "c"}) {
        auto it = s.params.find(key);
        if (it == s.params.end()) {
            continue;
        }
        BooleanFunction g = parameter_function(it->second, n, rng);
        std::string k = key;
        (k == "h" ? params.h : k == "a" ? params.a : k == "b" ? params.b : params.c) = std::move(g);
    }
    return {builtin(s.name, n, params), random};
}

namespace {

struct Output {
    std::vector<ordered_json> rows;
    ordered_json aggregates = ordered_json::object();
    ordered_json oracle = ordered_json::object();
};

struct Runner {
    const ExperimentConfig &c;
    unsigned threads;

    template <typename Body>
    std::vector<ordered_json> trials(int64_t count, const std::string &tag, Body &&body) const {
        return run_indexed<ordered_json>((size_t)count, threads, [&](size_t i) {
            RngStream rng(c.seed, stream_id_for(i, tag));
            ordered_json row;
            row["trial"] = (int64_t)i;
            body(i, rng, row);
            return row;
        });
    }
};

void require(bool ok, const std::string &field, const std::string &why) {
    if (!ok) {
        throw UsageError(field + ": " + why);
    }
}

void validate(const ExperimentConfig &c) {
    const auto &names = subcommand_names();
    require(std::find(names.begin(), names.end(), c.subcommand) != names.end(), "subcommand",
            "unknown subcommand '" + c.subcommand + "'");
    require(c.n >= 1 && c.n <= MAX_ARITY, "n", "must lie in [1, " + std::to_string(MAX_ARITY) + "]");
    require(c.t >= 1, "t", "must be at least 1");
    require(c.m >= 0, "m", "must be nonnegative");
    require(c.epsilon > 0 && c.epsilon <= 1, "epsilon", "must lie in (0, 1]");
    require(c.delta > 0 && c.delta < 1, "delta", "must lie in (0, 1)");
    require(c.trials >= 1, "trials", "must be at least 1");
    require(c.samples >= 0, "samples", "must be nonnegative");
    require(c.t_max >= 0, "t_max", "must be nonnegative");
    require(!c.q.empty(), "q", "needs at least one sample size");
    for (int q : c.q) {
        require(q >= 3, "q", "every sample size must be at least 3");
    }
    parse_spec(c.function_spec);
}

ordered_json decision_aggregates(const std::vector<ordered_json> &rows) {
    int64_t accepts = 0;
    double stat_sum = 0;
    double copies_sum = 0;
    int64_t copies_min = INT64_MAX;
    int64_t copies_max = 0;
    for (const auto &r : rows) {
        accepts += r["decision"] == "accept";
        stat_sum += r["statistic"].get<double>();
        int64_t cp = r["copies_used"].get<int64_t>();
        copies_sum += (double)cp;
        copies_min = std::min(copies_min, cp);
        copies_max = std::max(copies_max, cp);
    }
    double n = (double)rows.size();
    ordered_json j;
    j["accept_rate"] = (double)accepts / n;
    j["reject_rate"] = (double)(rows.size() - accepts) / n;
    j["mean_statistic"] = stat_sum / n;
    j["mean_copies"] = copies_sum / n;
    j["min_copies"] = copies_min;
    j["max_copies"] = copies_max;
    return j;
}

void verdict_row(ordered_json &row, const TesterVerdict &v) {
    row["decision"] = decision_name(v.decision);
    row["statistic"] = v.statistic;
    row["copies_used"] = v.copies_used;
}

std::optional<BooleanFunction> fixed_function(const ExperimentConfig &c) {
    if (function_spec_is_random(c.function_spec)) {
        return std::nullopt;
    }
    RngStream unused(c.seed, 0);
    return resolve_function(c.function_spec, c.n, unused).f;
}

BooleanFunction trial_function(const ExperimentConfig &c, const std::optional<BooleanFunction> &fixed,
                               RngStream &rng) {
    if (fixed) {
        return *fixed;
    }
    RngStream frng = rng.child("function");
    return resolve_function(c.function_spec, c.n, frng).f;
}

void run_monotonicity(const ExperimentConfig &c, const Runner &run, Output &out) {
    auto fixed = fixed_function(c);
    int arity = fixed ? fixed->arity() : c.n;
    auto params = MonotonicityParams::make(arity, c.epsilon, c.delta);
    out.rows = run.trials(c.trials, c.subcommand, [&](size_t, RngStream &rng, ordered_json &row) {
        BooleanFunction f = trial_function(c, fixed, rng);
        TesterVerdict v = test_monotonicity(f, c.epsilon, c.delta, rng);
        verdict_row(row, v);
        row["shortfall"] = v.shortfall;
    });
    out.aggregates = decision_aggregates(out.rows);
    out.aggregates["expected_copies"] = params.total_copies();
    out.aggregates["copies_match_expected"] = std::all_of(out.rows.begin(), out.rows.end(), [&](const auto &r) {
        return r["copies_used"].template get<int64_t>() == params.total_copies();
    });
    out.aggregates["threshold"] = c.epsilon / (2.0 * arity);
    if (fixed) {
        out.oracle["violation_probability"] = monotone_violation_probability(*fixed);
        out.oracle["fourier_statistic"] = fourier_monotonicity_statistic(*fixed);
        out.oracle["is_monotone"] = is_monotone(*fixed);
        if (arity <= MAX_MONOTONE_ENUMERATION_ARITY) {
            out.oracle["distance_to_monotone"] = exact_distance_to_monotone(*fixed).epsilon;
        }
    }
}

void run_symmetry(const ExperimentConfig &c, const Runner &run, Output &out) {
    auto fixed = fixed_function(c);
    out.rows = run.trials(c.trials, c.subcommand, [&](size_t, RngStream &rng, ordered_json &row) {
        BooleanFunction f = trial_function(c, fixed, rng);
        verdict_row(row, test_symmetry(f, c.epsilon, c.delta, rng));
    });
    out.aggregates = decision_aggregates(out.rows);
    out.aggregates["expected_copies"] = symmetry_copy_count(c.epsilon, c.delta);
    out.aggregates["threshold"] = c.epsilon / 2;
    if (fixed) {
        out.oracle["violation_probability"] = symmetry_violation_probability(*fixed);
        out.oracle["distance_to_symmetric"] = exact_distance_to_symmetric(*fixed).epsilon;
        out.oracle["is_symmetric"] = is_symmetric(*fixed);
    }
}

void run_triangle(const ExperimentConfig &c, const Runner &run, Output &out) {
    auto fixed = fixed_function(c);
    TriangleParams params = TriangleParams::make(c.epsilon, c.delta);
    out.rows = run.trials(c.trials, c.subcommand, [&](size_t, RngStream &rng, ordered_json &row) {
        BooleanFunction f = trial_function(c, fixed, rng);
        TesterVerdict v = test_triangle_freeness(f, params, rng);
        verdict_row(row, v);
        row["aborted_iterations"] = v.aborted_iterations;
    });
    out.aggregates = decision_aggregates(out.rows);
    out.aggregates["iterations"] = params.m;
    out.aggregates["joint_membership_tests"] = params.k;
    out.aggregates["max_copies_per_iteration"] = params.max_copies_per_iteration();
    out.aggregates["stated_copies_per_iteration"] = params.stated_copies_per_iteration();
    out.aggregates["threshold"] = c.epsilon / 2;
    if (fixed) {
        out.oracle["triangle_density"] = triangle_density(*fixed);
        out.oracle["is_triangle_free"] = is_triangle_free(*fixed);
    }
}

bool is_bent(const BooleanFunction &f) {
    FourierSpectrum s = walsh_transform(f);
    double want = std::exp2(-(double)f.arity());
    return std::all_of(s.coeffs.begin(), s.coeffs.end(), [&](double v) {
        return v * v == want;
    });
}

void run_mm(const ExperimentConfig &c, const Runner &run, Output &out) {
    auto fixed = fixed_function(c);
    out.rows = run.trials(c.trials, c.subcommand, [&](size_t, RngStream &rng, ordered_json &row) {
        BooleanFunction f = trial_function(c, fixed, rng);
        verdict_row(row, test_mm(f, c.delta, rng));
        row["bent"] = is_bent(f);
        row["distance_to_mm"] = exact_distance_to_mm(f).epsilon;
    });
    out.aggregates = decision_aggregates(out.rows);
    out.aggregates["samples_per_repetition"] = mm_sample_count();
    out.aggregates["repetitions"] = mm_repetitions(c.delta);
    int64_t zero = 0;
    for (const auto &r : out.rows) {
        zero += r["statistic"].get<double>() == 0.0;
    }
    out.aggregates["zero_statistic_rate"] = (double)zero / (double)out.rows.size();
    if (fixed) {
        out.oracle["bent"] = is_bent(*fixed);
    }
}

void run_intersection(const ExperimentConfig &c, const Runner &run, Output &out) {
    auto fixed = fixed_function(c);
    out.rows = run.trials(c.trials, c.subcommand, [&](size_t, RngStream &rng, ordered_json &row) {
        BooleanFunction f = trial_function(c, fixed, rng);
        if (f.arity() < 2) {
            throw UsageError("function: intersection2 needs a pair function on at least 2 bits");
        }
        uint64_t both = 0;
        for (uint64_t x = 0; x < f.size() / 2; x++) {
            both += f[2 * x] && f[2 * x + 1];
        }
        double exact = (double)both / (double)(f.size() / 2);
        IntersectionEstimate e = estimate_intersection2(f, c.epsilon, c.delta, rng);
        row["estimate"] = e.estimate;
        row["exact"] = exact;
        row["abs_error"] = std::abs(e.estimate - exact);
        row["within_epsilon"] = std::abs(e.estimate - exact) <= c.epsilon;
        row["copies_used"] = e.copies_used;
    });
    int64_t within = 0;
    double err = 0, copies = 0;
    for (const auto &r : out.rows) {
        within += r["within_epsilon"].get<bool>();
        err += r["abs_error"].get<double>();
        copies += (double)r["copies_used"].get<int64_t>();
    }
    double n = (double)out.rows.size();
    out.aggregates["within_epsilon_rate"] = (double)within / n;
    out.aggregates["mean_abs_error"] = err / n;
    out.aggregates["mean_copies"] = copies / n;
}

Matching seeded_matching(const ExperimentConfig &c) {
    RngStream rng(c.seed, stream_id_for(0, "matching"));
    return build_layer_matching(c.n, c.m, rng);
}

ordered_json matching_json(const Matching &m) {
    ordered_json j;
    j["target_m"] = nullptr;
    j["achieved_m"] = m.achieved_m();
    j["epsilon"] = m.epsilon();
    ordered_json pairs = ordered_json::array();
    for (auto [u, v] : m.pairs) {
        pairs.push_back({u, v});
    }
    j["pairs"] = pairs;
    return j;
}

void run_twin_spectrum(const ExperimentConfig &c, const Runner &, Output &out) {
    Matching m = seeded_matching(c);
    auto params = ClosedFormParams::for_cube(c.n, m.achieved_m());
    TraceNormClosedForm cf = trace_norm_closed_form(params, c.t);
    Matrix a = build_difference_matrix(m, c.t);
    double brute = trace_norm(a);
    ordered_json row;
    row["trial"] = 0;
    row["t"] = c.t;
    row["closed_form_trace_norm"] = cf.total;
    row["brute_force_trace_norm"] = brute;
    row["abs_difference"] = std::abs(cf.total - brute);
    row["bipartite_term"] = cf.bipartite_term;
    row["star_term"] = cf.star_term;
    row["helstrom_success"] = helstrom_from_trace_norm(brute);
    out.rows.push_back(row);

    ordered_json match = matching_json(m);
    match["target_m"] = c.m;
    out.aggregates["matching"] = match;
    out.aggregates["agree_1e-8"] = std::abs(cf.total - brute) <= 1e-8;

    Census census = component_census(m, c.t);
    ordered_json entries = ordered_json::array();
    for (const auto &e : census.entries) {
        entries.push_back({{"k", e.k}, {"count", e.count}, {"u_size", e.u_size}, {"v_size", e.v_size}});
    }
    out.oracle["census"] = entries;
    out.oracle["components"] = census.components.size();
    out.oracle["expected_components"] = census.expected_components;
    auto [x1, x2] = x1_x2_split(params, c.t);
    out.oracle["x1"] = x1.convert_to<std::string>();
    out.oracle["x2"] = x2.convert_to<std::string>();
    if (m.achieved_m() <= 12) {
        Matrix diff = twin_ensemble_average(m, 0, c.t) - twin_ensemble_average(m, 1, c.t);
        out.oracle["ensemble_average_max_deviation"] = (diff - a).max_abs();
    }
}

void run_three_fold(const ExperimentConfig &c, const Runner &, Output &out) {
    RngStream rng(c.seed, stream_id_for(0, c.subcommand));
    DistinctProjectorReport r = distinct_projector_check(c.n, c.t, c.samples, rng);
    ordered_json row;
    row["trial"] = 0;
    row["n"] = r.n;
    row["t"] = r.t;
    row["dimension"] = r.dimension;
    row["method"] = r.method;
    row["max_projected_deviation"] = r.max_projected_deviation;
    row["trace_norm_difference"] = r.trace_norm_difference;
    row["bound"] = r.bound;
    row["ratio"] = r.ratio;
    out.rows.push_back(row);
    out.aggregates["within_bound"] = r.trace_norm_difference <= r.bound + 1e-6;
    out.aggregates["trace_e0"] = r.trace_e0;
    out.aggregates["trace_e1"] = r.trace_e1;
    if (r.enumeration_gap >= 0) {
        out.oracle["enumeration_vs_factorized_max_gap"] = r.enumeration_gap;
    }
    if (r.sampled_trials > 0) {
        out.oracle["sampled_trials"] = r.sampled_trials;
        out.oracle["sampled_max_deviation"] = r.sampled_deviation;
        out.oracle["sampling_error_bound"] = r.sampling_error_bound;
    }
}

void run_ensemble_distinguish(const ExperimentConfig &c, const Runner &run, Output &out) {
    Matching m = seeded_matching(c);
    if (m.achieved_m() == 0) {
        throw UsageError("m: the matching is empty, so the ensembles coincide");
    }
    auto params = ClosedFormParams::for_cube(c.n, m.achieved_m());
    double eps = m.epsilon();
    int t1 = (int)std::ceil(1 / eps);
    int t2 = (int)std::ceil(2 / eps);
    int t_max = c.t_max > 0 ? c.t_max : t2;
    out.rows = run.trials(t_max, c.subcommand, [&](size_t i, RngStream &, ordered_json &row) {
        int t = (int)i + 1;
        TraceNormClosedForm cf = trace_norm_closed_form(params, t);
        row["t"] = t;
        row["star_term"] = cf.star_term;
        row["star_term_expectation"] = star_term(params, t);
        row["bipartite_term"] = cf.bipartite_term;
        row["trace_norm"] = cf.total;
        row["helstrom_success"] = helstrom_from_trace_norm(cf.total);
    });
    ordered_json match = matching_json(m);
    match["target_m"] = c.m;
    out.aggregates["matching"] = match;
    out.aggregates["t_one_over_eps"] = t1;
    out.aggregates["t_two_over_eps"] = t2;
    ordered_json first_half = nullptr;
    bool monotone = true;
    for (size_t i = 0; i < out.rows.size(); i++) {
        double s = out.rows[i]["star_term"].get<double>();
        if (first_half.is_null() && s >= 0.5) {
            first_half = (int)i + 1;
        }
        if (i > 0 && s + 1e-12 < out.rows[i - 1]["star_term"].get<double>()) {
            monotone = false;
        }
    }
    out.aggregates["first_t_star_term_half"] = first_half;
    out.aggregates["star_term_monotone"] = monotone;
    if (t1 <= t_max) {
        out.aggregates["trace_norm_at_t_one_over_eps"] = out.rows[t1 - 1]["trace_norm"];
        out.aggregates["star_term_at_t_one_over_eps"] = out.rows[t1 - 1]["star_term"];
    }
    if (t2 <= t_max) {
        out.aggregates["helstrom_at_t_two_over_eps"] = out.rows[t2 - 1]["helstrom_success"];
    }
}

double choose3(double q) {
    return q * (q - 1) * (q - 2) / 6;
}

void run_baseline(const ExperimentConfig &c, const Runner &run, Output &out) {
    auto fixed = fixed_function(c);
    int64_t per_q = c.trials;
    size_t total = c.q.size() * (size_t)per_q;
    out.rows = run.trials((int64_t)total, c.subcommand, [&](size_t i, RngStream &rng, ordered_json &row) {
        int q = c.q[i / per_q];
        BooleanFunction f = trial_function(c, fixed, rng);
        int64_t count = classical_triangle_baseline(f, q, rng);
        row["q"] = q;
        row["triangles"] = count;
        row["witnessed"] = count > 0;
    });
    ordered_json per = ordered_json::array();
    double size = std::exp2((double)(fixed ? fixed->arity() : c.n));
    for (size_t k = 0; k < c.q.size(); k++) {
        int64_t hits = 0;
        double sum = 0;
        for (int64_t j = 0; j < per_q; j++) {
            const auto &r = out.rows[k * per_q + j];
            hits += r["witnessed"].get<bool>();
            sum += (double)r["triangles"].get<int64_t>();
        }
        double rate = (double)hits / (double)per_q;
        double q = c.q[k];
        double bound = q * q * q / size;
        ordered_json e;
        e["q"] = c.q[k];
        e["witness_rate"] = rate;
        e["mean_triangles"] = sum / (double)per_q;
        e["bound_q3_over_2n"] = bound;
        e["expected_triangles_all_ones"] = choose3(q) / size;
        per.push_back(e);
    }
    out.aggregates["per_q"] = per;
}

void run_oracle(const ExperimentConfig &c, const Runner &, Output &out) {
    auto fixed = fixed_function(c);
    if (!fixed) {
        throw UsageError("function: oracle needs a fixed function, not a random draw");
    }
    const BooleanFunction &f = *fixed;
    out.oracle["arity"] = f.arity();
    out.oracle["weight"] = f.weight();
    if (f.arity() >= 2) {
        out.oracle["hex"] = to_hex(f);
    }
    out.oracle["monotone_violation_probability"] = monotone_violation_probability(f);
    out.oracle["fourier_monotonicity_statistic"] = fourier_monotonicity_statistic(f);
    out.oracle["is_monotone"] = is_monotone(f);
    if (f.arity() <= MAX_MONOTONE_ENUMERATION_ARITY) {
        out.oracle["distance_to_monotone"] = exact_distance_to_monotone(f).epsilon;
    }
    out.oracle["symmetry_violation_probability"] = symmetry_violation_probability(f);
    out.oracle["distance_to_symmetric"] = exact_distance_to_symmetric(f).epsilon;
    out.oracle["is_symmetric"] = is_symmetric(f);
    out.oracle["triangle_density"] = triangle_density(f);
    out.oracle["is_triangle_free"] = is_triangle_free(f);
    out.oracle["total_influence"] = total_influence(walsh_transform(f));
    out.oracle["bent"] = is_bent(f);
    if (f.arity() % 2 == 0) {
        out.oracle["distance_to_mm"] = exact_distance_to_mm(f).epsilon;
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig &config) {
    validate(config);
    Runner run{config, config.threads == 0 ? default_thread_count() : config.threads};
    Output out;
    const std::string &s = config.subcommand;
    if (s == "test-monotonicity") {
        run_monotonicity(config, run, out);
    } else if (s == "test-symmetry") {
        run_symmetry(config, run, out);
    } else if (s == "test-triangle-freeness") {
        run_triangle(config, run, out);
    } else if (s == "test-mm") {
        run_mm(config, run, out);
    } else if (s == "intersection2") {
        run_intersection(config, run, out);
    } else if (s == "twin-spectrum") {
        run_twin_spectrum(config, run, out);
    } else if (s == "three-fold-check") {
        run_three_fold(config, run, out);
    } else if (s == "ensemble-distinguish") {
        run_ensemble_distinguish(config, run, out);
    } else if (s == "baseline-triangle") {
        run_baseline(config, run, out);
    } else {
        run_oracle(config, run, out);
    }
    ExperimentResult r;
    r.record["schema"] = 1;
    r.record["config"] = config_to_json(config);
    r.record["trials"] = out.rows;
    r.record["aggregates"] = out.aggregates;
    r.record["oracle"] = out.oracle;
    return r;
}

namespace {

std::string csv_cell(const ordered_json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

void write_csv(const std::string &path, const ordered_json &rows) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("csv: cannot write '" + path + "'");
    }
    if (rows.empty()) {
        return;
    }
    bool first = true;
    for (const auto &[k, v] : rows[0].items()) {
        out << (first ? "" : ",") << k;
        first = false;
    }
    out << '\n';
    for (const auto &row : rows) {
        first = true;
        for (const auto &[k, v] : row.items()) {
            out << (first ? "" : ",") << csv_cell(v);
            first = false;
        }
        out << '\n';
    }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulation laboratory for passive quantum property testers of Boolean functions"};
    app.require_subcommand(1);
    ExperimentConfig parsed;
    std::string q_list;
    std::string config_path;
    static const std::map<std::string, std::string> blurbs{
        {"test-monotonicity", "Fourier-sampling monotonicity tester"},
        {"test-symmetry", "symmetric-subspace symmetry tester"},
        {"test-triangle-freeness", "triangle-freeness tester from function-state copies"},
        {"test-mm", "Maiorana-McFarland membership tester"},
        {"intersection2", "estimate |A n B| / 2^n from copies of pair(A, B)"},
        {"twin-spectrum", "closed-form versus brute-force trace norm of the twin difference matrix"},
        {"three-fold-check", "distinct-subspace identity and trace norm for set triples"},
        {"ensemble-distinguish", "twin-ensemble distinguishability sweep over t"},
        {"baseline-triangle", "classical triangle-witness baseline"},
        {"oracle", "exact boolean-function oracles"},
    };
    std::vector<CLI::App *> subs;
    for (const auto &name : subcommand_names()) {
        CLI::App *sub = app.add_subcommand(name, blurbs.at(name));
        sub->add_option("--n", parsed.n, "arity (set or h arity for triple/pair/mm)");
        sub->add_option("--t", parsed.t, "copies t");
        sub->add_option("--m", parsed.m, "target matching size");
        sub->add_option("--epsilon", parsed.epsilon, "distance or accuracy parameter");
        sub->add_option("--delta", parsed.delta, "failure probability");
        sub->add_option("--trials", parsed.trials, "independent trials");
        sub->add_option("--seed", parsed.seed, "64-bit seed");
        sub->add_option("--function", parsed.function_spec, "builtin[:k=v,...] or @path");
        sub->add_option("--q", q_list, "comma-separated sample sizes");
        sub->add_option("--samples", parsed.samples, "Monte Carlo triples");
        sub->add_option("--t-max", parsed.t_max, "largest t for the sweep");
        sub->add_option("--output", parsed.output, "result JSON path (default stdout)");
        sub->add_option("--csv", parsed.csv, "per-trial CSV path");
        sub->add_option("--threads", parsed.threads, "worker threads (0 = all cores)");
        sub->add_option("--config", config_path, "replay the config echoed in a result file");
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    try {
        ExperimentConfig config = parsed;
        for (CLI::App *sub : subs) {
            if (!sub->parsed()) {
                continue;
            }
            config.subcommand = sub->get_name();
            if (!q_list.empty()) {
                config.q.clear();
                std::stringstream ss(q_list);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    try {
                        config.q.push_back(std::stoi(item));
                    } catch (const std::exception &) {
                        throw UsageError("q: '" + item + "' is not an integer");
                    }
                }
            }
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) {
                    throw UsageError("config: cannot open '" + config_path + "'");
                }
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception &e) {
                    throw UsageError(std::string("config: ") + e.what());
                }
                ExperimentConfig loaded = config_from_json(j.contains("config") ? j["config"] : j);
                if (loaded.subcommand != config.subcommand) {
                    throw UsageError("config: file is for '" + loaded.subcommand + "'");
                }
                loaded.output = config.output;
                loaded.csv = config.csv;
                loaded.threads = config.threads;
                config = loaded;
            }
        }
        auto start = std::chrono::steady_clock::now();
        ExperimentResult r = run_experiment(config);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.record["wall_clock_seconds"] = wall;
        std::string text = r.record.dump(2) + "\n";
        if (config.output.empty()) {
            out << text;
        } else {
            std::ofstream f(config.output);
            if (!f) {
                throw UsageError("output: cannot write '" + config.output + "'");
            }
            f << text;
        }
        if (!config.csv.empty()) {
            write_csv(config.csv, r.record["trials"]);
        }
        return 0;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ArityError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError &e) {
        err << "capability error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qpt
