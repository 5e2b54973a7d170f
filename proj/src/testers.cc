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

#include "qpt/testers.h"

#include <cmath>
#include <random>

#include "qpt/errors.h"

namespace qpt {

namespace {

void check_unit_interval(double v, const char *name) {
    if (!(v > 0 && v < 1)) {
        throw ContractError(std::string(name) + " must lie in (0,1)");
    }
}

int64_t ceil_to_int(double v) {
    return (int64_t)std::ceil(v);
}

}  // namespace

const char *decision_name(Decision d) {
    return d == Decision::Accept ? "accept" : "reject";
}

double TesterVerdict::diagnostic(std::string_view name) const {
    for (const auto &[k, v] : diagnostics) {
        if (k == name) {
            return v;
        }
    }
    throw ContractError("no diagnostic named '" + std::string(name) + "'");
}

MonotonicityParams MonotonicityParams::make(int n, double eps, double delta) {
    check_unit_interval(eps, "epsilon");
    check_unit_interval(delta, "delta");
    if (n < 1) {
        throw ArityError("monotonicity tester needs n >= 1");
    }
    MonotonicityParams p{};
    p.n = n;
    p.eps = eps;
    p.delta = delta;
    p.eps2 = eps / 3;
    p.eps5 = eps / (3.0 * n);
    p.delta1 = delta / 3;
    p.delta2 = delta / 3;
    p.delta5 = delta / (3.0 * n);
    p.m2 = ceil_to_int((double)n * n * std::log(2 / p.delta2) / (2 * p.eps2 * p.eps2));
    p.m1 = std::max(3 * p.m2, ceil_to_int(18 * std::log(2 / p.delta1)));
    p.m4 = ceil_to_int(4 * std::log(2 / p.delta5) / (p.eps5 * p.eps5));
    p.m5 = p.m4;
    return p;
}

TesterVerdict test_monotonicity(const BooleanFunction &f, double eps, double delta, RngStream &rng) {
    int n = f.arity();
    auto p = MonotonicityParams::make(n, eps, delta);
    CopyLedger ledger(p.total_copies());
    FourierSampler sampler(f);
    RngStream fourier_rng = rng.child("fourier");
    RngStream classical_rng = rng.child("classical");

    FourierBatch batch = sampler.sample_batch(p.m1, p.m2, ledger, fourier_rng);
    bool shortfall = batch.successes < p.m2;
    double influence_hat = 0;
    for (uint64_t s = 0; s < batch.histogram.size(); s++) {
        influence_hat += (double)batch.histogram[s] * hamming_weight(s);
    }
    if (batch.kept > 0) {
        influence_hat /= (double)batch.kept;
    }

    auto counts = sample_classical_counts(f, p.m4, ledger, classical_rng);
    std::vector<double> g_tilde(n, 0.0);
    for (uint64_t x = 0; x < counts.size(); x++) {
        if (!counts[x]) {
            continue;
        }
        for (int i = 1; i <= n; i++) {
            bool sign = coordinate_bit(x, i, n) ^ f[x];
            g_tilde[i - 1] += sign ? -(double)counts[x] : (double)counts[x];
        }
    }
    double g_sum = 0;
    for (double &g : g_tilde) {
        g /= (double)p.m5;
        g_sum += g;
    }
    double p_hat = (influence_hat - g_sum) / (2.0 * n);

    if (ledger.consumed() != p.total_copies()) {
        throw InternalConsistencyError("monotonicity tester copy count differs from m1 + m4");
    }
    TesterVerdict v;
    v.shortfall = shortfall;
    v.decision = (!shortfall && p_hat < eps / (2.0 * n)) ? Decision::Accept : Decision::Reject;
    v.statistic = p_hat;
    v.copies_used = ledger.consumed();
    v.diagnostics = {
        {"influence_hat", influence_hat},
        {"g_tilde_sum", g_sum},
        {"fourier_successes", (double)batch.successes},
        {"m1", (double)p.m1},
        {"m2", (double)p.m2},
        {"m4", (double)p.m4},
        {"m5", (double)p.m5},
        {"copy_constant", (double)v.copies_used / ((double)n * n * std::log(n / delta) / (eps * eps))},
    };
    for (int i = 1; i <= n; i++) {
        v.diagnostics.emplace_back("g_tilde_" + std::to_string(i), g_tilde[i - 1]);
    }
    return v;
}

int64_t symmetry_copy_count(double eps, double delta) {
    check_unit_interval(eps, "epsilon");
    check_unit_interval(delta, "delta");
    return ceil_to_int(9 * std::log(2 / delta) / (eps * eps));
}

TesterVerdict test_symmetry(const BooleanFunction &f, double eps, double delta, RngStream &rng) {
    int64_t m = symmetry_copy_count(eps, delta);
    CopyLedger ledger(m);
    RngStream r = rng.child("symmetric-subspace");
    int64_t accepts = symmetric_subspace_batch(f, m, ledger, r);
    double v_hat = (double)(m - accepts) / (double)m;
    TesterVerdict v;
    v.decision = v_hat < eps / 2 ? Decision::Accept : Decision::Reject;
    v.statistic = v_hat;
    v.copies_used = ledger.consumed();
    v.diagnostics = {{"m", (double)m}, {"accepts", (double)accepts}};
    return v;
}

TriangleParams TriangleParams::make(double eps_tilde, double delta, double eps) {
    check_unit_interval(eps_tilde, "epsilon tilde");
    check_unit_interval(delta, "delta");
    if (eps <= 0) {
        eps = eps_tilde;
    }
    check_unit_interval(eps, "epsilon");
    TriangleParams p{};
    p.eps_tilde = eps_tilde;
    p.delta = delta;
    p.eps = eps;
    p.m = ceil_to_int(18 * std::log(10 / delta) / (eps_tilde * eps_tilde));
    p.delta_tilde = delta / (5.0 * (double)p.m);
    p.point_attempts = ceil_to_int(std::log((double)p.m / p.delta_tilde) / eps);
    p.k = ceil_to_int(162 * std::log(6 / p.delta_tilde) * std::pow(6 / eps_tilde, 4));
    if (p.k != joint_membership_test_count(eps_tilde / 6, p.delta_tilde)) {
        throw InternalConsistencyError("triangle tester batch size disagrees with the joint membership count");
    }
    p.prepared_outputs = 2 * p.k;
    p.copies_per_output = postselection_copies_per_output(p.prepared_outputs, eps, p.delta_tilde);
    p.prepare_copies = p.prepared_outputs * p.copies_per_output;
    return p;
}

TesterVerdict test_triangle_freeness(const BooleanFunction &f, const TriangleParams &p, RngStream &rng) {
    CopyLedger ledger(p.m * p.max_copies_per_iteration());
    int64_t expected_copies = 0;
    int64_t aborted[3] = {0, 0, 0};
    double mu_sum = 0;
    for (int64_t i = 0; i < p.m; i++) {
        RngStream r = rng.child((uint64_t)i);
        expected_copies += p.point_attempts;
        auto y = postselect_point(f, true, p.point_attempts, ledger, r);
        if (!y) {
            aborted[0]++;
            continue;
        }
        JointMembershipQuery q;
        q.f = &f;
        q.f_prime = &f;
        q.shift = 0;
        q.shift_prime = *y;
        q.eps = p.eps_tilde / 6;
        q.delta = p.delta_tilde;
        q.eta = p.eps;
        q.prep_delta = p.delta_tilde;
        int64_t before = ledger.consumed();
        auto est = estimate_joint_membership(q, ledger, r);
        int64_t spent = ledger.consumed() - before;
        if (!est) {
            if (spent == p.prepare_copies) {
                aborted[1]++;
            } else {
                aborted[2]++;
            }
            expected_copies += spent == p.prepare_copies ? p.prepare_copies : 2 * p.prepare_copies;
            continue;
        }
        expected_copies += 2 * p.prepare_copies + 2 * p.k;
        mu_sum += est->gamma;
    }
    if (ledger.consumed() != expected_copies) {
        throw InternalConsistencyError("triangle tester copy count differs from its per-step accounting");
    }
    double mean = mu_sum / (double)p.m;
    TesterVerdict v;
    v.decision = mean < p.eps_tilde / 2 ? Decision::Accept : Decision::Reject;
    v.statistic = mean;
    v.copies_used = ledger.consumed();
    v.aborted_iterations = aborted[0] + aborted[1] + aborted[2];
    v.diagnostics = {
        {"m", (double)p.m},
        {"delta_tilde", p.delta_tilde},
        {"point_attempts", (double)p.point_attempts},
        {"k", (double)p.k},
        {"copies_per_output", (double)p.copies_per_output},
        {"aborted_point", (double)aborted[0]},
        {"aborted_prepare", (double)aborted[1]},
        {"aborted_prepare_shifted", (double)aborted[2]},
        {"stated_copies", (double)(p.m * p.stated_copies_per_iteration())},
        {"unstated_point_copies", (double)(p.m * p.point_attempts)},
    };
    return v;
}

int64_t mm_sample_count() {
    return ceil_to_int(2 * std::log(12.0) * 81);
}

int64_t mm_repetitions(double delta) {
    check_unit_interval(delta, "delta");
    if (delta >= 1.0 / 3) {
        return 1;
    }
    return ceil_to_int(18 * std::log(1 / delta));
}

TesterVerdict test_mm(const BooleanFunction &f, double delta, RngStream &rng) {
    BooleanFunction f_tilde = ip_transform(f);
    int k = f.arity() / 2;
    uint64_t j_mask = (uint64_t{1} << k) - 1;
    int64_t c = mm_sample_count();
    int64_t reps = mm_repetitions(delta);
    FourierSampler sampler(f_tilde);
    CopyLedger ledger;
    int64_t accept_votes = 0;
    double p_sum = 0;
    for (int64_t r = 0; r < reps; r++) {
        RngStream rr = rng.child((uint64_t)r);
        // Copies until c successes: c plus a negative binomial number of failures.
        std::negative_binomial_distribution<int64_t> failures(c, 0.5);
        int64_t copies = c + failures(rr);
        ledger.consume(copies);
        auto hist = multinomial(rr, c, sampler.probabilities());
        int64_t hits = 0;
        for (uint64_t s = 0; s < hist.size(); s++) {
            if (s & j_mask) {
                hits += hist[s];
            }
        }
        double p_hat = (double)hits / (double)c;
        p_sum += p_hat;
        accept_votes += p_hat <= 1.0 / 9;
    }
    TesterVerdict v;
    v.decision = 2 * accept_votes > reps ? Decision::Accept : Decision::Reject;
    v.statistic = p_sum / (double)reps;
    v.copies_used = ledger.consumed();
    v.diagnostics = {{"samples_per_run", (double)c}, {"repetitions", (double)reps}, {"accept_votes", (double)accept_votes}};
    return v;
}

IntersectionEstimate estimate_intersection2(const BooleanFunction &f, double eps, double delta, RngStream &rng) {
    check_unit_interval(eps, "epsilon");
    check_unit_interval(delta, "delta");
    if (f.arity() < 2) {
        throw ArityError("intersection estimation needs a pair function on n+1 >= 2 bits");
    }
    double acc = 2 * eps / 3;
    CopyLedger ledger;
    RngStream fr = rng.child("fourier");
    RngStream cr = rng.child("classical");

    // Influence of the last coordinate: Hoeffding on indicator samples.
    int64_t k = ceil_to_int(std::log(6 / delta) / (2 * acc * acc));
    FourierSampler sampler(f);
    std::negative_binomial_distribution<int64_t> failures(k, 0.5);
    int64_t copies = k + failures(fr);
    ledger.consume(copies);
    auto hist = multinomial(fr, k, sampler.probabilities());
    int64_t with_last = 0;
    for (uint64_t s = 1; s < hist.size(); s += 2) {
        with_last += hist[s];
    }
    double inf_hat = (double)with_last / (double)k;

    // |A|/2^n = 2 Pr[a = 0, f = 1]: Hoeffding with range 2.
    int64_t mc = ceil_to_int(2 * std::log(6 / delta) / (acc * acc));
    auto counts = sample_classical_counts(f, mc, ledger, cr);
    int64_t a_hits = 0, b_hits = 0;
    for (uint64_t xa = 0; xa < counts.size(); xa++) {
        if (f[xa]) {
            ((xa & 1) ? b_hits : a_hits) += counts[xa];
        }
    }
    double a_hat = 2.0 * (double)a_hits / (double)mc;
    double b_hat = 2.0 * (double)b_hits / (double)mc;
    double estimate = ((1 - 2 * inf_hat) + 2 * a_hat + 2 * b_hat - 1) / 4;
    return {estimate, inf_hat, a_hat, b_hat, k, mc, ledger.consumed()};
}

int64_t classical_triangle_baseline(const BooleanFunction &f, int q, RngStream &rng) {
    if (q < 3) {
        throw ContractError("classical triangle baseline needs q >= 3");
    }
    std::vector<uint64_t> xs(q);
    for (auto &x : xs) {
        x = rng.below(f.size());
    }
    int64_t count = 0;
    for (int i = 0; i < q; i++) {
        if (!f[xs[i]]) {
            continue;
        }
        for (int j = i + 1; j < q; j++) {
            if (!f[xs[j]]) {
                continue;
            }
            uint64_t z = xs[i] ^ xs[j];
            for (int l = j + 1; l < q; l++) {
                count += xs[l] == z && f[z];
            }
        }
    }
    return count;
}

}  // namespace qpt
