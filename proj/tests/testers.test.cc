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

#include <gtest/gtest.h>

#include <cmath>

#include "qpt/errors.h"
#include "qpt/testers.h"

using namespace qpt;

namespace {

BooleanFunction random_function(int n, uint64_t seed) {
    RngStream rng(seed, 31);
    return BooleanFunction::from_predicate(n, [&](uint64_t) {
        return rng() >> 63;
    });
}

int64_t up(double v) {
    return (int64_t)std::ceil(v);
}

}  // namespace

TEST(testers, monotonicity_parameters_n8) {
    auto p = MonotonicityParams::make(8, 0.25, 0.1);
    double e2 = 0.25 / 3;
    EXPECT_EQ(p.m2, up(64 * std::log(60.0) / (2 * e2 * e2)));
    EXPECT_EQ(p.m1, std::max(3 * p.m2, up(18 * std::log(60.0))));
    double e5 = 0.25 / 24;
    EXPECT_EQ(p.m4, up(4 * std::log(2 / (0.1 / 24)) / (e5 * e5)));
    EXPECT_EQ(p.m5, p.m4);
    EXPECT_EQ(p.total_copies(), p.m1 + p.m4);
}

TEST(testers, monotonicity_parameter_grid) {
    for (int n : {1, 3, 6, 10}) {
        for (double eps : {0.05, 0.2, 0.5}) {
            for (double delta : {0.01, 0.1, 0.3}) {
                auto p = MonotonicityParams::make(n, eps, delta);
                EXPECT_DOUBLE_EQ(p.eps2, eps / 3);
                EXPECT_DOUBLE_EQ(p.eps5, eps / (3 * n));
                EXPECT_DOUBLE_EQ(p.delta5, delta / (3 * n));
                EXPECT_EQ(p.m2, up(n * n * std::log(6 / delta) / (2 * (eps / 3) * (eps / 3))));
                EXPECT_EQ(p.m1, std::max(3 * p.m2, up(18 * std::log(6 / delta))));
                EXPECT_EQ(p.m4, up(4 * std::log(6.0 * n / delta) / ((eps / (3 * n)) * (eps / (3 * n)))));
            }
        }
    }
    EXPECT_THROW(MonotonicityParams::make(4, 0, 0.1), ContractError);
    EXPECT_THROW(MonotonicityParams::make(4, 0.1, 1), ContractError);
}

TEST(testers, monotonicity_verdicts_and_copies) {
    const int n = 5;
    auto p = MonotonicityParams::make(n, 0.25, 0.1);
    RngStream root(1, 1);
    for (int trial = 0; trial < 5; trial++) {
        for (auto &f : {dictator(n), majority(n), and_function(n), or_function(n)}) {
            RngStream r = root.child((uint64_t)trial);
            auto v = test_monotonicity(f, 0.25, 0.1, r);
            EXPECT_EQ(v.decision, Decision::Accept);
            EXPECT_EQ(v.copies_used, p.total_copies());
            EXPECT_FALSE(v.shortfall);
            EXPECT_NEAR(v.diagnostic("m2"), (double)p.m2, 0);
        }
        RngStream r = root.child((uint64_t)trial + 100);
        auto v = test_monotonicity(antidictator(n), 0.25, 0.1, r);
        EXPECT_EQ(v.decision, Decision::Reject);
        EXPECT_EQ(v.copies_used, p.total_copies());
    }
}

TEST(testers, monotonicity_statistic_tracks_violation) {
    // p_hat estimates the edge violation probability.
    auto f = random_function(4, 3);
    RngStream r(2, 2);
    auto v = test_monotonicity(f, 0.3, 0.1, r);
    EXPECT_NEAR(v.statistic, monotone_violation_probability(f), 0.3 / 8);
    EXPECT_THROW(v.diagnostic("missing"), std::exception);
}

TEST(testers, symmetry_verdicts) {
    EXPECT_EQ(symmetry_copy_count(0.2, 0.1), up(9 * std::log(20.0) / 0.04));
    RngStream r(3, 3);
    for (auto &f : {majority(6), parity(6), BooleanFunction::constant(6, true)}) {
        auto v = test_symmetry(f, 0.2, 0.1, r);
        EXPECT_EQ(v.decision, Decision::Accept);
        EXPECT_EQ(v.statistic, 0.0);
        EXPECT_EQ(v.copies_used, symmetry_copy_count(0.2, 0.1));
    }
    // dictator(2) fails the symmetric projection with probability 1/4.
    int rejects = 0;
    for (int i = 0; i < 20; i++) {
        RngStream ri = r.child((uint64_t)i);
        auto v = test_symmetry(dictator(2), 0.2, 0.1, ri);
        rejects += v.decision == Decision::Reject;
        EXPECT_NEAR(v.statistic, 0.25, 0.15);
    }
    EXPECT_GE(rejects, 18);
}

TEST(testers, triangle_parameters) {
    auto p = TriangleParams::make(0.2, 0.2);
    EXPECT_DOUBLE_EQ(p.eps, 0.2);
    EXPECT_EQ(p.m, up(18 * std::log(50.0) / 0.04));
    EXPECT_DOUBLE_EQ(p.delta_tilde, 0.2 / (5.0 * p.m));
    EXPECT_EQ(p.k, up(162 * std::log(6 / p.delta_tilde) * std::pow(30.0, 4)));
    EXPECT_EQ(p.k, joint_membership_test_count(0.2 / 6, p.delta_tilde));
    EXPECT_EQ(p.prepared_outputs, 2 * p.k);
    EXPECT_EQ(p.copies_per_output, up(std::log(2.0 * p.k / p.delta_tilde) / 0.2));
    EXPECT_EQ(p.max_copies_per_iteration() - p.stated_copies_per_iteration(), p.point_attempts);
    auto q = TriangleParams::make(0.2, 0.2, 0.5);
    EXPECT_DOUBLE_EQ(q.eps, 0.5);
    EXPECT_LT(q.copies_per_output, p.copies_per_output);
}

TEST(testers, triangle_verdicts) {
    auto p = TriangleParams::make(0.3, 0.2);
    RngStream r(4, 4);
    auto zero = test_triangle_freeness(BooleanFunction::constant(5, false), p, r);
    EXPECT_EQ(zero.statistic, 0.0);
    EXPECT_EQ(zero.decision, Decision::Accept);
    EXPECT_EQ(zero.aborted_iterations, p.m);
    EXPECT_EQ(zero.copies_used, p.m * p.point_attempts);

    auto d = test_triangle_freeness(dictator(5), p, r);
    EXPECT_EQ(d.decision, Decision::Accept);
    EXPECT_LT(d.statistic, 0.15);
    auto one = test_triangle_freeness(BooleanFunction::constant(5, true), p, r);
    EXPECT_EQ(one.decision, Decision::Reject);
    EXPECT_NEAR(one.statistic, 1.0, 0.05);
    EXPECT_EQ(one.aborted_iterations, 0);
    EXPECT_EQ(one.copies_used, p.m * p.max_copies_per_iteration());
}

TEST(testers, mm_constants_and_verdicts) {
    EXPECT_EQ(mm_sample_count(), 403);
    EXPECT_EQ(mm_repetitions(0.5), 1);
    EXPECT_EQ(mm_repetitions(1.0 / 3), 1);
    EXPECT_EQ(mm_repetitions(0.1), up(18 * std::log(10.0)));
    RngStream r(5, 5);
    for (int i = 0; i < 10; i++) {
        auto h = random_function(3, 500 + i);
        RngStream ri = r.child((uint64_t)i);
        auto v = test_mm(mm(h), 0.1, ri);
        EXPECT_EQ(v.decision, Decision::Accept);
        EXPECT_EQ(v.statistic, 0.0);
        EXPECT_GE(v.copies_used, 403 * mm_repetitions(0.1));
        auto w = test_mm(mm_dual(h), 0.1, ri);
        EXPECT_EQ(w.decision, Decision::Reject);
    }
}

TEST(testers, intersection_estimates) {
    RngStream r(6, 6);
    int good = 0;
    for (int i = 0; i < 50; i++) {
        auto a = random_function(5, 600 + i);
        auto b = random_function(5, 700 + i);
        uint64_t both = 0;
        for (uint64_t x = 0; x < 32; x++) {
            both += a[x] && b[x];
        }
        RngStream ri = r.child((uint64_t)i);
        auto est = estimate_intersection2(pair(a, b), 0.1, 0.1, ri);
        good += std::abs(est.estimate - both / 32.0) <= 0.1;
        EXPECT_GT(est.copies_used, 0);
    }
    EXPECT_GE(good, 45);
    EXPECT_THROW(estimate_intersection2(parity(1), 0.1, 0.1, r),
                 ArityError);
}

TEST(testers, classical_baseline) {
    RngStream r(7, 7);
    EXPECT_EQ(classical_triangle_baseline(BooleanFunction::constant(6, false), 40, r), 0);
    EXPECT_EQ(classical_triangle_baseline(dictator(6), 40, r), 0);
    EXPECT_THROW(classical_triangle_baseline(dictator(6), 2, r), ContractError);
    // Constant one: the expected count is C(q,3) * Pr[x3 = x1 + x2] = C(q,3) / 2^n.
    const int q = 24, runs = 4000;
    double total = 0;
    for (int i = 0; i < runs; i++) {
        total += (double)classical_triangle_baseline(BooleanFunction::constant(6, true), q, r);
    }
    double expected = q * (q - 1) * (q - 2) / 6.0 / 64.0;
    EXPECT_NEAR(total / runs, expected, 4 * std::sqrt(expected * 3 / runs));
}
