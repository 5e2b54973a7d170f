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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "qpt/boolfn.h"
#include "qpt/errors.h"
#include "qpt/rng.h"

using namespace qpt;

namespace {

// Independent oracles: direct 2^n-term sums and permutation enumeration.

double brute_walsh(const BooleanFunction &f, uint64_t s) {
    double sum = 0;
    for (uint64_t x = 0; x < f.size(); x++) {
        sum += ((f[x] ^ dot_mod2(s, x)) ? -1.0 : 1.0);
    }
    return sum / (double)f.size();
}

double brute_violation(const BooleanFunction &f) {
    int n = f.arity();
    uint64_t count = 0;
    for (uint64_t x = 0; x < f.size(); x++) {
        for (int i = 1; i <= n; i++) {
            uint64_t m = coordinate_mask(i, n);
            if (f[x & ~m] && !f[x | m]) {
                count++;
            }
        }
    }
    return (double)count / ((double)n * (double)f.size());
}

uint64_t permute(uint64_t x, const std::vector<int> &perm, int n) {
    uint64_t y = 0;
    for (int i = 0; i < n; i++) {
        if (coordinate_bit(x, i + 1, n)) {
            y |= coordinate_mask(perm[i] + 1, n);
        }
    }
    return y;
}

double brute_symmetry_violation(const BooleanFunction &f) {
    int n = f.arity();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t bad = 0, total = 0;
    do {
        for (uint64_t x = 0; x < f.size(); x++) {
            bad += f[x] != f[permute(x, perm, n)];
            total++;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return (double)bad / (double)total;
}

BooleanFunction random_function(int n, uint64_t seed) {
    RngStream rng(seed, 17);
    return BooleanFunction::from_predicate(n, [&](uint64_t) {
        return rng() >> 63;
    });
}

}  // namespace

TEST(boolfn, construction_validates) {
    EXPECT_THROW(BooleanFunction(2, std::vector<uint8_t>{0, 1, 0}), std::exception);
    EXPECT_THROW(BooleanFunction(2, std::vector<uint8_t>{0, 1, 2, 0}), std::exception);
    EXPECT_THROW(BooleanFunction::check_arity(MAX_ARITY + 1), std::exception);
}

TEST(boolfn, evaluate_uses_msb_first_index) {
    auto andf = and_function(2);
    std::vector<uint8_t> x11{1, 1}, x01{0, 1};
    EXPECT_TRUE(andf.evaluate(x11));
    EXPECT_FALSE(andf.evaluate(x01));
    std::vector<uint8_t> x101{1, 0, 1};
    EXPECT_FALSE(parity(3).evaluate(x101));
    std::vector<uint8_t> x100{1, 0, 0};
    EXPECT_TRUE(dictator(3, 1).evaluate(x100));
    EXPECT_TRUE(dictator(3, 1)[0b100]);
    EXPECT_FALSE(dictator(3, 1)[0b001]);
    std::vector<uint8_t> short_x{1};
    EXPECT_THROW(andf.evaluate(short_x), ArityError);
}

TEST(boolfn, majority_table) {
    auto f = majority(3);
    std::vector<uint8_t> want{0, 0, 0, 1, 0, 1, 1, 1};
    EXPECT_EQ(f.table(), want);
}

TEST(boolfn, walsh_examples) {
    auto zero = BooleanFunction::constant(3, false);
    EXPECT_DOUBLE_EQ(walsh_transform(zero)[0], 1.0);
    auto s = walsh_transform(and_function(2));
    EXPECT_DOUBLE_EQ(s[0b00], 0.5);
    EXPECT_DOUBLE_EQ(s[0b10], 0.5);
    EXPECT_DOUBLE_EQ(s[0b01], 0.5);
    EXPECT_DOUBLE_EQ(s[0b11], -0.5);
    for (uint64_t a = 0; a < 16; a++) {
        auto lin = BooleanFunction::from_predicate(4, [&](uint64_t x) {
            return dot_mod2(a, x);
        });
        auto spec = walsh_transform(lin);
        for (uint64_t t = 0; t < 16; t++) {
            EXPECT_DOUBLE_EQ(spec[t], t == a ? 1.0 : 0.0);
        }
    }
}

TEST(boolfn, walsh_matches_direct_sum_and_round_trips) {
    for (int n = 1; n <= 7; n++) {
        auto f = random_function(n, 100 + n);
        auto spec = walsh_transform(f);
        for (uint64_t s = 0; s < f.size(); s++) {
            EXPECT_NEAR(spec[s], brute_walsh(f, s), 1e-12);
        }
        EXPECT_NEAR(parseval_sum(spec), 1.0, 1e-10);
        EXPECT_EQ(inverse_walsh(spec), f);
    }
}

TEST(boolfn, total_influence_examples) {
    EXPECT_NEAR(total_influence(walsh_transform(parity(5))), 5.0, 1e-12);
    EXPECT_NEAR(total_influence(walsh_transform(BooleanFunction::constant(4, true))), 0.0, 1e-12);
    EXPECT_NEAR(total_influence(walsh_transform(and_function(2))), 1.0, 1e-12);
}

TEST(boolfn, violation_probability_examples) {
    for (int n = 1; n <= 8; n++) {
        EXPECT_DOUBLE_EQ(monotone_violation_probability(dictator(n)), 0.0);
        EXPECT_NEAR(monotone_violation_probability(antidictator(n)), 1.0 / n, 1e-15);
        if (n >= 2) {
            // parity(1) is the dictator.
            EXPECT_NEAR(monotone_violation_probability(parity(n)), 0.5, 1e-15);
            EXPECT_NEAR(fourier_monotonicity_statistic(parity(n)), 0.5, 1e-12);
        }
        EXPECT_NEAR(fourier_monotonicity_statistic(dictator(n)), 0.0, 1e-12);
        EXPECT_NEAR(fourier_monotonicity_statistic(antidictator(n)), 1.0 / n, 1e-12);
    }
}

TEST(boolfn, violation_probability_matches_edge_count) {
    for (int n = 1; n <= 8; n++) {
        auto f = random_function(n, 200 + n);
        EXPECT_NEAR(monotone_violation_probability(f), brute_violation(f), 1e-15);
        EXPECT_NEAR(fourier_monotonicity_statistic(f), brute_violation(f), 1e-12);
    }
}

TEST(boolfn, fourier_identity_all_three_bit_functions) {
    for (uint64_t mask = 0; mask < 256; mask++) {
        auto f = BooleanFunction::from_mask(3, mask);
        EXPECT_NEAR(fourier_monotonicity_statistic(f), monotone_violation_probability(f), 1e-12) << mask;
    }
}

TEST(boolfn, symmetry_violation_closed_form_matches_enumeration) {
    EXPECT_DOUBLE_EQ(symmetry_violation_probability(parity(5)), 0.0);
    EXPECT_DOUBLE_EQ(symmetry_violation_probability(majority(5)), 0.0);
    EXPECT_NEAR(symmetry_violation_probability(dictator(2)), 0.25, 1e-15);
    EXPECT_NEAR(brute_symmetry_violation(dictator(2)), 0.25, 1e-15);
    for (int n = 1; n <= 5; n++) {
        EXPECT_NEAR(symmetry_violation_probability(dictator(n)), brute_symmetry_violation(dictator(n)), 1e-14);
        auto f = random_function(n, 300 + n);
        EXPECT_NEAR(symmetry_violation_probability(f), brute_symmetry_violation(f), 1e-14);
        EXPECT_NEAR(symmetric_agreement_probability(f), 1 - brute_symmetry_violation(f), 1e-14);
    }
}

TEST(boolfn, triangle_density_examples) {
    EXPECT_DOUBLE_EQ(triangle_density(BooleanFunction::constant(4, true)), 1.0);
    EXPECT_DOUBLE_EQ(triangle_density(BooleanFunction::constant(4, false)), 0.0);
    EXPECT_DOUBLE_EQ(triangle_density(dictator(5)), 0.0);
    EXPECT_TRUE(is_triangle_free(dictator(5)));
    EXPECT_FALSE(is_triangle_free(BooleanFunction::constant(3, true)));
    auto f = random_function(5, 400);
    uint64_t hits = 0;
    for (uint64_t x = 0; x < 32; x++) {
        for (uint64_t y = 0; y < 32; y++) {
            hits += f[x] && f[y] && f[x ^ y];
        }
    }
    EXPECT_DOUBLE_EQ(triangle_density(f), (double)hits / 1024.0);
}

TEST(boolfn, predicates) {
    EXPECT_TRUE(is_monotone(majority(3)));
    EXPECT_TRUE(is_symmetric(majority(3)));
    EXPECT_FALSE(is_monotone(antidictator(3)));
    EXPECT_FALSE(is_symmetric(dictator(3)));
}

TEST(boolfn, monotone_enumeration_counts) {
    std::vector<size_t> dedekind{2, 3, 6, 20, 168, 7581};
    for (int n = 0; n <= 5; n++) {
        EXPECT_EQ(monotone_masks(n).size(), dedekind[n]) << n;
    }
    for (uint64_t mask : monotone_masks(4)) {
        EXPECT_TRUE(is_monotone(BooleanFunction::from_mask(4, mask)));
    }
    EXPECT_THROW(exact_distance_to_monotone(majority(6)), CapabilityError);
}

TEST(boolfn, distance_to_monotone_against_filtering) {
    // Filter all 2^16 functions on 4 bits for monotonicity as the oracle.
    std::vector<uint64_t> mono;
    for (uint64_t mask = 0; mask < (1u << 16); mask++) {
        if (is_monotone(BooleanFunction::from_mask(4, mask))) {
            mono.push_back(mask);
        }
    }
    ASSERT_EQ(mono.size(), 168u);
    for (auto f : {parity(4), antidictator(4), random_function(4, 500), majority(4)}) {
        int best = 16;
        for (uint64_t g : mono) {
            best = std::min(best, std::popcount(g ^ f.mask()));
        }
        auto rep = exact_distance_to_monotone(f);
        EXPECT_DOUBLE_EQ(rep.epsilon, best / 16.0);
        ASSERT_TRUE(rep.witness.has_value());
        EXPECT_TRUE(is_monotone(*rep.witness));
        EXPECT_EQ(hamming_distance(f, *rep.witness), (uint64_t)best);
    }
    EXPECT_DOUBLE_EQ(exact_distance_to_monotone(antidictator(3)).epsilon, 0.5);
    auto rep = exact_distance_to_monotone(majority(3));
    EXPECT_DOUBLE_EQ(rep.epsilon, 0.0);
    EXPECT_EQ(*rep.witness, majority(3));
}

TEST(boolfn, distance_to_symmetric) {
    EXPECT_DOUBLE_EQ(exact_distance_to_symmetric(parity(6)).epsilon, 0.0);
    EXPECT_DOUBLE_EQ(exact_distance_to_symmetric(dictator(2)).epsilon, 0.25);
    EXPECT_DOUBLE_EQ(exact_distance_to_symmetric(dictator(8)).epsilon, 93.0 / 256.0);
    // Cross-check against all symmetric functions on small n.
    for (int n = 2; n <= 4; n++) {
        auto f = random_function(n, 600 + n);
        uint64_t best = f.size();
        for (uint64_t w = 0; w < (uint64_t{1} << (n + 1)); w++) {
            auto g = BooleanFunction::from_predicate(n, [&](uint64_t x) {
                return (w >> hamming_weight(x)) & 1;
            });
            best = std::min(best, hamming_distance(f, g));
        }
        auto rep = exact_distance_to_symmetric(f);
        EXPECT_DOUBLE_EQ(rep.epsilon, (double)best / (double)f.size());
        ASSERT_TRUE(rep.witness.has_value());
        EXPECT_TRUE(is_symmetric(*rep.witness));
        EXPECT_EQ(hamming_distance(f, *rep.witness), best);
    }
}

TEST(boolfn, distance_to_class) {
    auto one3 = BooleanFunction::constant(3, true);
    auto rep = exact_distance_to_class(one3, is_triangle_free);
    // Oracle: minimum over triangle-free functions on 3 bits, enumerated here.
    int best = 8;
    for (uint64_t mask = 0; mask < 256; mask++) {
        auto g = BooleanFunction::from_mask(3, mask);
        if (is_triangle_free(g)) {
            best = std::min(best, 8 - std::popcount(mask));
        }
    }
    EXPECT_DOUBLE_EQ(rep.epsilon, best / 8.0);
    EXPECT_DOUBLE_EQ(exact_distance_to_class(dictator(3), is_triangle_free).epsilon, 0.0);
    auto rep4 = exact_distance_to_class(BooleanFunction::constant(4, true), is_triangle_free);
    ASSERT_TRUE(rep4.witness.has_value());
    EXPECT_TRUE(is_triangle_free(*rep4.witness));
    EXPECT_EQ((double)hamming_distance(BooleanFunction::constant(4, true), *rep4.witness) / 16.0, rep4.epsilon);
    // The indicator of x_1 = 1 is a triangle-free function at distance 1/2.
    EXPECT_LE(rep4.epsilon, 0.5);
    EXPECT_THROW(exact_distance_to_class(majority(5), is_triangle_free), CapabilityError);
}

TEST(boolfn, builtins) {
    auto h0 = BooleanFunction::constant(2, false);
    BuiltinParams p;
    p.h = h0;
    EXPECT_EQ(builtin("mm", 2, p), inner_product(4));
    auto empty = BooleanFunction::constant(3, false);
    BuiltinParams q;
    q.a = q.b = q.c = empty;
    EXPECT_EQ(builtin("triple", 3, q), BooleanFunction::constant(5, false));
    EXPECT_EQ(builtin("majority", 3), majority(3));
    EXPECT_THROW(builtin("nope", 3), ContractError);
    BuiltinParams bad;
    bad.h = BooleanFunction::constant(3, false);
    EXPECT_THROW(builtin("mm", 2, bad), ArityError);
    for (const auto &name : builtin_names()) {
        if (name == "mm" || name == "mm_dual" || name == "triple" || name == "pair") {
            continue;
        }
        EXPECT_EQ(builtin(name, 4).arity(), 4);
    }
}

TEST(boolfn, encodings) {
    auto a = random_function(3, 700);
    auto b = random_function(3, 701);
    auto c = random_function(3, 702);
    auto f = triple(a, b, c);
    for (uint64_t x = 0; x < 8; x++) {
        EXPECT_EQ(f[x * 4 + 0], a[x]);
        EXPECT_EQ(f[x * 4 + 1], b[x]);
        EXPECT_EQ(f[x * 4 + 2], c[x]);
        EXPECT_FALSE(f[x * 4 + 3]);
    }
    auto g = pair(a, b);
    for (uint64_t x = 0; x < 8; x++) {
        EXPECT_EQ(g[x * 2], a[x]);
        EXPECT_EQ(g[x * 2 + 1], b[x]);
    }
    auto h = random_function(3, 703);
    auto m = mm(h);
    auto md = mm_dual(h);
    for (uint64_t x = 0; x < 8; x++) {
        for (uint64_t y = 0; y < 8; y++) {
            EXPECT_EQ(m[x * 8 + y], dot_mod2(x, y) != h[x]);
            EXPECT_EQ(md[x * 8 + y], dot_mod2(x, y) != h[y]);
        }
    }
}

TEST(boolfn, hex_round_trip) {
    for (int n = 2; n <= 9; n++) {
        auto f = random_function(n, 800 + n);
        EXPECT_EQ(from_hex(to_hex(f)), f);
    }
    EXPECT_EQ(to_hex(majority(3)), "17");
    EXPECT_EQ(from_hex("17\n"), majority(3));
    EXPECT_THROW(from_hex("1G"), std::exception);
    EXPECT_THROW(from_hex("ABCD"), std::exception);
    EXPECT_THROW(from_hex("abc"), std::exception);
    std::string path = ::testing::TempDir() + "qpt_hex_test.txt";
    write_truth_table(path, majority(5));
    EXPECT_EQ(read_truth_table(path), majority(5));
    std::remove(path.c_str());
}

TEST(boolfn, soundness_sandwiches_small_n) {
    for (int n = 1; n <= 3; n++) {
        for (uint64_t mask = 0; mask < (uint64_t{1} << (1 << n)); mask++) {
            auto f = BooleanFunction::from_mask(n, mask);
            double eps = exact_distance_to_monotone(f).epsilon;
            double p = monotone_violation_probability(f);
            EXPECT_LE(eps / n, p + 1e-15);
            EXPECT_LE(p, 2 * eps + 1e-15);
            double es = exact_distance_to_symmetric(f).epsilon;
            double v = symmetry_violation_probability(f);
            EXPECT_LE(es, v + 1e-15);
            EXPECT_LE(v, 2 * es + 1e-15);
        }
    }
}

TEST(boolfn, distance_to_mm_against_enumeration) {
    // All 16 members of MM on 4 bits, against every 4-bit function.
    std::vector<BooleanFunction> members;
    for (uint64_t h = 0; h < 4; h++) {
        members.push_back(mm(BooleanFunction::from_mask(1, h)));
    }
    for (uint64_t h = 0; h < 16; h++) {
        members.push_back(mm(BooleanFunction::from_mask(2, h)));
    }
    for (uint64_t g = 0; g < 65536; g++) {
        auto f = BooleanFunction::from_mask(4, g);
        uint64_t best = 16;
        for (size_t i = 4; i < members.size(); i++) {
            best = std::min(best, hamming_distance(f, members[i]));
        }
        auto d = exact_distance_to_mm(f);
        ASSERT_EQ(d.mismatches, best);
        ASSERT_EQ(hamming_distance(f, *d.witness), best);
    }
    for (uint64_t g = 0; g < 16; g++) {
        auto f = BooleanFunction::from_mask(2, g);
        uint64_t best = 4;
        for (size_t i = 0; i < 4; i++) {
            best = std::min(best, hamming_distance(f, members[i]));
        }
        EXPECT_EQ(exact_distance_to_mm(f).mismatches, best);
    }
    EXPECT_THROW(exact_distance_to_mm(majority(3)), ArityError);
    auto h = BooleanFunction::from_predicate(3, [](uint64_t x) {
        return x < 4;
    });
    EXPECT_DOUBLE_EQ(exact_distance_to_mm(mm_dual(h)).epsilon, 0.5);
    EXPECT_DOUBLE_EQ(exact_distance_to_mm(mm(h)).epsilon, 0.0);
}
