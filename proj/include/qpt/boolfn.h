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

#ifndef QPT_BOOLFN_H
#define QPT_BOOLFN_H

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpt {

constexpr int MAX_ARITY = 20;

/// Bit x_i (1-based) of an n-bit index. x_1 is the most significant bit.
inline bool coordinate_bit(uint64_t x, int i, int n) {
    return (x >> (n - i)) & 1;
}

/// Index mask selecting coordinate i (1-based) of an n-bit index.
inline uint64_t coordinate_mask(int i, int n) {
    return uint64_t{1} << (n - i);
}

inline int hamming_weight(uint64_t x) {
    return std::popcount(x);
}

/// Inner product mod 2 of two index bit strings.
inline bool dot_mod2(uint64_t a, uint64_t b) {
    return std::popcount(a & b) & 1;
}

/// Truth table of a function {0,1}^n -> {0,1}. Entry at index int(x) is f(x).
/// Also used as the indicator of a subset of {0,1}^n.
class BooleanFunction {
   public:
    BooleanFunction(int arity, std::vector<uint8_t> table);

    template <typename F>
    static BooleanFunction from_predicate(int arity, F &&pred) {
        check_arity(arity);
        std::vector<uint8_t> t(uint64_t{1} << arity);
        for (uint64_t x = 0; x < t.size(); x++) {
            t[x] = pred(x) ? 1 : 0;
        }
        return BooleanFunction(arity, std::move(t));
    }

    /// Bit `x` of `mask` is f(x). Requires arity <= 6.
    static BooleanFunction from_mask(int arity, uint64_t mask);
    static BooleanFunction constant(int arity, bool value);

    int arity() const {
        return arity_;
    }
    uint64_t size() const {
        return table_.size();
    }
    bool operator[](uint64_t x) const {
        return table_[x];
    }
    /// Evaluates at the bit string (x_1, ..., x_n).
    bool evaluate(std::span<const uint8_t> bits) const;
    const std::vector<uint8_t> &table() const {
        return table_;
    }
    uint64_t weight() const;
    /// Packs the table into a mask. Requires arity <= 6.
    uint64_t mask() const;
    std::vector<uint64_t> members() const;

    bool operator==(const BooleanFunction &other) const = default;

    static void check_arity(int arity);

   private:
    int arity_;
    std::vector<uint8_t> table_;
};

uint64_t hamming_distance(const BooleanFunction &f, const BooleanFunction &g);
double normalized_distance(const BooleanFunction &f, const BooleanFunction &g);

/// Walsh coefficients of g = (-1)^f, indexed by the characteristic string of S.
struct FourierSpectrum {
    int arity;
    std::vector<double> coeffs;

    double operator[](uint64_t s) const {
        return coeffs[s];
    }
    /// Coefficient on the singleton {i}, 1-based.
    double singleton(int i) const {
        return coeffs[coordinate_mask(i, arity)];
    }
};

FourierSpectrum walsh_transform(const BooleanFunction &f);
/// Rebuilds f from its spectrum. Throws if the coefficients are not the
/// spectrum of a Boolean function.
BooleanFunction inverse_walsh(const FourierSpectrum &spec);
double parseval_sum(const FourierSpectrum &spec);
double total_influence(const FourierSpectrum &spec);

double monotone_violation_probability(const BooleanFunction &f);
double fourier_monotonicity_statistic(const BooleanFunction &f);

/// counts[w][b] = #{x : |x| = w, f(x) = b}.
std::vector<std::array<uint64_t, 2>> weight_class_counts(const BooleanFunction &f);
/// Pr over uniform x and uniform permutation pi that f(x) = f(pi x).
double symmetric_agreement_probability(const BooleanFunction &f);
double symmetry_violation_probability(const BooleanFunction &f);

double triangle_density(const BooleanFunction &f);

bool is_monotone(const BooleanFunction &f);
bool is_symmetric(const BooleanFunction &f);
bool is_triangle_free(const BooleanFunction &f);

struct DistanceReport {
    double epsilon;
    uint64_t mismatches;
    std::optional<BooleanFunction> witness;
};

constexpr int MAX_MONOTONE_ENUMERATION_ARITY = 5;
constexpr int MAX_CLASS_ENUMERATION_ARITY = 4;

/// All monotone functions on n <= 5 bits, as table masks in increasing order.
const std::vector<uint64_t> &monotone_masks(int n);

DistanceReport exact_distance_to_monotone(const BooleanFunction &f);
DistanceReport exact_distance_to_symmetric(const BooleanFunction &f);
/// Distance on 2k bits to {<x, y> + h(x)}: each row x independently picks
/// the h(x) that disagrees less. Throws ArityError for odd arity.
DistanceReport exact_distance_to_mm(const BooleanFunction &f);
DistanceReport exact_distance_to_class(
    const BooleanFunction &f, const std::function<bool(const BooleanFunction &)> &predicate);

// Named constructions. Sets are passed as indicator functions.
BooleanFunction dictator(int n, int i = 1);
BooleanFunction antidictator(int n, int i = 1);
/// 1 iff |x| > n/2.
BooleanFunction majority(int n);
BooleanFunction parity(int n);
BooleanFunction and_function(int n);
BooleanFunction or_function(int n);
/// <x, y> on 2k bits, x the first k coordinates.
BooleanFunction inner_product(int n);
/// f(x, y) = <x, y> + h(x) on 2n bits.
BooleanFunction mm(const BooleanFunction &h);
/// f(x, y) = <x, y> + h(y) on 2n bits.
BooleanFunction mm_dual(const BooleanFunction &h);
/// f(x, a) on n+2 bits with a the last two coordinates:
/// a=00 -> A, a=01 -> B, a=10 -> C, a=11 -> 0.
BooleanFunction triple(const BooleanFunction &a, const BooleanFunction &b, const BooleanFunction &c);
/// f(x, a) on n+1 bits: a=0 -> A, a=1 -> B.
BooleanFunction pair(const BooleanFunction &a, const BooleanFunction &b);

struct BuiltinParams {
    std::optional<BooleanFunction> h;
    std::optional<BooleanFunction> a;
    std::optional<BooleanFunction> b;
    std::optional<BooleanFunction> c;
    int coordinate = 1;
};

const std::vector<std::string> &builtin_names();
BooleanFunction builtin(std::string_view name, int n, const BuiltinParams &params = {});

/// Truth-table text format: lowercase hex, table bits packed most significant
/// bit first in index order. Arity is inferred from the length, so n >= 2.
std::string to_hex(const BooleanFunction &f);
BooleanFunction from_hex(std::string_view text);
BooleanFunction read_truth_table(const std::string &path);
void write_truth_table(const std::string &path, const BooleanFunction &f);

}  // namespace qpt

#endif
