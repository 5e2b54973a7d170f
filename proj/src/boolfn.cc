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

#include "qpt/boolfn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "qpt/errors.h"

namespace qpt {

void BooleanFunction::check_arity(int arity) {
    if (arity < 1 || arity > MAX_ARITY) {
        throw ArityError("arity " + std::to_string(arity) + " outside [1, " + std::to_string(MAX_ARITY) + "]");
    }
}

BooleanFunction::BooleanFunction(int arity, std::vector<uint8_t> table) : arity_(arity), table_(std::move(table)) {
    check_arity(arity);
    if (table_.size() != (uint64_t{1} << arity)) {
        throw ArityError(
            "truth table has " + std::to_string(table_.size()) + " entries, expected 2^" + std::to_string(arity));
    }
    for (uint8_t v : table_) {
        if (v > 1) {
            throw ContractError("truth table entries must be 0 or 1");
        }
    }
}

BooleanFunction BooleanFunction::from_mask(int arity, uint64_t mask) {
    if (arity > 6) {
        throw ArityError("mask form requires arity <= 6");
    }
    return from_predicate(arity, [&](uint64_t x) {
        return (mask >> x) & 1;
    });
}

BooleanFunction BooleanFunction::constant(int arity, bool value) {
    check_arity(arity);
    return BooleanFunction(arity, std::vector<uint8_t>(uint64_t{1} << arity, value ? 1 : 0));
}

bool BooleanFunction::evaluate(std::span<const uint8_t> bits) const {
    if (bits.size() != (size_t)arity_) {
        throw ArityError(
            "input has length " + std::to_string(bits.size()) + ", function arity is " + std::to_string(arity_));
    }
    uint64_t x = 0;
    for (uint8_t b : bits) {
        if (b > 1) {
            throw ContractError("input bits must be 0 or 1");
        }
        x = (x << 1) | b;
    }
    return table_[x];
}

uint64_t BooleanFunction::weight() const {
    return (uint64_t)std::count(table_.begin(), table_.end(), uint8_t{1});
}

uint64_t BooleanFunction::mask() const {
    if (arity_ > 6) {
        throw ArityError("mask form requires arity <= 6");
    }
    uint64_t m = 0;
    for (uint64_t x = 0; x < table_.size(); x++) {
        m |= uint64_t{table_[x]} << x;
    }
    return m;
}

std::vector<uint64_t> BooleanFunction::members() const {
    std::vector<uint64_t> out;
    for (uint64_t x = 0; x < table_.size(); x++) {
        if (table_[x]) {
            out.push_back(x);
        }
    }
    return out;
}

uint64_t hamming_distance(const BooleanFunction &f, const BooleanFunction &g) {
    if (f.arity() != g.arity()) {
        throw ArityError("hamming distance between functions of different arity");
    }
    uint64_t d = 0;
    for (uint64_t x = 0; x < f.size(); x++) {
        d += f[x] != g[x];
    }
    return d;
}

double normalized_distance(const BooleanFunction &f, const BooleanFunction &g) {
    return (double)hamming_distance(f, g) / (double)f.size();
}

namespace {

void fwht(std::vector<double> &v) {
    for (size_t len = 1; len < v.size(); len <<= 1) {
        for (size_t i = 0; i < v.size(); i += len << 1) {
            for (size_t j = i; j < i + len; j++) {
                double a = v[j];
                double b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

double binomial_coefficient(int n, int k) {
    double r = 1;
    for (int j = 1; j <= k; j++) {
        r = r * (n - k + j) / j;
    }
    return std::round(r);
}

}  // namespace

FourierSpectrum walsh_transform(const BooleanFunction &f) {
    std::vector<double> v(f.size());
    for (uint64_t x = 0; x < f.size(); x++) {
        v[x] = f[x] ? -1.0 : 1.0;
    }
    fwht(v);
    double scale = std::ldexp(1.0, -f.arity());
    for (double &c : v) {
        c *= scale;
    }
    return FourierSpectrum{f.arity(), std::move(v)};
}

BooleanFunction inverse_walsh(const FourierSpectrum &spec) {
    std::vector<double> v = spec.coeffs;
    fwht(v);
    std::vector<uint8_t> table(v.size());
    for (size_t x = 0; x < v.size(); x++) {
        if (std::abs(std::abs(v[x]) - 1.0) > 1e-9) {
            throw ContractError("coefficients are not the spectrum of a Boolean function");
        }
        table[x] = v[x] < 0;
    }
    return BooleanFunction(spec.arity, std::move(table));
}

double parseval_sum(const FourierSpectrum &spec) {
    double s = 0;
    for (double c : spec.coeffs) {
        s += c * c;
    }
    return s;
}

double total_influence(const FourierSpectrum &spec) {
    double s = 0;
    for (uint64_t k = 0; k < spec.coeffs.size(); k++) {
        s += hamming_weight(k) * spec.coeffs[k] * spec.coeffs[k];
    }
    return s;
}

double monotone_violation_probability(const BooleanFunction &f) {
    int n = f.arity();
    uint64_t violations = 0;
    for (uint64_t x = 0; x < f.size(); x++) {
        for (int i = 1; i <= n; i++) {
            uint64_t y = x ^ coordinate_mask(i, n);
            bool xi = coordinate_bit(x, i, n);
            if (xi ? (!f[x] && f[y]) : (f[x] && !f[y])) {
                violations++;
            }
        }
    }
    return (double)violations / ((double)n * (double)f.size());
}

double fourier_monotonicity_statistic(const BooleanFunction &f) {
    FourierSpectrum spec = walsh_transform(f);
    int n = f.arity();
    double singles = 0;
    for (int i = 1; i <= n; i++) {
        singles += spec.singleton(i);
    }
    return (total_influence(spec) - singles) / (2.0 * n);
}

std::vector<std::array<uint64_t, 2>> weight_class_counts(const BooleanFunction &f) {
    std::vector<std::array<uint64_t, 2>> counts(f.arity() + 1, {0, 0});
    for (uint64_t x = 0; x < f.size(); x++) {
        counts[hamming_weight(x)][f[x]]++;
    }
    return counts;
}

double symmetric_agreement_probability(const BooleanFunction &f) {
    auto counts = weight_class_counts(f);
    double s = 0;
    for (int w = 0; w <= f.arity(); w++) {
        double c0 = (double)counts[w][0];
        double c1 = (double)counts[w][1];
        s += (c0 * c0 + c1 * c1) / binomial_coefficient(f.arity(), w);
    }
    return s / (double)f.size();
}

double symmetry_violation_probability(const BooleanFunction &f) {
    return 1.0 - symmetric_agreement_probability(f);
}

double triangle_density(const BooleanFunction &f) {
    uint64_t count = 0;
    auto ones = f.members();
    for (uint64_t x : ones) {
        for (uint64_t y : ones) {
            count += f[x ^ y];
        }
    }
    return (double)count / ((double)f.size() * (double)f.size());
}

bool is_monotone(const BooleanFunction &f) {
    int n = f.arity();
    for (uint64_t x = 0; x < f.size(); x++) {
        if (!f[x]) {
            continue;
        }
        for (int i = 1; i <= n; i++) {
            uint64_t bit = coordinate_mask(i, n);
            if (!(x & bit) && !f[x | bit]) {
                return false;
            }
        }
    }
    return true;
}

bool is_symmetric(const BooleanFunction &f) {
    for (const auto &c : weight_class_counts(f)) {
        if (c[0] && c[1]) {
            return false;
        }
    }
    return true;
}

bool is_triangle_free(const BooleanFunction &f) {
    auto ones = f.members();
    for (uint64_t x : ones) {
        for (uint64_t y : ones) {
            if (f[x ^ y]) {
                return false;
            }
        }
    }
    return true;
}

const std::vector<uint64_t> &monotone_masks(int n) {
    if (n < 0 || n > MAX_MONOTONE_ENUMERATION_ARITY) {
        throw CapabilityError(
            "monotone enumeration supports n <= " + std::to_string(MAX_MONOTONE_ENUMERATION_ARITY) + ", got n = " +
            std::to_string(n));
    }
    static std::once_flag once;
    static std::vector<std::vector<uint64_t>> levels;
    std::call_once(once, [] {
        // A monotone function on n bits is a pair (f0, f1) of monotone
        // functions on the remaining n-1 bits with f0 <= f1, f0 on x_1 = 0.
        levels.push_back({0, 1});
        for (int k = 1; k <= MAX_MONOTONE_ENUMERATION_ARITY; k++) {
            const auto &prev = levels.back();
            int half = 1 << (k - 1);
            std::vector<uint64_t> next;
            for (uint64_t f1 : prev) {
                for (uint64_t f0 : prev) {
                    if ((f0 & ~f1) == 0) {
                        next.push_back(f0 | (f1 << half));
                    }
                }
            }
            std::sort(next.begin(), next.end());
            levels.push_back(std::move(next));
        }
    });
    return levels[n];
}

DistanceReport exact_distance_to_monotone(const BooleanFunction &f) {
    int n = f.arity();
    if (n > MAX_MONOTONE_ENUMERATION_ARITY) {
        throw CapabilityError(
            "exact distance to monotone enumerates monotone functions only for n <= " +
            std::to_string(MAX_MONOTONE_ENUMERATION_ARITY) + ", got n = " + std::to_string(n));
    }
    uint64_t fm = f.mask();
    uint64_t best = std::numeric_limits<uint64_t>::max();
    uint64_t best_mask = 0;
    for (uint64_t g : monotone_masks(n)) {
        uint64_t d = (uint64_t)std::popcount(fm ^ g);
        if (d < best) {
            best = d;
            best_mask = g;
        }
    }
    return {(double)best / (double)f.size(), best, BooleanFunction::from_mask(n, best_mask)};
}

DistanceReport exact_distance_to_symmetric(const BooleanFunction &f) {
    auto counts = weight_class_counts(f);
    uint64_t total = 0;
    std::vector<uint8_t> vote(counts.size());
    for (size_t w = 0; w < counts.size(); w++) {
        total += std::min(counts[w][0], counts[w][1]);
        vote[w] = counts[w][1] > counts[w][0];
    }
    auto witness = BooleanFunction::from_predicate(f.arity(), [&](uint64_t x) {
        return vote[hamming_weight(x)];
    });
    return {(double)total / (double)f.size(), total, std::move(witness)};
}

DistanceReport exact_distance_to_mm(const BooleanFunction &f) {
    int n = f.arity();
    if (n % 2) {
        throw ArityError("MM distance needs an even arity, got " + std::to_string(n));
    }
    int k = n / 2;
    uint64_t rows = uint64_t{1} << k;
    std::vector<uint8_t> h(rows);
    uint64_t total = 0;
    for (uint64_t x = 0; x < rows; x++) {
        uint64_t off = 0;
        for (uint64_t y = 0; y < rows; y++) {
            off += f[(x << k) | y] != (bool)dot_mod2(x, y);
        }
        h[x] = off > rows - off;
        total += std::min(off, rows - off);
    }
    auto witness = mm(BooleanFunction::from_predicate(k, [&](uint64_t x) {
        return h[x] != 0;
    }));
    return {(double)total / (double)f.size(), total, std::move(witness)};
}

DistanceReport exact_distance_to_class(
    const BooleanFunction &f, const std::function<bool(const BooleanFunction &)> &predicate) {
    int n = f.arity();
    if (n > MAX_CLASS_ENUMERATION_ARITY) {
        throw CapabilityError(
            "exact distance to a class enumerates all functions only for n <= " +
            std::to_string(MAX_CLASS_ENUMERATION_ARITY) + ", got n = " + std::to_string(n));
    }
    uint64_t fm = f.mask();
    uint64_t count = uint64_t{1} << (uint64_t{1} << n);
    std::optional<BooleanFunction> witness;
    uint64_t best = std::numeric_limits<uint64_t>::max();
    for (uint64_t g = 0; g < count; g++) {
        uint64_t d = (uint64_t)std::popcount(fm ^ g);
        if (d >= best) {
            continue;
        }
        auto candidate = BooleanFunction::from_mask(n, g);
        if (predicate(candidate)) {
            best = d;
            witness = std::move(candidate);
        }
    }
    if (!witness.has_value()) {
        return {1.0, f.size(), std::nullopt};
    }
    return {(double)best / (double)f.size(), best, std::move(witness)};
}

}  // namespace qpt
