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

#include "qpt/three_fold.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qpt/boolfn.h"
#include "qpt/errors.h"
#include "qpt/parallel.h"
#include "qpt/spectra.h"

namespace qpt {

namespace {

// Assignment (A_z, B_z, C_z) is encoded as A | B << 1 | C << 2.
constexpr uint8_t kXorAssignments = 0x69;

uint8_t constraint_mask(int a, int b) {
    if (a == 3) {
        return b ? 0 : 0xFF;
    }
    uint8_t mask = 0;
    for (int s = 0; s < 8; s++) {
        if (((s >> a) & 1) == b) {
            mask |= uint8_t(1 << s);
        }
    }
    return mask;
}

struct PointConstraint {
    uint64_t z;
    uint8_t mask;
};

/// Constraints of one row, merged per point.
std::vector<PointConstraint> row_constraints(uint64_t index, int n, int t) {
    std::vector<PointConstraint> out;
    int bits = n + 3;
    for (int j = 0; j < t; j++) {
        uint64_t c = (index >> (bits * (t - 1 - j))) & ((uint64_t{1} << bits) - 1);
        uint64_t z = c >> 3;
        uint8_t mask = constraint_mask((int)((c >> 1) & 3), (int)(c & 1));
        auto it = std::find_if(out.begin(), out.end(), [&](const PointConstraint &p) {
            return p.z == z;
        });
        if (it == out.end()) {
            out.push_back({z, mask});
        } else {
            it->mask &= mask;
        }
    }
    return out;
}

uint64_t three_fold_dimension(int n, int t) {
    if (n < 1 || t < 1) {
        throw ContractError("three-fold check needs n >= 1 and t >= 1");
    }
    uint64_t d = 1;
    for (int j = 0; j < t; j++) {
        d <<= (n + 3);
        check_dimension(d, "three-fold ensemble");
    }
    return d;
}

void accumulate_state(Matrix &out, const BooleanFunction &f, int t, double weight) {
    // Sparse t-fold power of the function state.
    uint64_t per = f.size();
    double amp = 1 / std::sqrt((double)per);
    std::vector<std::pair<uint64_t, double>> support{{0, 1.0}};
    for (int j = 0; j < t; j++) {
        std::vector<std::pair<uint64_t, double>> next;
        next.reserve(support.size() * per);
        for (auto [idx, a] : support) {
            for (uint64_t xa = 0; xa < per; xa++) {
                next.push_back({idx * 2 * per + xa * 2 + f[xa], a * amp});
            }
        }
        support.swap(next);
    }
    for (auto [i, ai] : support) {
        double wi = weight * ai;
        for (auto [j, aj] : support) {
            out(i, j) += wi * aj;
        }
    }
}

}  // namespace

Matrix three_fold_exact(int n, int t, int variant) {
    if (variant != 0 && variant != 1) {
        throw ContractError("three-fold variant must be 0 or 1");
    }
    uint64_t dim = three_fold_dimension(n, t);
    std::vector<std::vector<PointConstraint>> rows(dim);
    for (uint64_t r = 0; r < dim; r++) {
        rows[r] = row_constraints(r, n, t);
    }
    double base = std::pow(4.0 * (double)(uint64_t{1} << n), -t);
    uint8_t allowed = variant == 0 ? 0xFF : kXorAssignments;
    double denom = variant == 0 ? 8.0 : 4.0;
    Matrix out(dim);
    run_indexed<int>(dim, default_thread_count(), [&](size_t r) {
        const auto &rc = rows[r];
        for (uint64_t c = 0; c < dim; c++) {
            const auto &cc = rows[c];
            double v = base;
            for (const auto &p : rc) {
                uint8_t mask = p.mask & allowed;
                for (const auto &q : cc) {
                    if (q.z == p.z) {
                        mask &= q.mask;
                    }
                }
                v *= std::popcount(mask) / denom;
            }
            for (const auto &q : cc) {
                bool shared = std::any_of(rc.begin(), rc.end(), [&](const PointConstraint &p) {
                    return p.z == q.z;
                });
                if (!shared) {
                    v *= std::popcount(uint8_t(q.mask & allowed)) / denom;
                }
            }
            out(r, c) = v;
        }
        return 0;
    });
    return out;
}

Matrix three_fold_enumerated(int n, int t, int variant) {
    if (variant != 0 && variant != 1) {
        throw ContractError("three-fold variant must be 0 or 1");
    }
    if (n > 2) {
        throw CapabilityError("subset-triple enumeration is limited to n <= 2");
    }
    uint64_t dim = three_fold_dimension(n, t);
    uint64_t points = uint64_t{1} << n;
    uint64_t sets = uint64_t{1} << points;
    Matrix out(dim);
    uint64_t total = variant == 0 ? sets * sets * sets : sets * sets;
    double w = 1.0 / (double)total;
    for (uint64_t a = 0; a < sets; a++) {
        for (uint64_t b = 0; b < sets; b++) {
            uint64_t c_lo = variant == 0 ? 0 : (a ^ b);
            uint64_t c_hi = variant == 0 ? sets : (a ^ b) + 1;
            for (uint64_t c = c_lo; c < c_hi; c++) {
                BooleanFunction f = triple(BooleanFunction::from_mask(n, a), BooleanFunction::from_mask(n, b),
                                           BooleanFunction::from_mask(n, c));
                accumulate_state(out, f, t, w);
            }
        }
    }
    return out;
}

Matrix three_fold_sampled(int n, int t, int variant, int64_t trials, RngStream &rng) {
    if (variant != 0 && variant != 1) {
        throw ContractError("three-fold variant must be 0 or 1");
    }
    if (trials < 1) {
        throw ContractError("sampled average needs trials >= 1");
    }
    uint64_t dim = three_fold_dimension(n, t);
    Matrix out(dim);
    double w = 1.0 / (double)trials;
    for (int64_t i = 0; i < trials; i++) {
        auto draw = [&] {
            return BooleanFunction::from_predicate(n, [&](uint64_t) {
                return rng() >> 63;
            });
        };
        BooleanFunction a = draw();
        BooleanFunction b = draw();
        BooleanFunction c = variant == 0 ? draw() : BooleanFunction::from_predicate(n, [&](uint64_t x) {
            return a[x] != b[x];
        });
        accumulate_state(out, triple(a, b, c), t, w);
    }
    return out;
}

std::vector<bool> distinct_rows(int n, int t) {
    uint64_t dim = three_fold_dimension(n, t);
    std::vector<bool> out(dim);
    int bits = n + 3;
    for (uint64_t r = 0; r < dim; r++) {
        std::vector<uint64_t> xs;
        for (int j = 0; j < t; j++) {
            xs.push_back(((r >> (bits * j)) & ((uint64_t{1} << bits) - 1)) >> 3);
        }
        std::sort(xs.begin(), xs.end());
        out[r] = std::adjacent_find(xs.begin(), xs.end()) == xs.end();
    }
    return out;
}

DistinctProjectorReport distinct_projector_check(int n, int t, int64_t trials, RngStream &rng) {
    DistinctProjectorReport rep{};
    rep.n = n;
    rep.t = t;
    rep.dimension = three_fold_dimension(n, t);
    rep.enumeration_gap = -1;
    rep.sampled_trials = trials;
    rep.sampled_deviation = -1;
    rep.sampling_error_bound = -1;

    Matrix e0 = three_fold_exact(n, t, 0);
    Matrix e1 = three_fold_exact(n, t, 1);
    if (n <= 2) {
        rep.method = "enumeration";
        Matrix f0 = three_fold_enumerated(n, t, 0);
        Matrix f1 = three_fold_enumerated(n, t, 1);
        rep.enumeration_gap = std::max((f0 - e0).max_abs(), (f1 - e1).max_abs());
        e0 = std::move(f0);
        e1 = std::move(f1);
    } else {
        rep.method = "factorized";
    }
    check_density_matrix(e0, 1, false);
    check_density_matrix(e1, 1, false);
    rep.trace_e0 = e0.trace();
    rep.trace_e1 = e1.trace();

    if (trials > 0) {
        RngStream r0 = rng.child("e0");
        RngStream r1 = rng.child("e1");
        Matrix s0 = three_fold_sampled(n, t, 0, trials, r0);
        Matrix s1 = three_fold_sampled(n, t, 1, trials, r1);
        rep.sampled_deviation = std::max((s0 - e0).max_abs(), (s1 - e1).max_abs());
        double scale = std::pow(4.0 * (double)(uint64_t{1} << n), -t);
        double d = (double)rep.dimension;
        rep.sampling_error_bound = scale * std::sqrt(std::log(2 * d * d / 1e-3) / (2.0 * (double)trials));
    }

    Matrix diff = e0 - e1;
    std::vector<bool> distinct = distinct_rows(n, t);
    double dev = 0;
    for (uint64_t i = 0; i < rep.dimension; i++) {
        if (!distinct[i]) {
            continue;
        }
        for (uint64_t j = 0; j < rep.dimension; j++) {
            if (distinct[j]) {
                dev = std::max(dev, std::abs(diff(i, j)));
            }
        }
    }
    rep.max_projected_deviation = dev;
    rep.trace_norm_difference = dev == 0 ? trace_norm_with_zero_block(diff, distinct) : trace_norm(diff);
    rep.bound = 4.0 * t / std::sqrt((double)(uint64_t{1} << n));
    rep.ratio = rep.trace_norm_difference / rep.bound;
    return rep;
}

}  // namespace qpt
