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

#ifndef QPT_THREE_FOLD_H
#define QPT_THREE_FOLD_H

#include <cstdint>
#include <string>
#include <vector>

#include "qpt/linalg.h"
#include "qpt/rng.h"

namespace qpt {

/// t-copy averages of |f_(A,B,C)><f_(A,B,C)| with A, B, C uniform subsets
/// (variant 0) or C = A xor B (variant 1). A copy's basis index is
/// x*8 + a*2 + b, matching function_state(triple(A,B,C)); copy 1 is the most
/// significant block.
///
/// Exact entries by per-point factorization: an entry is (4N)^{-t} times the
/// product over distinct points z of the fraction of (A_z, B_z, C_z) that
/// satisfies every constraint the row and column place on z.
Matrix three_fold_exact(int n, int t, int variant);
/// Average over every subset triple (n <= 2).
Matrix three_fold_enumerated(int n, int t, int variant);
/// Monte Carlo average over `trials` random triples.
Matrix three_fold_sampled(int n, int t, int variant, int64_t trials, RngStream &rng);

/// true for rows whose input registers x_1..x_t are pairwise distinct.
std::vector<bool> distinct_rows(int n, int t);

struct DistinctProjectorReport {
    int n;
    int t;
    uint64_t dimension;
    /// "enumeration" for n <= 2, otherwise "factorized".
    std::string method;
    double max_projected_deviation;
    double trace_norm_difference;
    /// 4t / 2^{n/2}.
    double bound;
    double ratio;
    double trace_e0;
    double trace_e1;
    /// Max entrywise gap between enumeration and factorization (n <= 2), else -1.
    double enumeration_gap;
    int64_t sampled_trials;
    /// Max entrywise gap between sampled and exact averages, else -1.
    double sampled_deviation;
    /// Hoeffding half-width per entry, union over all entries at 1e-3.
    double sampling_error_bound;
};

/// Builds E0 and E1, compares them on the distinct-x subspace, and computes
/// ||E0 - E1||_1. With trials > 0 a sampled average is compared as well.
DistinctProjectorReport distinct_projector_check(int n, int t, int64_t trials, RngStream &rng);

}  // namespace qpt

#endif
