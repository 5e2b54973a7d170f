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

#ifndef QPT_TESTERS_H
#define QPT_TESTERS_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpt/boolfn.h"
#include "qpt/qstate.h"
#include "qpt/rng.h"

namespace qpt {

enum class Decision { Accept, Reject };

const char *decision_name(Decision d);

struct TesterVerdict {
    Decision decision;
    double statistic;
    int64_t copies_used;
    int64_t aborted_iterations = 0;
    bool shortfall = false;
    std::vector<std::pair<std::string, double>> diagnostics;

    /// Value of the named diagnostic; throws if absent.
    double diagnostic(std::string_view name) const;
};

struct MonotonicityParams {
    int n;
    double eps;
    double delta;
    double eps2;
    double eps5;
    double delta1;
    double delta2;
    double delta5;
    int64_t m1;
    int64_t m2;
    int64_t m4;
    int64_t m5;

    static MonotonicityParams make(int n, double eps, double delta);
    int64_t total_copies() const {
        return m1 + m4;
    }
};

/// Fourier-sampling monotonicity tester. Accepts iff p_hat < eps/(2n).
TesterVerdict test_monotonicity(const BooleanFunction &f, double eps, double delta, RngStream &rng);

/// ceil(9 ln(2/delta) / eps^2).
int64_t symmetry_copy_count(double eps, double delta);
/// Symmetric-subspace tester. Accepts iff the rejection frequency is < eps/2.
TesterVerdict test_symmetry(const BooleanFunction &f, double eps, double delta, RngStream &rng);

struct TriangleParams {
    double eps_tilde;
    double delta;
    /// Postselection mass bound for the function states (the far parameter).
    double eps;
    int64_t m;
    double delta_tilde;
    int64_t point_attempts;
    /// Copies of each of the two function states in the final estimate.
    int64_t k;
    /// Subset-state copies prepared per postselection step (2k).
    int64_t prepared_outputs;
    int64_t copies_per_output;
    int64_t prepare_copies;

    /// `eps` <= 0 selects eps = eps_tilde.
    static TriangleParams make(double eps_tilde, double delta, double eps = 0);
    int64_t max_copies_per_iteration() const {
        return point_attempts + 2 * prepare_copies + 2 * k;
    }
    /// Per-iteration count quoted with the tester's statement, which leaves
    /// out the point-sampling copies.
    int64_t stated_copies_per_iteration() const {
        return 2 * prepare_copies + 2 * k;
    }
};

/// Accepts iff the mean of the per-iteration estimates is < eps_tilde/2.
TesterVerdict test_triangle_freeness(const BooleanFunction &f, const TriangleParams &params, RngStream &rng);

/// ceil(2 ln(12) 81).
int64_t mm_sample_count();
/// Repetitions for confidence 1 - delta: 1 when delta >= 1/3, else ceil(18 ln(1/delta)).
int64_t mm_repetitions(double delta);
/// Accepts iff p_hat <= 1/9 (majority vote over repetitions; ties reject).
TesterVerdict test_mm(const BooleanFunction &f, double delta, RngStream &rng);

struct IntersectionEstimate {
    double estimate;
    double influence;
    double a_density;
    double b_density;
    int64_t fourier_successes;
    int64_t classical_samples;
    int64_t copies_used;
};

/// Estimates |A n B| / 2^n from copies of the function state of pair(A, B).
IntersectionEstimate estimate_intersection2(const BooleanFunction &f, double eps, double delta, RngStream &rng);

/// Draws q uniform labeled samples and counts unordered triples of them with
/// x + y + z = 0 and f = 1 on all three.
int64_t classical_triangle_baseline(const BooleanFunction &f, int q, RngStream &rng);

}  // namespace qpt

#endif
