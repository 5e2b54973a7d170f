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

#ifndef QPT_QSTATE_H
#define QPT_QSTATE_H

#include <cstdint>
#include <optional>
#include <vector>

#include "qpt/boolfn.h"
#include "qpt/rng.h"

namespace qpt {

/// Counts function-state copies drawn by one tester run.
class CopyLedger {
   public:
    CopyLedger() = default;
    explicit CopyLedger(int64_t budget);

    /// Records `copies` more draws. Throws BudgetExhausted, leaving the count
    /// unchanged, if that would pass the budget.
    void consume(int64_t copies);
    bool can_consume(int64_t copies) const;
    int64_t consumed() const {
        return consumed_;
    }
    std::optional<int64_t> budget() const {
        return budget_;
    }

   private:
    int64_t consumed_ = 0;
    std::optional<int64_t> budget_;
};

/// Uniform superposition over a nonempty subset of {0,1}^n.
class SubsetState {
   public:
    explicit SubsetState(BooleanFunction indicator);
    static SubsetState full(int n);
    static SubsetState from_members(int n, const std::vector<uint64_t> &members);

    int arity() const {
        return indicator_.arity();
    }
    uint64_t cardinality() const {
        return cardinality_;
    }
    bool contains(uint64_t x) const {
        return indicator_[x];
    }
    const BooleanFunction &indicator() const {
        return indicator_;
    }

   private:
    BooleanFunction indicator_;
    uint64_t cardinality_;
};

/// |<a|b>| = |A n B| / sqrt(|A| |B|).
double overlap(const SubsetState &a, const SubsetState &b);

struct ClassicalSample {
    uint64_t x;
    bool value;
};

ClassicalSample sample_classical(const BooleanFunction &f, CopyLedger &ledger, RngStream &rng);
/// `copies` classical samples at once, as a count per input x.
std::vector<int64_t> sample_classical_counts(const BooleanFunction &f, int64_t copies, CopyLedger &ledger, RngStream &rng);

struct FourierBatch {
    int64_t copies;
    int64_t successes;
    /// Histogram over S of the first min(successes, keep) successful samples.
    std::vector<int64_t> histogram;
    int64_t kept;
};

/// Fourier sampling from copies of the function state of a fixed f. Holds the
/// spectrum and an alias table over the squared coefficients.
class FourierSampler {
   public:
    explicit FourierSampler(const BooleanFunction &f);

    const FourierSpectrum &spectrum() const {
        return spectrum_;
    }
    const std::vector<double> &probabilities() const {
        return probs_;
    }
    /// One copy. Empty when the last-qubit measurement fails (probability 1/2).
    std::optional<uint64_t> sample(CopyLedger &ledger, RngStream &rng) const;
    /// `copies` copies at once; keeps the first `keep` successes.
    FourierBatch sample_batch(int64_t copies, int64_t keep, CopyLedger &ledger, RngStream &rng) const;

   private:
    FourierSpectrum spectrum_;
    std::vector<double> probs_;
    AliasTable alias_;
};

std::optional<uint64_t> fourier_sample(const BooleanFunction &f, CopyLedger &ledger, RngStream &rng);

/// Measures the output qubit of up to `attempts` copies, stopping at the first
/// outcome b. Returns the post-measurement subset state or empty on FAIL.
std::optional<SubsetState> postselect_subset(
    const BooleanFunction &f, bool b, int64_t attempts, CopyLedger &ledger, RngStream &rng);

/// Measures the output qubit of all `attempts` copies; if some outcome equals
/// b, measures the input register of one such copy and returns x.
std::optional<uint64_t> postselect_point(
    const BooleanFunction &f, bool b, int64_t attempts, CopyLedger &ledger, RngStream &rng);

/// Copies per output state when preparing `outputs` states with failure
/// probability `delta` at postselection mass at least `eta`: ceil(ln(outputs/delta)/eta).
int64_t postselection_copies_per_output(int64_t outputs, double eta, double delta);

/// Prepares `outputs` copies of the subset state {x : f(x) = b}, measuring
/// outputs * postselection_copies_per_output(...) function-state copies. FAIL
/// (empty) when some group of copies never yields outcome b.
std::optional<SubsetState> prepare_subset_copies(
    const BooleanFunction &f, bool b, int64_t outputs, double eta, double delta, CopyLedger &ledger, RngStream &rng);

bool swap_test(const SubsetState &a, const SubsetState &b, RngStream &rng);
/// Number of accepting outcomes in `tests` independent SWAP tests.
int64_t swap_test_batch(const SubsetState &a, const SubsetState &b, int64_t tests, RngStream &rng);

/// ceil(2 ln(2/delta) / eps^4).
int64_t overlap_test_count(double eps, double delta);

struct OverlapEstimate {
    double mu;
    int64_t tests;
    int64_t accepts;
};

/// Estimates |<a|b>| to within eps with probability 1 - delta by SWAP tests.
OverlapEstimate estimate_overlap(const SubsetState &a, const SubsetState &b, double eps, double delta, RngStream &rng);
/// Same estimator for a known squared overlap (used when one side is a
/// function state rather than a subset state).
OverlapEstimate estimate_overlap_squared(double overlap_sq, double eps, double delta, RngStream &rng);

struct JointMembershipQuery {
    const BooleanFunction *f;
    const BooleanFunction *f_prime;
    uint64_t shift = 0;
    uint64_t shift_prime = 0;
    bool b = true;
    bool b_prime = true;
    double eps;
    double delta;
    /// Lower bound on Pr[f = b] used to size the postselection.
    double eta;
    /// Failure probability of each postselection step.
    double prep_delta;
};

struct JointMembershipEstimate {
    double gamma;
    double alpha;
    double alpha_prime;
    double beta;
    /// Copies of each of the two function states spent on the alpha estimates.
    int64_t k;
};

/// ceil(162 ln(6/delta) / eps^4).
int64_t joint_membership_test_count(double eps, double delta);

/// Estimates Pr_x[f(x + shift) = b, f'(x + shift') = b'] as beta * alpha * alpha'.
/// Empty when either postselection fails.
std::optional<JointMembershipEstimate> estimate_joint_membership(
    const JointMembershipQuery &query, CopyLedger &ledger, RngStream &rng);

/// Accepts with probability Pr_{x, pi}[f(x) = f(pi x)].
bool symmetric_subspace_measure(const BooleanFunction &f, CopyLedger &ledger, RngStream &rng);
int64_t symmetric_subspace_batch(const BooleanFunction &f, int64_t copies, CopyLedger &ledger, RngStream &rng);

/// x -> f(x + y).
BooleanFunction shift_function(const BooleanFunction &f, uint64_t y);
BooleanFunction shift_function(const BooleanFunction &f, std::span<const uint8_t> y_bits);
/// f(x, y) + <x, y> on 2n bits.
BooleanFunction ip_transform(const BooleanFunction &f);

}  // namespace qpt

#endif
