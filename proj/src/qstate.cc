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

#include "qpt/qstate.h"

#include <cmath>
#include <random>

#include "qpt/errors.h"

namespace qpt {

CopyLedger::CopyLedger(int64_t budget) : budget_(budget) {
    if (budget < 0) {
        throw ContractError("copy budget must be nonnegative");
    }
}

bool CopyLedger::can_consume(int64_t copies) const {
    return !budget_.has_value() || consumed_ + copies <= *budget_;
}

void CopyLedger::consume(int64_t copies) {
    if (copies < 0) {
        throw ContractError("cannot consume a negative number of copies");
    }
    if (!can_consume(copies)) {
        throw BudgetExhausted(
            "copy budget " + std::to_string(*budget_) + " exhausted: " + std::to_string(consumed_) + " used, " +
            std::to_string(copies) + " requested");
    }
    consumed_ += copies;
}

SubsetState::SubsetState(BooleanFunction indicator) : indicator_(std::move(indicator)), cardinality_(indicator_.weight()) {
    if (cardinality_ == 0) {
        throw ContractError("subset state needs a nonempty member set");
    }
}

SubsetState SubsetState::full(int n) {
    return SubsetState(BooleanFunction::constant(n, true));
}

SubsetState SubsetState::from_members(int n, const std::vector<uint64_t> &members) {
    BooleanFunction::check_arity(n);
    std::vector<uint8_t> table(uint64_t{1} << n, 0);
    for (uint64_t x : members) {
        if (x >= table.size()) {
            throw ArityError("subset member does not fit in " + std::to_string(n) + " bits");
        }
        table[x] = 1;
    }
    return SubsetState(BooleanFunction(n, std::move(table)));
}

double overlap(const SubsetState &a, const SubsetState &b) {
    if (a.arity() != b.arity()) {
        throw ArityError("overlap of subset states with different arity");
    }
    uint64_t common = 0;
    const auto &ta = a.indicator().table();
    const auto &tb = b.indicator().table();
    for (size_t x = 0; x < ta.size(); x++) {
        common += ta[x] & tb[x];
    }
    return (double)common / std::sqrt((double)a.cardinality() * (double)b.cardinality());
}

ClassicalSample sample_classical(const BooleanFunction &f, CopyLedger &ledger, RngStream &rng) {
    ledger.consume(1);
    uint64_t x = rng.below(f.size());
    return {x, f[x]};
}

std::vector<int64_t> sample_classical_counts(const BooleanFunction &f, int64_t copies, CopyLedger &ledger, RngStream &rng) {
    ledger.consume(copies);
    return uniform_multinomial(rng, copies, f.size());
}

namespace {

std::vector<double> squared(const std::vector<double> &c) {
    std::vector<double> out(c.size());
    for (size_t k = 0; k < c.size(); k++) {
        out[k] = c[k] * c[k];
    }
    return out;
}

}  // namespace

FourierSampler::FourierSampler(const BooleanFunction &f)
    : spectrum_(walsh_transform(f)), probs_(squared(spectrum_.coeffs)), alias_(probs_) {
}

std::optional<uint64_t> FourierSampler::sample(CopyLedger &ledger, RngStream &rng) const {
    ledger.consume(1);
    if (rng() >> 63) {
        return std::nullopt;
    }
    return alias_.sample(rng);
}

FourierBatch FourierSampler::sample_batch(int64_t copies, int64_t keep, CopyLedger &ledger, RngStream &rng) const {
    ledger.consume(copies);
    FourierBatch batch;
    batch.copies = copies;
    batch.successes = binomial(rng, copies, 0.5);
    // Successful outcomes are i.i.d. draws from the Fourier distribution and
    // independent of how many successes occurred.
    batch.kept = std::min(batch.successes, keep);
    batch.histogram = multinomial(rng, batch.kept, probs_);
    return batch;
}

std::optional<uint64_t> fourier_sample(const BooleanFunction &f, CopyLedger &ledger, RngStream &rng) {
    return FourierSampler(f).sample(ledger, rng);
}

namespace {

double level_set_fraction(const BooleanFunction &f, bool b) {
    double w = (double)f.weight() / (double)f.size();
    return b ? w : 1.0 - w;
}

BooleanFunction level_set(const BooleanFunction &f, bool b) {
    return BooleanFunction::from_predicate(f.arity(), [&](uint64_t x) {
        return f[x] == b;
    });
}

/// Number of Bernoulli(q) trials up to and including the first success, or 0
/// if none of the first `attempts` trials succeeds.
int64_t first_success(double q, int64_t attempts, RngStream &rng) {
    if (q <= 0) {
        return 0;
    }
    if (q >= 1) {
        return 1;
    }
    std::geometric_distribution<int64_t> geo(q);
    int64_t failures = geo(rng);
    return failures < attempts ? failures + 1 : 0;
}

}  // namespace

std::optional<SubsetState> postselect_subset(
    const BooleanFunction &f, bool b, int64_t attempts, CopyLedger &ledger, RngStream &rng) {
    if (attempts < 1) {
        throw ContractError("postselection needs at least one attempt");
    }
    if (!ledger.can_consume(attempts)) {
        throw BudgetExhausted("copy budget does not cover " + std::to_string(attempts) + " postselection attempts");
    }
    int64_t hit = first_success(level_set_fraction(f, b), attempts, rng);
    if (hit == 0) {
        ledger.consume(attempts);
        return std::nullopt;
    }
    ledger.consume(hit);
    return SubsetState(level_set(f, b));
}

std::optional<uint64_t> postselect_point(
    const BooleanFunction &f, bool b, int64_t attempts, CopyLedger &ledger, RngStream &rng) {
    if (attempts < 1) {
        throw ContractError("postselection needs at least one attempt");
    }
    ledger.consume(attempts);
    double q = level_set_fraction(f, b);
    double fail = q >= 1 ? 0.0 : std::exp((double)attempts * std::log1p(-q));
    if (q <= 0 || bernoulli(rng, fail)) {
        return std::nullopt;
    }
    uint64_t count = b ? f.weight() : f.size() - f.weight();
    uint64_t target = rng.below(count);
    for (uint64_t x = 0; x < f.size(); x++) {
        if (f[x] == b && target-- == 0) {
            return x;
        }
    }
    throw InternalConsistencyError("postselected point not found");
}

int64_t postselection_copies_per_output(int64_t outputs, double eta, double delta) {
    if (outputs < 1 || !(eta > 0 && eta <= 1) || !(delta > 0 && delta < 1)) {
        throw ContractError("postselection needs outputs >= 1, eta in (0,1], delta in (0,1)");
    }
    return (int64_t)std::ceil(std::log((double)outputs / delta) / eta);
}

std::optional<SubsetState> prepare_subset_copies(
    const BooleanFunction &f, bool b, int64_t outputs, double eta, double delta, CopyLedger &ledger, RngStream &rng) {
    int64_t per = postselection_copies_per_output(outputs, eta, delta);
    ledger.consume(outputs * per);
    double q = level_set_fraction(f, b);
    if (q <= 0) {
        return std::nullopt;
    }
    // Each of the `outputs` groups of `per` copies independently misses b
    // with probability (1-q)^per.
    double miss = q >= 1 ? 0.0 : std::exp((double)per * std::log1p(-q));
    double all_hit = std::exp((double)outputs * std::log1p(-miss));
    if (!bernoulli(rng, all_hit)) {
        return std::nullopt;
    }
    return SubsetState(level_set(f, b));
}

bool swap_test(const SubsetState &a, const SubsetState &b, RngStream &rng) {
    double ov = overlap(a, b);
    return bernoulli(rng, (1 + ov * ov) / 2);
}

int64_t swap_test_batch(const SubsetState &a, const SubsetState &b, int64_t tests, RngStream &rng) {
    double ov = overlap(a, b);
    return binomial(rng, tests, (1 + ov * ov) / 2);
}

int64_t overlap_test_count(double eps, double delta) {
    if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
        throw ContractError("overlap estimation needs eps, delta in (0,1)");
    }
    return (int64_t)std::ceil(2 * std::log(2 / delta) / std::pow(eps, 4));
}

OverlapEstimate estimate_overlap_squared(double overlap_sq, double eps, double delta, RngStream &rng) {
    int64_t m = overlap_test_count(eps, delta);
    int64_t accepts = binomial(rng, m, (1 + overlap_sq) / 2);
    double o = (double)accepts / (double)m;
    return {std::sqrt(std::max(0.0, 2 * (o - 0.5))), m, accepts};
}

OverlapEstimate estimate_overlap(const SubsetState &a, const SubsetState &b, double eps, double delta, RngStream &rng) {
    double ov = overlap(a, b);
    return estimate_overlap_squared(ov * ov, eps, delta, rng);
}

int64_t joint_membership_test_count(double eps, double delta) {
    if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
        throw ContractError("joint membership estimation needs eps, delta in (0,1)");
    }
    return (int64_t)std::ceil(162 * std::log(6 / delta) / std::pow(eps, 4));
}

std::optional<JointMembershipEstimate> estimate_joint_membership(
    const JointMembershipQuery &q, CopyLedger &ledger, RngStream &rng) {
    if (q.f->arity() != q.f_prime->arity()) {
        throw ArityError("joint membership of functions with different arity");
    }
    int64_t k = joint_membership_test_count(q.eps, q.delta);
    BooleanFunction g = q.shift ? shift_function(*q.f, q.shift) : *q.f;
    BooleanFunction g_prime = q.shift_prime ? shift_function(*q.f_prime, q.shift_prime) : *q.f_prime;

    auto s = prepare_subset_copies(g, q.b, 2 * k, q.eta, q.prep_delta, ledger, rng);
    if (!s) {
        return std::nullopt;
    }
    auto s_prime = prepare_subset_copies(g_prime, q.b_prime, 2 * k, q.eta, q.prep_delta, ledger, rng);
    if (!s_prime) {
        return std::nullopt;
    }

    // alpha compares the function state with (subset state) x |b>; its
    // squared overlap is |f^{-1}(b)| / 2^n.
    ledger.consume(2 * k);
    double third = q.eps / 3;
    double a_sq = (double)s->cardinality() / (double)g.size();
    double a_prime_sq = (double)s_prime->cardinality() / (double)g.size();
    auto alpha = estimate_overlap_squared(a_sq, third, q.delta / 3, rng);
    auto alpha_prime = estimate_overlap_squared(a_prime_sq, third, q.delta / 3, rng);
    auto beta = estimate_overlap(*s, *s_prime, third, q.delta / 3, rng);
    if (alpha.tests != k || beta.tests != k) {
        throw InternalConsistencyError("overlap batch size disagrees with the joint membership count");
    }
    return JointMembershipEstimate{beta.mu * alpha.mu * alpha_prime.mu, alpha.mu, alpha_prime.mu, beta.mu, k};
}

bool symmetric_subspace_measure(const BooleanFunction &f, CopyLedger &ledger, RngStream &rng) {
    ledger.consume(1);
    return bernoulli(rng, symmetric_agreement_probability(f));
}

int64_t symmetric_subspace_batch(const BooleanFunction &f, int64_t copies, CopyLedger &ledger, RngStream &rng) {
    ledger.consume(copies);
    return binomial(rng, copies, symmetric_agreement_probability(f));
}

BooleanFunction shift_function(const BooleanFunction &f, uint64_t y) {
    if (y >= f.size()) {
        throw ArityError("shift does not fit in " + std::to_string(f.arity()) + " bits");
    }
    return BooleanFunction::from_predicate(f.arity(), [&](uint64_t x) {
        return f[x ^ y];
    });
}

BooleanFunction shift_function(const BooleanFunction &f, std::span<const uint8_t> y_bits) {
    if (y_bits.size() != (size_t)f.arity()) {
        throw ArityError(
            "shift has length " + std::to_string(y_bits.size()) + ", function arity is " + std::to_string(f.arity()));
    }
    uint64_t y = 0;
    for (uint8_t b : y_bits) {
        y = (y << 1) | (b & 1);
    }
    return shift_function(f, y);
}

BooleanFunction ip_transform(const BooleanFunction &f) {
    if (f.arity() % 2) {
        throw ArityError("ip_transform needs an even arity, got " + std::to_string(f.arity()));
    }
    int k = f.arity() / 2;
    uint64_t low = (uint64_t{1} << k) - 1;
    return BooleanFunction::from_predicate(f.arity(), [&](uint64_t xy) {
        return f[xy] ^ dot_mod2(xy >> k, xy & low);
    });
}

}  // namespace qpt
