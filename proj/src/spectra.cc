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

#include "qpt/spectra.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "qpt/closed_forms.h"
#include "qpt/errors.h"
#include "qpt/parallel.h"

namespace qpt {

uint64_t dimension_cap() {
    const char *env = std::getenv("QPT_DIM_CAP");
    if (env == nullptr || *env == '\0') {
        return 4096;
    }
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        throw ContractError("QPT_DIM_CAP must be a positive integer");
    }
    return v;
}

void check_dimension(uint64_t dim, const char *what) {
    uint64_t cap = dimension_cap();
    if (dim > cap) {
        throw CapabilityError(std::string(what) + " dimension " + std::to_string(dim) + " exceeds the cap " +
                              std::to_string(cap) + " (set QPT_DIM_CAP to raise it)");
    }
}

namespace {

uint64_t checked_power(uint64_t base, int t, const char *what) {
    uint64_t cap = dimension_cap();
    uint64_t d = 1;
    for (int i = 0; i < t; i++) {
        if (base > 1 && d > cap / base) {
            throw CapabilityError(std::string(what) + " dimension " + std::to_string(base) + "^" +
                                  std::to_string(t) + " exceeds the cap " + std::to_string(cap) +
                                  " (set QPT_DIM_CAP to raise it)");
        }
        d *= base;
    }
    check_dimension(d, what);
    return d;
}

}  // namespace

StateVector::StateVector(std::vector<double> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
        throw ContractError("state dimension must be a power of two");
    }
    double norm = 0;
    for (double a : amplitudes_) {
        norm += a * a;
    }
    if (std::abs(norm - 1) > 1e-10) {
        throw ContractError("state is not normalized");
    }
}

int StateVector::qubits() const {
    return std::countr_zero(amplitudes_.size());
}

double inner_product(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw ContractError("inner product of states with different dimension");
    }
    double s = 0;
    for (size_t i = 0; i < a.dimension(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

StateVector phase_state(const BooleanFunction &f) {
    check_dimension(f.size(), "phase state");
    double amp = 1 / std::sqrt((double)f.size());
    std::vector<double> v(f.size());
    for (uint64_t x = 0; x < f.size(); x++) {
        v[x] = f[x] ? -amp : amp;
    }
    return StateVector(std::move(v));
}

StateVector function_state(const BooleanFunction &f) {
    check_dimension(2 * f.size(), "function state");
    double amp = 1 / std::sqrt((double)f.size());
    std::vector<double> v(2 * f.size(), 0.0);
    for (uint64_t x = 0; x < f.size(); x++) {
        v[2 * x + f[x]] = amp;
    }
    return StateVector(std::move(v));
}

StateVector hadamard_on_last(const StateVector &s) {
    std::vector<double> v(s.dimension());
    double r = 1 / std::sqrt(2.0);
    for (size_t i = 0; i < s.dimension(); i += 2) {
        v[i] = r * (s[i] + s[i + 1]);
        v[i + 1] = r * (s[i] - s[i + 1]);
    }
    return StateVector(std::move(v));
}

BooleanFunction output_phase_function(const BooleanFunction &f) {
    return BooleanFunction::from_predicate(f.arity() + 1, [&](uint64_t xb) {
        return (xb & 1) && f[xb >> 1];
    });
}

std::vector<double> tensor_power(const StateVector &s, int t) {
    if (t < 1) {
        throw ContractError("tensor power needs t >= 1");
    }
    checked_power(s.dimension(), t, "tensor power");
    std::vector<double> out(s.amplitudes());
    for (int k = 1; k < t; k++) {
        std::vector<double> next(out.size() * s.dimension());
        for (size_t i = 0; i < out.size(); i++) {
            for (size_t j = 0; j < s.dimension(); j++) {
                next[i * s.dimension() + j] = out[i] * s[j];
            }
        }
        out.swap(next);
    }
    return out;
}

Matrix ensemble_average(std::span<const StateVector> states, int t) {
    if (states.empty()) {
        throw ContractError("ensemble average of no states");
    }
    uint64_t d = states[0].dimension();
    for (const auto &s : states) {
        if (s.dimension() != d) {
            throw ContractError("ensemble states differ in dimension");
        }
    }
    uint64_t dim = checked_power(d, t, "ensemble average");
    Matrix out(dim);
    double w = 1.0 / (double)states.size();
    for (const auto &s : states) {
        std::vector<double> v = tensor_power(s, t);
        for (uint64_t i = 0; i < dim; i++) {
            if (v[i] == 0) {
                continue;
            }
            double vi = w * v[i];
            for (uint64_t j = 0; j < dim; j++) {
                out(i, j) += vi * v[j];
            }
        }
    }
    return out;
}

void check_density_matrix(const Matrix &m, double declared_trace, bool psd) {
    if (m.max_asymmetry() > 1e-12) {
        throw InternalConsistencyError("density matrix is not symmetric");
    }
    if (std::abs(m.trace() - declared_trace) > 1e-10) {
        throw InternalConsistencyError("density matrix trace " + std::to_string(m.trace()) + " differs from " +
                                       std::to_string(declared_trace));
    }
    if (psd) {
        for (double v : jacobi_eigen(m).values) {
            if (v < -1e-10) {
                throw InternalConsistencyError("density matrix has a negative eigenvalue");
            }
        }
    }
}

IndexTuple tuple_from_index(uint64_t index, int n, int t) {
    IndexTuple x(t);
    uint64_t mask = (uint64_t{1} << n) - 1;
    for (int j = t - 1; j >= 0; j--) {
        x[j] = index & mask;
        index >>= n;
    }
    return x;
}

TupleStats tuple_stats(std::span<const uint64_t> x, const Matching &m) {
    std::vector<int> idx = m.pair_index();
    return tuple_stats(x, m, idx);
}

TupleStats tuple_stats(std::span<const uint64_t> x, const Matching &m, std::span<const int> pair_index) {
    // Per touched pair: multiplicities of the lower and upper element.
    std::map<int, std::pair<int, int>> counts;
    for (uint64_t z : x) {
        if (z >= pair_index.size()) {
            throw ContractError("tuple entry outside the cube");
        }
        int p = pair_index[z];
        if (p < 0) {
            continue;
        }
        auto &c = counts[p];
        (z == m.pairs[p].first ? c.first : c.second)++;
    }
    TupleStats out{0, {}, {}};
    for (auto [p, c] : counts) {
        int pairs = std::min(c.first, c.second);
        out.e ^= pairs & 1;
        int lo = c.first - pairs;
        int hi = c.second - pairs;
        if (lo & 1) {
            out.sing.push_back(m.pairs[p].first);
            out.type.push_back(p);
        } else if (hi & 1) {
            out.sing.push_back(m.pairs[p].second);
            out.type.push_back(p);
        }
    }
    std::sort(out.sing.begin(), out.sing.end());
    return out;
}

int pair_parity(const TupleStats &x, const TupleStats &y, const Matching &m, std::span<const int> pair_index) {
    int count = 0;
    for (uint64_t z : x.sing) {
        auto [u, v] = m.pairs[pair_index[z]];
        uint64_t partner = z == u ? v : u;
        if (std::binary_search(y.sing.begin(), y.sing.end(), partner)) {
            count++;
        }
    }
    return count & 1;
}

bool compatible(const TupleStats &x, const TupleStats &y, const Matching &m, std::span<const int> pair_index) {
    if (x.type != y.type) {
        return false;
    }
    return ((x.e + y.e + pair_parity(x, y, m, pair_index)) & 1) == 1;
}

bool compatible(std::span<const uint64_t> x, std::span<const uint64_t> y, const Matching &m) {
    if (x.size() != y.size()) {
        throw ContractError("compatibility needs tuples of equal length");
    }
    std::vector<int> idx = m.pair_index();
    return compatible(tuple_stats(x, m, idx), tuple_stats(y, m, idx), m, idx);
}

namespace {

/// Multiplicity parities on the matched elements: bit 2i for the lower and
/// bit 2i+1 for the upper element of pair i.
struct ParityMask {
    std::vector<uint64_t> words;
};

ParityMask parity_mask(std::span<const uint64_t> x, std::span<const int> pair_index, const Matching &m, size_t words) {
    ParityMask out{std::vector<uint64_t>(words, 0)};
    for (uint64_t z : x) {
        int p = pair_index[z];
        if (p < 0) {
            continue;
        }
        size_t bit = 2 * (size_t)p + (z == m.pairs[p].first ? 0 : 1);
        out.words[bit / 64] ^= uint64_t{1} << (bit % 64);
    }
    return out;
}

constexpr uint64_t kLowBits = 0x5555555555555555ULL;

bool parity_relation(const ParityMask &a, const ParityMask &b) {
    int both = 0;
    for (size_t w = 0; w < a.words.size(); w++) {
        uint64_t v = a.words[w] ^ b.words[w];
        if (((v ^ (v >> 1)) & kLowBits) != 0) {
            return false;
        }
        both += std::popcount(v & (v >> 1) & kLowBits);
    }
    return (both & 1) == 1;
}

size_t mask_words(const Matching &m) {
    return (2 * m.pairs.size() + 63) / 64;
}

int background_sign(std::span<const uint64_t> x, std::span<const int> pair_index, int n) {
    int parity = 0;
    for (uint64_t z : x) {
        if (pair_index[z] < 0 && 2 * hamming_weight(z) >= n) {
            parity ^= 1;
        }
    }
    return parity ? -1 : 1;
}

}  // namespace

bool compatible_by_parity(std::span<const uint64_t> x, std::span<const uint64_t> y, const Matching &m) {
    if (x.size() != y.size()) {
        throw ContractError("compatibility needs tuples of equal length");
    }
    std::vector<int> idx = m.pair_index();
    size_t words = std::max<size_t>(mask_words(m), 1);
    return parity_relation(parity_mask(x, idx, m, words), parity_mask(y, idx, m, words));
}

Matrix build_difference_matrix(const Matching &m, int t) {
    verify_matching(m);
    if (t < 1) {
        throw ContractError("difference matrix needs t >= 1");
    }
    uint64_t dim = checked_power(uint64_t{1} << m.n, t, "difference matrix");
    std::vector<int> idx = m.pair_index();
    size_t words = std::max<size_t>(mask_words(m), 1);
    std::vector<ParityMask> masks;
    std::vector<int> signs;
    masks.reserve(dim);
    signs.reserve(dim);
    for (uint64_t r = 0; r < dim; r++) {
        IndexTuple x = tuple_from_index(r, m.n, t);
        masks.push_back(parity_mask(x, idx, m, words));
        signs.push_back(background_sign(x, idx, m.n));
    }
    double scale = 2.0 / (double)dim;
    Matrix a(dim);
    const uint64_t block = 64;
    uint64_t blocks = (dim + block - 1) / block;
    run_indexed<int>(blocks, default_thread_count(), [&](size_t b) {
        for (uint64_t r = b * block; r < std::min(dim, (b + 1) * block); r++) {
            for (uint64_t c = 0; c < dim; c++) {
                if (parity_relation(masks[r], masks[c])) {
                    a(r, c) = scale * signs[r] * signs[c];
                }
            }
        }
        return 0;
    });
    return a;
}

Matrix twin_ensemble_average(const Matching &m, int variant, int t) {
    verify_matching(m);
    if (m.pairs.size() > 20) {
        throw CapabilityError("bipartition enumeration limited to m <= 20");
    }
    uint64_t count = uint64_t{1} << m.pairs.size();
    std::vector<StateVector> states;
    states.reserve(count);
    std::vector<uint8_t> in_b(m.pairs.size());
    for (uint64_t mask = 0; mask < count; mask++) {
        for (size_t i = 0; i < in_b.size(); i++) {
            in_b[i] = (mask >> i) & 1;
        }
        states.push_back(phase_state(twin_function(m, variant, in_b).base));
    }
    return ensemble_average(states, t);
}

Census component_census(const Matching &m, int t) {
    verify_matching(m);
    if (t < 1) {
        throw ContractError("census needs t >= 1");
    }
    uint64_t dim = checked_power(uint64_t{1} << m.n, t, "compatibility graph");
    std::vector<int> idx = m.pair_index();
    size_t words = std::max<size_t>(mask_words(m), 1);
    std::vector<TupleStats> stats;
    std::vector<ParityMask> masks;
    stats.reserve(dim);
    masks.reserve(dim);
    for (uint64_t r = 0; r < dim; r++) {
        IndexTuple x = tuple_from_index(r, m.n, t);
        stats.push_back(tuple_stats(x, m, idx));
        masks.push_back(parity_mask(x, idx, m, words));
    }

    // Edges from the defining relation, checked against the characterization.
    std::vector<std::vector<uint32_t>> adj(dim);
    uint64_t edges = 0;
    for (uint64_t r = 0; r < dim; r++) {
        for (uint64_t c = 0; c < dim; c++) {
            bool raw = parity_relation(masks[r], masks[c]);
            bool derived = compatible(stats[r], stats[c], m, idx);
            if (raw != derived) {
                throw TheoremViolation("compatible() disagrees with the parity relation at rows " + std::to_string(r) +
                                       ", " + std::to_string(c));
            }
            if (raw) {
                if (r == c) {
                    throw TheoremViolation("a tuple is compatible with itself at row " + std::to_string(r));
                }
                if (stats[r].type != stats[c].type) {
                    throw TheoremViolation("compatibility edge joins different types");
                }
                adj[r].push_back((uint32_t)c);
                edges += r < c;
            }
        }
    }

    std::map<std::vector<int>, std::vector<uint64_t>> groups;
    for (uint64_t r = 0; r < dim; r++) {
        groups[stats[r].type].push_back(r);
    }

    Census census;
    census.edges = edges;
    std::vector<int> side(dim, -1);
    for (const auto &[type, members] : groups) {
        uint64_t group_edges = 0;
        for (uint64_t r : members) {
            group_edges += adj[r].size();
        }
        group_edges /= 2;
        uint64_t u = 0, v = 0;
        if (group_edges == 0) {
            if (!type.empty()) {
                throw TheoremViolation("a nonempty type class has no edges");
            }
            for (uint64_t r : members) {
                (stats[r].e == 1 ? u : v)++;
            }
        } else {
            // Two-color from the first member; every member must be reached.
            std::vector<uint64_t> queue{members[0]};
            side[members[0]] = 0;
            uint64_t reached = 0;
            for (size_t qi = 0; qi < queue.size(); qi++) {
                uint64_t r = queue[qi];
                reached++;
                for (uint32_t c : adj[r]) {
                    if (side[c] < 0) {
                        side[c] = 1 - side[r];
                        queue.push_back(c);
                    } else if (side[c] == side[r]) {
                        throw TheoremViolation("compatibility component is not bipartite");
                    }
                }
            }
            if (reached != members.size()) {
                throw TheoremViolation("type class splits into several components");
            }
            uint64_t part[2] = {0, 0};
            for (uint64_t r : members) {
                part[side[r]]++;
            }
            if (group_edges != part[0] * part[1]) {
                throw TheoremViolation("compatibility component is not complete bipartite");
            }
            if (type.empty()) {
                // Orient U as the E = 1 side.
                int e_side = -1;
                for (uint64_t r : members) {
                    int s = stats[r].e == 1 ? side[r] : 1 - side[r];
                    if (e_side >= 0 && e_side != s) {
                        throw TheoremViolation("empty-type bipartition does not follow E");
                    }
                    e_side = s;
                }
                u = part[e_side];
                v = part[1 - e_side];
            } else {
                u = part[0];
                v = part[1];
            }
        }
        census.components.push_back(CensusComponent{type, u, v});
    }

    int m_size = (int)m.pairs.size();
    int kmax = std::min(t, m_size);
    uint64_t expected = 0;
    for (int k = 0; k <= kmax; k++) {
        expected += binomial(m_size, k).convert_to<uint64_t>();
    }
    census.expected_components = expected;
    if (census.components.size() != expected) {
        throw TheoremViolation("component count " + std::to_string(census.components.size()) + " differs from " +
                               std::to_string(expected));
    }

    auto params = ClosedFormParams::for_cube(m.n, m_size);
    auto [x1, x2] = x1_x2_split(params, t);
    for (int k = 0; k <= kmax; k++) {
        CensusEntry entry{k, 0, 0, 0};
        BigInt want_u = k == 0 ? x1 : N_closed(params, t, k) / 2;
        BigInt want_v = k == 0 ? x2 : want_u;
        for (const auto &c : census.components) {
            if ((int)c.type.size() != k) {
                continue;
            }
            bool ok = BigInt(c.u_size) == want_u && BigInt(c.v_size) == want_v;
            if (k > 0 && !ok) {
                ok = BigInt(c.v_size) == want_u && BigInt(c.u_size) == want_v;
            }
            if (!ok) {
                throw TheoremViolation("component part sizes (" + std::to_string(c.u_size) + ", " +
                                       std::to_string(c.v_size) + ") differ from the closed form at k = " +
                                       std::to_string(k));
            }
            entry.count++;
            entry.u_size = c.u_size;
            entry.v_size = c.v_size;
        }
        if (BigInt(entry.count) != binomial(m_size, k)) {
            throw TheoremViolation("wrong number of components of type size " + std::to_string(k));
        }
        census.entries.push_back(entry);
    }
    return census;
}

}  // namespace qpt
