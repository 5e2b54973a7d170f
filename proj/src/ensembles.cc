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

#include "qpt/ensembles.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "qpt/errors.h"

namespace qpt {

double Matching::epsilon() const {
    return (double)pairs.size() / std::ldexp(1.0, n);
}

std::vector<int> Matching::pair_index() const {
    std::vector<int> idx(uint64_t{1} << n, -1);
    for (size_t i = 0; i < pairs.size(); i++) {
        idx[pairs[i].first] = (int)i;
        idx[pairs[i].second] = (int)i;
    }
    return idx;
}

void verify_matching(const Matching &m) {
    int k = m.layer();
    uint64_t limit = uint64_t{1} << m.n;
    std::vector<uint8_t> seen(limit, 0);
    for (const auto &[u, v] : m.pairs) {
        if (u >= limit || v >= limit) {
            throw ContractError("matching endpoint does not fit in n bits");
        }
        if (hamming_weight(u) != k - 1 || hamming_weight(v) != k) {
            throw ContractError("matching pair is not in layers k-1, k");
        }
        if (!bits_below(u, v)) {
            throw ContractError("matching pair (u, v) has u not below v");
        }
        if (seen[u]++ || seen[v]++) {
            throw ContractError("matching endpoints are not distinct");
        }
    }
    for (size_t i = 0; i < m.pairs.size(); i++) {
        for (size_t j = 0; j < m.pairs.size(); j++) {
            if (i != j && bits_below(m.pairs[i].first, m.pairs[j].second)) {
                throw ContractError("matching has u_i comparable with v_j for i != j");
            }
        }
    }
    if (m.pairs.size() % 2) {
        throw ContractError("matching size is odd");
    }
}

Matching build_layer_matching(int n, int target_m, RngStream &rng) {
    if (n < 2 || n > MAX_ARITY) {
        throw ContractError("layer matching needs 2 <= n <= " + std::to_string(MAX_ARITY));
    }
    if (target_m < 0 || target_m % 2) {
        throw ContractError("target matching size must be even and nonnegative");
    }
    Matching m{n, {}};
    int k = m.layer();
    std::vector<std::pair<uint64_t, uint64_t>> candidates;
    for (uint64_t u = 0; u < (uint64_t{1} << n); u++) {
        if (hamming_weight(u) != k - 1) {
            continue;
        }
        for (int i = 1; i <= n; i++) {
            uint64_t bit = coordinate_mask(i, n);
            if (!(u & bit)) {
                candidates.emplace_back(u, u | bit);
            }
        }
    }
    for (size_t i = candidates.size(); i > 1; i--) {
        std::swap(candidates[i - 1], candidates[rng.below(i)]);
    }
    std::vector<uint8_t> used(uint64_t{1} << n, 0);
    for (const auto &[u, v] : candidates) {
        if ((int)m.pairs.size() >= target_m) {
            break;
        }
        if (used[u] || used[v]) {
            continue;
        }
        bool ok = true;
        for (const auto &[u2, v2] : m.pairs) {
            if (bits_below(u, v2) || bits_below(u2, v)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            m.pairs.emplace_back(u, v);
            used[u] = used[v] = 1;
        }
    }
    if (m.pairs.size() % 2) {
        m.pairs.pop_back();
    }
    verify_matching(m);
    return m;
}

BooleanFunction twin_background(int n) {
    return BooleanFunction::from_predicate(n, [&](uint64_t x) {
        return 2 * hamming_weight(x) >= n;
    });
}

TwinFunction twin_function(const Matching &m, int variant, std::span<const uint8_t> in_b) {
    if (variant != 0 && variant != 1) {
        throw ContractError("twin variant must be 0 or 1");
    }
    if (in_b.size() != m.pairs.size()) {
        throw ContractError("bipartition size differs from the matching size");
    }
    std::vector<uint8_t> table = twin_background(m.n).table();
    int b_size = 0;
    for (size_t i = 0; i < m.pairs.size(); i++) {
        auto [u, v] = m.pairs[i];
        bool b = in_b[i];
        b_size += b;
        if (variant == 0) {
            table[u] = table[v] = b ? 0 : 1;
        } else {
            table[u] = b ? 0 : 1;
            table[v] = b ? 1 : 0;
        }
    }
    return TwinFunction{BooleanFunction(m.n, std::move(table)), variant, {in_b.begin(), in_b.end()}, b_size};
}

TwinFunction sample_twin(const Matching &m, int variant, RngStream &rng) {
    std::vector<uint8_t> in_b(m.pairs.size());
    for (auto &b : in_b) {
        b = rng() >> 63;
    }
    return twin_function(m, variant, in_b);
}

double bias(const BooleanFunction &h) {
    return 1.0 - 2.0 * (double)h.weight() / (double)h.size();
}

BooleanFunction sample_uniform_function(int n, RngStream &rng) {
    return BooleanFunction::from_predicate(n, [&](uint64_t) {
        return rng() >> 63;
    });
}

BooleanFunction sample_balanced_function(int n, RngStream &rng) {
    uint64_t size = uint64_t{1} << n;
    std::vector<uint8_t> table(size, 0);
    std::fill(table.begin(), table.begin() + size / 2, 1);
    for (uint64_t i = size; i > 1; i--) {
        std::swap(table[i - 1], table[rng.below(i)]);
    }
    return BooleanFunction(n, std::move(table));
}

MmDraw sample_mm_pair(int n, MmFamily which, RngStream &rng) {
    if (n < 3) {
        throw ContractError("MM ensembles need n >= 3");
    }
    double bound = std::exp2(-(double)n / 3);
    for (int64_t attempt = 1;; attempt++) {
        BooleanFunction h = sample_uniform_function(n, rng);
        if (std::abs(bias(h)) <= bound) {
            BooleanFunction f = which == MmFamily::F1 ? mm(h) : mm_dual(h);
            return MmDraw{std::move(f), std::move(h), attempt};
        }
    }
}

uint64_t SetTriple::triple_intersection() const {
    uint64_t count = 0;
    for (uint64_t x = 0; x < a.size(); x++) {
        count += a[x] & b[x] & c[x];
    }
    return count;
}

BooleanFunction set_xor(const BooleanFunction &a, const BooleanFunction &b) {
    if (a.arity() != b.arity()) {
        throw ArityError("symmetric difference of sets with different arity");
    }
    return BooleanFunction::from_predicate(a.arity(), [&](uint64_t x) {
        return a[x] ^ b[x];
    });
}

SetTriple sample_set_triple(int n, TripleMode mode, RngStream &rng) {
    BooleanFunction a = sample_uniform_function(n, rng);
    BooleanFunction b = sample_uniform_function(n, rng);
    BooleanFunction c = mode == TripleMode::Xor ? set_xor(a, b) : sample_uniform_function(n, rng);
    return SetTriple{n, std::move(a), std::move(b), std::move(c), mode};
}

double certify_separation(std::span<const BooleanFunction> f0, std::span<const BooleanFunction> f1) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto &f : f0) {
        for (const auto &g : f1) {
            if (f.arity() != g.arity()) {
                throw ArityError("certify_separation over functions of different arity");
            }
            best = std::min(best, normalized_distance(f, g));
        }
    }
    return best;
}

double distance_to_xor_family(const SetTriple &t) {
    uint64_t mismatched = 0;
    for (uint64_t x = 0; x < t.a.size(); x++) {
        mismatched += t.c[x] != (t.a[x] ^ t.b[x]);
    }
    return (double)mismatched / std::ldexp(1.0, t.n + 2);
}

void write_ensemble_member(const std::string &path, const BooleanFunction &f, const EnsembleRecord &record) {
    write_truth_table(path, f);
    nlohmann::ordered_json j;
    j["construction"] = record.construction;
    j["seed"] = record.seed;
    j["arity"] = f.arity();
    j["truth_table"] = path;
    for (const auto &[k, v] : record.parameters) {
        j["parameters"][k] = v;
    }
    for (const auto &[k, v] : record.certifications) {
        j["certifications"][k] = v;
    }
    std::ofstream out(path + ".json");
    if (!out) {
        throw ContractError("cannot write '" + path + ".json'");
    }
    out << j.dump(2) << "\n";
}

}  // namespace qpt
