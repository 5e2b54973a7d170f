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

#ifndef QPT_ENSEMBLES_H
#define QPT_ENSEMBLES_H

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpt/boolfn.h"
#include "qpt/rng.h"

namespace qpt {

/// Pairs (u, v) with u below v, |u| = k-1 and |v| = k for k = ceil(n/2), such
/// that no u_i is comparable with v_j for i != j.
struct Matching {
    int n;
    std::vector<std::pair<uint64_t, uint64_t>> pairs;

    int achieved_m() const {
        return (int)pairs.size();
    }
    int layer() const {
        return (n + 1) / 2;
    }
    /// m / 2^n.
    double epsilon() const;
    /// For every x, the index of the pair containing x, or -1.
    std::vector<int> pair_index() const;
};

inline bool bits_below(uint64_t u, uint64_t v) {
    return (u & ~v) == 0;
}

/// Throws ContractError naming the first violated matching condition.
void verify_matching(const Matching &m);

/// Greedy randomized matching over the two middle layers. achieved_m may fall
/// short of target_m; it is always even.
Matching build_layer_matching(int n, int target_m, RngStream &rng);

struct TwinFunction {
    BooleanFunction base;
    int variant;
    /// in_b[i] is 1 when pair i belongs to B.
    std::vector<uint8_t> in_b;
    int b_size;

    int a_size() const {
        return (int)in_b.size() - b_size;
    }
};

/// g(x) = 1 iff |x| >= n/2.
BooleanFunction twin_background(int n);
/// Variant 0: pairs in A map to (1,1), pairs in B to (0,0). Variant 1: pairs
/// in A map to (u,v) = (1,0), pairs in B to (0,1). Elsewhere the background.
TwinFunction twin_function(const Matching &m, int variant, std::span<const uint8_t> in_b);
TwinFunction sample_twin(const Matching &m, int variant, RngStream &rng);

/// E[(-1)^h(x)].
double bias(const BooleanFunction &h);
BooleanFunction sample_uniform_function(int n, RngStream &rng);
/// Uniform over functions with exactly 2^(n-1) ones.
BooleanFunction sample_balanced_function(int n, RngStream &rng);

enum class MmFamily { F1, F2 };

struct MmDraw {
    BooleanFunction f;
    BooleanFunction h;
    int64_t attempts;
};

/// Rejection-samples h until |bias(h)| <= 2^(-n/3); returns mm(h) for F1 and
/// mm_dual(h) for F2.
MmDraw sample_mm_pair(int n, MmFamily which, RngStream &rng);

enum class TripleMode { Independent, Xor };

struct SetTriple {
    int n;
    BooleanFunction a;
    BooleanFunction b;
    BooleanFunction c;
    TripleMode mode;

    BooleanFunction function() const {
        return triple(a, b, c);
    }
    uint64_t triple_intersection() const;
};

BooleanFunction set_xor(const BooleanFunction &a, const BooleanFunction &b);
SetTriple sample_set_triple(int n, TripleMode mode, RngStream &rng);

/// Provenance written next to a serialized ensemble member.
struct EnsembleRecord {
    std::string construction;
    uint64_t seed;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<std::pair<std::string, double>> certifications;
};

/// Writes f to `path` in the truth-table hex format and the record to
/// `path` + ".json".
void write_ensemble_member(const std::string &path, const BooleanFunction &f, const EnsembleRecord &record);

/// Minimum pairwise normalized Hamming distance between the two sets.
double certify_separation(std::span<const BooleanFunction> f0, std::span<const BooleanFunction> f1);
/// Exact minimum distance from triple(A,B,C) to every triple(A',B',A'xB'),
/// minimized point by point: |{x : C(x) != A(x) xor B(x)}| / 2^(n+2).
double distance_to_xor_family(const SetTriple &t);

}  // namespace qpt

#endif
