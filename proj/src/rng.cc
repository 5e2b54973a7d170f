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

#include "qpt/rng.h"

#include <cmath>
#include <random>

#include "qpt/errors.h"

namespace qpt {

namespace {

uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t mix64(uint64_t x) {
    return splitmix64(x);
}

uint64_t hash_tag(std::string_view tag) {
    // FNV-1a, then a final avalanche.
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

uint64_t stream_id_for(uint64_t trial, std::string_view tag) {
    return mix64(hash_tag(tag) ^ mix64(trial + 0x5851f42d4c957f2dULL));
}

RngStream::RngStream(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    uint64_t state = mix64(seed) ^ rotl(mix64(stream_id ^ 0xd1b54a32d192ed03ULL), 17);
    for (auto &w : s_) {
        w = splitmix64(state);
    }
}

RngStream::result_type RngStream::operator()() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

RngStream RngStream::child(std::string_view tag) const {
    return child(hash_tag(tag));
}

RngStream RngStream::child(uint64_t tag) const {
    return RngStream(seed_, mix64(stream_id_ ^ mix64(tag)));
}

double RngStream::uniform() {
    return (double)((*this)() >> 11) * 0x1.0p-53;
}

uint64_t RngStream::below(uint64_t bound) {
    // Lemire's nearly divisionless method.
    __uint128_t m = (__uint128_t)(*this)() * bound;
    uint64_t low = (uint64_t)m;
    if (low < bound) {
        uint64_t threshold = -bound % bound;
        while (low < threshold) {
            m = (__uint128_t)(*this)() * bound;
            low = (uint64_t)m;
        }
    }
    return (uint64_t)(m >> 64);
}

bool bernoulli(RngStream &rng, double p) {
    if (p <= 0) {
        return false;
    }
    if (p >= 1) {
        return true;
    }
    return rng.uniform() < p;
}

int64_t binomial(RngStream &rng, int64_t trials, double p) {
    if (trials < 0) {
        throw ContractError("binomial with negative trial count");
    }
    if (trials == 0 || p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return trials;
    }
    std::binomial_distribution<int64_t> dist(trials, p);
    return dist(rng);
}

std::vector<int64_t> multinomial(RngStream &rng, int64_t draws, std::span<const double> weights) {
    double total = 0;
    for (double w : weights) {
        if (w < 0) {
            throw ContractError("multinomial weight is negative");
        }
        total += w;
    }
    std::vector<int64_t> counts(weights.size(), 0);
    if (draws == 0) {
        return counts;
    }
    if (!(total > 0)) {
        throw ContractError("multinomial weights sum to zero");
    }
    double remaining_mass = total;
    int64_t remaining = draws;
    for (size_t k = 0; k < weights.size() && remaining > 0; k++) {
        if (weights[k] == 0) {
            continue;
        }
        double p = weights[k] / remaining_mass;
        int64_t c = (k + 1 == weights.size() || p >= 1) ? remaining : binomial(rng, remaining, p);
        counts[k] = c;
        remaining -= c;
        remaining_mass -= weights[k];
        if (remaining_mass <= 0) {
            break;
        }
    }
    if (remaining > 0) {
        // Round-off left mass on the table; give it to the last positive cell.
        for (size_t k = weights.size(); k-- > 0;) {
            if (weights[k] > 0) {
                counts[k] += remaining;
                break;
            }
        }
    }
    return counts;
}

namespace {

void split_uniform(RngStream &rng, int64_t draws, uint64_t lo, uint64_t width, std::vector<int64_t> &out) {
    if (draws == 0) {
        return;
    }
    if (width == 1) {
        out[lo] = draws;
        return;
    }
    int64_t left = binomial(rng, draws, 0.5);
    split_uniform(rng, left, lo, width / 2, out);
    split_uniform(rng, draws - left, lo + width / 2, width / 2, out);
}

}  // namespace

std::vector<int64_t> uniform_multinomial(RngStream &rng, int64_t draws, uint64_t cells) {
    if (cells == 0 || (cells & (cells - 1))) {
        throw ContractError("uniform multinomial needs a power-of-two cell count");
    }
    std::vector<int64_t> out(cells, 0);
    split_uniform(rng, draws, 0, cells, out);
    return out;
}

AliasTable::AliasTable(std::span<const double> weights) : prob_(weights.size()), alias_(weights.size()) {
    size_t k = weights.size();
    if (k == 0) {
        throw ContractError("alias table over an empty distribution");
    }
    double total = 0;
    for (double w : weights) {
        if (w < 0) {
            throw ContractError("alias table weight is negative");
        }
        total += w;
    }
    if (!(total > 0)) {
        throw ContractError("alias table weights sum to zero");
    }
    std::vector<double> scaled(k);
    std::vector<size_t> small, large;
    for (size_t i = 0; i < k; i++) {
        scaled[i] = weights[i] * (double)k / total;
        (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        size_t s = small.back();
        small.pop_back();
        size_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (size_t i : large) {
        prob_[i] = 1.0;
        alias_[i] = i;
    }
    for (size_t i : small) {
        // Only reachable through round-off; such cells carry full weight.
        prob_[i] = 1.0;
        alias_[i] = i;
    }
}

uint64_t AliasTable::sample(RngStream &rng) const {
    uint64_t i = rng.below(prob_.size());
    return rng.uniform() < prob_[i] ? i : alias_[i];
}

}  // namespace qpt
