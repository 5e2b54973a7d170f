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

#ifndef QPT_RNG_H
#define QPT_RNG_H

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace qpt {

/// xoshiro256** keyed by (seed, stream id). Two streams with the same key
/// produce the same sequence no matter which thread drives them.
class RngStream {
   public:
    using result_type = uint64_t;

    RngStream(uint64_t seed, uint64_t stream_id);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<uint64_t>::max();
    }
    result_type operator()();

    uint64_t seed() const {
        return seed_;
    }
    uint64_t stream_id() const {
        return stream_id_;
    }
    /// A child stream with the same seed and a stream id mixed from this
    /// stream's id and `tag`.
    RngStream child(std::string_view tag) const;
    RngStream child(uint64_t tag) const;

    /// Uniform double in [0, 1).
    double uniform();
    /// Uniform integer in [0, bound).
    uint64_t below(uint64_t bound);

   private:
    uint64_t seed_;
    uint64_t stream_id_;
    uint64_t s_[4];
};

uint64_t mix64(uint64_t x);
uint64_t hash_tag(std::string_view tag);
/// Stream id for trial `trial` of the primitive named `tag`.
uint64_t stream_id_for(uint64_t trial, std::string_view tag);

bool bernoulli(RngStream &rng, double p);
int64_t binomial(RngStream &rng, int64_t trials, double p);

/// Multinomial counts for `draws` draws from the distribution `weights`
/// (nonnegative, need not be normalized), by sequential conditional binomials.
std::vector<int64_t> multinomial(RngStream &rng, int64_t draws, std::span<const double> weights);
/// Multinomial counts over `cells` (a power of two) equiprobable cells.
std::vector<int64_t> uniform_multinomial(RngStream &rng, int64_t draws, uint64_t cells);

/// Walker/Vose alias table for O(1) draws from a fixed discrete distribution.
class AliasTable {
   public:
    explicit AliasTable(std::span<const double> weights);
    uint64_t sample(RngStream &rng) const;
    size_t size() const {
        return prob_.size();
    }

   private:
    std::vector<double> prob_;
    std::vector<uint64_t> alias_;
};

}  // namespace qpt

#endif
