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

#ifndef QPT_CLOSED_FORMS_H
#define QPT_CLOSED_FORMS_H

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>

namespace qpt {

using BigInt = boost::multiprecision::cpp_int;

/// Alphabet of `alphabet` symbols holding m disjoint pairs. With alphabet =
/// 2^n these are the counts behind the twin-ensemble difference matrix.
struct ClosedFormParams {
    uint64_t alphabet;
    int m;

    /// Throws ContractError unless 2m <= 2^n.
    static ClosedFormParams for_cube(int n, int m);
    /// Throws ContractError unless 2m <= alphabet.
    static ClosedFormParams for_alphabet(uint64_t alphabet, int m);
};

/// Length-t strings where the 2p symbols of p designated pairs each occur an
/// odd number of times, the symbols of the other m-p pairs an even number of
/// times, and free symbols any number of times.
BigInt T_closed(const ClosedFormParams &params, int t, int p);
/// Length-t strings where each of p designated pairs has its two symbols at
/// different parities and each other pair has them at equal parity.
BigInt N_closed(const ClosedFormParams &params, int t, int p);
/// 2^{-m} sum_k C(m,k) (L - 4k)^t.
BigInt x1_plus_x2(const ClosedFormParams &params, int t);
/// (x1, x2): the odd-p and even-p parts of sum_p C(m,p) T(t,p). Throws
/// InternalConsistencyError if the sum differs from x1_plus_x2.
std::pair<BigInt, BigInt> x1_x2_split(const ClosedFormParams &params, int t);

/// Brute-force counts over all L^t strings, for L^t <= 2^24.
BigInt T_enumerate(const ClosedFormParams &params, int t, int p);
BigInt N_enumerate(const ClosedFormParams &params, int t, int p);

BigInt binomial(int n, int k);

struct TraceNormClosedForm {
    /// (4 / L^t) sqrt(x1 x2).
    double bipartite_term;
    /// (4 / L^t) sum_{k>=1} C(m,k) N(t,k) / 2.
    double star_term;
    /// 2 (1 - (x1 + x2) / L^t), the same quantity from the x1 + x2 identity.
    double star_term_identity;
    double total;
};

/// ||A||_1 = (2 / 2^{nt-1}) (sqrt(x1 x2) + sum_{k>=1} C(m,k) N(t,k) / 2).
/// Throws InternalConsistencyError if the two star-term evaluations differ
/// by more than 1e-9.
TraceNormClosedForm trace_norm_closed_form(const ClosedFormParams &params, int t);

/// 2 (1 - E_K[(1 - 4K/L)^t]) for K ~ Binomial(m, 1/2), exact until the
/// final rounding.
double star_term(const ClosedFormParams &params, int t);

}  // namespace qpt

#endif
