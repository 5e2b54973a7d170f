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

#include "qpt/closed_forms.h"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "qpt/errors.h"

namespace qpt {

using Real = boost::multiprecision::cpp_bin_float_100;

ClosedFormParams ClosedFormParams::for_cube(int n, int m) {
    if (n < 0 || n > 62) {
        throw ContractError("closed forms need 0 <= n <= 62");
    }
    return for_alphabet(uint64_t{1} << n, m);
}

ClosedFormParams ClosedFormParams::for_alphabet(uint64_t alphabet, int m) {
    if (m < 0 || 2 * (uint64_t)m > alphabet) {
        throw ContractError("closed forms need 0 <= 2m <= alphabet size");
    }
    return ClosedFormParams{alphabet, m};
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; i++) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

namespace {

void check_args(const ClosedFormParams &params, int t, int p) {
    if (t < 0) {
        throw ContractError("string length t must be nonnegative");
    }
    if (p < 0 || p > params.m) {
        throw ContractError("p must lie in [0, m]");
    }
    if (2 * (uint64_t)params.m > params.alphabet) {
        throw ContractError("closed forms need 2m <= alphabet size");
    }
}

BigInt power(const BigInt &base, int t) {
    return boost::multiprecision::pow(base, (unsigned)t);
}

BigInt exact_shift_divide(const BigInt &num, int bits, const char *what) {
    BigInt d = BigInt(1) << bits;
    if (num % d != 0) {
        throw InternalConsistencyError(std::string(what) + ": sum is not divisible by its power of two");
    }
    return num / d;
}

Real to_real(const BigInt &v) {
    return Real(v);
}

}  // namespace

BigInt T_closed(const ClosedFormParams &params, int t, int p) {
    check_args(params, t, p);
    int m = params.m;
    BigInt L = params.alphabet;
    BigInt sum = 0;
    for (int j = 0; j <= 2 * m - 2 * p; j++) {
        BigInt cj = binomial(2 * m - 2 * p, j);
        for (int k = 0; k <= 2 * p; k++) {
            BigInt term = cj * binomial(2 * p, k) * power(L - 2 * j - 2 * k, t);
            if (k & 1) {
                sum -= term;
            } else {
                sum += term;
            }
        }
    }
    return exact_shift_divide(sum, 2 * m, "T(t,p)");
}

BigInt N_closed(const ClosedFormParams &params, int t, int p) {
    check_args(params, t, p);
    int m = params.m;
    BigInt L = params.alphabet;
    BigInt sum = 0;
    for (int j = 0; j <= p; j++) {
        BigInt cj = binomial(p, j);
        for (int k = 0; k <= m - p; k++) {
            BigInt term = cj * binomial(m - p, k) * power(L - 4 * j - 4 * k, t);
            if (j & 1) {
                sum -= term;
            } else {
                sum += term;
            }
        }
    }
    return exact_shift_divide(sum, m, "N(t,p)");
}

BigInt x1_plus_x2(const ClosedFormParams &params, int t) {
    check_args(params, t, 0);
    BigInt L = params.alphabet;
    BigInt sum = 0;
    for (int k = 0; k <= params.m; k++) {
        sum += binomial(params.m, k) * power(L - 4 * k, t);
    }
    return exact_shift_divide(sum, params.m, "x1 + x2");
}

std::pair<BigInt, BigInt> x1_x2_split(const ClosedFormParams &params, int t) {
    check_args(params, t, 0);
    BigInt x1 = 0, x2 = 0;
    for (int p = 0; p <= std::min(params.m, t); p++) {
        BigInt v = binomial(params.m, p) * T_closed(params, t, p);
        (p & 1 ? x1 : x2) += v;
    }
    if (x1 + x2 != x1_plus_x2(params, t)) {
        throw InternalConsistencyError("x1 + x2 from the split disagrees with the direct sum");
    }
    return {x1, x2};
}

namespace {

template <typename Accept>
BigInt enumerate_strings(const ClosedFormParams &params, int t, Accept &&accept) {
    uint64_t L = params.alphabet;
    double total = std::pow((double)L, t);
    if (total > (double)(1 << 24)) {
        throw CapabilityError("string enumeration limited to 2^24 strings");
    }
    std::vector<uint64_t> digits(t, 0);
    std::vector<int> counts(L, 0);
    uint64_t hits = 0;
    while (true) {
        std::fill(counts.begin(), counts.end(), 0);
        for (uint64_t d : digits) {
            counts[d]++;
        }
        if (accept(counts)) {
            hits++;
        }
        int pos = 0;
        while (pos < t && ++digits[pos] == L) {
            digits[pos] = 0;
            pos++;
        }
        if (pos == t) {
            break;
        }
    }
    return hits;
}

}  // namespace

BigInt T_enumerate(const ClosedFormParams &params, int t, int p) {
    check_args(params, t, p);
    int m = params.m;
    return enumerate_strings(params, t, [&](const std::vector<int> &c) {
        for (int i = 0; i < 2 * m; i++) {
            int want = i < 2 * p ? 1 : 0;
            if ((c[i] & 1) != want) {
                return false;
            }
        }
        return true;
    });
}

BigInt N_enumerate(const ClosedFormParams &params, int t, int p) {
    check_args(params, t, p);
    int m = params.m;
    return enumerate_strings(params, t, [&](const std::vector<int> &c) {
        for (int i = 0; i < m; i++) {
            bool differ = (c[2 * i] & 1) != (c[2 * i + 1] & 1);
            if (differ != (i < p)) {
                return false;
            }
        }
        return true;
    });
}

TraceNormClosedForm trace_norm_closed_form(const ClosedFormParams &params, int t) {
    check_args(params, t, 0);
    auto [x1, x2] = x1_x2_split(params, t);
    BigInt total_strings = power(BigInt(params.alphabet), t);
    BigInt star_sum = 0;
    for (int k = 1; k <= std::min(t, params.m); k++) {
        star_sum += binomial(params.m, k) * N_closed(params, t, k);
    }
    BigInt n0 = N_closed(params, t, 0);
    if (n0 != x1 + x2) {
        throw InternalConsistencyError("N(t,0) differs from x1 + x2");
    }
    if (n0 + star_sum != total_strings) {
        throw InternalConsistencyError("type counts do not sum to L^t");
    }
    Real denom = to_real(total_strings);
    Real bip = 4 * boost::multiprecision::sqrt(to_real(x1) * to_real(x2)) / denom;
    // (4 / L^t) * star_sum / 2.
    Real star = 2 * to_real(star_sum) / denom;
    Real identity = 2 * (1 - to_real(x1 + x2) / denom);
    TraceNormClosedForm out;
    out.bipartite_term = bip.convert_to<double>();
    out.star_term = star.convert_to<double>();
    out.star_term_identity = identity.convert_to<double>();
    out.total = (bip + star).convert_to<double>();
    if (std::abs(out.star_term - out.star_term_identity) > 1e-9) {
        throw InternalConsistencyError("star term disagrees with the x1 + x2 identity");
    }
    return out;
}

double star_term(const ClosedFormParams &params, int t) {
    check_args(params, t, 0);
    Real expectation = 0;
    Real L = Real(params.alphabet);
    for (int k = 0; k <= params.m; k++) {
        Real base = 1 - Real(4 * k) / L;
        expectation += to_real(binomial(params.m, k)) * boost::multiprecision::pow(base, t);
    }
    expectation /= boost::multiprecision::pow(Real(2), params.m);
    return Real(2 * (1 - expectation)).convert_to<double>();
}

}  // namespace qpt
