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

#include <algorithm>

#include "qpt/boolfn.h"
#include "qpt/errors.h"

namespace qpt {

namespace {

void check_coordinate(int n, int i) {
    if (i < 1 || i > n) {
        throw ArityError("coordinate " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
    }
}

void check_same_arity(const BooleanFunction &a, const BooleanFunction &b, const char *what) {
    if (a.arity() != b.arity()) {
        throw ArityError(std::string(what) + ": set arities differ");
    }
}

}  // namespace

BooleanFunction dictator(int n, int i) {
    check_coordinate(n, i);
    return BooleanFunction::from_predicate(n, [&](uint64_t x) {
        return coordinate_bit(x, i, n);
    });
}

BooleanFunction antidictator(int n, int i) {
    check_coordinate(n, i);
    return BooleanFunction::from_predicate(n, [&](uint64_t x) {
        return !coordinate_bit(x, i, n);
    });
}

BooleanFunction majority(int n) {
    return BooleanFunction::from_predicate(n, [&](uint64_t x) {
        return 2 * hamming_weight(x) > n;
    });
}

BooleanFunction parity(int n) {
    return BooleanFunction::from_predicate(n, [](uint64_t x) {
        return hamming_weight(x) & 1;
    });
}

BooleanFunction and_function(int n) {
    uint64_t all = (uint64_t{1} << n) - 1;
    return BooleanFunction::from_predicate(n, [&](uint64_t x) {
        return x == all;
    });
}

BooleanFunction or_function(int n) {
    return BooleanFunction::from_predicate(n, [](uint64_t x) {
        return x != 0;
    });
}

BooleanFunction inner_product(int n) {
    if (n % 2) {
        throw ArityError("inner_product needs an even arity, got " + std::to_string(n));
    }
    int k = n / 2;
    uint64_t low = (uint64_t{1} << k) - 1;
    return BooleanFunction::from_predicate(n, [&](uint64_t x) {
        return dot_mod2(x >> k, x & low);
    });
}

BooleanFunction mm(const BooleanFunction &h) {
    int k = h.arity();
    uint64_t low = (uint64_t{1} << k) - 1;
    return BooleanFunction::from_predicate(2 * k, [&](uint64_t xy) {
        uint64_t x = xy >> k;
        return dot_mod2(x, xy & low) ^ h[x];
    });
}

BooleanFunction mm_dual(const BooleanFunction &h) {
    int k = h.arity();
    uint64_t low = (uint64_t{1} << k) - 1;
    return BooleanFunction::from_predicate(2 * k, [&](uint64_t xy) {
        uint64_t y = xy & low;
        return dot_mod2(xy >> k, y) ^ h[y];
    });
}

BooleanFunction triple(const BooleanFunction &a, const BooleanFunction &b, const BooleanFunction &c) {
    check_same_arity(a, b, "triple");
    check_same_arity(a, c, "triple");
    return BooleanFunction::from_predicate(a.arity() + 2, [&](uint64_t xa) {
        uint64_t x = xa >> 2;
        switch (xa & 3) {
            case 0:
                return a[x];
            case 1:
                return b[x];
            case 2:
                return c[x];
            default:
                return false;
        }
    });
}

BooleanFunction pair(const BooleanFunction &a, const BooleanFunction &b) {
    check_same_arity(a, b, "pair");
    return BooleanFunction::from_predicate(a.arity() + 1, [&](uint64_t xa) {
        return (xa & 1) ? b[xa >> 1] : a[xa >> 1];
    });
}

const std::vector<std::string> &builtin_names() {
    static const std::vector<std::string> names{
        "constant0",
        "constant1",
        "dictator",
        "antidictator",
        "majority",
        "parity",
        "and",
        "or",
        "inner_product",
        "mm",
        "mm_dual",
        "triple",
        "pair",
    };
    return names;
}

namespace {

const BooleanFunction &require(const std::optional<BooleanFunction> &p, std::string_view name, const char *which, int n) {
    if (!p.has_value()) {
        throw ContractError(std::string(name) + " requires parameter " + which);
    }
    if (p->arity() != n) {
        throw ArityError(
            std::string(name) + ": parameter " + which + " has arity " + std::to_string(p->arity()) + ", expected " +
            std::to_string(n));
    }
    return *p;
}

}  // namespace

BooleanFunction builtin(std::string_view name, int n, const BuiltinParams &params) {
    if (name == "constant0") {
        return BooleanFunction::constant(n, false);
    }
    if (name == "constant1") {
        return BooleanFunction::constant(n, true);
    }
    if (name == "dictator") {
        return dictator(n, params.coordinate);
    }
    if (name == "antidictator") {
        return antidictator(n, params.coordinate);
    }
    if (name == "majority") {
        return majority(n);
    }
    if (name == "parity") {
        return parity(n);
    }
    if (name == "and") {
        return and_function(n);
    }
    if (name == "or") {
        return or_function(n);
    }
    if (name == "inner_product") {
        return inner_product(n);
    }
    if (name == "mm") {
        return mm(require(params.h, name, "h", n));
    }
    if (name == "mm_dual") {
        return mm_dual(require(params.h, name, "h", n));
    }
    if (name == "triple") {
        return triple(require(params.a, name, "A", n), require(params.b, name, "B", n), require(params.c, name, "C", n));
    }
    if (name == "pair") {
        return pair(require(params.a, name, "A", n), require(params.b, name, "B", n));
    }
    throw ContractError("unknown builtin function '" + std::string(name) + "'");
}

}  // namespace qpt
