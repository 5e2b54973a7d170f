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

#include <fstream>
#include <sstream>

#include "qpt/boolfn.h"
#include "qpt/errors.h"

namespace qpt {

std::string to_hex(const BooleanFunction &f) {
    if (f.arity() < 2) {
        throw ArityError("hex truth tables need n >= 2");
    }
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(f.size() / 4);
    for (uint64_t x = 0; x < f.size(); x += 4) {
        int v = (f[x] << 3) | (f[x + 1] << 2) | (f[x + 2] << 1) | f[x + 3];
        out.push_back(digits[v]);
    }
    return out;
}

BooleanFunction from_hex(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.remove_suffix(1);
    }
    uint64_t bits = 4 * (uint64_t)text.size();
    int n = 0;
    while (n <= MAX_ARITY && (uint64_t{1} << n) < bits) {
        n++;
    }
    if (text.empty() || (uint64_t{1} << n) != bits || n < 2) {
        throw ArityError(
            "hex truth table of length " + std::to_string(text.size()) + " does not encode 2^n bits with 2 <= n <= " +
            std::to_string(MAX_ARITY));
    }
    std::vector<uint8_t> table(bits);
    for (size_t j = 0; j < text.size(); j++) {
        char c = text[j];
        int v;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else {
            throw ContractError(std::string("invalid character '") + c + "' in hex truth table");
        }
        for (int k = 0; k < 4; k++) {
            table[4 * j + k] = (v >> (3 - k)) & 1;
        }
    }
    return BooleanFunction(n, std::move(table));
}

BooleanFunction read_truth_table(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ContractError("cannot open truth table file '" + path + "'");
    }
    std::string line;
    std::getline(in, line);
    return from_hex(line);
}

void write_truth_table(const std::string &path, const BooleanFunction &f) {
    std::ofstream out(path);
    if (!out) {
        throw ContractError("cannot write truth table file '" + path + "'");
    }
    out << to_hex(f) << '\n';
}

}  // namespace qpt
