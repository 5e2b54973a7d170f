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

#ifndef QPT_ERRORS_H
#define QPT_ERRORS_H

#include <stdexcept>
#include <string>

namespace qpt {

/// Input length or arity does not match what the operation expects.
struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request lies outside what this build can compute exactly (enumeration
/// bounds, dimension caps).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree. Always a bug.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A structural statement verified at runtime turned out false.
struct TheoremViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace qpt

#endif
