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

#ifndef QPT_SPECTRA_H
#define QPT_SPECTRA_H

#include <cstdint>
#include <span>
#include <vector>

#include "qpt/boolfn.h"
#include "qpt/ensembles.h"
#include "qpt/linalg.h"

namespace qpt {

/// Largest allowed state or matrix dimension. Defaults to 4096; the
/// QPT_DIM_CAP environment variable overrides it.
uint64_t dimension_cap();
/// Throws CapabilityError when dim exceeds dimension_cap().
void check_dimension(uint64_t dim, const char *what);

class StateVector {
   public:
    /// Validates power-of-two length and unit norm (1e-10).
    explicit StateVector(std::vector<double> amplitudes);

    size_t dimension() const {
        return amplitudes_.size();
    }
    int qubits() const;
    const std::vector<double> &amplitudes() const {
        return amplitudes_;
    }
    double operator[](size_t i) const {
        return amplitudes_[i];
    }

   private:
    std::vector<double> amplitudes_;
};

double inner_product(const StateVector &a, const StateVector &b);

/// 2^{-n/2} sum_x (-1)^{f(x)} |x>.
StateVector phase_state(const BooleanFunction &f);
/// 2^{-n/2} sum_x |x, f(x)>, the output qubit being the least significant.
StateVector function_state(const BooleanFunction &f);
/// Hadamard on the least significant qubit.
StateVector hadamard_on_last(const StateVector &s);
/// f~(x, b) = b * f(x), on n+1 bits with b as the last coordinate.
BooleanFunction output_phase_function(const BooleanFunction &f);

/// t-fold Kronecker power, first factor most significant.
std::vector<double> tensor_power(const StateVector &s, int t);

/// Uniform average of the t-fold tensor-power projectors.
Matrix ensemble_average(std::span<const StateVector> states, int t);

/// Checks symmetry (1e-12) and trace (1e-10); with psd, also that no
/// eigenvalue falls below -1e-10. Throws InternalConsistencyError.
void check_density_matrix(const Matrix &m, double declared_trace, bool psd);

using IndexTuple = std::vector<uint64_t>;

/// Entries x_1..x_t of a row index, x_1 in the most significant block.
IndexTuple tuple_from_index(uint64_t index, int n, int t);

struct TupleStats {
    /// Number of extracted pairs mod 2.
    int e;
    /// Leftover matched elements of odd multiplicity, ascending.
    std::vector<uint64_t> sing;
    /// Indices into Matching::pairs of pairs meeting sing, ascending.
    std::vector<int> type;
};

TupleStats tuple_stats(std::span<const uint64_t> x, const Matching &m);
TupleStats tuple_stats(std::span<const uint64_t> x, const Matching &m, std::span<const int> pair_index);

/// |{p : p inside sing(x) u sing(y)}| mod 2.
int pair_parity(const TupleStats &x, const TupleStats &y, const Matching &m, std::span<const int> pair_index);
/// type(x) = type(y) and E(x) + E(y) + P(x, y) odd.
bool compatible(const TupleStats &x, const TupleStats &y, const Matching &m, std::span<const int> pair_index);
bool compatible(std::span<const uint64_t> x, std::span<const uint64_t> y, const Matching &m);
/// The defining relation: L_p = U_p for every pair and an odd number of
/// pairs with L_p = U_p = 1, where L_p and U_p are the multiplicity parities
/// of the lower and upper element of p in the multiset x u y.
bool compatible_by_parity(std::span<const uint64_t> x, std::span<const uint64_t> y, const Matching &m);

/// A = A0 - A1 entrywise: (2/2^{nt}) s(x u y) on compatible pairs, else 0.
Matrix build_difference_matrix(const Matching &m, int t);

/// Exact average of phase-state projector powers over all 2^m bipartitions.
Matrix twin_ensemble_average(const Matching &m, int variant, int t);

struct CensusComponent {
    std::vector<int> type;
    uint64_t u_size;
    uint64_t v_size;
};

struct CensusEntry {
    int k;
    uint64_t count;
    uint64_t u_size;
    uint64_t v_size;
};

struct Census {
    std::vector<CensusComponent> components;
    /// One entry per type cardinality, ascending k.
    std::vector<CensusEntry> entries;
    uint64_t expected_components;
    uint64_t edges;
};

/// Enumerates the compatibility graph on all t-tuples and verifies its
/// structure: compatible() agrees with the parity relation on every pair,
/// no edge joins different types, every type class with edges is a single
/// complete bipartite component, the component count is sum_k C(m,k), and
/// part sizes are (x1, x2) for the empty type and N(t,k)/2 otherwise. For
/// the empty type, U is the side with E = 1. An edgeless class (the empty
/// type at t = 1) counts as K_{0,b}. Any failure throws TheoremViolation.
Census component_census(const Matching &m, int t);

}  // namespace qpt

#endif
