// Copyright 2026 The stabsm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABSM_LATTICE_HPP
#define STABSM_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "stabsm/f2.hpp"
#include "stabsm/poly.hpp"

namespace stabsm {

/// Finite periodic torus: d positive extents plus l qubits per unit cell.
///
/// Site indexing bijection, shared by every module:
///   - cell rank is lexicographic with the first coordinate most significant:
///     rank(c) = ((c0*L1 + c1)*L2 + c2)...
///   - per-cell sublabels are minor: index(cell, sub) = rank(cell)*n_sub + sub.
/// Qubits use n_sub = l; stabilizer/species instances use n_sub = their type
/// count.
struct Torus {
    std::vector<int> dims;
    int l = 1;

    Torus() = default;
    Torus(std::vector<int> dims_, int l_) : dims(std::move(dims_)), l(l_) {}

    int d() const { return (int)dims.size(); }
    size_t n_cells() const {
        size_t n = 1;
        for (int L : dims) {
            n *= (size_t)L;
        }
        return n;
    }
    size_t n_qubits() const { return n_cells() * (size_t)l; }

    size_t cell_rank(const std::vector<int> &c) const {
        size_t r = 0;
        for (int k = 0; k < d(); k++) {
            int m = c[k] % dims[k];
            if (m < 0) {
                m += dims[k];
            }
            r = r * dims[k] + (size_t)m;
        }
        return r;
    }
    std::vector<int> cell_coords(size_t rank) const {
        std::vector<int> c(d());
        for (int k = d() - 1; k >= 0; k--) {
            c[k] = (int)(rank % dims[k]);
            rank /= dims[k];
        }
        return c;
    }
    size_t qubit_index(const std::vector<int> &cell, int sub) const {
        return cell_rank(cell) * l + sub;
    }
};

/// A Pauli operator on the torus as a pair of qubit-indexed bit vectors.
struct PauliBits {
    BitVec z, x;

    PauliBits() = default;
    explicit PauliBits(size_t n) : z(n), x(n) {}

    bool is_identity() const { return !z.any() && !x.any(); }
    void mul_inplace(const PauliBits &o) {
        z ^= o.z;
        x ^= o.x;
    }
    /// 1 if the operators anticommute (symplectic form), else 0.
    bool anticommutes(const PauliBits &o) const {
        return z.and_parity(o.x) ^ x.and_parity(o.z);
    }
    bool operator==(const PauliBits &o) const { return z == o.z && x == o.x; }
};

/// Result of instantiating a polynomial matrix on a torus.
struct Instantiated {
    F2Matrix mat;
    bool wrapped = false;  // some entry's support wraps around the torus
};

/// Block-circulant realization of a polynomial matrix: rows and columns both
/// expand by one copy per cell (monomial x^a acts as translation by a mod L).
/// Row instance index = rank(cell)*rows + r, column = rank(cell)*cols + c.
Instantiated instantiate(const PolyMatrix &M, const Torus &t);

/// Instantiate one Pauli polynomial vector at a cell.
PauliBits instantiate_pauli(const PolyVec &v, const Torus &t, const std::vector<int> &cell);

/// Full list of stabilizer instances, index = rank(cell)*m + type.
std::vector<PauliBits> instantiate_all(const PolyMatrix &S, const Torus &t);

struct CodeParameters {
    size_t N = 0;              // qubits
    size_t N_s = 0;            // stabilizer instances
    size_t N_c = 0;            // independent constraints
    size_t logical_count = 0;  // N - N_s + N_c
};

/// N_c is the kernel dimension of the instantiated stabilizer-label ->
/// qubit-support map; the logical count follows from it.
CodeParameters code_parameters(const PolyMatrix &S, const Torus &t);

}  // namespace stabsm

#endif
