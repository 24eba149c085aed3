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

#include "stabsm/lattice.hpp"

#include <stdexcept>

namespace stabsm {

static bool poly_wraps(const LaurentPoly &p, const Torus &t) {
    for (int k = 0; k < p.dim(); k++) {
        int mn = 0, mx = 0;
        bool first = true;
        for (const Mono &m : p.terms()) {
            if (first) {
                mn = mx = m[k];
                first = false;
            } else {
                mn = std::min(mn, m[k]);
                mx = std::max(mx, m[k]);
            }
        }
        if (!first && mx - mn >= t.dims[k]) {
            return true;
        }
    }
    return false;
}

Instantiated instantiate(const PolyMatrix &M, const Torus &t) {
    if (M.dim() != t.d()) {
        throw std::invalid_argument("instantiate: dimension mismatch");
    }
    for (int L : t.dims) {
        if (L < 2) {
            throw std::invalid_argument("instantiate: all torus extents must be >= 2");
        }
    }
    size_t nc = t.n_cells();
    Instantiated out;
    out.mat = F2Matrix(nc * M.rows(), nc * M.cols());
    for (int r = 0; r < M.rows(); r++) {
        for (int c = 0; c < M.cols(); c++) {
            const LaurentPoly &p = M.at(r, c);
            if (p.is_zero()) {
                continue;
            }
            if (poly_wraps(p, t)) {
                out.wrapped = true;
            }
            for (size_t cc = 0; cc < nc; cc++) {
                std::vector<int> base = t.cell_coords(cc);
                for (const Mono &m : p.terms()) {
                    std::vector<int> tgt = base;
                    for (int k = 0; k < t.d(); k++) {
                        tgt[k] += m[k];
                    }
                    out.mat.flip(t.cell_rank(tgt) * M.rows() + r, cc * M.cols() + c);
                }
            }
        }
    }
    return out;
}

PauliBits instantiate_pauli(const PolyVec &v, const Torus &t, const std::vector<int> &cell) {
    if (v.l != t.l) {
        throw std::invalid_argument("instantiate_pauli: qubit count mismatch");
    }
    PauliBits p(t.n_qubits());
    for (int r = 0; r < 2 * v.l; r++) {
        int sub = r % v.l;
        for (const Mono &m : v.e[r].terms()) {
            std::vector<int> tgt = cell;
            for (int k = 0; k < t.d(); k++) {
                tgt[k] += m[k];
            }
            size_t q = t.qubit_index(tgt, sub);
            if (r < v.l) {
                p.z.flip(q);
            } else {
                p.x.flip(q);
            }
        }
    }
    return p;
}

std::vector<PauliBits> instantiate_all(const PolyMatrix &S, const Torus &t) {
    size_t nc = t.n_cells();
    int m = S.cols();
    std::vector<PauliBits> out;
    out.reserve(nc * m);
    for (size_t cc = 0; cc < nc; cc++) {
        std::vector<int> cell = t.cell_coords(cc);
        for (int j = 0; j < m; j++) {
            out.push_back(instantiate_pauli(S.col(j), t, cell));
        }
    }
    return out;
}

CodeParameters code_parameters(const PolyMatrix &S, const Torus &t) {
    std::vector<PauliBits> stabs = instantiate_all(S, t);
    size_t N = t.n_qubits();
    std::vector<BitVec> vecs;
    vecs.reserve(stabs.size());
    for (const PauliBits &p : stabs) {
        BitVec v(2 * N);
        for (size_t i = 0; i < N; i++) {
            if (p.z.get(i)) {
                v.set(i, true);
            }
            if (p.x.get(i)) {
                v.set(N + i, true);
            }
        }
        vecs.push_back(std::move(v));
    }
    size_t r = rank_of(vecs);
    CodeParameters cp;
    cp.N = N;
    cp.N_s = stabs.size();
    cp.N_c = cp.N_s - r;
    cp.logical_count = cp.N - r;
    return cp;
}

}  // namespace stabsm
