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

#include "stabsm/f2.hpp"

#include <algorithm>

namespace stabsm {

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            if (get(i, j)) {
                t.set(j, i, true);
            }
        }
    }
    return t;
}

F2Matrix F2Matrix::mul(const F2Matrix &o) const {
    F2Matrix out(rows_, o.cols_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t k = 0; k < cols_; k++) {
            if (get(i, k)) {
                out.r_[i] ^= o.r_[k];
            }
        }
    }
    return out;
}

bool F2Matrix::is_zero() const {
    for (const auto &row : r_) {
        if (row.any()) {
            return false;
        }
    }
    return true;
}

std::vector<size_t> F2Matrix::rref() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; c++) {
        size_t p = rows_;
        for (size_t i = r; i < rows_; i++) {
            if (r_[i].get(c)) {
                p = i;
                break;
            }
        }
        if (p == rows_) {
            continue;
        }
        std::swap(r_[r], r_[p]);
        for (size_t i = 0; i < rows_; i++) {
            if (i != r && r_[i].get(c)) {
                r_[i] ^= r_[r];
            }
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

size_t F2Matrix::rank() const {
    F2Matrix copy = *this;
    return copy.rref().size();
}

std::vector<BitVec> F2Matrix::kernel_basis() const {
    F2Matrix m = *this;
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<BitVec> basis;
    for (size_t f = 0; f < cols_; f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVec v(cols_);
        v.set(f, true);
        for (size_t r = 0; r < pivots.size(); r++) {
            if (m.get(r, f)) {
                v.set(pivots[r], true);
            }
        }
        basis.push_back(v);
    }
    // Free-column construction already yields RREF rows (each basis vector's
    // leading free column appears in no other vector), but normalize anyway.
    return basis;
}

std::string F2Matrix::str() const {
    std::string s;
    for (size_t i = 0; i < rows_; i++) {
        s += r_[i].str();
        s += '\n';
    }
    return s;
}

size_t rank_of(std::vector<BitVec> vecs) {
    return independent_subset(vecs).size();
}

std::vector<size_t> independent_subset(const std::vector<BitVec> &vecs) {
    std::vector<BitVec> basis;
    std::vector<size_t> lead;
    std::vector<size_t> keep;
    for (size_t i = 0; i < vecs.size(); i++) {
        BitVec v = vecs[i];
        bool reduced = true;
        while (reduced) {
            reduced = false;
            size_t lo = v.lowest_set();
            if (lo >= v.size()) {
                break;
            }
            for (size_t b = 0; b < basis.size(); b++) {
                if (lead[b] == lo) {
                    v ^= basis[b];
                    reduced = true;
                    break;
                }
            }
        }
        if (v.any()) {
            lead.push_back(v.lowest_set());
            basis.push_back(v);
            keep.push_back(i);
        }
    }
    return keep;
}

}  // namespace stabsm
