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

#ifndef STABSM_F2_HPP
#define STABSM_F2_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stabsm {

/// Fixed-length bit vector over F2, packed into 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            w_[i >> 6] |= m;
        } else {
            w_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    void operator^=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); k++) {
            w_[k] ^= o.w_[k];
        }
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t x : w_) {
            c += std::popcount(x);
        }
        return c;
    }

    bool any() const {
        for (uint64_t x : w_) {
            if (x) {
                return true;
            }
        }
        return false;
    }

    /// parity of popcount(*this & o)
    bool and_parity(const BitVec &o) const {
        uint64_t acc = 0;
        for (size_t k = 0; k < w_.size(); k++) {
            acc ^= w_[k] & o.w_[k];
        }
        return std::popcount(acc) & 1;
    }

    size_t and_popcount(const BitVec &o) const {
        size_t c = 0;
        for (size_t k = 0; k < w_.size(); k++) {
            c += std::popcount(w_[k] & o.w_[k]);
        }
        return c;
    }

    /// index of lowest set bit, or size() if none
    size_t lowest_set() const {
        for (size_t k = 0; k < w_.size(); k++) {
            if (w_[k]) {
                return k * 64 + std::countr_zero(w_[k]);
            }
        }
        return n_;
    }

    bool operator==(const BitVec &o) const { return n_ == o.n_ && w_ == o.w_; }

    std::string str() const {
        std::string s(n_, '0');
        for (size_t i = 0; i < n_; i++) {
            if (get(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    const std::vector<uint64_t> &words() const { return w_; }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

/// Dense binary matrix with bit-packed rows; all arithmetic mod 2.
class F2Matrix {
  public:
    F2Matrix() = default;
    F2Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool get(size_t i, size_t j) const { return r_[i].get(j); }
    void set(size_t i, size_t j, bool v) { r_[i].set(j, v); }
    void flip(size_t i, size_t j) { r_[i].flip(j); }
    BitVec &row(size_t i) { return r_[i]; }
    const BitVec &row(size_t i) const { return r_[i]; }

    F2Matrix transposed() const;
    F2Matrix mul(const F2Matrix &o) const;
    bool is_zero() const;

    /// In-place reduction to reduced row-echelon form; returns pivot column list.
    std::vector<size_t> rref();

    size_t rank() const;

    /// Basis of {x : M x = 0}, rows in RREF for determinism.
    std::vector<BitVec> kernel_basis() const;

    std::string str() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

/// Rank of a set of bit vectors (destructive elimination on a copy).
size_t rank_of(std::vector<BitVec> vecs);

/// Indices of a maximal independent subset, scanning in the given order.
std::vector<size_t> independent_subset(const std::vector<BitVec> &vecs);

}  // namespace stabsm

#endif
