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

#ifndef STABSM_POLY_HPP
#define STABSM_POLY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace stabsm {

/// Exponent vector of one monomial: d signed integers.
using Mono = std::vector<int>;

/// F2 Laurent polynomial in d variables: a finite set of exponent vectors.
/// Addition is symmetric difference (coefficients mod 2); the zero polynomial
/// is the empty set. Values are immutable; operations return fresh values.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(int dim) : dim_(dim) {}
    LaurentPoly(int dim, std::vector<Mono> terms);

    int dim() const { return dim_; }
    const std::vector<Mono> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    LaurentPoly add(const LaurentPoly &o) const;
    LaurentPoly mul(const LaurentPoly &o) const;
    /// Every exponent vector negated: f(x) -> f(x^-1).
    LaurentPoly antipode() const;
    /// Multiply by the monomial x^shift.
    LaurentPoly shifted(const Mono &shift) const;

    bool operator==(const LaurentPoly &o) const {
        return dim_ == o.dim_ && terms_ == o.terms_;
    }

    static LaurentPoly zero(int dim) { return LaurentPoly(dim); }
    static LaurentPoly one(int dim);
    static LaurentPoly monomial(const Mono &m);

    std::string str() const;

  private:
    int dim_ = 0;
    std::vector<Mono> terms_;  // sorted, unique
};

/// Parse the textual polynomial syntax: monomials `x^a*y^b*z^c` (negative
/// exponents allowed), `+` separated, whitespace ignored; `1` is the constant
/// monomial and `0` the zero polynomial. Variables beyond dim are rejected.
LaurentPoly parse_poly(const std::string &text, int dim);

/// Length-2l symplectic vector of Laurent polynomials encoding a Pauli
/// support: entries 0..l-1 are Z components, entries l..2l-1 are X components.
struct PolyVec {
    int l = 0;
    std::vector<LaurentPoly> e;  // size 2l

    PolyVec() = default;
    PolyVec(int l_, int dim) : l(l_), e(2 * l_, LaurentPoly(dim)) {}
    int dim() const { return e.empty() ? 0 : e[0].dim(); }
    bool is_zero() const;
};

/// Matrix of Laurent polynomials. A stabilizer map S has 2l rows and m
/// columns (m = number of stabilizer types).
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols, int dim);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dim() const { return dim_; }
    const LaurentPoly &at(int r, int c) const { return e_[r * cols_ + c]; }
    LaurentPoly &at(int r, int c) { return e_[r * cols_ + c]; }

    PolyVec col(int c) const;
    void set_col(int c, const PolyVec &v);

    PolyMatrix mul(const PolyMatrix &o) const;
    bool is_zero() const;
    bool operator==(const PolyMatrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

  private:
    int rows_ = 0, cols_ = 0, dim_ = 0;
    std::vector<LaurentPoly> e_;
};

/// Excitation map E = S†λ_l where S† is the antipode-transpose and λ_l swaps
/// the Z and X blocks. E maps an error Pauli to the violated stabilizer types.
/// Requires S to have an even row count 2l.
PolyMatrix excitation_map(const PolyMatrix &S);

/// True iff E·S = 0 as a polynomial matrix, i.e. all stabilizer types commute
/// under every relative translation.
bool commute_check(const PolyMatrix &S);

/// Syndrome of an error pattern: E·Ω(P), one polynomial per stabilizer type.
std::vector<LaurentPoly> apply_excitation(const PolyMatrix &E, const PolyVec &omega);

}  // namespace stabsm

#endif
