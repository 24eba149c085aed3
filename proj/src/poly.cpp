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

#include "stabsm/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabsm {

static std::vector<Mono> normalize(std::vector<Mono> terms) {
    std::sort(terms.begin(), terms.end());
    // mod-2 coefficients: cancel pairs
    std::vector<Mono> out;
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) {
            j++;
        }
        if ((j - i) % 2) {
            out.push_back(terms[i]);
        }
        i = j;
    }
    return out;
}

LaurentPoly::LaurentPoly(int dim, std::vector<Mono> terms) : dim_(dim) {
    for (const Mono &m : terms) {
        if ((int)m.size() != dim) {
            throw std::invalid_argument("monomial dimension mismatch");
        }
    }
    terms_ = normalize(std::move(terms));
}

LaurentPoly LaurentPoly::add(const LaurentPoly &o) const {
    if (dim_ != o.dim_) {
        throw std::invalid_argument("poly_add: dimension mismatch");
    }
    std::vector<Mono> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    LaurentPoly r(dim_);
    r.terms_ = normalize(std::move(t));
    return r;
}

LaurentPoly LaurentPoly::mul(const LaurentPoly &o) const {
    if (dim_ != o.dim_) {
        throw std::invalid_argument("poly_mul: dimension mismatch");
    }
    std::vector<Mono> t;
    t.reserve(terms_.size() * o.terms_.size());
    for (const Mono &a : terms_) {
        for (const Mono &b : o.terms_) {
            Mono c(dim_);
            for (int k = 0; k < dim_; k++) {
                c[k] = a[k] + b[k];
            }
            t.push_back(std::move(c));
        }
    }
    LaurentPoly r(dim_);
    r.terms_ = normalize(std::move(t));
    return r;
}

LaurentPoly LaurentPoly::antipode() const {
    std::vector<Mono> t = terms_;
    for (Mono &m : t) {
        for (int &x : m) {
            x = -x;
        }
    }
    LaurentPoly r(dim_);
    r.terms_ = normalize(std::move(t));
    return r;
}

LaurentPoly LaurentPoly::shifted(const Mono &shift) const {
    std::vector<Mono> t = terms_;
    for (Mono &m : t) {
        for (int k = 0; k < dim_; k++) {
            m[k] += shift[k];
        }
    }
    LaurentPoly r(dim_);
    r.terms_ = normalize(std::move(t));
    return r;
}

LaurentPoly LaurentPoly::one(int dim) {
    return LaurentPoly(dim, {Mono(dim, 0)});
}

LaurentPoly LaurentPoly::monomial(const Mono &m) {
    return LaurentPoly((int)m.size(), {m});
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) {
        return "0";
    }
    static const char *names = "xyz";
    std::string s;
    for (size_t i = 0; i < terms_.size(); i++) {
        if (i) {
            s += "+";
        }
        const Mono &m = terms_[i];
        bool printed = false;
        for (int k = 0; k < dim_; k++) {
            if (m[k] == 0) {
                continue;
            }
            if (printed) {
                s += "*";
            }
            if (dim_ <= 3) {
                s += names[k];
            } else {
                s += "x" + std::to_string(k + 1);
            }
            if (m[k] != 1) {
                s += "^" + std::to_string(m[k]);
            }
            printed = true;
        }
        if (!printed) {
            s += "1";
        }
    }
    return s;
}

LaurentPoly parse_poly(const std::string &text, int dim) {
    std::string s;
    for (char c : text) {
        if (!isspace((unsigned char)c)) {
            s += c;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty polynomial");
    }
    std::vector<Mono> terms;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t plus = s.find('+', pos);
        std::string tok = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        pos = plus == std::string::npos ? s.size() + 1 : plus + 1;
        if (tok.empty()) {
            throw std::invalid_argument("empty monomial in: " + text);
        }
        if (tok == "0") {
            continue;
        }
        Mono m(dim, 0);
        size_t i = 0;
        if (tok == "1") {
            terms.push_back(m);
            continue;
        }
        while (i < tok.size()) {
            if (tok[i] == '*') {
                i++;
                continue;
            }
            if (tok[i] == '1') {
                i++;
                continue;
            }
            int var = -1;
            if (tok[i] == 'x' && i + 1 < tok.size() && isdigit((unsigned char)tok[i + 1]) && dim > 3) {
                size_t j = i + 1;
                while (j < tok.size() && isdigit((unsigned char)tok[j])) {
                    j++;
                }
                var = std::stoi(tok.substr(i + 1, j - i - 1)) - 1;
                i = j;
            } else if (tok[i] == 'x') {
                var = 0;
                i++;
            } else if (tok[i] == 'y') {
                var = 1;
                i++;
            } else if (tok[i] == 'z') {
                var = 2;
                i++;
            } else {
                throw std::invalid_argument("bad monomial token: " + tok);
            }
            if (var < 0 || var >= dim) {
                throw std::invalid_argument("variable out of range for dimension " +
                                            std::to_string(dim) + ": " + tok);
            }
            int expn = 1;
            if (i < tok.size() && tok[i] == '^') {
                i++;
                size_t j = i;
                if (j < tok.size() && (tok[j] == '-' || tok[j] == '+')) {
                    j++;
                }
                while (j < tok.size() && isdigit((unsigned char)tok[j])) {
                    j++;
                }
                if (j == i) {
                    throw std::invalid_argument("bad exponent in: " + tok);
                }
                expn = std::stoi(tok.substr(i, j - i));
                i = j;
            }
            m[var] += expn;
        }
        terms.push_back(m);
    }
    return LaurentPoly(dim, std::move(terms));
}

bool PolyVec::is_zero() const {
    for (const auto &p : e) {
        if (!p.is_zero()) {
            return false;
        }
    }
    return true;
}

PolyMatrix::PolyMatrix(int rows, int cols, int dim)
    : rows_(rows), cols_(cols), dim_(dim), e_(rows * cols, LaurentPoly(dim)) {}

PolyVec PolyMatrix::col(int c) const {
    if (rows_ % 2) {
        throw std::logic_error("col() requires even row count");
    }
    PolyVec v(rows_ / 2, dim_);
    for (int r = 0; r < rows_; r++) {
        v.e[r] = at(r, c);
    }
    return v;
}

void PolyMatrix::set_col(int c, const PolyVec &v) {
    for (int r = 0; r < rows_; r++) {
        at(r, c) = v.e[r];
    }
}

PolyMatrix PolyMatrix::mul(const PolyMatrix &o) const {
    if (cols_ != o.rows_) {
        throw std::invalid_argument("polymatrix mul: shape mismatch");
    }
    PolyMatrix out(rows_, o.cols_, dim_);
    for (int i = 0; i < rows_; i++) {
        for (int j = 0; j < o.cols_; j++) {
            LaurentPoly acc(dim_);
            for (int k = 0; k < cols_; k++) {
                acc = acc.add(at(i, k).mul(o.at(k, j)));
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

bool PolyMatrix::is_zero() const {
    for (const auto &p : e_) {
        if (!p.is_zero()) {
            return false;
        }
    }
    return true;
}

PolyMatrix excitation_map(const PolyMatrix &S) {
    if (S.rows() % 2) {
        throw std::invalid_argument("excitation_map: row count not even");
    }
    int l = S.rows() / 2;
    int m = S.cols();
    // E = (antipode-transpose of S) · λ_l; the λ_l right-factor swaps the
    // left and right l-column blocks.
    PolyMatrix E(m, 2 * l, S.dim());
    for (int a = 0; a < m; a++) {
        for (int r = 0; r < 2 * l; r++) {
            int swapped = (r + l) % (2 * l);
            E.at(a, swapped) = S.at(r, a).antipode();
        }
    }
    return E;
}

bool commute_check(const PolyMatrix &S) {
    return excitation_map(S).mul(S).is_zero();
}

std::vector<LaurentPoly> apply_excitation(const PolyMatrix &E, const PolyVec &omega) {
    if (E.cols() != 2 * omega.l) {
        throw std::invalid_argument("apply_excitation: dimension mismatch");
    }
    std::vector<LaurentPoly> out;
    out.reserve(E.rows());
    for (int a = 0; a < E.rows(); a++) {
        LaurentPoly acc(E.dim());
        for (int k = 0; k < E.cols(); k++) {
            acc = acc.add(E.at(a, k).mul(omega.e[k]));
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace stabsm
