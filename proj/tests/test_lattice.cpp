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

#include <random>

#include "doctest.h"
#include "stabsm/codes.hpp"
#include "stabsm/lattice.hpp"

using namespace stabsm;

TEST_CASE("f2 rank and kernel basics") {
    F2Matrix id(4, 4);
    for (int i = 0; i < 4; i++) {
        id.set(i, i, true);
    }
    CHECK(id.rank() == 4);
    CHECK(id.kernel_basis().empty());

    F2Matrix z(3, 5);
    CHECK(z.rank() == 0);
    CHECK(z.kernel_basis().size() == 5);
}

TEST_CASE("f2 rank + nullity = cols (randomized)") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; it++) {
        size_t r = 1 + rng() % 10, c = 1 + rng() % 12;
        F2Matrix m(r, c);
        for (size_t i = 0; i < r; i++) {
            for (size_t j = 0; j < c; j++) {
                if (rng() & 1) {
                    m.set(i, j, true);
                }
            }
        }
        auto ker = m.kernel_basis();
        CHECK(m.rank() + ker.size() == c);
        // every kernel vector really lies in the kernel
        for (const BitVec &v : ker) {
            for (size_t i = 0; i < r; i++) {
                CHECK_FALSE(m.row(i).and_parity(v));
            }
        }
    }
}

TEST_CASE("instantiate dimension bookkeeping") {
    CodeSpec c = builtin_code("toric2d");
    Torus t({2, 2}, c.l);
    Instantiated in = instantiate(c.S, t);
    CHECK(in.mat.rows() == 16);  // 2l = 4 rows per cell, 4 cells
    CHECK(in.mat.cols() == 8);   // 2 stabilizer types, 4 cells
}

TEST_CASE("instantiate constants and circulants") {
    // constant polynomial on a length-3 chain is the identity
    PolyMatrix one(1, 1, 1);
    one.at(0, 0) = LaurentPoly::one(1);
    Torus t({3}, 1);
    Instantiated in = instantiate(one, t);
    CHECK(in.mat.rows() == 3);
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            CHECK(in.mat.get(i, j) == (i == j));
        }
    }
    // 1+x is a circulant with two ones per row
    PolyMatrix bond(1, 1, 1);
    bond.at(0, 0) = parse_poly("1+x", 1);
    Instantiated in2 = instantiate(bond, t);
    for (size_t j = 0; j < 3; j++) {
        CHECK(in2.mat.row(0).get(j) == (j == 0 || j == 2));
        size_t cnt = 0;
        for (size_t i = 0; i < 3; i++) {
            cnt += in2.mat.get(i, j);
        }
        CHECK(cnt == 2);
    }
    CHECK_FALSE(in2.wrapped);
    // support of extent >= L wraps and is flagged
    PolyMatrix wide(1, 1, 1);
    wide.at(0, 0) = parse_poly("1+x^3", 1);
    CHECK(instantiate(wide, t).wrapped);
}

TEST_CASE("instantiate is additive over polynomial addition") {
    std::mt19937_64 rng(99);
    Torus t({3, 4}, 1);
    for (int it = 0; it < 20; it++) {
        auto rnd = [&]() {
            std::vector<Mono> terms;
            for (int i = 0; i < (int)(rng() % 4); i++) {
                terms.push_back({(int)(rng() % 5) - 2, (int)(rng() % 5) - 2});
            }
            return LaurentPoly(2, terms);
        };
        LaurentPoly a = rnd(), b = rnd();
        PolyMatrix ma(1, 1, 2), mb(1, 1, 2), mab(1, 1, 2);
        ma.at(0, 0) = a;
        mb.at(0, 0) = b;
        mab.at(0, 0) = a.add(b);
        F2Matrix fa = instantiate(ma, t).mat;
        F2Matrix fb = instantiate(mb, t).mat;
        F2Matrix fab = instantiate(mab, t).mat;
        for (size_t i = 0; i < fa.rows(); i++) {
            BitVec sum = fa.row(i);
            sum ^= fb.row(i);
            CHECK(sum == fab.row(i));
        }
    }
}

TEST_CASE("instantiated E annihilates instantiated S") {
    for (const auto &name : builtin_code_names()) {
        CodeSpec c = builtin_code(name);
        for (int L : {2, 3}) {
            CAPTURE(name);
            CAPTURE(L);
            Torus t(std::vector<int>((size_t)c.d, L), c.l);
            std::vector<PauliBits> stabs = instantiate_all(c.S, t);
            for (size_t i = 0; i < stabs.size(); i++) {
                for (size_t j = i; j < stabs.size(); j++) {
                    REQUIRE_FALSE(stabs[i].anticommutes(stabs[j]));
                }
            }
        }
    }
}

TEST_CASE("2D toric vertex map kernel at L=3") {
    // product of all vertex terms is the identity: kernel dimension 1
    CodeSpec c = builtin_code("toric2d");
    Torus t({3, 3}, c.l);
    // restrict to the vertex column
    PolyMatrix vert(2 * c.l, 1, c.d);
    for (int r = 0; r < 2 * c.l; r++) {
        vert.at(r, 0) = c.S.at(r, 1);
    }
    Instantiated in = instantiate(vert, t);
    CHECK(in.mat.kernel_basis().size() == 1);
}

TEST_CASE("code parameters: logical counts") {
    auto logical = [](const char *name, std::vector<int> dims) {
        CodeSpec c = builtin_code(name);
        return code_parameters(c.S, Torus(dims, c.l)).logical_count;
    };
    CHECK(logical("toric2d", {2, 2}) == 2);
    CHECK(logical("toric2d", {3, 3}) == 2);
    CHECK(logical("toric2d", {4, 4}) == 2);
    CHECK(logical("toric3d", {2, 2, 2}) == 3);
    CHECK(logical("toric3d", {3, 3, 3}) == 3);
    CHECK(logical("xcube", {2, 2, 2}) == 6 * 2 - 3);
    CHECK(logical("xcube", {3, 3, 3}) == 6 * 3 - 3);
}
