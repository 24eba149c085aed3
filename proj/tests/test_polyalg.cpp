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
#include "stabsm/poly.hpp"

using namespace stabsm;

namespace {

LaurentPoly rand_poly(std::mt19937_64 &rng, int dim) {
    std::vector<Mono> terms;
    int nt = (int)(rng() % 5);
    for (int i = 0; i < nt; i++) {
        Mono m(dim);
        for (int k = 0; k < dim; k++) {
            m[k] = (int)(rng() % 7) - 3;
        }
        terms.push_back(m);
    }
    return LaurentPoly(dim, terms);
}

}  // namespace

TEST_CASE("poly add: F2 semantics") {
    LaurentPoly a = parse_poly("1+x", 2);
    CHECK(a.add(a).is_zero());
    CHECK(a.add(parse_poly("x+y", 2)) == parse_poly("1+y", 2));
    CHECK(LaurentPoly::zero(2).add(parse_poly("1+x^-1", 2)) == parse_poly("1+x^-1", 2));
    CHECK_THROWS(a.add(parse_poly("1", 3)));
}

TEST_CASE("poly mul") {
    CHECK(parse_poly("1+x", 1).mul(parse_poly("1+x", 1)) == parse_poly("1+x^2", 1));
    CHECK(parse_poly("1+y", 3).mul(parse_poly("1+z", 3)) == parse_poly("1+y+z+y*z", 3));
    CHECK(parse_poly("x", 1).mul(parse_poly("x^-1", 1)) == LaurentPoly::one(1));
}

TEST_CASE("antipode") {
    CHECK(parse_poly("1+x", 2).antipode() == parse_poly("1+x^-1", 2));
    CHECK(LaurentPoly::one(2).antipode() == LaurentPoly::one(2));
    CHECK(parse_poly("x*y^-1", 2).antipode() == parse_poly("x^-1*y", 2));
}

TEST_CASE("poly properties (randomized)") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 200; it++) {
        LaurentPoly a = rand_poly(rng, 2), b = rand_poly(rng, 2), c = rand_poly(rng, 2);
        CHECK(a.antipode().antipode() == a);
        CHECK(a.add(b) == b.add(a));
        CHECK(a.add(b).add(c) == a.add(b.add(c)));
        CHECK(a.mul(b.add(c)) == a.mul(b).add(a.mul(c)));
    }
}

TEST_CASE("parser syntax") {
    CHECK(parse_poly(" 1 + x^-1 * y^2 ", 2) ==
          LaurentPoly(2, {Mono{0, 0}, Mono{-1, 2}}));
    CHECK(parse_poly("0", 3).is_zero());
    CHECK_THROWS(parse_poly("w+1", 2));
    CHECK_THROWS(parse_poly("z", 2));  // variable out of range for d=2
}

TEST_CASE("excitation map of the 3D toric code") {
    CodeSpec c = builtin_code("toric3d");
    PolyMatrix E = c.excitation();
    REQUIRE(E.rows() == 4);
    REQUIRE(E.cols() == 6);
    // Z error on qubit 1 excites the two vertices joined by the x edge.
    PolyVec wz(3, 3);
    wz.e[0] = LaurentPoly::one(3);
    auto syn = apply_excitation(E, wz);
    CHECK(syn[0].is_zero());
    CHECK(syn[1].is_zero());
    CHECK(syn[2].is_zero());
    CHECK(syn[3] == parse_poly("1+x", 3));
    // The vertex row of E carries (1+x, 1+y, 1+z) against the Z-error block.
    CHECK(E.at(3, 0) == parse_poly("1+x", 3));
    CHECK(E.at(3, 1) == parse_poly("1+y", 3));
    CHECK(E.at(3, 2) == parse_poly("1+z", 3));
    // X error on qubit 1 excites the two adjacent plaquette types, the
    // four-body interaction of Z2 gauge theory.
    PolyVec wx(3, 3);
    wx.e[3] = LaurentPoly::one(3);
    auto synx = apply_excitation(E, wx);
    CHECK(synx[0] == parse_poly("1+y^-1", 3));
    CHECK(synx[1] == parse_poly("1+z^-1", 3));
    CHECK(synx[2].is_zero());
    CHECK(synx[3].is_zero());
}

TEST_CASE("excitation map of the X-cube model") {
    CodeSpec c = builtin_code("xcube");
    PolyMatrix E = c.excitation();
    // cube row against the Z-error block: the three dual-plaquette patterns
    CHECK(E.at(3, 0) == parse_poly("1+y^-1+z^-1+y^-1*z^-1", 3));
    CHECK(E.at(3, 1) == parse_poly("1+x^-1+z^-1+x^-1*z^-1", 3));
    CHECK(E.at(3, 2) == parse_poly("1+x^-1+y^-1+x^-1*y^-1", 3));
    // X error along x couples the two vertex species containing x edges
    PolyVec wx(3, 3);
    wx.e[3] = LaurentPoly::one(3);
    auto syn = apply_excitation(E, wx);
    CHECK(syn[0] == parse_poly("1+x", 3));
    CHECK(syn[1] == parse_poly("1+x", 3));
    CHECK(syn[2].is_zero());
    CHECK(syn[3].is_zero());
}

TEST_CASE("excitation map of the CBLT code") {
    CodeSpec c = builtin_code("cblt");
    PolyMatrix E = c.excitation();
    REQUIRE(E.rows() == 1);
    REQUIRE(E.cols() == 2);
    CHECK(E.at(0, 0) == parse_poly("1+x^-1+y^-1+x^-1*y", 3));
    CHECK(E.at(0, 1) == parse_poly("1+x^-1+z^-1+x^-1*z", 3));
}

TEST_CASE("commute check") {
    for (const auto &name : builtin_code_names()) {
        CAPTURE(name);
        CHECK(commute_check(builtin_code(name).S));
    }
    // Z1 next to X1 anticommute
    PolyMatrix bad(2, 2, 1);
    bad.at(0, 0) = LaurentPoly::one(1);
    bad.at(1, 1) = LaurentPoly::one(1);
    CHECK_FALSE(commute_check(bad));
}

TEST_CASE("excitation annihilates stabilizers: E*S = 0") {
    for (const auto &name : builtin_code_names()) {
        CAPTURE(name);
        CodeSpec c = builtin_code(name);
        CHECK(c.excitation().mul(c.S).is_zero());
    }
}
