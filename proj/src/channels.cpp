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

#include "stabsm/channels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stabsm {

double mu(double p) {
    if (p < 0.0 || p > 0.5) {
        throw std::invalid_argument("mu: probability must lie in [0, 1/2]");
    }
    if (p == 0.5) {
        return std::numeric_limits<double>::infinity();
    }
    return -std::log1p(-2.0 * p);
}

double p_of_beta(double beta) {
    return 0.5 * (1.0 - std::exp(-beta));
}

int scalar_commutator(const PolyVec &a, const PolyVec &b, const Mono &offset) {
    if (a.l != b.l || a.dim() != b.dim()) {
        throw std::invalid_argument("scalar_commutator: shape mismatch");
    }
    int l = a.l;
    size_t overlap = 0;
    for (int k = 0; k < l; k++) {
        // a_Z[k] with shifted b_X[k], a_X[k] with shifted b_Z[k]
        LaurentPoly bx = b.e[l + k].shifted(offset);
        LaurentPoly bz = b.e[k].shifted(offset);
        for (const Mono &m : a.e[k].terms()) {
            for (const Mono &n : bx.terms()) {
                if (m == n) {
                    overlap++;
                }
            }
        }
        for (const Mono &m : a.e[l + k].terms()) {
            for (const Mono &n : bz.terms()) {
                if (m == n) {
                    overlap++;
                }
            }
        }
    }
    return overlap % 2 ? -1 : +1;
}

namespace {

void check_p(double p) {
    if (p < 0.0 || p > 0.5) {
        throw std::invalid_argument("channel probability must lie in [0, 1/2]");
    }
}

PolyVec single_site(const CodeSpec &code, int row) {
    PolyVec v(code.l, code.d);
    v.e[row] = LaurentPoly::one(code.d);
    return v;
}

}  // namespace

std::vector<std::string> builtin_channel_names() {
    return {"bitflip", "phase", "both", "y", "xx", "psi"};
}

ChannelSpec builtin_channel(const std::string &name, const CodeSpec &code, double p) {
    check_p(p);
    ChannelSpec ch;
    ch.name = name;
    int l = code.l;
    if (name == "bitflip") {
        for (int k = 0; k < l; k++) {
            ch.generators.push_back({"X" + std::to_string(k + 1), single_site(code, l + k), p});
        }
    } else if (name == "phase") {
        for (int k = 0; k < l; k++) {
            ch.generators.push_back({"Z" + std::to_string(k + 1), single_site(code, k), p});
        }
    } else if (name == "both") {
        for (int k = 0; k < l; k++) {
            ch.generators.push_back({"X" + std::to_string(k + 1), single_site(code, l + k), p});
        }
        for (int k = 0; k < l; k++) {
            ch.generators.push_back({"Z" + std::to_string(k + 1), single_site(code, k), p});
        }
    } else if (name == "y") {
        for (int k = 0; k < l; k++) {
            PolyVec v(l, code.d);
            v.e[k] = LaurentPoly::one(code.d);
            v.e[l + k] = LaurentPoly::one(code.d);
            ch.generators.push_back({"Y" + std::to_string(k + 1), v, p});
        }
    } else if (name == "xx") {
        if (code.d != 2 || l != 2) {
            throw std::invalid_argument("channel xx is a 2D preset (d=2, l=2)");
        }
        PolyVec v(l, code.d);
        v.e[l + 0] = parse_poly("1+x", code.d);
        ch.generators.push_back({"XX", v, p});
    } else if (name == "psi") {
        if (code.d != 2 || l != 2) {
            throw std::invalid_argument("channel psi is a 2D preset (d=2, l=2)");
        }
        PolyVec v1(l, code.d);
        v1.e[0] = LaurentPoly::one(code.d);
        v1.e[l + 1] = parse_poly("x", code.d);
        ch.generators.push_back({"psi_x", v1, p});
        PolyVec v2(l, code.d);
        v2.e[1] = LaurentPoly::one(code.d);
        v2.e[l + 0] = parse_poly("y", code.d);
        ch.generators.push_back({"psi_y", v2, p});
    } else {
        throw std::invalid_argument("unknown builtin channel: " + name);
    }
    return ch;
}

}  // namespace stabsm
