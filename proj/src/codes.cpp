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

#include "stabsm/codes.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabsm {

namespace {

LaurentPoly pp(const std::string &s, int d) {
    return parse_poly(s, d);
}

CodeSpec make_spec(const std::string &name, int d, int l,
                   const std::vector<std::vector<std::string>> &cols,
                   const std::vector<std::string> &type_names) {
    CodeSpec c;
    c.name = name;
    c.d = d;
    c.l = l;
    c.S = PolyMatrix(2 * l, (int)cols.size(), d);
    for (size_t j = 0; j < cols.size(); j++) {
        for (int r = 0; r < 2 * l; r++) {
            c.S.at(r, (int)j) = pp(cols[j][r], d);
        }
    }
    c.type_names = type_names;
    c.type_labels.resize(cols.size());
    c.css = true;
    for (size_t j = 0; j < cols.size(); j++) {
        bool has_z = false, has_x = false;
        for (int r = 0; r < l; r++) {
            has_z |= !c.S.at(r, (int)j).is_zero();
        }
        for (int r = l; r < 2 * l; r++) {
            has_x |= !c.S.at(r, (int)j).is_zero();
        }
        c.type_labels[j] = has_z && has_x ? StabType::Mixed : (has_z ? StabType::Z : StabType::X);
        if (c.type_labels[j] == StabType::Mixed) {
            c.css = false;
        }
    }
    return c;
}

// Pauli built from a list of (row-in-2l, cell) entries.
PauliBits pauli_from_sites(const Torus &t, const std::vector<std::pair<int, std::vector<int>>> &sites) {
    PauliBits p(t.n_qubits());
    for (const auto &[r, cell] : sites) {
        size_t q = t.qubit_index(cell, r % t.l);
        if (r < t.l) {
            p.z.flip(q);
        } else {
            p.x.flip(q);
        }
    }
    return p;
}

// Straight line of sites: sublabel row, run along `axis`, other coords fixed.
std::vector<std::pair<int, std::vector<int>>> line_sites(const Torus &t, int row, int axis,
                                                         std::vector<int> fixed) {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int s = 0; s < t.dims[axis]; s++) {
        std::vector<int> c = fixed;
        c[axis] = s;
        out.push_back({row, c});
    }
    return out;
}

BitVec sympl_vec(const PauliBits &p) {
    size_t N = p.z.size();
    BitVec v(2 * N);
    for (size_t i = 0; i < N; i++) {
        if (p.z.get(i)) {
            v.set(i, true);
        }
        if (p.x.get(i)) {
            v.set(N + i, true);
        }
    }
    return v;
}

std::vector<LogicalPair> toric2d_logicals(const Torus &t) {
    std::vector<LogicalPair> out;
    int l = t.l;
    out.push_back({"g1", pauli_from_sites(t, line_sites(t, 0, 0, {0, 0})),
                   pauli_from_sites(t, line_sites(t, l + 0, 1, {0, 0}))});
    out.push_back({"g2", pauli_from_sites(t, line_sites(t, 1, 1, {0, 0})),
                   pauli_from_sites(t, line_sites(t, l + 1, 0, {0, 0}))});
    return out;
}

std::vector<LogicalPair> toric3d_logicals(const Torus &t) {
    std::vector<LogicalPair> out;
    int l = t.l;
    for (int axis = 0; axis < 3; axis++) {
        // Z string along the axis on axis-type edges; X membrane on the
        // axis-type edges of the plane with that coordinate fixed at 0.
        PauliBits zbar = pauli_from_sites(t, line_sites(t, axis, axis, {0, 0, 0}));
        PauliBits xbar(t.n_qubits());
        for (size_t cc = 0; cc < t.n_cells(); cc++) {
            std::vector<int> c = t.cell_coords(cc);
            if (c[axis] == 0) {
                xbar.x.flip(t.qubit_index(c, axis));
            }
        }
        (void)l;
        out.push_back({std::string("g") + char('1' + axis), zbar, xbar});
    }
    return out;
}

// Raw straight-line pair candidates: two per lattice plane (6L total), then
// reduced to an independent set and brought to canonical symplectic pairing.
std::vector<LogicalPair> xcube_logicals(const Torus &t) {
    struct Raw {
        std::string label;
        PauliBits zbar, xbar;
    };
    std::vector<Raw> raw;
    int l = t.l;
    for (int a = 0; a < 3; a++) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        for (int h = 0; h < t.dims[a]; h++) {
            std::vector<int> f1(3, 0), f2(3, 0);
            f1[a] = h;
            f2[a] = h;
            // pair 1: lineon X-string of b-edges along b; fracton-dipole
            // Z-string of b-edges along c.
            raw.push_back({"n" + std::to_string(a) + "h" + std::to_string(h) + "p1",
                           pauli_from_sites(t, line_sites(t, b, c, f1)),
                           pauli_from_sites(t, line_sites(t, l + b, b, f2))});
            // pair 2: same with the two in-plane directions exchanged.
            raw.push_back({"n" + std::to_string(a) + "h" + std::to_string(h) + "p2",
                           pauli_from_sites(t, line_sites(t, c, b, f1)),
                           pauli_from_sites(t, line_sites(t, l + c, c, f2))});
        }
    }

    // Deterministic selection: accept a pair iff both halves are independent
    // modulo (stabilizer group + previously accepted halves).
    CodeSpec code = builtin_code("xcube");
    std::vector<PauliBits> stabs = instantiate_all(code.S, t);
    std::vector<BitVec> zspace, xspace;
    for (const PauliBits &s : stabs) {
        zspace.push_back(sympl_vec(s));
    }
    xspace = zspace;
    size_t zrank = rank_of(zspace), xrank = zrank;
    std::vector<LogicalPair> sel;
    for (const Raw &r : raw) {
        std::vector<BitVec> ztry = zspace;
        ztry.push_back(sympl_vec(r.zbar));
        std::vector<BitVec> xtry = xspace;
        xtry.push_back(sympl_vec(r.xbar));
        if (rank_of(ztry) == zrank + 1 && rank_of(xtry) == xrank + 1) {
            zspace = std::move(ztry);
            xspace = std::move(xtry);
            zrank++;
            xrank++;
            sel.push_back({r.label, r.zbar, r.xbar});
        }
    }

    // Symplectic Gram-Schmidt over F2: make the pairing matrix the identity.
    size_t n = sel.size();
    std::vector<std::vector<int>> M(n, std::vector<int>(n));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            M[i][j] = sel[i].xbar.anticommutes(sel[j].zbar);
        }
    }
    for (size_t i = 0; i < n; i++) {
        size_t piv = n;
        for (size_t r = i; r < n; r++) {
            if (M[r][i]) {
                piv = r;
                break;
            }
        }
        if (piv == n) {
            throw std::logic_error("xcube logicals: symplectic pairing is degenerate");
        }
        if (piv != i) {
            std::swap(M[piv], M[i]);
            std::swap(sel[piv].xbar, sel[i].xbar);
        }
        for (size_t r = 0; r < n; r++) {
            if (r != i && M[r][i]) {
                for (size_t k = 0; k < n; k++) {
                    M[r][k] ^= M[i][k];
                }
                sel[r].xbar.mul_inplace(sel[i].xbar);
            }
        }
        for (size_t k = 0; k < n; k++) {
            if (k != i && M[i][k]) {
                for (size_t r = 0; r < n; r++) {
                    M[r][k] ^= M[r][i];
                }
                sel[k].zbar.mul_inplace(sel[i].zbar);
            }
        }
    }
    return sel;
}

}  // namespace

std::vector<LogicalPair> CodeSpec::logicals(const Torus &t) const {
    if (name == "toric2d") {
        return toric2d_logicals(t);
    }
    if (name == "toric3d") {
        return toric3d_logicals(t);
    }
    if (name == "xcube") {
        return xcube_logicals(t);
    }
    return {};
}

std::vector<std::string> builtin_code_names() {
    return {"toric2d", "toric3d", "xcube", "cblt"};
}

CodeSpec builtin_code(const std::string &name) {
    if (name == "toric2d") {
        CodeSpec c = make_spec("toric2d", 2, 2,
                               {{"1+y", "1+x", "0", "0"},
                                {"0", "0", "1+x^-1", "1+y^-1"}},
                               {"plaq", "vertex"});
        c.has_logicals = true;
        return c;
    }
    if (name == "toric3d") {
        CodeSpec c = make_spec("toric3d", 3, 3,
                               {{"1+y", "1+x", "0", "0", "0", "0"},
                                {"1+z", "0", "1+x", "0", "0", "0"},
                                {"0", "1+z", "1+y", "0", "0", "0"},
                                {"0", "0", "0", "1+x^-1", "1+y^-1", "1+z^-1"}},
                               {"plaq_xy", "plaq_xz", "plaq_yz", "vertex"});
        c.has_logicals = true;
        return c;
    }
    if (name == "xcube") {
        CodeSpec c = make_spec("xcube", 3, 3,
                               {{"1+x^-1", "1+y^-1", "0", "0", "0", "0"},
                                {"1+x^-1", "0", "1+z^-1", "0", "0", "0"},
                                {"0", "1+y^-1", "1+z^-1", "0", "0", "0"},
                                {"0", "0", "0", "1+y+z+y*z", "1+x+z+x*z", "1+x+y+x*y"}},
                               {"vertex_xy", "vertex_xz", "vertex_yz", "cube"});
        c.has_logicals = true;
        return c;
    }
    if (name == "cblt") {
        // Non-CSS; ships without logical patterns.
        return make_spec("cblt", 3, 1,
                         {{"1+x+z+x*z^-1", "1+x+y+x*y^-1"}},
                         {"stab"});
    }
    throw std::invalid_argument("unknown builtin code: " + name);
}

ChainComplex chain_complex(const CodeSpec &code, const Torus &t) {
    if (!code.css) {
        throw std::invalid_argument("chain_complex: non-CSS code " + code.name);
    }
    size_t N = t.n_qubits();
    std::vector<PauliBits> stabs = instantiate_all(code.S, t);
    std::vector<BitVec> zrows, xrows;
    int m = code.n_types();
    for (size_t i = 0; i < stabs.size(); i++) {
        StabType ty = code.type_labels[i % m];
        if (ty == StabType::Z) {
            zrows.push_back(stabs[i].z);
        } else {
            xrows.push_back(stabs[i].x);
        }
    }
    ChainComplex cc;
    cc.HZ = F2Matrix(zrows.size(), N);
    for (size_t i = 0; i < zrows.size(); i++) {
        cc.HZ.row(i) = zrows[i];
    }
    cc.HX = F2Matrix(xrows.size(), N);
    for (size_t i = 0; i < xrows.size(); i++) {
        cc.HX.row(i) = xrows[i];
    }
    if (!cc.HX.mul(cc.HZ.transposed()).is_zero()) {
        throw std::logic_error("chain_complex: H_X H_Z^T != 0");
    }
    cc.k = N - cc.HX.rank() - cc.HZ.rank();
    return cc;
}

LogicalReport validate_logicals(const CodeSpec &code, const Torus &t) {
    LogicalReport rep;
    std::vector<LogicalPair> pairs = code.logicals(t);
    rep.raw_count = code.name == "xcube" ? 6 * (size_t)t.dims[0] : pairs.size();
    rep.pair_count = pairs.size();
    if (pairs.empty()) {
        rep.failures.push_back("no logical patterns available");
        return rep;
    }
    std::vector<PauliBits> stabs = instantiate_all(code.S, t);
    auto check_commutes = [&](const PauliBits &p, const std::string &what) {
        for (const PauliBits &s : stabs) {
            if (p.anticommutes(s)) {
                rep.failures.push_back(what + " anticommutes with a stabilizer");
                return;
            }
        }
    };
    for (const LogicalPair &pr : pairs) {
        check_commutes(pr.zbar, pr.label + ".zbar");
        check_commutes(pr.xbar, pr.label + ".xbar");
    }
    for (size_t i = 0; i < pairs.size(); i++) {
        for (size_t j = 0; j < pairs.size(); j++) {
            bool want = i == j;
            if (pairs[i].xbar.anticommutes(pairs[j].zbar) != want) {
                rep.failures.push_back(pairs[i].label + ".xbar vs " + pairs[j].label +
                                       ".zbar: wrong pairing");
            }
        }
    }
    // Independence modulo the stabilizer group, with cardinality 2*pair_count.
    std::vector<BitVec> space;
    for (const PauliBits &s : stabs) {
        space.push_back(sympl_vec(s));
    }
    size_t base = rank_of(space);
    for (const LogicalPair &pr : pairs) {
        space.push_back(sympl_vec(pr.zbar));
        space.push_back(sympl_vec(pr.xbar));
    }
    if (rank_of(space) != base + 2 * pairs.size()) {
        rep.failures.push_back("logical set not independent modulo stabilizer group");
    }
    CodeParameters cp = code_parameters(code.S, t);
    if (pairs.size() != cp.logical_count) {
        rep.failures.push_back("pair count " + std::to_string(pairs.size()) +
                               " != logical count " + std::to_string(cp.logical_count));
    }
    rep.ok = rep.failures.empty();
    return rep;
}

}  // namespace stabsm
