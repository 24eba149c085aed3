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

#include "stabsm/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stabsm {

namespace {

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

std::vector<double> pow_table(double w, size_t kmax) {
    std::vector<double> t(kmax + 1);
    t[0] = 1.0;
    for (size_t k = 1; k <= kmax; k++) {
        t[k] = t[k - 1] * w;
    }
    return t;
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int a) {
        while (up[a] != a) {
            a = up[a] = up[up[a]];
        }
        return a;
    }
    void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

ExactContext::ExactContext(const CodeSpec &code, const ChannelSpec &channel, const Torus &t)
    : code_(code), channel_(channel), t_(t) {
    params_ = code_parameters(code.S, t);
    size_t ncells = t.n_cells();
    size_t nslots = channel.generators.size() * ncells;
    if (nslots > 64) {
        throw std::invalid_argument("exact oracle: more than 64 (generator, cell) slots");
    }
    gen_slot_mask_.assign(channel.generators.size(), 0);
    for (size_t g = 0; g < channel.generators.size(); g++) {
        gen_w_.push_back(1.0 - 2.0 * channel.generators[g].p);
        for (size_t cc = 0; cc < ncells; cc++) {
            slot_paulis_.push_back(
                instantiate_pauli(channel.generators[g].pattern, t, t.cell_coords(cc)));
            slot_gen_.push_back((int)g);
            gen_slot_mask_[g] |= uint64_t{1} << (slot_paulis_.size() - 1);
        }
    }

    // Which stabilizer types does each generator excite? Determined directly
    // from Pauli anticommutation (the excitation map never enters here).
    std::vector<PauliBits> all = instantiate_all(code.S, t);
    int m = code.n_types();
    UnionFind uf(m);
    std::vector<std::vector<int>> touched_by_gen(channel.generators.size());
    for (size_t g = 0; g < channel.generators.size(); g++) {
        std::vector<bool> touched(m, false);
        for (size_t s = 0; s < slot_paulis_.size(); s++) {
            if (slot_gen_[s] != (int)g) {
                continue;
            }
            for (size_t i = 0; i < all.size(); i++) {
                if (all[i].anticommutes(slot_paulis_[s])) {
                    touched[i % m] = true;
                }
            }
        }
        for (int ty = 0; ty < m; ty++) {
            if (touched[ty]) {
                touched_by_gen[g].push_back(ty);
            }
        }
        if (touched_by_gen[g].empty()) {
            throw TransparentGeneratorError("generator " + channel.generators[g].name +
                                            " is invisible to every stabilizer");
        }
        for (size_t k = 1; k < touched_by_gen[g].size(); k++) {
            uf.unite(touched_by_gen[g][0], touched_by_gen[g][k]);
        }
    }
    std::vector<int> weighted_root;
    for (size_t g = 0; g < channel.generators.size(); g++) {
        int r = uf.find(touched_by_gen[g][0]);
        if (std::find(weighted_root.begin(), weighted_root.end(), r) == weighted_root.end()) {
            weighted_root.push_back(r);
        }
    }

    auto build_family = [&](const std::vector<int> &types) {
        Family f;
        f.types = types;
        std::vector<BitVec> vecs;
        std::vector<PauliBits> insts;
        for (size_t i = 0; i < all.size(); i++) {
            int ty = (int)(i % m);
            if (std::find(types.begin(), types.end(), ty) != types.end()) {
                insts.push_back(all[i]);
                vecs.push_back(sympl_vec(all[i]));
            }
        }
        f.Ns = insts.size();
        for (size_t idx : independent_subset(vecs)) {
            f.gens.push_back(insts[idx]);
            uint64_t mask = 0;
            for (size_t s = 0; s < slot_paulis_.size(); s++) {
                if (insts[idx].anticommutes(slot_paulis_[s])) {
                    mask |= uint64_t{1} << s;
                }
            }
            f.masks.push_back(mask);
        }
        f.Nc = f.Ns - f.gens.size();
        bool z = false, x = false;
        for (int ty : types) {
            z |= code.type_labels[ty] != StabType::X;
            x |= code.type_labels[ty] != StabType::Z;
        }
        f.content = (z && x) ? StabType::Mixed : (z ? StabType::Z : StabType::X);
        return f;
    };

    std::vector<int> free_types;
    for (int ty = 0; ty < m; ty++) {
        if (std::find(weighted_root.begin(), weighted_root.end(), uf.find(ty)) ==
            weighted_root.end()) {
            free_types.push_back(ty);
        }
    }
    size_t nc_sum = 0;
    for (int r : weighted_root) {
        std::vector<int> types;
        for (int ty = 0; ty < m; ty++) {
            if (uf.find(ty) == r) {
                types.push_back(ty);
            }
        }
        Family f = build_family(types);
        f.weighted = true;
        nc_sum += f.Nc;
        fams_.push_back(std::move(f));
    }
    if (!free_types.empty()) {
        Family f = build_family(free_types);
        f.weighted = false;
        free_r_ = f.gens.size();
        nc_sum += f.Nc;
        fams_.push_back(std::move(f));
    }
    if (nc_sum != params_.N_c) {
        // Constraints couple types across families; fall back to one family.
        fams_.clear();
        std::vector<int> types(m);
        std::iota(types.begin(), types.end(), 0);
        Family f = build_family(types);
        f.weighted = true;
        free_r_ = 0;
        fams_.push_back(std::move(f));
    }
}

// Sum over (n-1)-tuples of family group elements of prod_g w_g^{exponent},
// where the exponent counts anticommutations of each flavor and of the flavor
// product against the slot Paulis, with slot signs flipped on flip_mask.
double ExactContext::family_group_sum(const Family &f, int n, uint64_t flip_mask) const {
    int flavors = n - 1;
    size_t r = f.gens.size();
    if (r * (size_t)flavors > 26) {
        throw std::invalid_argument("exact oracle: group enumeration too large");
    }
    size_t kmax = slot_paulis_.size() * ((size_t)flavors + 1) + 2;
    std::vector<std::vector<double>> pows;
    for (double w : gen_w_) {
        pows.push_back(pow_table(w, kmax));
    }
    uint64_t prod_flip = (flavors % 2) ? flip_mask : 0;
    std::vector<uint64_t> ms(flavors, 0);
    std::vector<uint64_t> idx(flavors, 0);
    uint64_t wrap = r >= 63 ? 0 : (uint64_t{1} << r);
    double total = 0.0;
    size_t count = size_t{1} << (r * flavors);
    for (size_t step = 0;; step++) {
        uint64_t prod = prod_flip;
        for (int fl = 0; fl < flavors; fl++) {
            prod ^= ms[fl];
        }
        double term = 1.0;
        for (size_t g = 0; g < gen_w_.size(); g++) {
            size_t k = std::popcount(prod & gen_slot_mask_[g]);
            for (int fl = 0; fl < flavors; fl++) {
                k += std::popcount((ms[fl] ^ flip_mask) & gen_slot_mask_[g]);
            }
            term *= pows[g][k];
        }
        total += term;
        if (step + 1 >= count) {
            break;
        }
        for (int fl = 0; fl < flavors; fl++) {
            uint64_t next = idx[fl] + 1;
            uint64_t changed = idx[fl] ^ next;
            for (size_t b = 0; b < r; b++) {
                if ((changed >> b) & 1) {
                    ms[fl] ^= f.masks[b];
                }
            }
            idx[fl] = wrap ? (next & (wrap - 1)) : next;
            if (idx[fl] != 0) {
                break;
            }
        }
    }
    return total;
}

double ExactContext::moment_stabilizer_sum(int n) const {
    if (n < 2) {
        throw std::invalid_argument("moment: n >= 2 required");
    }
    double log2_fac = -(double)(n - 1) * (double)params_.N + (double)(n - 1) * (double)free_r_;
    double prod = 1.0;
    for (const Family &f : fams_) {
        if (f.weighted) {
            prod *= family_group_sum(f, n, 0);
        }
    }
    return std::exp2(log2_fac) * prod;
}

double ExactContext::family_model_sum(const Family &f, int n) const {
    // Spin (label-space) enumeration of the family's block of the synthesized
    // replica model; multiplies out to family_group_sum * 2^{(n-1) Nc}.
    SMModel model = replica_model(code_, channel_, t_, n);
    std::vector<std::string> fam_names;
    for (int ty : f.types) {
        fam_names.push_back(code_.type_names[ty]);
    }
    std::vector<uint32_t> label_map(model.n_spins(), UINT32_MAX);
    size_t nlabels = 0;
    size_t ncells = t_.n_cells();
    std::vector<int> fam_species;
    for (size_t s = 0; s < model.species.size(); s++) {
        if (std::find(fam_names.begin(), fam_names.end(), model.species[s]) != fam_names.end()) {
            fam_species.push_back((int)s);
        }
    }
    for (size_t cc = 0; cc < ncells; cc++) {
        for (int s : fam_species) {
            label_map[model.spin_index(cc, s)] = (uint32_t)nlabels++;
        }
    }
    struct LBond {
        std::vector<uint32_t> spins;
        int gen;
    };
    std::vector<LBond> bonds;
    for (const SMModel::Bond &b : model.bonds) {
        if (label_map[b.spins[0]] == UINT32_MAX) {
            continue;
        }
        LBond lb;
        for (uint32_t s : b.spins) {
            if (label_map[s] == UINT32_MAX) {
                throw std::logic_error("family_model_sum: bond crosses families");
            }
            lb.spins.push_back(label_map[s]);
        }
        lb.gen = b.gen;
        bonds.push_back(std::move(lb));
    }
    int flavors = n - 1;
    size_t bits = nlabels * (size_t)flavors;
    if (bits > 26) {
        throw std::invalid_argument("exact oracle: spin enumeration too large");
    }
    std::vector<std::vector<uint32_t>> adj(nlabels);
    for (uint32_t bi = 0; bi < bonds.size(); bi++) {
        for (uint32_t s : bonds[bi].spins) {
            adj[s].push_back(bi);
        }
    }
    size_t kmax = bonds.size() * ((size_t)flavors + 1) + 2;
    std::vector<std::vector<double>> pows;
    for (double w : gen_w_) {
        pows.push_back(pow_table(w, kmax));
    }
    std::vector<uint8_t> parity(bonds.size() * flavors, 0);
    std::vector<size_t> kg(gen_w_.size(), 0);
    auto bond_exponent = [&](uint32_t bi) {
        int sum = 0, prodneg = 0;
        for (int fl = 0; fl < flavors; fl++) {
            int bit = parity[bi * flavors + fl];
            sum += bit ? -1 : 1;
            prodneg ^= bit;
        }
        return (size_t)((n - sum - (prodneg ? -1 : 1)) / 2);
    };
    for (uint32_t bi = 0; bi < bonds.size(); bi++) {
        kg[bonds[bi].gen] += bond_exponent(bi);
    }
    double total = 0.0;
    size_t count = size_t{1} << bits;
    for (size_t step = 0;; step++) {
        double term = 1.0;
        for (size_t g = 0; g < gen_w_.size(); g++) {
            term *= pows[g][kg[g]];
        }
        total += term;
        if (step + 1 >= count) {
            break;
        }
        size_t flipbit = std::countr_zero(step + 1);
        size_t label = flipbit % nlabels;
        int fl = (int)(flipbit / nlabels);
        for (uint32_t bi : adj[label]) {
            kg[bonds[bi].gen] -= bond_exponent(bi);
            parity[bi * flavors + fl] ^= 1;
            kg[bonds[bi].gen] += bond_exponent(bi);
        }
    }
    return total;
}

double ExactContext::moment_via_model(int n) const {
    double log2_fac = -(double)(n - 1) * (double)params_.N + (double)(n - 1) * (double)free_r_;
    double prod = 1.0;
    for (const Family &f : fams_) {
        if (!f.weighted) {
            continue;
        }
        prod *= family_model_sum(f, n);
        log2_fac -= (double)(n - 1) * (double)f.Nc;
    }
    return std::exp2(log2_fac) * prod;
}

double ExactContext::renyi_entropy(int n) const {
    return std::log(moment_stabilizer_sum(n)) / (1.0 - n);
}

ExactContext::RelEntropy ExactContext::relative_entropy_2(const PolyVec &omega,
                                                          const std::vector<int> &cell) const {
    PauliBits extra = instantiate_pauli(omega, t_, cell);
    double corr = 1.0;
    for (const Family &f : fams_) {
        size_t r = f.gens.size();
        std::vector<uint8_t> tbit(r, 0);
        bool nontrivial = false;
        for (size_t i = 0; i < r; i++) {
            tbit[i] = f.gens[i].anticommutes(extra);
            nontrivial |= tbit[i];
        }
        if (!nontrivial) {
            continue;  // this family's factor of the correlator is exactly 1
        }
        if (!f.weighted) {
            // free family: the +-1 average over the uniform subgroup vanishes
            corr = 0.0;
            break;
        }
        if (r > 26) {
            throw std::invalid_argument("relative_entropy_2: enumeration too large");
        }
        size_t kmax = 2 * slot_paulis_.size() + 2;
        std::vector<std::vector<double>> pows;
        for (double w : gen_w_) {
            pows.push_back(pow_table(w, kmax));
        }
        uint64_t mask = 0;
        int sign = 0;
        double num = 0.0, den = 0.0;
        size_t count = size_t{1} << r;
        for (size_t step = 0;; step++) {
            double term = 1.0;
            for (size_t g = 0; g < gen_w_.size(); g++) {
                term *= pows[g][2 * (size_t)std::popcount(mask & gen_slot_mask_[g])];
            }
            den += term;
            num += sign ? -term : term;
            if (step + 1 >= count) {
                break;
            }
            size_t b = std::countr_zero(step + 1);
            mask ^= f.masks[b];
            sign ^= tbit[b];
        }
        corr *= num / den;
    }
    RelEntropy out;
    out.correlator = corr;
    out.D = corr > 0 ? -std::log(corr) : std::numeric_limits<double>::infinity();
    return out;
}

uint64_t ExactContext::slot_flip_mask(const PauliBits &inserted) const {
    uint64_t f = 0;
    for (size_t s = 0; s < slot_paulis_.size(); s++) {
        if (inserted.anticommutes(slot_paulis_[s])) {
            f |= uint64_t{1} << s;
        }
    }
    return f;
}

double ExactContext::coherent_info_2() const {
    std::vector<LogicalPair> pairs = code_.logicals(t_);
    if (pairs.empty()) {
        throw std::invalid_argument("coherent_info_2: code has no logical patterns");
    }
    size_t K = pairs.size();
    if (K != params_.logical_count) {
        throw std::logic_error("coherent_info_2: logical pair count mismatch");
    }
    if (K > 6) {
        throw std::invalid_argument("coherent_info_2: too many defect sectors");
    }
    // Joint sum over both selector vectors. A family of Z (X) stabilizer
    // content picks up sign flips from the inserted z-type (x-type) logicals;
    // a mixed family from their product.
    size_t sectors = size_t{1} << (2 * K);
    // cache family sums per flip mask
    std::vector<double> z0;
    for (const Family &f : fams_) {
        z0.push_back(f.weighted ? family_group_sum(f, 2, 0) : 1.0);
    }
    double sum = 0.0;
    for (size_t d = 0; d < sectors; d++) {
        PauliBits ins_z(t_.n_qubits()), ins_x(t_.n_qubits());
        for (size_t g = 0; g < K; g++) {
            if ((d >> g) & 1) {
                ins_z.mul_inplace(pairs[g].zbar);
            }
            if ((d >> (K + g)) & 1) {
                ins_x.mul_inplace(pairs[g].xbar);
            }
        }
        double ratio = 1.0;
        for (size_t fi = 0; fi < fams_.size(); fi++) {
            const Family &f = fams_[fi];
            if (!f.weighted) {
                continue;
            }
            PauliBits ins(t_.n_qubits());
            if (f.content == StabType::Z || f.content == StabType::Mixed) {
                ins.mul_inplace(ins_z);
            }
            if (f.content == StabType::X || f.content == StabType::Mixed) {
                ins.mul_inplace(ins_x);
            }
            uint64_t flip = slot_flip_mask(ins);
            ratio *= flip ? family_group_sum(f, 2, flip) / z0[fi] : 1.0;
        }
        sum += ratio;
    }
    return std::log(sum) - (double)K * std::log(4.0) + (double)K * std::log(2.0);
}

double ExactContext::pt_moment_sign_rule(const std::vector<size_t> &region, int K) const {
    if (!code_.css) {
        throw std::invalid_argument("pt_moment_sign_rule: CSS codes only");
    }
    if (K < 2) {
        throw std::invalid_argument("pt_moment_sign_rule: K >= 2");
    }
    size_t N = t_.n_qubits();
    std::vector<PauliBits> all = instantiate_all(code_.S, t_);
    int m = code_.n_types();
    std::vector<PauliBits> xi, zi;
    for (size_t i = 0; i < all.size(); i++) {
        (code_.type_labels[i % m] == StabType::X ? xi : zi).push_back(all[i]);
    }
    auto group_of = [&](const std::vector<PauliBits> &insts) {
        std::vector<BitVec> vecs;
        for (const PauliBits &p : insts) {
            vecs.push_back(sympl_vec(p));
        }
        std::vector<PauliBits> gens;
        for (size_t idx : independent_subset(vecs)) {
            gens.push_back(insts[idx]);
        }
        return gens;
    };
    std::vector<PauliBits> xg = group_of(xi), zg = group_of(zi);
    size_t rx = xg.size(), rz = zg.size();
    if ((rx + rz) * (size_t)(K - 1) > 24) {
        throw std::invalid_argument("pt_moment_sign_rule: enumeration too large");
    }
    size_t nex = size_t{1} << rx, nez = size_t{1} << rz;
    std::vector<uint64_t> mx(nex, 0), mz(nez, 0);
    std::vector<BitVec> suppx(nex, BitVec(N)), suppz(nez, BitVec(N));
    auto fill_tables = [&](const std::vector<PauliBits> &gens, std::vector<uint64_t> &masks,
                           std::vector<BitVec> &supps, bool x_part) {
        PauliBits cur(N);
        size_t ne = size_t{1} << gens.size();
        for (size_t e = 0; e < ne; e++) {
            if (e) {
                cur.mul_inplace(gens[std::countr_zero(e)]);
            }
            size_t gidx = e ^ (e >> 1);
            uint64_t mask = 0;
            for (size_t s = 0; s < slot_paulis_.size(); s++) {
                if (cur.anticommutes(slot_paulis_[s])) {
                    mask |= uint64_t{1} << s;
                }
            }
            masks[gidx] = mask;
            BitVec restr(N);
            for (size_t q : region) {
                if ((x_part ? cur.x : cur.z).get(q)) {
                    restr.set(q, true);
                }
            }
            supps[gidx] = restr;
        }
    };
    fill_tables(xg, mx, suppx, true);
    fill_tables(zg, mz, suppz, false);
    std::vector<uint8_t> sgn(nex * nez);
    for (size_t i = 0; i < nex; i++) {
        for (size_t j = 0; j < nez; j++) {
            sgn[i * nez + j] = suppx[i].and_parity(suppz[j]);
        }
    }
    size_t kmax = slot_paulis_.size() * (size_t)K + 2;
    std::vector<std::vector<double>> pows;
    for (double w : gen_w_) {
        pows.push_back(pow_table(w, kmax));
    }
    int F = K - 1;
    std::vector<size_t> ex(F, 0), ez(F, 0);
    std::vector<size_t> kg(gen_w_.size(), 0);
    double total = 0.0;
    size_t count = size_t{1} << ((rx + rz) * F);
    for (size_t step = 0; step < count; step++) {
        size_t rem = step;
        for (int fl = 0; fl < F; fl++) {
            ex[fl] = rem & (nex - 1);
            rem >>= rx;
            ez[fl] = rem & (nez - 1);
            rem >>= rz;
        }
        int sign = 0;
        for (int a = 0; a < F; a++) {
            for (int b = 0; b < F; b++) {
                if (a != b) {
                    sign ^= sgn[ex[a] * nez + ez[b]];
                }
            }
        }
        uint64_t prod = 0;
        std::fill(kg.begin(), kg.end(), 0);
        for (int fl = 0; fl < F; fl++) {
            uint64_t mm = mx[ex[fl]] ^ mz[ez[fl]];
            prod ^= mm;
            for (size_t g = 0; g < gen_w_.size(); g++) {
                kg[g] += std::popcount(mm & gen_slot_mask_[g]);
            }
        }
        double term = 1.0;
        for (size_t g = 0; g < gen_w_.size(); g++) {
            term *= pows[g][kg[g] + std::popcount(prod & gen_slot_mask_[g])];
        }
        total += sign ? -term : term;
    }
    return std::exp2(-(double)(K - 1) * (double)N) * total;
}

double ExactContext::negativity(const std::vector<size_t> &region, int two_n) const {
    if (two_n % 2) {
        throw std::invalid_argument("negativity: moment order must be even");
    }
    if (two_n == 2) {
        return 0.0;  // tr (rho^{T_A})^2 == tr rho^2 identically
    }
    double pt = pt_moment_sign_rule(region, two_n);
    double mom = moment_stabilizer_sum(two_n);
    return std::log(pt / mom) / (2.0 - two_n);
}

// ---------------------------------------------------------------------------

double log_partition_exact(const SMModel &model) {
    return std::log(partition_exact(model));
}

double partition_exact(const SMModel &model) {
    int F = model.flavors();
    size_t nspins = model.n_spins();
    if (nspins * (size_t)F > 26) {
        throw std::invalid_argument("partition_exact: enumeration too large");
    }
    std::vector<std::vector<uint32_t>> adj(nspins);
    for (uint32_t b = 0; b < model.bonds.size(); b++) {
        for (uint32_t s : model.bonds[b].spins) {
            adj[s].push_back(b);
        }
        if (!std::isfinite(model.bonds[b].coupling)) {
            throw std::invalid_argument("partition_exact: infinite coupling (p = 1/2)");
        }
    }
    std::vector<uint8_t> parity(model.bonds.size() * F, 0);
    auto bond_energy = [&](uint32_t bi) {
        const SMModel::Bond &b = model.bonds[bi];
        double sum = 0.0;
        int prodneg = 0;
        for (int f = 0; f < F; f++) {
            int bit = parity[bi * F + f] ^ (int)((b.flip_mask >> f) & 1);
            sum += bit ? -1.0 : 1.0;
            prodneg ^= bit;
        }
        if (model.replica_product) {
            sum += prodneg ? -1.0 : 1.0;
        }
        return -b.coupling * sum;
    };
    auto pin_violations = [&](uint32_t bi) {
        const SMModel::Bond &b = model.bonds[bi];
        if (!b.pinned) {
            return 0;
        }
        int v = 0;
        for (int f = 0; f < F; f++) {
            v += parity[bi * F + f] ^ (int)((b.flip_mask >> f) & 1);
        }
        return v;
    };
    double energy = 0.0;
    long violated = 0;
    for (uint32_t bi = 0; bi < model.bonds.size(); bi++) {
        energy += bond_energy(bi);
        violated += pin_violations(bi);
    }
    double z = 0.0;
    size_t count = size_t{1} << (nspins * (size_t)F);
    for (size_t step = 0;; step++) {
        if (!violated) {
            z += std::exp(-energy);
        }
        if (step + 1 >= count) {
            break;
        }
        size_t flipbit = std::countr_zero(step + 1);
        size_t label = flipbit % nspins;
        int fl = (int)(flipbit / nspins);
        for (uint32_t bi : adj[label]) {
            energy -= bond_energy(bi);
            violated -= pin_violations(bi);
            parity[bi * (size_t)F + (size_t)fl] ^= 1;
            energy += bond_energy(bi);
            violated += pin_violations(bi);
        }
    }
    return z;
}

std::vector<double> unsat_histogram(const SMModel &model) {
    size_t nspins = model.n_spins();
    if (nspins > 26) {
        throw std::invalid_argument("unsat_histogram: too many spins");
    }
    std::vector<std::vector<uint32_t>> adj(nspins);
    for (uint32_t b = 0; b < model.bonds.size(); b++) {
        for (uint32_t s : model.bonds[b].spins) {
            adj[s].push_back(b);
        }
    }
    std::vector<uint8_t> parity(model.bonds.size(), 0);
    size_t unsat = 0;
    std::vector<double> hist(model.bonds.size() + 1, 0.0);
    size_t count = size_t{1} << nspins;
    for (size_t step = 0;; step++) {
        hist[unsat] += 1.0;
        if (step + 1 >= count) {
            break;
        }
        size_t s = std::countr_zero(step + 1);
        for (uint32_t bi : adj[s]) {
            unsat -= parity[bi];
            parity[bi] ^= 1;
            unsat += parity[bi];
        }
    }
    return hist;
}

KWReport kw_verify(const SMModel &model_a, const SMModel &model_b,
                   const std::vector<double> &betas) {
    KWReport rep;
    if (model_a.bonds.size() != model_b.bonds.size()) {
        throw std::invalid_argument("kw_verify: bond index spaces differ");
    }
    for (size_t b = 0; b < model_a.bonds.size(); b++) {
        if (model_a.bonds[b].gen != model_b.bonds[b].gen ||
            model_a.bonds[b].cell != model_b.bonds[b].cell) {
            throw std::invalid_argument("kw_verify: bond order mismatch");
        }
    }
    size_t B = model_a.bonds.size();

    F2Matrix inc(model_a.n_spins(), B);
    for (size_t b = 0; b < B; b++) {
        for (uint32_t s : model_a.bonds[b].spins) {
            inc.flip(s, b);
        }
    }
    std::vector<BitVec> ker = inc.kernel_basis();
    rep.degenerate = ker.size() <= (size_t)model_a.torus.d();
    if (ker.size() > 22) {
        throw std::invalid_argument("kw_verify: kernel too large to enumerate");
    }
    std::vector<double> hist_ker(B + 1, 0.0);
    {
        BitVec cur(B);
        size_t count = size_t{1} << ker.size();
        for (size_t step = 0;; step++) {
            hist_ker[cur.popcount()] += 1.0;
            if (step + 1 >= count) {
                break;
            }
            cur ^= ker[std::countr_zero(step + 1)];
        }
    }
    std::vector<double> hist_a = unsat_histogram(model_a);

    // image sector of the dual model: span of per-spin flip patterns
    std::vector<BitVec> patterns;
    {
        std::vector<std::vector<uint32_t>> adj(model_b.n_spins());
        for (uint32_t b = 0; b < B; b++) {
            for (uint32_t s : model_b.bonds[b].spins) {
                adj[s].push_back(b);
            }
        }
        for (size_t s = 0; s < model_b.n_spins(); s++) {
            BitVec v(B);
            for (uint32_t b : adj[s]) {
                v.flip(b);
            }
            patterns.push_back(std::move(v));
        }
    }
    std::vector<size_t> keep = independent_subset(patterns);
    rep.image_in_kernel = true;
    for (size_t idx : keep) {
        BitVec prod(model_a.n_spins());
        for (size_t b = 0; b < B; b++) {
            if (patterns[idx].get(b)) {
                for (uint32_t s : model_a.bonds[b].spins) {
                    prod.flip(s);
                }
            }
        }
        if (prod.any()) {
            rep.image_in_kernel = false;
        }
    }
    if (keep.size() > 22) {
        throw std::invalid_argument("kw_verify: image too large to enumerate");
    }
    std::vector<double> hist_img(B + 1, 0.0);
    {
        BitVec cur(B);
        size_t count = size_t{1} << keep.size();
        for (size_t step = 0;; step++) {
            hist_img[cur.popcount()] += 1.0;
            if (step + 1 >= count) {
                break;
            }
            cur ^= patterns[keep[std::countr_zero(step + 1)]];
        }
    }
    std::vector<double> hist_b = unsat_histogram(model_b);

    auto poly_eval = [](const std::vector<double> &hist, double x) {
        double acc = 0.0, xp = 1.0;
        for (size_t k = 0; k < hist.size(); k++) {
            acc += hist[k] * xp;
            xp *= x;
        }
        return acc;
    };

    rep.ht_identity_ok = true;
    double pref0 = 0.0;
    for (size_t i = 0; i < betas.size(); i++) {
        double beta = betas[i];
        double x = std::tanh(beta);
        double za = 0.0;
        for (size_t u = 0; u < hist_a.size(); u++) {
            za += hist_a[u] * std::exp(beta * ((double)B - 2.0 * (double)u));
        }
        double ht = std::exp2((double)model_a.n_spins()) * std::pow(std::cosh(beta), (double)B) *
                    poly_eval(hist_ker, x);
        if (std::abs(za - ht) > 1e-9 * std::abs(za)) {
            rep.ht_identity_ok = false;
        }
        double lhs = poly_eval(hist_img, x);
        double rhs = poly_eval(hist_b, x);
        double pref = rhs / lhs;
        if (i == 0) {
            pref0 = pref;
        }
        rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(pref - pref0) / pref0);
        rep.unrestricted_ratio.push_back(rhs / poly_eval(hist_ker, x));
    }
    rep.prefactor = pref0;
    rep.prefactor_constant = rep.max_rel_dev <= 1e-9;
    double lo = 0.1, hi = 1.0;
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        (std::tanh(mid) - std::exp(-2.0 * mid) > 0 ? hi : lo) = mid;
    }
    rep.self_dual_beta = 0.5 * (lo + hi);
    return rep;
}

}  // namespace stabsm
