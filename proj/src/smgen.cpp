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

#include "stabsm/smgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace stabsm {

InteractionTerm interaction_from_error(const PolyMatrix &E, const PolyVec &omega) {
    std::vector<LaurentPoly> syn = apply_excitation(E, omega);
    InteractionTerm term;
    for (size_t a = 0; a < syn.size(); a++) {
        for (const Mono &m : syn[a].terms()) {
            term.sites.push_back({(int)a, m});
        }
    }
    if (term.sites.empty()) {
        throw TransparentGeneratorError("error pattern is invisible to every stabilizer");
    }
    return term;
}

SMModel replica_model(const CodeSpec &code, const ChannelSpec &channel, const Torus &t, int n) {
    if (n < 2) {
        throw std::invalid_argument("replica_model: n must be >= 2");
    }
    PolyMatrix E = code.excitation();
    std::vector<InteractionTerm> raw;
    std::set<int> touched;
    for (size_t g = 0; g < channel.generators.size(); g++) {
        InteractionTerm term;
        try {
            term = interaction_from_error(E, channel.generators[g].pattern);
        } catch (const TransparentGeneratorError &) {
            throw TransparentGeneratorError("generator " + channel.generators[g].name +
                                            " of channel " + channel.name +
                                            " is invisible to every stabilizer of " + code.name);
        }
        term.generator = (int)g;
        for (const TermSite &s : term.sites) {
            touched.insert(s.species);
        }
        raw.push_back(std::move(term));
    }

    SMModel m;
    m.name = code.name + "+" + channel.name;
    m.n = n;
    m.torus = t;
    std::vector<int> species_of_type(code.n_types(), -1);
    for (int ty : touched) {
        species_of_type[ty] = (int)m.species.size();
        m.species.push_back(code.type_names[ty]);
    }
    for (InteractionTerm term : raw) {
        for (TermSite &s : term.sites) {
            s.species = species_of_type[s.species];
        }
        m.templates.push_back(std::move(term));
    }
    for (const auto &g : channel.generators) {
        m.gen_patterns.push_back(g.pattern);
        m.gen_p.push_back(g.p);
        m.gen_names.push_back(g.name);
    }

    size_t nc = t.n_cells();
    for (const InteractionTerm &term : m.templates) {
        double p = channel.generators[term.generator].p;
        double coup = 0.5 * mu(p);
        for (size_t cc = 0; cc < nc; cc++) {
            std::vector<int> base = t.cell_coords(cc);
            std::set<uint32_t> spins;  // XOR semantics under wrap collisions
            for (const TermSite &s : term.sites) {
                std::vector<int> tgt = base;
                for (int k = 0; k < t.d(); k++) {
                    tgt[k] += s.offset[k];
                }
                uint32_t idx = (uint32_t)m.spin_index(t.cell_rank(tgt), s.species);
                auto it = spins.find(idx);
                if (it == spins.end()) {
                    spins.insert(idx);
                } else {
                    spins.erase(it);
                }
            }
            if (spins.empty()) {
                continue;  // support cancelled by wrap-around
            }
            SMModel::Bond b;
            b.spins.assign(spins.begin(), spins.end());
            b.coupling = coup;
            b.p = p;
            b.gen = term.generator;
            b.cell = (uint32_t)cc;
            m.bonds.push_back(std::move(b));
        }
    }
    return m;
}

std::vector<SpeciesRelation> reduction_preset(const CodeSpec &code) {
    if (code.name == "xcube") {
        Mono zero(3, 0);
        return {{"vertex_yz", {{"vertex_xy", zero}, {"vertex_xz", zero}}}};
    }
    throw std::invalid_argument("no reduction preset for code " + code.name);
}

SMModel reduce_species(const SMModel &model, const CodeSpec &code,
                       const std::vector<SpeciesRelation> &relations) {
    if (relations.empty()) {
        return model;
    }
    auto type_index = [&](const std::string &nm) {
        for (int i = 0; i < code.n_types(); i++) {
            if (code.type_names[i] == nm) {
                return i;
            }
        }
        throw std::invalid_argument("reduce_species: unknown species " + nm);
    };
    // Validate each relation against the stabilizer map: the eliminated
    // column must equal the shifted sum of the part columns.
    for (const SpeciesRelation &rel : relations) {
        PolyVec elim = code.S.col(type_index(rel.eliminated));
        PolyVec acc(code.l, code.d);
        for (const auto &[nm, off] : rel.parts) {
            PolyVec part = code.S.col(type_index(nm));
            for (int r = 0; r < 2 * code.l; r++) {
                acc.e[r] = acc.e[r].add(part.e[r].shifted(off));
            }
        }
        for (int r = 0; r < 2 * code.l; r++) {
            if (!(acc.e[r] == elim.e[r])) {
                throw std::invalid_argument("reduce_species: relation for " + rel.eliminated +
                                            " inconsistent with the stabilizer map");
            }
        }
    }

    SMModel out = model;
    for (const SpeciesRelation &rel : relations) {
        auto sit = std::find(out.species.begin(), out.species.end(), rel.eliminated);
        if (sit == out.species.end()) {
            throw std::invalid_argument("reduce_species: species " + rel.eliminated +
                                        " not present in model");
        }
        int elim_idx = (int)(sit - out.species.begin());
        std::vector<std::pair<int, Mono>> parts;
        for (const auto &[nm, off] : rel.parts) {
            auto pit = std::find(out.species.begin(), out.species.end(), nm);
            if (pit == out.species.end()) {
                throw std::invalid_argument("reduce_species: replacement species " + nm +
                                            " not present in model");
            }
            parts.push_back({(int)(pit - out.species.begin()), off});
        }
        // rewrite templates
        for (InteractionTerm &term : out.templates) {
            std::vector<TermSite> next;
            for (const TermSite &s : term.sites) {
                if (s.species != elim_idx) {
                    next.push_back(s);
                    continue;
                }
                for (const auto &[sp, off] : parts) {
                    Mono o = s.offset;
                    for (size_t k = 0; k < o.size(); k++) {
                        o[k] += off[k];
                    }
                    next.push_back({sp, o});
                }
            }
            // cancel duplicate sites mod 2
            std::sort(next.begin(), next.end(), [](const TermSite &a, const TermSite &b) {
                return std::tie(a.species, a.offset) < std::tie(b.species, b.offset);
            });
            std::vector<TermSite> dedup;
            for (size_t i = 0; i < next.size();) {
                size_t j = i;
                while (j < next.size() && next[j] == next[i]) {
                    j++;
                }
                if ((j - i) % 2) {
                    dedup.push_back(next[i]);
                }
                i = j;
            }
            term.sites = std::move(dedup);
        }
        // drop the species and re-instantiate bonds from rewritten templates
        std::vector<std::string> new_species;
        std::vector<int> remap(out.species.size(), -1);
        for (size_t i = 0; i < out.species.size(); i++) {
            if ((int)i != elim_idx) {
                remap[i] = (int)new_species.size();
                new_species.push_back(out.species[i]);
            }
        }
        for (InteractionTerm &term : out.templates) {
            for (TermSite &s : term.sites) {
                s.species = remap[s.species];
            }
        }
        out.species = std::move(new_species);
    }
    // rebuild bonds
    out.bonds.clear();
    size_t nc = out.torus.n_cells();
    for (const InteractionTerm &term : out.templates) {
        double p = out.gen_p[term.generator];
        double coup = 0.5 * mu(p);
        for (size_t cc = 0; cc < nc; cc++) {
            std::vector<int> base = out.torus.cell_coords(cc);
            std::set<uint32_t> spins;
            for (const TermSite &s : term.sites) {
                std::vector<int> tgt = base;
                for (int k = 0; k < out.torus.d(); k++) {
                    tgt[k] += s.offset[k];
                }
                uint32_t idx = (uint32_t)out.spin_index(out.torus.cell_rank(tgt), s.species);
                if (!spins.insert(idx).second) {
                    spins.erase(idx);
                }
            }
            if (spins.empty()) {
                continue;
            }
            SMModel::Bond b;
            b.spins.assign(spins.begin(), spins.end());
            b.coupling = coup;
            b.p = p;
            b.gen = term.generator;
            b.cell = (uint32_t)cc;
            out.bonds.push_back(std::move(b));
        }
    }
    return out;
}

SMModel defect_model(const SMModel &model, const std::vector<LogicalPair> &pairs,
                     const std::vector<uint32_t> &dz, const std::vector<uint32_t> &dx) {
    size_t flavors = (size_t)model.flavors();
    if (dz.size() != flavors || dx.size() != flavors) {
        throw std::invalid_argument("defect_model: selector length != logical_count * (n-1)");
    }
    SMModel out = model;
    for (size_t f = 0; f < flavors; f++) {
        PauliBits ins(model.torus.n_qubits());
        for (size_t g = 0; g < pairs.size(); g++) {
            if ((dz[f] >> g) & 1) {
                ins.mul_inplace(pairs[g].zbar);
            }
            if ((dx[f] >> g) & 1) {
                ins.mul_inplace(pairs[g].xbar);
            }
        }
        if (ins.is_identity()) {
            continue;
        }
        for (SMModel::Bond &b : out.bonds) {
            PauliBits err = instantiate_pauli(model.gen_patterns[b.gen], model.torus,
                                              model.torus.cell_coords(b.cell));
            if (ins.anticommutes(err)) {
                b.flip_mask ^= (1u << f);
            }
        }
    }
    return out;
}

SMModel pinned_model(const SMModel &model, const std::vector<uint32_t> &bond_ids) {
    if (bond_ids.empty()) {
        throw std::invalid_argument("pinned_model: empty boundary");
    }
    SMModel out = model;
    for (uint32_t b : bond_ids) {
        out.bonds.at(b).pinned = true;
    }
    return out;
}

SMModel pinned_model_half_cut(const SMModel &model, int axis) {
    const Torus &t = model.torus;
    if (axis < 0 || axis >= t.d()) {
        throw std::invalid_argument("pinned_model_half_cut: bad axis");
    }
    int L = t.dims[axis];
    int cut2 = L / 2;
    std::vector<uint32_t> ids;
    for (uint32_t i = 0; i < model.bonds.size(); i++) {
        std::vector<int> c = t.cell_coords(model.bonds[i].cell);
        if (c[axis] == 0 || c[axis] == cut2) {
            ids.push_back(i);
        }
    }
    return pinned_model(model, ids);
}

ErrorConfig sample_error_config(const ChannelSpec &channel, const Torus &t, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&]() { return (double)(rng() >> 11) * 0x1.0p-53; };
    ErrorConfig cfg;
    cfg.pauli = PauliBits(t.n_qubits());
    for (const ErrorGenerator &g : channel.generators) {
        for (size_t cc = 0; cc < t.n_cells(); cc++) {
            if (unit() < g.p) {
                cfg.pauli.mul_inplace(instantiate_pauli(g.pattern, t, t.cell_coords(cc)));
                cfg.flipped_sites++;
            }
        }
    }
    return cfg;
}

SMModel random_bond_model(const CodeSpec &code, const ChannelSpec &channel, const Torus &t,
                          int n, const ErrorConfig &config) {
    // Error-string picture: a channel of type alpha is described by the
    // random-bond version of the opposite type's stabilizer model, so the
    // bond structure comes from single-site probes of the opposite Pauli and
    // a bond flips where the error configuration C anticommutes with its
    // probe, i.e. exactly on the links spanned by C.
    std::string probe_name;
    if (channel.name == "bitflip") {
        probe_name = "phase";
    } else if (channel.name == "phase") {
        probe_name = "bitflip";
    } else {
        throw std::invalid_argument(
            "random_bond_model: only single-site bitflip/phase channels have an "
            "error-string construction");
    }
    double p = channel.generators.front().p;
    ChannelSpec probes = builtin_channel(probe_name, code, p);
    SMModel m = replica_model(code, probes, t, n);
    m.name = code.name + "+" + channel.name + "+random-bond";
    m.replica_product = false;  // quenched flavors decouple
    uint32_t all = (1u << m.flavors()) - 1;
    // e^{-2J} = p/(1-p); p = 0 is clamped to a frozen-but-finite coupling so
    // the clean limit stays runnable.
    double J = p <= 0.0 ? 20.0 : (p >= 0.5 ? 0.0 : -0.5 * std::log(p / (1.0 - p)));
    for (SMModel::Bond &b : m.bonds) {
        b.coupling = J;
        PauliBits probe = instantiate_pauli(m.gen_patterns[b.gen], t, t.cell_coords(b.cell));
        if (config.pauli.anticommutes(probe)) {
            b.flip_mask ^= all;
        }
    }
    return m;
}

KWDual kw_dual(const SMModel &classical, int torus_d) {
    if (classical.species.size() != 1) {
        throw std::invalid_argument("kw_dual: expected a single-species classical model");
    }
    // incidence matrix: rows = spins, columns = bond instances
    F2Matrix inc(classical.n_spins(), classical.bonds.size());
    for (size_t b = 0; b < classical.bonds.size(); b++) {
        for (uint32_t s : classical.bonds[b].spins) {
            inc.flip(s, b);
        }
    }
    KWDual kw;
    kw.kernel = inc.kernel_basis();
    if (kw.kernel.size() <= 20 && !kw.kernel.empty()) {
        // Re-extract a minimal-weight basis (greedy over the weight-sorted
        // kernel is matroid-optimal); the dual terms then come out local.
        std::vector<BitVec> elems;
        BitVec cur(classical.bonds.size());
        size_t count = size_t{1} << kw.kernel.size();
        for (size_t step = 0;; step++) {
            if (cur.any()) {
                elems.push_back(cur);
            }
            if (step + 1 >= count) {
                break;
            }
            size_t b = 0;
            size_t v = step + 1;
            while (!(v & 1)) {
                v >>= 1;
                b++;
            }
            cur ^= kw.kernel[b];
        }
        std::stable_sort(elems.begin(), elems.end(), [](const BitVec &a, const BitVec &b) {
            return a.popcount() < b.popcount();
        });
        std::vector<BitVec> basis;
        for (size_t idx : independent_subset(elems)) {
            basis.push_back(elems[idx]);
            if (basis.size() == kw.kernel.size()) {
                break;
            }
        }
        kw.kernel = std::move(basis);
    }
    kw.trivial = kw.kernel.empty();
    kw.degenerate = (int)kw.kernel.size() <= torus_d;
    kw.dual_terms.assign(classical.bonds.size(), {});
    for (size_t k = 0; k < kw.kernel.size(); k++) {
        for (size_t b = 0; b < classical.bonds.size(); b++) {
            if (kw.kernel[k].get(b)) {
                kw.dual_terms[b].push_back((uint32_t)k);
            }
        }
    }
    for (const BitVec &v : kw.kernel) {
        size_t w = v.popcount();
        if (kw.weight_histogram.size() <= w) {
            kw.weight_histogram.resize(w + 1, 0);
        }
        kw.weight_histogram[w]++;
    }
    return kw;
}

std::string canonical_listing(const SMModel &model) {
    std::ostringstream os;
    os << "model " << model.name << "\n";
    os << "n " << model.n << " torus";
    for (size_t k = 0; k < model.torus.dims.size(); k++) {
        os << (k ? "x" : " ") << model.torus.dims[k];
    }
    os << " species " << model.species.size() << "\n";
    for (size_t s = 0; s < model.species.size(); s++) {
        os << "species " << s << " " << model.species[s] << "\n";
    }
    for (size_t ti = 0; ti < model.templates.size(); ti++) {
        const InteractionTerm &t = model.templates[ti];
        // bounding-box normalization: shift so the componentwise minimum is 0
        Mono mins(model.torus.d(), 0);
        bool first = true;
        for (const TermSite &s : t.sites) {
            for (int k = 0; k < model.torus.d(); k++) {
                mins[k] = first ? s.offset[k] : std::min(mins[k], s.offset[k]);
            }
            first = false;
        }
        std::vector<TermSite> sites = t.sites;
        for (TermSite &s : sites) {
            for (int k = 0; k < model.torus.d(); k++) {
                s.offset[k] -= mins[k];
            }
        }
        std::sort(sites.begin(), sites.end(), [](const TermSite &a, const TermSite &b) {
            return std::tie(a.species, a.offset) < std::tie(b.species, b.offset);
        });
        char buf[64];
        snprintf(buf, sizeof buf, "%.9g", model.gen_p[t.generator] < 0.5
                                              ? 0.5 * mu(model.gen_p[t.generator])
                                              : std::numeric_limits<double>::infinity());
        os << "template " << ti << " gen " << model.gen_names[t.generator]
           << " coupling " << buf << " sites";
        for (const TermSite &s : sites) {
            os << " (" << model.species[s.species];
            for (int k = 0; k < model.torus.d(); k++) {
                os << "," << s.offset[k];
            }
            os << ")";
        }
        os << "\n";
    }
    size_t flips = 0, pins = 0;
    for (const auto &b : model.bonds) {
        flips += b.flip_mask != 0;
        pins += b.pinned;
    }
    os << "bonds " << model.bonds.size() << " flipped " << flips << " pinned " << pins << "\n";
    return os.str();
}

}  // namespace stabsm
