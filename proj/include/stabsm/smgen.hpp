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

#ifndef STABSM_SMGEN_HPP
#define STABSM_SMGEN_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabsm/channels.hpp"
#include "stabsm/codes.hpp"

namespace stabsm {

/// Raised when a generator is invisible to every stabilizer (E·Ω = 0); such a
/// generator contributes zero weight and would silently bias thresholds.
struct TransparentGeneratorError : std::runtime_error {
    explicit TransparentGeneratorError(const std::string &what) : std::runtime_error(what) {}
};

struct TermSite {
    int species = 0;
    Mono offset;
    bool operator==(const TermSite &o) const = default;
};

/// Translation-invariant interaction template: the support of E·Ω(P) for one
/// generator, read as (species row, exponent offset) pairs.
struct InteractionTerm {
    std::vector<TermSite> sites;
    int generator = 0;
};

/// An instantiated classical statistical-mechanics model. Spin labels are
/// (cell, species) with index = cell_rank * n_species + species. Each bond
/// contributes -coupling * (sum_m eps_m T_m + prod_m eps_m T_m) over the n-1
/// replica flavors (the product term is dropped for quenched random-bond
/// models, whose flavors decouple).
struct SMModel {
    std::string name;
    int n = 2;
    Torus torus;
    bool replica_product = true;
    std::vector<std::string> species;
    std::vector<InteractionTerm> templates;

    struct Bond {
        std::vector<uint32_t> spins;
        double coupling = 0.0;   // mu(p)/2 per flavor term
        double p = 0.0;          // generator probability (w = 1-2p weight space)
        uint32_t flip_mask = 0;  // bit m set: sign flipped for flavor m
        bool pinned = false;
        int gen = 0;
        uint32_t cell = 0;
    };
    std::vector<Bond> bonds;

    // generator bookkeeping so variants can be derived from the model alone
    std::vector<PolyVec> gen_patterns;
    std::vector<double> gen_p;
    std::vector<std::string> gen_names;

    int flavors() const { return n - 1; }
    size_t n_spins() const { return species.size() * torus.n_cells(); }
    size_t spin_index(size_t cell_rank, int species_idx) const {
        return cell_rank * species.size() + species_idx;
    }
};

/// Interaction template of a single error pattern: the support of E·Ω(P).
/// Throws TransparentGeneratorError when E·Ω(P) = 0.
InteractionTerm interaction_from_error(const PolyMatrix &E, const PolyVec &omega);

/// Synthesize the n-th replica model for a code + channel on a torus. The
/// species list covers only stabilizer types excited by some generator, so
/// CSS codes with pure-X or pure-Z channels come out restricted to the
/// relevant block automatically.
SMModel replica_model(const CodeSpec &code, const ChannelSpec &channel, const Torus &t, int n);

/// One species expressed as a product of others (from a stabilizer product
/// identity), e.g. the X-cube relation eta = sigma * tau.
struct SpeciesRelation {
    std::string eliminated;
    std::vector<std::pair<std::string, Mono>> parts;
};

/// Substitute relations into all terms, dropping the eliminated species.
/// Relations are validated against the code's stabilizer map; an inconsistent
/// relation is an error. The X-cube bit-flip preset yields the ACAT model.
SMModel reduce_species(const SMModel &model, const CodeSpec &code,
                       const std::vector<SpeciesRelation> &relations);

/// Built-in reduction preset for a code (X-cube: vertex_yz = vertex_xy *
/// vertex_xz). Throws when the code has none.
std::vector<SpeciesRelation> reduction_preset(const CodeSpec &code);

/// Flip bond signs along inserted logical operators, one selector per replica
/// flavor and Pauli type: bit gamma of dz[m]/dx[m] inserts pair gamma's
/// zbar/xbar into flavor m. A bond flips for flavor m iff the combined
/// inserted operator anticommutes with the bond's generating error.
SMModel defect_model(const SMModel &model, const std::vector<LogicalPair> &pairs,
                     const std::vector<uint32_t> &dz, const std::vector<uint32_t> &dx);

/// Named boundary presets for pinned models: the region A is the half-torus
/// cut perpendicular to `axis`; a bond is pinned iff its generating error
/// qubit lies in a cut layer (cell coordinate 0 or dims/2 along the axis).
SMModel pinned_model_half_cut(const SMModel &model, int axis);

/// Pin explicitly listed bonds.
SMModel pinned_model(const SMModel &model, const std::vector<uint32_t> &bond_ids);

/// Quenched random-bond model: signs flipped on bonds whose generating error
/// anticommutes an odd number of times with the error configuration C (a set
/// of single-qubit Paulis matching the channel), with Nishimori coupling
/// e^{-2J} = p/(1-p). Flavors decouple (no replica product term).
struct ErrorConfig {
    PauliBits pauli;          // the physical error pattern C
    size_t flipped_sites = 0; // |C|
};
SMModel random_bond_model(const CodeSpec &code, const ChannelSpec &channel, const Torus &t,
                          int n, const ErrorConfig &config);

/// Sample C: each generator site independently included with probability p.
ErrorConfig sample_error_config(const ChannelSpec &channel, const Torus &t, uint64_t seed);

/// Kramers-Wannier dual data of a single-species classical model: kernel
/// basis of the instantiated support map (columns = bond instances), dual
/// terms read from the transpose. `degenerate` flags kernels with only
/// global/topological generators (dimension <= d), e.g. the 1D chain.
struct KWDual {
    std::vector<BitVec> kernel;                    // basis, RREF rows
    std::vector<std::vector<uint32_t>> dual_terms; // per bond: kernel generators containing it
    bool trivial = false;
    bool degenerate = false;
    std::vector<size_t> weight_histogram;          // kernel basis weights
};
KWDual kw_dual(const SMModel &classical, int torus_d);

/// Canonical text listing (species, term sites, couplings, signs) used for
/// golden-file tests and the `derive` subcommand. Templates are translated so
/// their bounding box starts at the origin and sites are sorted.
std::string canonical_listing(const SMModel &model);

}  // namespace stabsm

#endif
