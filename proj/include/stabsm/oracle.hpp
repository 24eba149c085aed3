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

#ifndef STABSM_ORACLE_HPP
#define STABSM_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "stabsm/channels.hpp"
#include "stabsm/codes.hpp"
#include "stabsm/smgen.hpp"

namespace stabsm {

/// Exact desk-scale ground truth via group/spin enumeration. All weight sums
/// are evaluated in w = 1-2p powers, which stays finite at p = 1/2.
///
/// "Slots" are the instantiated (generator, cell) error Paulis; group-element
/// syndromes over slots are 64-bit masks, so channel size * cells <= 64.
class ExactContext {
  public:
    ExactContext(const CodeSpec &code, const ChannelSpec &channel, const Torus &t);

    const CodeSpec &code() const { return code_; }
    const ChannelSpec &channel() const { return channel_; }
    const Torus &torus() const { return t_; }
    const CodeParameters &params() const { return params_; }

    /// tr rho^n by full stabilizer-group enumeration; weights are computed by
    /// direct Pauli support counting, never through the excitation map.
    double moment_stabilizer_sum(int n) const;

    /// tr rho^n through the synthesized SM model: per-family spin enumeration
    /// with the replica sum+product structure and the 2^{N_c(n-1)}
    /// label-overcount divided out.
    double moment_via_model(int n) const;

    /// S^(n) = log(tr rho^n)/(1-n), from the stabilizer-sum route.
    double renyi_entropy(int n) const;

    /// n=2 relative entropy of adding the error `omega` at `cell`:
    /// returns the generalized correlator <E.Omega(P_k)> and D = -log of it.
    struct RelEntropy {
        double correlator = 0.0;
        double D = 0.0;
    };
    RelEntropy relative_entropy_2(const PolyVec &omega, const std::vector<int> &cell) const;

    /// n=2 coherent information from defect-sector partition ratios.
    double coherent_info_2() const;

    /// tr (rho^{T_A})^K via the A-separability sign rule (CSS codes only).
    double pt_moment_sign_rule(const std::vector<size_t> &region, int K) const;

    /// Renyi negativity E^(2n) = log(tr (rho^{T_A})^{2n} / tr rho^{2n})/(2-2n);
    /// 2n = 2 is degenerate and returns 0 by convention.
    double negativity(const std::vector<size_t> &region, int two_n) const;

  private:
    struct Family {
        std::vector<int> types;
        std::vector<PauliBits> gens;     // independent subgroup generators
        std::vector<uint64_t> masks;     // syndrome over slots per generator
        size_t Ns = 0, Nc = 0;
        bool weighted = false;
        StabType content = StabType::Z;  // Z / X / Mixed stabilizer content
    };

    double family_group_sum(const Family &f, int n, uint64_t flip_mask) const;
    double family_model_sum(const Family &f, int n) const;
    uint64_t slot_flip_mask(const PauliBits &inserted) const;

    CodeSpec code_;
    ChannelSpec channel_;
    Torus t_;
    CodeParameters params_;
    std::vector<PauliBits> slot_paulis_;
    std::vector<int> slot_gen_;
    std::vector<uint64_t> gen_slot_mask_;  // per channel generator
    std::vector<double> gen_w_;
    std::vector<Family> fams_;
    size_t free_r_ = 0;
};

/// Partition sum over all spin configurations of e^{-H}; pinned bonds
/// restrict the sum to configurations satisfying them. Guarded to
/// flavors * spins <= 26 bits.
double partition_exact(const SMModel &model);
double log_partition_exact(const SMModel &model);

/// Histogram over configurations of the number of unsatisfied bonds
/// (couplings/pins ignored; single-flavor reading of the model).
std::vector<double> unsat_histogram(const SMModel &model);

/// Kramers-Wannier verification for a dual model pair sharing the
/// (generator, cell) bond index space (e.g. the phase- and bit-flip models of
/// one CSS code). Checks, per beta in the grid:
///   1. the high-temperature identity
///      Z_A(beta) = 2^N (cosh beta)^B sum_{g in ker} (tanh beta)^|g|,
///   2. that the dual model's configuration sum at x = e^{-2 beta*} = tanh
///      beta equals a beta-independent prefactor (an exact power of 2) times
///      the kernel sum restricted to the dual-image sector.
/// The unrestricted ratio is reported as a diagnostic; at finite size it
/// differs by topological winding sectors.
struct KWReport {
    bool ht_identity_ok = false;
    bool image_in_kernel = false;
    bool prefactor_constant = false;
    bool degenerate = false;  // kernel has only global generators (dim <= d)
    double prefactor = 0.0;
    double max_rel_dev = 0.0;
    std::vector<double> unrestricted_ratio;
    double self_dual_beta = 0.0;  // root of tanh(b) = e^{-2b}
};
KWReport kw_verify(const SMModel &model_a, const SMModel &model_b,
                   const std::vector<double> &betas);

}  // namespace stabsm

#endif
