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

#ifndef STABSM_MC_HPP
#define STABSM_MC_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stabsm/smgen.hpp"

namespace stabsm {

struct MCConfig {
    int sweeps = 20000;          // measurement sweeps
    int thermalization = 4000;
    int interval = 2;            // sweeps between measurements
    uint64_t seed = 1;
    int audit_interval = 2048;   // sweeps between incremental-energy audits
    bool hot_start = true;
};

/// Deterministic per-chain seed derivation from a root seed.
uint64_t chain_seed(uint64_t root, uint64_t index);

enum class OrderParam { Magnetization, FukiNuke, FukiNukeAcat, Energy };

/// Default order-parameter registry: single-species two-spin models use the
/// magnetization Binder cumulant, plaquette models the fuki-nuke
/// magnetizations, two-species reduced models the anisotropic (ACAT) variant,
/// and everything else (gauge-like) energy cumulants.
OrderParam default_order_param(const SMModel &model);

struct MeasurementRecord {
    size_t spins = 0;
    double energy = 0.0, energy_err = 0.0;  // per spin
    double specific_heat = 0.0;
    double m_abs = 0.0, m2 = 0.0, m4 = 0.0;
    double binder = 0.0, binder_err = 0.0;
    double fukinuke[3] = {0.0, 0.0, 0.0};
    double accept_ratio = 0.0;
    uint64_t record_hash = 0;  // provenance: hash over the measurement stream
};

/// Bit-packed spin configuration, one plane per replica flavor, plus
/// incrementally tracked bond parities (audited against full recomputation).
class SpinState {
  public:
    SpinState(const SMModel &model, const MCConfig &cfg);

    bool get(int flavor, size_t spin) const {
        size_t i = (size_t)flavor * nspins_ + spin;
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }
    void flip(int flavor, size_t spin);

    /// One attempted Metropolis flip per spin per flavor.
    void sweep();
    void thermalize_and_measure();

    double total_energy() const { return energy_; }
    double total_energy_from_scratch() const;
    double order_parameter(OrderParam op) const;
    double fukinuke_component(int axis) const;
    double dipole_correlator(int axis, const std::vector<int> &a,
                             const std::vector<int> &b) const;
    double wilson_loop(int mu, int nu, int a, int b) const;

    const MeasurementRecord &record() const { return rec_; }
    const SMModel &model() const { return *model_; }
    void set_order_param(OrderParam op) { op_ = op; }

  private:
    double bond_energy(uint32_t bi) const;
    int pin_violations(uint32_t bi) const;
    double flip_delta(int flavor, size_t spin, bool &pin_block) const;
    uint64_t next_u64() { return rng_state_ = rng_next(rng_state_); }
    static uint64_t rng_next(uint64_t s);
    double unit_real();

    const SMModel *model_;
    MCConfig cfg_;
    OrderParam op_ = OrderParam::Magnetization;
    size_t nspins_ = 0;
    int flavors_ = 1;
    std::vector<uint64_t> bits_;
    std::vector<uint8_t> parity_;  // bond * flavors + flavor
    std::vector<uint32_t> adj_offsets_;
    std::vector<uint32_t> adj_bonds_;
    double energy_ = 0.0;
    uint64_t rng_state_ = 0;
    uint64_t accepted_ = 0, attempted_ = 0;
    MeasurementRecord rec_;

    friend MeasurementRecord run_chain(const SMModel &, const MCConfig &, OrderParam);
};

/// Thermalize and measure one chain; deterministic in (model, config).
MeasurementRecord run_chain(const SMModel &model, const MCConfig &cfg, OrderParam op);

/// Same, averaging a hot-start and a cold-start chain (seeds derived from
/// cfg.seed); guards first-order transitions against metastable starts.
MeasurementRecord run_chain_pair(const SMModel &model, const MCConfig &cfg, OrderParam op);

struct BinderPoint {
    int size = 0;
    double beta = 0.0;
    double binder = 0.0, binder_err = 0.0;
    double energy = 0.0;
    double order = 0.0;
};

struct BetaCEstimate {
    bool found = false;
    double beta_c = 0.0, err = 0.0;
    std::vector<BinderPoint> points;
    std::string diagnostics;
};

/// Binder-cumulant crossing over a beta grid for >= 2 sizes. The factory
/// builds the instantiated model for (linear size, beta).
BetaCEstimate estimate_beta_c(const std::function<SMModel(int, double)> &factory,
                              const std::vector<int> &sizes, const std::vector<double> &betas,
                              const MCConfig &cfg, OrderParam op, int threads = 0);

struct FreeEnergyDiff {
    double dF = 0.0, err = 0.0;
    std::vector<double> node_values;  // <dH/dlambda> per quadrature node
};

/// Thermodynamic integration between a model and a sign-flip variant over an
/// 11-point Gauss-Legendre grid (flipped couplings scaled by 1-2*lambda).
FreeEnergyDiff free_energy_difference(const SMModel &base, const SMModel &variant,
                                      const MCConfig &cfg, int gl_points = 11);

struct DisorderPoint {
    double p = 0.0;
    double flipped_fraction = 0.0, flipped_fraction_err = 0.0;
    double energy = 0.0, energy_err = 0.0;  // disorder-averaged, two-level errors
    int realizations = 0;
};

/// Quenched random-bond scan along the Nishimori coupling.
std::vector<DisorderPoint> disorder_scan(const CodeSpec &code, const std::string &channel_name,
                                         const Torus &t, int n, const std::vector<double> &ps,
                                         int realizations, const MCConfig &cfg);

}  // namespace stabsm

#endif
