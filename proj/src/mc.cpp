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

#include "stabsm/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace stabsm {

namespace {

// splitmix64; also used as the measurement-stream hash mixer
uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct Binning {
    std::vector<double> samples;
    void add(double v) { samples.push_back(v); }
    double mean() const {
        double s = 0;
        for (double v : samples) {
            s += v;
        }
        return samples.empty() ? 0.0 : s / samples.size();
    }
    // standard error from >= 16 bins
    double err(int bins = 16) const {
        if ((int)samples.size() < 2 * bins) {
            bins = std::max(2, (int)samples.size() / 2);
        }
        if (bins < 2) {
            return 0.0;
        }
        size_t per = samples.size() / bins;
        double m = mean(), acc = 0.0;
        for (int b = 0; b < bins; b++) {
            double s = 0;
            for (size_t i = b * per; i < (b + 1) * per; i++) {
                s += samples[i];
            }
            s /= per;
            acc += (s - m) * (s - m);
        }
        return std::sqrt(acc / (bins * (bins - 1.0)));
    }
};

}  // namespace

uint64_t chain_seed(uint64_t root, uint64_t index) {
    return mix64(root ^ mix64(index + 1));
}

uint64_t SpinState::rng_next(uint64_t s) {
    // splitmix64 stream: the state is a simple counter, the output is mixed
    return s + 0x9e3779b97f4a7c15ull;
}

double SpinState::unit_real() {
    return (double)(mix64(next_u64()) >> 11) * 0x1.0p-53;
}

OrderParam default_order_param(const SMModel &model) {
    size_t max_sites = 0;
    for (const auto &t : model.templates) {
        max_sites = std::max(max_sites, t.sites.size());
    }
    if (model.species.size() == 1 && max_sites <= 2) {
        return OrderParam::Magnetization;
    }
    if (model.species.size() == 1 && max_sites == 4) {
        return OrderParam::FukiNuke;
    }
    if (model.species.size() == 2) {
        return OrderParam::FukiNukeAcat;
    }
    return OrderParam::Energy;
}

SpinState::SpinState(const SMModel &model, const MCConfig &cfg) : model_(&model), cfg_(cfg) {
    nspins_ = model.n_spins();
    flavors_ = model.flavors();
    bits_.assign((nspins_ * flavors_ + 63) / 64, 0);
    rng_state_ = cfg.seed ? cfg.seed : 0x853c49e6748fea9bull;
    for (int k = 0; k < 8; k++) {
        next_u64();
    }
    if (cfg.hot_start) {
        for (int f = 0; f < flavors_; f++) {
            for (size_t u = 0; u < nspins_; u++) {
                if (mix64(next_u64()) & 1) {
                    size_t i = (size_t)f * nspins_ + u;
                    bits_[i >> 6] ^= uint64_t{1} << (i & 63);
                }
            }
        }
    }
    adj_offsets_.assign(nspins_ + 1, 0);
    for (const auto &b : model.bonds) {
        for (uint32_t s : b.spins) {
            adj_offsets_[s + 1]++;
        }
    }
    for (size_t s = 0; s < nspins_; s++) {
        adj_offsets_[s + 1] += adj_offsets_[s];
    }
    adj_bonds_.resize(adj_offsets_.back());
    std::vector<uint32_t> fill(nspins_, 0);
    for (uint32_t bi = 0; bi < model.bonds.size(); bi++) {
        for (uint32_t s : model.bonds[bi].spins) {
            adj_bonds_[adj_offsets_[s] + fill[s]++] = bi;
        }
    }
    parity_.assign(model.bonds.size() * flavors_, 0);
    for (uint32_t bi = 0; bi < model.bonds.size(); bi++) {
        for (int f = 0; f < flavors_; f++) {
            int par = 0;
            for (uint32_t s : model.bonds[bi].spins) {
                par ^= get(f, s);
            }
            parity_[bi * flavors_ + f] = (uint8_t)par;
        }
    }
    // pinned bonds must start satisfied; a hot start is re-aligned per pin
    for (uint32_t bi = 0; bi < model.bonds.size(); bi++) {
        if (model.bonds[bi].pinned && pin_violations(bi)) {
            throw std::invalid_argument(
                "SpinState: pinned bond unsatisfied in the initial state (use cold start)");
        }
    }
    energy_ = total_energy_from_scratch();
}

double SpinState::bond_energy(uint32_t bi) const {
    const SMModel::Bond &b = model_->bonds[bi];
    double sum = 0.0;
    int prodneg = 0;
    for (int f = 0; f < flavors_; f++) {
        int bit = parity_[bi * flavors_ + f] ^ (int)((b.flip_mask >> f) & 1);
        sum += bit ? -1.0 : 1.0;
        prodneg ^= bit;
    }
    if (model_->replica_product) {
        sum += prodneg ? -1.0 : 1.0;
    }
    return -b.coupling * sum;
}

int SpinState::pin_violations(uint32_t bi) const {
    const SMModel::Bond &b = model_->bonds[bi];
    if (!b.pinned) {
        return 0;
    }
    int v = 0;
    for (int f = 0; f < flavors_; f++) {
        v += parity_[bi * flavors_ + f] ^ (int)((b.flip_mask >> f) & 1);
    }
    return v;
}

double SpinState::total_energy_from_scratch() const {
    double e = 0.0;
    for (uint32_t bi = 0; bi < model_->bonds.size(); bi++) {
        e += bond_energy(bi);
    }
    return e;
}

void SpinState::flip(int flavor, size_t spin) {
    size_t i = (size_t)flavor * nspins_ + spin;
    bits_[i >> 6] ^= uint64_t{1} << (i & 63);
    for (uint32_t k = adj_offsets_[spin]; k < adj_offsets_[spin + 1]; k++) {
        uint32_t bi = adj_bonds_[k];
        energy_ -= bond_energy(bi);
        parity_[bi * flavors_ + flavor] ^= 1;
        energy_ += bond_energy(bi);
    }
}

double SpinState::flip_delta(int flavor, size_t spin, bool &pin_block) const {
    double delta = 0.0;
    pin_block = false;
    for (uint32_t k = adj_offsets_[spin]; k < adj_offsets_[spin + 1]; k++) {
        uint32_t bi = adj_bonds_[k];
        const SMModel::Bond &b = model_->bonds[bi];
        int bit = parity_[bi * flavors_ + flavor] ^ (int)((b.flip_mask >> flavor) & 1);
        if (b.pinned) {
            // flipping would unsatisfy the pinned bond
            if (!bit) {
                pin_block = true;
                return 0.0;
            }
            continue;
        }
        double tau = bit ? -1.0 : 1.0;
        double others = 1.0;
        if (model_->replica_product) {
            int prodneg = 0;
            for (int f = 0; f < flavors_; f++) {
                if (f != flavor) {
                    prodneg ^= parity_[bi * flavors_ + f] ^ (int)((b.flip_mask >> f) & 1);
                }
            }
            others += prodneg ? -1.0 : 1.0;
        }
        delta += 2.0 * b.coupling * tau * others;
    }
    return delta;
}

void SpinState::sweep() {
    // one attempted flip per spin per flavor, in random order: a sequential
    // scan is non-ergodic on frustrated loops where every move has dE = 0
    // (deterministic acceptance forms absorbing cycles)
    size_t total = nspins_ * (size_t)flavors_;
    for (size_t k = 0; k < total; k++) {
        size_t pick = (size_t)(((__uint128_t)mix64(next_u64()) * total) >> 64);
        int f = (int)(pick / nspins_);
        size_t u = pick % nspins_;
        bool blocked = false;
        double d = flip_delta(f, u, blocked);
        attempted_++;
        if (blocked) {
            continue;
        }
        if (d <= 0.0 || unit_real() < std::exp(-d)) {
            flip(f, u);
            accepted_++;
        }
    }
}

double SpinState::fukinuke_component(int axis) const {
    const Torus &t = model_->torus;
    int d = t.d();
    size_t nsp = model_->species.size();
    std::vector<int> c(d, 0);
    double outer = 0.0;
    int L = t.dims[axis];
    // iterate planes along `axis`; inner sum over the plane, outer abs-sum
    size_t ncells = t.n_cells();
    std::vector<double> plane(L, 0.0);
    for (size_t cc = 0; cc < ncells; cc++) {
        std::vector<int> cell = t.cell_coords(cc);
        std::vector<int> cell2 = cell;
        cell2[axis] = (cell2[axis] + 1) % L;
        size_t c2 = t.cell_rank(cell2);
        double prod;
        if (model_->species.size() == 1) {
            prod = (get(0, cc) ^ get(0, c2)) ? -1.0 : 1.0;
        } else {
            // ACAT: pair structure per Eq: x uses sigma*tau at both sites,
            // y uses tau-tau, z uses sigma-sigma (species 0 = sigma, 1 = tau)
            if (axis == 0) {
                int par = get(0, cc * nsp) ^ get(0, cc * nsp + 1) ^ get(0, c2 * nsp) ^
                          get(0, c2 * nsp + 1);
                prod = par ? -1.0 : 1.0;
            } else if (axis == 1) {
                int par = get(0, cc * nsp + 1) ^ get(0, c2 * nsp + 1);
                prod = par ? -1.0 : 1.0;
            } else {
                int par = get(0, cc * nsp) ^ get(0, c2 * nsp);
                prod = par ? -1.0 : 1.0;
            }
        }
        plane[cell[axis]] += prod;
    }
    for (int h = 0; h < L; h++) {
        outer += std::abs(plane[h]);
    }
    return outer / (double)(t.n_cells());
}

double SpinState::dipole_correlator(int axis, const std::vector<int> &a,
                                    const std::vector<int> &b) const {
    const Torus &t = model_->torus;
    auto pair_parity = [&](const std::vector<int> &cell) {
        std::vector<int> c2 = cell;
        c2[axis] += 1;
        return get(0, t.cell_rank(cell) * model_->species.size()) ^
               get(0, t.cell_rank(c2) * model_->species.size());
    };
    return (pair_parity(a) ^ pair_parity(b)) ? -1.0 : 1.0;
}

double SpinState::wilson_loop(int mu, int nu, int a, int b) const {
    // species p <-> dual link direction p; rectangle a x b in the (mu, nu)
    // plane anchored at the origin
    const Torus &t = model_->torus;
    std::vector<int> c(t.d(), 0);
    int par = 0;
    size_t nsp = model_->species.size();
    for (int i = 0; i < a; i++) {
        c.assign(t.d(), 0);
        c[mu] = i;
        par ^= get(0, t.cell_rank(c) * nsp + mu);
        c[nu] = b;
        par ^= get(0, t.cell_rank(c) * nsp + mu);
    }
    for (int j = 0; j < b; j++) {
        c.assign(t.d(), 0);
        c[nu] = j;
        par ^= get(0, t.cell_rank(c) * nsp + nu);
        c[mu] = a;
        par ^= get(0, t.cell_rank(c) * nsp + nu);
    }
    return par ? -1.0 : 1.0;
}

double SpinState::order_parameter(OrderParam op) const {
    switch (op) {
        case OrderParam::Magnetization: {
            double s = 0;
            for (size_t u = 0; u < nspins_; u++) {
                s += get(0, u) ? -1.0 : 1.0;
            }
            return std::abs(s) / (double)nspins_;
        }
        case OrderParam::FukiNuke:
        case OrderParam::FukiNukeAcat: {
            double s = 0;
            for (int ax = 0; ax < model_->torus.d(); ax++) {
                s += fukinuke_component(ax);
            }
            return s / model_->torus.d();
        }
        case OrderParam::Energy:
        default:
            return energy_ / (double)nspins_;
    }
}

void SpinState::thermalize_and_measure() {
    for (int s = 0; s < cfg_.thermalization; s++) {
        sweep();
        if (cfg_.audit_interval && s % cfg_.audit_interval == cfg_.audit_interval - 1) {
            double full = total_energy_from_scratch();
            if (std::abs(full - energy_) > 1e-9 * std::max(1.0, std::abs(full))) {
                throw std::logic_error("SpinState: incremental energy audit failed");
            }
            energy_ = full;
        }
    }
    accepted_ = attempted_ = 0;
    Binning e, e2, m1, m2, m4;
    Binning fk[3];
    uint64_t h = 0xcbf29ce484222325ull;
    int nmeas = 0;
    for (int s = 0; s < cfg_.sweeps; s++) {
        sweep();
        if (cfg_.audit_interval && s % cfg_.audit_interval == cfg_.audit_interval - 1) {
            double full = total_energy_from_scratch();
            if (std::abs(full - energy_) > 1e-9 * std::max(1.0, std::abs(full))) {
                throw std::logic_error("SpinState: incremental energy audit failed");
            }
            energy_ = full;
        }
        if (s % cfg_.interval) {
            continue;
        }
        nmeas++;
        double epers = energy_ / (double)nspins_;
        e.add(epers);
        e2.add(energy_ * energy_);
        double m = order_parameter(op_);
        m1.add(m);
        m2.add(m * m);
        m4.add(m * m * m * m);
        if (op_ == OrderParam::FukiNuke || op_ == OrderParam::FukiNukeAcat) {
            for (int ax = 0; ax < model_->torus.d() && ax < 3; ax++) {
                fk[ax].add(fukinuke_component(ax));
            }
        }
        h = mix64(h ^ (uint64_t)std::llround(energy_ * 4096.0) ^
                  mix64((uint64_t)std::llround(m * 1048576.0)));
    }
    rec_.spins = nspins_ * flavors_;
    rec_.energy = e.mean();
    rec_.energy_err = e.err();
    double emean = e.mean() * nspins_;
    rec_.specific_heat = (e2.mean() - emean * emean) / (double)nspins_;
    rec_.m_abs = m1.mean();
    rec_.m2 = m2.mean();
    rec_.m4 = m4.mean();
    double den = 3.0 * rec_.m2 * rec_.m2;
    rec_.binder = den > 0 ? 1.0 - rec_.m4 / den : 0.0;
    // error propagation via bin spread of m2, m4
    double dm2 = m2.err(), dm4 = m4.err();
    if (den > 0) {
        double db = std::sqrt(std::pow(dm4 / den, 2) +
                              std::pow(2.0 * rec_.m4 * dm2 / (den * rec_.m2), 2));
        rec_.binder_err = db;
    }
    for (int ax = 0; ax < 3; ax++) {
        rec_.fukinuke[ax] = fk[ax].mean();
    }
    rec_.accept_ratio = attempted_ ? (double)accepted_ / (double)attempted_ : 0.0;
    rec_.record_hash = h;
}

MeasurementRecord run_chain(const SMModel &model, const MCConfig &cfg, OrderParam op) {
    SpinState st(model, cfg);
    st.set_order_param(op);
    st.thermalize_and_measure();
    return st.record();
}

MeasurementRecord run_chain_pair(const SMModel &model, const MCConfig &cfg, OrderParam op) {
    MCConfig hot = cfg;
    hot.hot_start = true;
    hot.seed = chain_seed(cfg.seed, 0);
    MCConfig cold = cfg;
    cold.hot_start = false;
    cold.seed = chain_seed(cfg.seed, 1);
    MeasurementRecord a = run_chain(model, hot, op);
    MeasurementRecord b = run_chain(model, cold, op);
    MeasurementRecord r = a;
    r.energy = 0.5 * (a.energy + b.energy);
    r.energy_err = 0.5 * std::hypot(a.energy_err, b.energy_err) +
                   0.5 * std::abs(a.energy - b.energy);
    r.specific_heat = 0.5 * (a.specific_heat + b.specific_heat);
    r.m_abs = 0.5 * (a.m_abs + b.m_abs);
    r.m2 = 0.5 * (a.m2 + b.m2);
    r.m4 = 0.5 * (a.m4 + b.m4);
    double den = 3.0 * r.m2 * r.m2;
    r.binder = den > 0 ? 1.0 - r.m4 / den : 0.0;
    r.binder_err = 0.5 * std::hypot(a.binder_err, b.binder_err) +
                   0.5 * std::abs(a.binder - b.binder);
    for (int ax = 0; ax < 3; ax++) {
        r.fukinuke[ax] = 0.5 * (a.fukinuke[ax] + b.fukinuke[ax]);
    }
    r.record_hash = mix64(a.record_hash ^ mix64(b.record_hash));
    return r;
}

BetaCEstimate estimate_beta_c(const std::function<SMModel(int, double)> &factory,
                              const std::vector<int> &sizes, const std::vector<double> &betas,
                              const MCConfig &cfg, OrderParam op, int threads) {
    if (sizes.size() < 2) {
        throw std::invalid_argument("estimate_beta_c: need >= 2 sizes");
    }
    BetaCEstimate out;
    // deterministic parallel fan-out over (size, beta)
    std::vector<BinderPoint> pts(sizes.size() * betas.size());
    std::vector<std::future<BinderPoint>> futs;
    size_t max_threads = threads > 0 ? (size_t)threads : 8;
    std::vector<std::pair<size_t, size_t>> tasks;
    for (size_t si = 0; si < sizes.size(); si++) {
        for (size_t bi = 0; bi < betas.size(); bi++) {
            tasks.push_back({si, bi});
        }
    }
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            size_t k = cursor.fetch_add(1);
            if (k >= tasks.size()) {
                return;
            }
            auto [si, bi] = tasks[k];
            SMModel model = factory(sizes[si], betas[bi]);
            MCConfig c = cfg;
            c.seed = chain_seed(cfg.seed, 1000 * si + bi);
            MeasurementRecord r = run_chain_pair(model, c, op);
            BinderPoint p;
            p.size = sizes[si];
            p.beta = betas[bi];
            p.binder = r.binder;
            p.binder_err = r.binder_err;
            p.energy = r.energy;
            p.order = r.m_abs;
            pts[si * betas.size() + bi] = p;
        }
    };
    std::vector<std::thread> pool;
    for (size_t k = 0; k < std::min(max_threads, tasks.size()); k++) {
        pool.emplace_back(worker);
    }
    for (auto &th : pool) {
        th.join();
    }
    out.points = pts;
    if (op == OrderParam::Energy) {
        // gauge-like models have no magnetization; locate the transition from
        // the steepest energy slope of the largest size
        size_t si = sizes.size() - 1;
        size_t best = 0;
        double bestc = -1.0;
        for (size_t bi = 1; bi + 1 < betas.size(); bi++) {
            double slope = std::abs(pts[si * betas.size() + bi + 1].energy -
                                    pts[si * betas.size() + bi - 1].energy);
            if (slope > bestc) {
                bestc = slope;
                best = bi;
            }
        }
        out.found = betas.size() >= 3;
        out.beta_c = out.found ? betas[best] : 0.0;
        out.err = betas.size() > 1 ? (betas[1] - betas[0]) : 0.0;
        out.diagnostics = "energy-slope peak (gauge-like model, no magnetization)";
        return out;
    }
    // crossings of adjacent size pairs
    std::vector<double> crossings;
    double grid_step = betas.size() > 1 ? betas[1] - betas[0] : 0.0;
    for (size_t si = 0; si + 1 < sizes.size(); si++) {
        for (size_t bi = 0; bi + 1 < betas.size(); bi++) {
            double d0 = pts[si * betas.size() + bi].binder - pts[(si + 1) * betas.size() + bi].binder;
            double d1 = pts[si * betas.size() + bi + 1].binder -
                        pts[(si + 1) * betas.size() + bi + 1].binder;
            if (d0 == 0.0) {
                crossings.push_back(betas[bi]);
            } else if ((d0 > 0) != (d1 > 0)) {
                double frac = d0 / (d0 - d1);
                crossings.push_back(betas[bi] + frac * (betas[bi + 1] - betas[bi]));
            }
        }
    }
    if (crossings.empty()) {
        out.found = false;
        out.diagnostics = "no Binder crossing in the beta grid";
        return out;
    }
    std::sort(crossings.begin(), crossings.end());
    out.found = true;
    out.beta_c = crossings[crossings.size() / 2];
    double spread = crossings.back() - crossings.front();
    out.err = std::max(0.5 * grid_step, 0.5 * spread);
    return out;
}

FreeEnergyDiff free_energy_difference(const SMModel &base, const SMModel &variant,
                                      const MCConfig &cfg, int gl_points) {
    if (base.bonds.size() != variant.bonds.size()) {
        throw std::invalid_argument("free_energy_difference: models do not overlap");
    }
    std::vector<uint32_t> diff;
    for (uint32_t b = 0; b < base.bonds.size(); b++) {
        if (base.bonds[b].flip_mask != variant.bonds[b].flip_mask) {
            diff.push_back(b);
        }
        if (base.bonds[b].pinned != variant.bonds[b].pinned) {
            throw std::invalid_argument(
                "free_energy_difference: pinned variants are not integrable; "
                "use exact enumeration");
        }
    }
    if (diff.empty()) {
        return {};
    }
    // Gauss-Legendre nodes on [0,1]
    static const double kNodes11[] = {0.010885670926972, 0.056468700115952, 0.134923997212975,
                                      0.240451935396594, 0.365228422023827, 0.5,
                                      0.634771577976172, 0.759548064603406, 0.865076002787025,
                                      0.943531299884048, 0.989114329073028};
    static const double kWts11[] = {0.027834283558087, 0.062790184732452, 0.093145105463867,
                                    0.116596882295995, 0.131402272255123, 0.136462543388950,
                                    0.131402272255123, 0.116596882295995, 0.093145105463867,
                                    0.062790184732452, 0.027834283558087};
    if (gl_points != 11) {
        throw std::invalid_argument("free_energy_difference: only the 11-point grid is built in");
    }
    FreeEnergyDiff out;
    double acc = 0.0, err2 = 0.0;
    std::vector<std::future<std::pair<double, double>>> futs;
    for (int k = 0; k < gl_points; k++) {
        futs.push_back(std::async(std::launch::async, [&, k]() {
            double lambda = kNodes11[k];
            SMModel m = base;
            for (uint32_t b : diff) {
                m.bonds[b].coupling *= (1.0 - 2.0 * lambda);
            }
            MCConfig c = cfg;
            c.seed = chain_seed(cfg.seed, 7000 + k);
            SpinState st(m, c);
            st.set_order_param(OrderParam::Energy);
            for (int s = 0; s < c.thermalization; s++) {
                st.sweep();
            }
            Binning obs;
            for (int s = 0; s < c.sweeps; s++) {
                st.sweep();
                if (s % c.interval) {
                    continue;
                }
                // dH/dlambda = sum over flipped bonds of 2 c (sum_m tau + prod_m tau)
                double o = 0.0;
                for (uint32_t b : diff) {
                    double sum = 0.0;
                    int prodneg = 0;
                    for (int f = 0; f < st.model().flavors(); f++) {
                        int bit = 0;
                        {
                            const SMModel::Bond &bb = st.model().bonds[b];
                            int par = 0;
                            for (uint32_t sp : bb.spins) {
                                par ^= st.get(f, sp);
                            }
                            bit = par ^ (int)((bb.flip_mask >> f) & 1);
                        }
                        sum += bit ? -1.0 : 1.0;
                        prodneg ^= bit;
                    }
                    if (st.model().replica_product) {
                        sum += prodneg ? -1.0 : 1.0;
                    }
                    o += 2.0 * base.bonds[b].coupling * sum;
                }
                obs.add(o);
            }
            return std::make_pair(obs.mean(), obs.err());
        }));
    }
    for (int k = 0; k < gl_points; k++) {
        auto [m, e] = futs[k].get();
        out.node_values.push_back(m);
        acc += kWts11[k] * m;
        err2 += kWts11[k] * kWts11[k] * e * e;
    }
    out.dF = acc;
    out.err = std::sqrt(err2);
    return out;
}

std::vector<DisorderPoint> disorder_scan(const CodeSpec &code, const std::string &channel_name,
                                         const Torus &t, int n, const std::vector<double> &ps,
                                         int realizations, const MCConfig &cfg) {
    if (realizations < 1) {
        throw std::invalid_argument("disorder_scan: realizations >= 1");
    }
    std::vector<DisorderPoint> out;
    for (double p : ps) {
        ChannelSpec ch = builtin_channel(channel_name, code, p);
        DisorderPoint pt;
        pt.p = p;
        pt.realizations = realizations;
        Binning frac, energy;
        for (int r = 0; r < realizations; r++) {
            ErrorConfig ec = sample_error_config(ch, t, chain_seed(cfg.seed, 31 * r + 1));
            size_t sites = ch.generators.size() * t.n_cells();
            frac.add((double)ec.flipped_sites / (double)sites);
            SMModel m = random_bond_model(code, ch, t, n, ec);
            MCConfig c = cfg;
            c.seed = chain_seed(cfg.seed, 997 * r + 13);
            MeasurementRecord rec = run_chain(m, c, OrderParam::Energy);
            energy.add(rec.energy);
        }
        pt.flipped_fraction = frac.mean();
        pt.flipped_fraction_err = frac.err(std::max(2, realizations / 2));
        pt.energy = energy.mean();
        pt.energy_err = energy.err(std::max(2, realizations / 2));
        out.push_back(pt);
    }
    return out;
}

}  // namespace stabsm
