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

#include "stabsm/dense.hpp"

#include <bit>
#include <stdexcept>

namespace stabsm {

namespace {

uint64_t lowbits(const BitVec &v) {
    return v.words().empty() ? 0 : v.words()[0];
}

// rho <- (rho + S rho)/2 with S = X^x Z^z:  (S M)_{ij} = (-1)^{z.(i^x)} M_{i^x, j}
void apply_projector(Eigen::MatrixXd &rho, uint64_t zmask, uint64_t xmask) {
    Eigen::MatrixXd out(rho.rows(), rho.cols());
    const uint64_t dim = (uint64_t)rho.rows();
    for (uint64_t i = 0; i < dim; i++) {
        uint64_t ix = i ^ xmask;
        double s = (std::popcount(zmask & ix) & 1) ? -1.0 : 1.0;
        out.row(i) = 0.5 * (rho.row(i) + s * rho.row(ix));
    }
    rho = std::move(out);
}

}  // namespace

void pauli_conjugate(Eigen::MatrixXd &rho, uint64_t zmask, uint64_t xmask) {
    const uint64_t dim = (uint64_t)rho.rows();
    Eigen::MatrixXd out(dim, dim);
    for (uint64_t i = 0; i < dim; i++) {
        uint64_t ix = i ^ xmask;
        double si = (std::popcount(zmask & ix) & 1) ? -1.0 : 1.0;
        for (uint64_t j = 0; j < dim; j++) {
            uint64_t jx = j ^ xmask;
            double sj = (std::popcount(zmask & jx) & 1) ? -1.0 : 1.0;
            out(i, j) = si * sj * rho(ix, jx);
        }
    }
    rho = std::move(out);
}

void DenseOracle::check_cap(size_t qubits) const {
    if (qubits > cap) {
        throw std::invalid_argument("dense oracle cap exceeded: " + std::to_string(qubits) +
                                    " qubits > cap " + std::to_string(cap));
    }
    if (qubits > 24) {
        throw std::invalid_argument("dense oracle hard limit exceeded");
    }
}

Eigen::MatrixXd DenseOracle::ground_state(const CodeSpec &code, const Torus &t) const {
    size_t N = t.n_qubits();
    check_cap(N);
    uint64_t dim = uint64_t{1} << N;
    Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(dim, dim);
    for (const PauliBits &s : instantiate_all(code.S, t)) {
        apply_projector(rho, lowbits(s.z), lowbits(s.x));
    }
    rho /= rho.trace();
    return rho;
}

void DenseOracle::apply_channel(Eigen::MatrixXd &rho, const ChannelSpec &channel,
                                const Torus &t) const {
    for (const ErrorGenerator &g : channel.generators) {
        for (size_t cc = 0; cc < t.n_cells(); cc++) {
            PauliBits p = instantiate_pauli(g.pattern, t, t.cell_coords(cc));
            Eigen::MatrixXd conj = rho;
            pauli_conjugate(conj, lowbits(p.z), lowbits(p.x));
            rho = (1.0 - g.p) * rho + g.p * conj;
        }
    }
}

Eigen::MatrixXd DenseOracle::corrupted_state(const CodeSpec &code, const Torus &t,
                                             const ChannelSpec &channel) const {
    Eigen::MatrixXd rho = ground_state(code, t);
    apply_channel(rho, channel, t);
    return rho;
}

Eigen::MatrixXd DenseOracle::corrupted_state_rq(const CodeSpec &code, const Torus &t,
                                                const ChannelSpec &channel) const {
    std::vector<LogicalPair> pairs = code.logicals(t);
    if (pairs.empty()) {
        throw std::invalid_argument("corrupted_state_rq: code has no logical patterns");
    }
    size_t N = t.n_qubits();
    size_t NN = N + pairs.size();
    check_cap(NN);
    uint64_t dim = uint64_t{1} << NN;
    Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(dim, dim);
    for (const PauliBits &s : instantiate_all(code.S, t)) {
        apply_projector(rho, lowbits(s.z), lowbits(s.x));
    }
    for (size_t g = 0; g < pairs.size(); g++) {
        uint64_t anc = uint64_t{1} << (N + g);
        apply_projector(rho, lowbits(pairs[g].zbar.z) | anc, lowbits(pairs[g].zbar.x));
        apply_projector(rho, lowbits(pairs[g].xbar.z), lowbits(pairs[g].xbar.x) | anc);
    }
    rho /= rho.trace();
    for (const ErrorGenerator &gen : channel.generators) {
        for (size_t cc = 0; cc < t.n_cells(); cc++) {
            PauliBits p = instantiate_pauli(gen.pattern, t, t.cell_coords(cc));
            Eigen::MatrixXd conj = rho;
            pauli_conjugate(conj, lowbits(p.z), lowbits(p.x));
            rho = (1.0 - gen.p) * rho + gen.p * conj;
        }
    }
    return rho;
}

double dense_moment(const Eigen::MatrixXd &rho, int n) {
    if (n == 1) {
        return rho.trace();
    }
    if (n == 2) {
        return (rho.array() * rho.transpose().array()).sum();
    }
    Eigen::MatrixXd acc = rho;
    for (int k = 2; k < n; k++) {
        acc = acc * rho;
    }
    return (acc.array() * rho.transpose().array()).sum();
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd &rho, size_t n_qubits,
                                  const std::vector<size_t> &region) {
    uint64_t amask = 0;
    for (size_t q : region) {
        amask |= uint64_t{1} << q;
    }
    const uint64_t dim = uint64_t{1} << n_qubits;
    Eigen::MatrixXd out(dim, dim);
    for (uint64_t i = 0; i < dim; i++) {
        for (uint64_t j = 0; j < dim; j++) {
            uint64_t ip = (i & ~amask) | (j & amask);
            uint64_t jp = (j & ~amask) | (i & amask);
            out(i, j) = rho(ip, jp);
        }
    }
    return out;
}

}  // namespace stabsm
