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

#ifndef STABSM_DENSE_HPP
#define STABSM_DENSE_HPP

#include <Eigen/Dense>

#include "stabsm/channels.hpp"
#include "stabsm/codes.hpp"

namespace stabsm {

/// Brute-force density-matrix oracle. Everything here is real: a Pauli
/// conjugation P rho P^T is phase-free even for Y (the i's cancel), so states
/// stay in MatrixXd. Default qubit cap 12 (4096-dim).
constexpr size_t kDefaultDenseCap = 12;

struct DenseOracle {
    size_t cap = kDefaultDenseCap;

    /// Completely mixed ground-state density matrix: normalized product of
    /// stabilizer projectors.
    Eigen::MatrixXd ground_state(const CodeSpec &code, const Torus &t) const;

    /// Apply each generator as an exact Kraus map at every cell.
    void apply_channel(Eigen::MatrixXd &rho, const ChannelSpec &channel, const Torus &t) const;

    /// ground_state followed by apply_channel.
    Eigen::MatrixXd corrupted_state(const CodeSpec &code, const Torus &t,
                                    const ChannelSpec &channel) const;

    /// Ancilla-extended state rho_RQ: one ancilla per logical pair, fully
    /// entangled through X_anc*Xbar and Z_anc*Zbar projectors, then the
    /// channel applied to the system qubits.
    Eigen::MatrixXd corrupted_state_rq(const CodeSpec &code, const Torus &t,
                                       const ChannelSpec &channel) const;

    void check_cap(size_t qubits) const;
};

double dense_moment(const Eigen::MatrixXd &rho, int n);

/// Partial transpose over a set of qubits.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd &rho, size_t n_qubits,
                                  const std::vector<size_t> &region);

/// rho -> P rho P^T for a Pauli given as bit masks (z, x) over basis-index bits.
void pauli_conjugate(Eigen::MatrixXd &rho, uint64_t zmask, uint64_t xmask);

}  // namespace stabsm

#endif
