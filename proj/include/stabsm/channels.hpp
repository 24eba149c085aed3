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

#ifndef STABSM_CHANNELS_HPP
#define STABSM_CHANNELS_HPP

#include <string>
#include <vector>

#include "stabsm/codes.hpp"
#include "stabsm/poly.hpp"

namespace stabsm {

/// One Pauli error generator, applied independently at every unit cell with
/// probability p. The pattern may span multiple cells.
struct ErrorGenerator {
    std::string name;
    PolyVec pattern;
    double p = 0.0;
};

struct ChannelSpec {
    std::string name;
    std::vector<ErrorGenerator> generators;
};

/// mu = -ln(1-2p). Monotone and convex on [0, 1/2); p = 1/2 maps to the
/// infinite-coupling sentinel (+inf); p > 1/2 or p < 0 is rejected.
double mu(double p);

/// Inverse of the threshold convention mu_c = beta_c: p = (1 - e^-beta)/2.
double p_of_beta(double beta);

/// Scalar commutator of two Pauli polynomial vectors with b translated by
/// `offset`: +1 if they commute, -1 if they anticommute.
int scalar_commutator(const PolyVec &a, const PolyVec &b, const Mono &offset);

/// Built-in channels, expanded against a code (one generator per qubit
/// sublabel): bitflip, phase, both, y, xx, psi. `psi` and `xx` are 2D-toric
/// style presets and require d = 2, l = 2.
///
/// psi follows the single-layer fuki-nuke reading of the correlated-fermion
/// channel: Z(q1)@0 with X(q2)@x, and Z(q2)@0 with X(q1)@y. xx is a
/// correlated bit-flip on two collinear adjacent sites.
ChannelSpec builtin_channel(const std::string &name, const CodeSpec &code, double p);
std::vector<std::string> builtin_channel_names();

}  // namespace stabsm

#endif
