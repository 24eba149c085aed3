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

#ifndef STABSM_CODES_HPP
#define STABSM_CODES_HPP

#include <optional>
#include <string>
#include <vector>

#include "stabsm/lattice.hpp"
#include "stabsm/poly.hpp"

namespace stabsm {

enum class StabType { Z, X, Mixed };

/// One logical pair, already instantiated on a torus.
struct LogicalPair {
    std::string label;
    PauliBits zbar, xbar;
};

/// A translation-invariant stabilizer code: the polynomial stabilizer map S
/// (2l x m, Z block in rows 0..l-1) plus per-type labels and, for built-ins,
/// a torus-parameterized logical-operator generator.
struct CodeSpec {
    std::string name;
    int d = 0;
    int l = 0;
    PolyMatrix S;
    std::vector<std::string> type_names;
    std::vector<StabType> type_labels;
    bool css = false;
    bool has_logicals = false;

    int n_types() const { return S.cols(); }
    Torus torus(const std::vector<int> &dims) const { return Torus(dims, l); }
    PolyMatrix excitation() const { return excitation_map(S); }

    /// Canonical logical pairs on the given torus (empty when none are known).
    std::vector<LogicalPair> logicals(const Torus &t) const;
};

/// Built-in registry: toric2d, toric3d, xcube, cblt. Throws on unknown names.
CodeSpec builtin_code(const std::string &name);
std::vector<std::string> builtin_code_names();

/// Parity-check matrices of a CSS code: H_Z rows are Z-stabilizer supports,
/// H_X rows are X-stabilizer supports, columns are qubits. H_X H_Z^T = 0 is
/// verified before returning; non-CSS input is rejected.
struct ChainComplex {
    F2Matrix HX, HZ;
    size_t k = 0;  // N - rank(HX) - rank(HZ)
};
ChainComplex chain_complex(const CodeSpec &code, const Torus &t);

/// Per-pattern validation report.
struct LogicalReport {
    bool ok = false;
    size_t pair_count = 0;   // after reduction; equals the code's logical count
    size_t raw_count = 0;    // candidate pairs before reduction
    std::vector<std::string> failures;
};

/// Checks: every pattern commutes with every instantiated stabilizer, is not
/// itself a stabilizer product, anticommutes with exactly its partner, and the
/// set has cardinality 2*logical_count and is independent modulo the
/// stabilizer group.
LogicalReport validate_logicals(const CodeSpec &code, const Torus &t);

}  // namespace stabsm

#endif
