// Copyright 2026 The AnsatzForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANSATZFORGE_BUNDLE_H
#define ANSATZFORGE_BUNDLE_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ansatzforge/pauli.h"

namespace ansatzforge {

inline constexpr int kBundleSchemaVersion = 1;

/// Tolerance for the stored HF energy against the recomputed diagonal expectation.
inline constexpr double kHfEnergyTolerance = 1e-8;

struct ActiveSpace {
    int n_electrons = 0;
    int n_spatial_orbitals = 0;

    int n_qubits() const { return 2 * n_spatial_orbitals; }
    /// Occupied spatial orbitals per spin in the reference determinant.
    int n_occupied() const { return n_electrons / 2; }
    bool operator==(const ActiveSpace &) const = default;
};

/// One molecule at one geometry, as written by the exporter.
///
/// Spin orbitals 0..N_o-1 are alpha and N_o..2N_o-1 are beta; qubit q holds
/// spin orbital q.
struct MoleculeBundle {
    int schema_version = kBundleSchemaVersion;
    std::string name;
    std::string geometry_label;
    ActiveSpace active_space;
    PauliSum hamiltonian;
    /// Bit q set when qubit q is occupied.
    std::uint64_t hf_occupation = 0;
    double hf_energy = 0.0;
    std::map<std::vector<int>, double> mp2_amplitudes;
    std::optional<double> fci_energy;

    int n_qubits() const { return active_space.n_qubits(); }
};

/// Parses and validates bundle JSON text. Malformed JSON and every broken
/// invariant raise a validation error.
MoleculeBundle parse_bundle(std::string_view text);
MoleculeBundle load_bundle(const std::string &path);

/// Canonical JSON (sorted keys) that parse_bundle reads back bit-exactly.
std::string write_bundle(const MoleculeBundle &bundle);

/// Checks every invariant; throws a validation error naming the first failure.
void validate_bundle(const MoleculeBundle &bundle);

/// <b|H|b> for a computational basis state, from the diagonal (x = 0) terms.
double diagonal_expectation(const PauliSum &h, std::uint64_t basis);

/// <HF|H|HF> recomputed from the Hamiltonian and stored occupation.
double hf_energy_check(const MoleculeBundle &bundle);

/// "1100..." with character q for qubit q.
std::string occupation_string(std::uint64_t occupation, int n_qubits);

/// "(p,q)" or "(p,q,r,s)".
std::string tuple_key(const std::vector<int> &indices);
std::vector<int> parse_tuple_key(std::string_view key);

}  // namespace ansatzforge

#endif
