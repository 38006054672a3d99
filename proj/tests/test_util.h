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

#ifndef ANSATZFORGE_TESTS_TEST_UTIL_H
#define ANSATZFORGE_TESTS_TEST_UTIL_H

#include <string>

#include "ansatzforge/bundle.h"

namespace ansatzforge::testing {

inline std::string fixture(const std::string &name) { return std::string(ANSATZFORGE_FIXTURES_DIR) + "/" + name; }

inline MoleculeBundle load_fixture(const std::string &name) { return load_bundle(fixture(name + ".json")); }

/// Two electrons in two spatial orbitals with a purely diagonal Hamiltonian
/// plus one hopping term, small enough to reason about by hand.
inline MoleculeBundle toy_bundle() {
    MoleculeBundle b;
    b.name = "toy";
    b.geometry_label = "0";
    b.active_space = {2, 2};
    b.hamiltonian = PauliSum({PauliString::parse("", -1.0), PauliString::parse("Z0", 0.5), PauliString::parse("Z2", 0.5),
                              PauliString::parse("Z1", -0.25), PauliString::parse("Z3", -0.25),
                              PauliString::parse("X0 X1 X2 X3", 0.1)});
    b.hf_occupation = 0b0101;
    b.hf_energy = diagonal_expectation(b.hamiltonian, b.hf_occupation);
    b.mp2_amplitudes = {{{1, 0}, 0.0}, {{3, 2}, 0.0}, {{3, 1, 0, 2}, 0.05}, {{1, 3, 2, 0}, 0.05}};
    return b;
}

}  // namespace ansatzforge::testing

#endif
