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

#include "ansatzforge/bundle.h"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ansatzforge/error.h"
#include "json.hpp"

namespace ansatzforge {

using nlohmann::json;

std::string occupation_string(std::uint64_t occupation, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((occupation >> q) & 1) s[q] = '1';
    }
    return s;
}

std::string tuple_key(const std::vector<int> &indices) {
    std::string s = "(";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(indices[i]);
    }
    return s + ")";
}

std::vector<int> parse_tuple_key(std::string_view key) {
    if (key.size() < 2 || key.front() != '(' || key.back() != ')') {
        throw validation_error("bad excitation key '" + std::string(key) + "'");
    }
    std::vector<int> out;
    std::string body(key.substr(1, key.size() - 2));
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception &) {
            throw validation_error("bad excitation key '" + std::string(key) + "'");
        }
        if (used != item.size()) throw validation_error("bad excitation key '" + std::string(key) + "'");
        out.push_back(v);
    }
    if (out.size() != 2 && out.size() != 4) {
        throw validation_error("excitation key '" + std::string(key) + "' needs 2 or 4 indices");
    }
    return out;
}

double diagonal_expectation(const PauliSum &h, std::uint64_t basis) {
    Complex e = 0.0;
    for (const auto &t : h.terms()) {
        if (t.x == 0) e += pauli_phase(t, basis);
    }
    return e.real();
}

double hf_energy_check(const MoleculeBundle &bundle) {
    return diagonal_expectation(bundle.hamiltonian, bundle.hf_occupation);
}

void validate_bundle(const MoleculeBundle &b) {
    if (b.schema_version != kBundleSchemaVersion) {
        throw validation_error("unknown schema_version " + std::to_string(b.schema_version));
    }
    const auto &as = b.active_space;
    if (as.n_spatial_orbitals <= 0 || as.n_qubits() > kMaxQubits) {
        throw validation_error("n_spatial_orbitals out of range");
    }
    if (as.n_electrons <= 0 || as.n_electrons % 2 != 0 || as.n_electrons > as.n_qubits()) {
        throw validation_error("n_electrons must be even and in (0, n_qubits]");
    }
    if (b.hamiltonian.qubit_extent() > as.n_qubits()) {
        throw validation_error("hamiltonian acts outside the " + std::to_string(as.n_qubits()) + "-qubit register");
    }
    if (b.hamiltonian.max_imag() > 1e-12) throw validation_error("hamiltonian is not Hermitian");
    if (b.hf_occupation >> as.n_qubits()) throw validation_error("hf_occupation longer than register");
    if (std::popcount(b.hf_occupation) != as.n_electrons) {
        throw validation_error("hf_occupation has " + std::to_string(std::popcount(b.hf_occupation)) +
                               " electrons, expected " + std::to_string(as.n_electrons));
    }
    if (!std::isfinite(b.hf_energy)) throw validation_error("hf_energy not finite");
    double e = hf_energy_check(b);
    if (std::abs(e - b.hf_energy) > kHfEnergyTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "hf_energy " << b.hf_energy << " disagrees with <HF|H|HF> = " << e;
        throw validation_error(msg.str());
    }
    if (b.fci_energy) {
        if (!std::isfinite(*b.fci_energy)) throw validation_error("fci_energy not finite");
        if (*b.fci_energy > b.hf_energy + kHfEnergyTolerance) throw validation_error("fci_energy above hf_energy");
    }
    for (const auto &[key, value] : b.mp2_amplitudes) {
        check_excitation_indices(key, as.n_qubits());
        if (!std::isfinite(value)) throw validation_error("mp2 amplitude " + tuple_key(key) + " not finite");
    }
}

namespace {

template <typename T>
T required(const json &j, const char *key) {
    if (!j.contains(key)) throw validation_error(std::string("bundle: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw validation_error(std::string("bundle: field '") + key + "' has the wrong type");
    }
}

}  // namespace

MoleculeBundle parse_bundle(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw validation_error(std::string("bundle: parse error: ") + e.what());
    }
    if (!j.is_object()) throw validation_error("bundle: expected a JSON object");

    MoleculeBundle b;
    b.schema_version = required<int>(j, "schema_version");
    if (b.schema_version != kBundleSchemaVersion) {
        throw validation_error("unknown schema_version " + std::to_string(b.schema_version));
    }
    b.name = required<std::string>(j, "name");
    b.geometry_label = required<std::string>(j, "geometry_label");
    b.active_space.n_electrons = required<int>(j, "n_electrons");
    b.active_space.n_spatial_orbitals = required<int>(j, "n_spatial_orbitals");
    if (b.active_space.n_spatial_orbitals <= 0 || b.active_space.n_qubits() > kMaxQubits) {
        throw validation_error("n_spatial_orbitals out of range");
    }

    if (!j.contains("hamiltonian") || !j["hamiltonian"].is_array()) {
        throw validation_error("bundle: 'hamiltonian' must be an array");
    }
    std::vector<PauliString> terms;
    for (const auto &entry : j["hamiltonian"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_string()) {
            throw validation_error("bundle: hamiltonian entries are [coefficient, word]");
        }
        Complex c;
        if (entry[0].is_number()) {
            c = entry[0].get<double>();
        } else if (entry[0].is_array() && entry[0].size() == 2 && entry[0][0].is_number() &&
                   entry[0][1].is_number()) {
            c = Complex(entry[0][0].get<double>(), entry[0][1].get<double>());
        } else {
            throw validation_error("bundle: bad hamiltonian coefficient");
        }
        terms.push_back(PauliString::parse(entry[1].get<std::string>(), c));
    }
    b.hamiltonian = PauliSum(std::move(terms));

    auto occ = required<std::string>(j, "hf_occupation");
    if (static_cast<int>(occ.size()) != b.active_space.n_qubits()) {
        throw validation_error("hf_occupation length " + std::to_string(occ.size()) + " != n_qubits " +
                               std::to_string(b.active_space.n_qubits()));
    }
    for (std::size_t q = 0; q < occ.size(); ++q) {
        if (occ[q] == '1') {
            b.hf_occupation |= std::uint64_t{1} << q;
        } else if (occ[q] != '0') {
            throw validation_error("hf_occupation must contain only 0 and 1");
        }
    }
    b.hf_energy = required<double>(j, "hf_energy");

    if (j.contains("mp2_amplitudes")) {
        if (!j["mp2_amplitudes"].is_object()) throw validation_error("bundle: 'mp2_amplitudes' must be an object");
        for (auto it = j["mp2_amplitudes"].begin(); it != j["mp2_amplitudes"].end(); ++it) {
            if (!it.value().is_number()) throw validation_error("bundle: mp2 amplitude must be a number");
            b.mp2_amplitudes[parse_tuple_key(it.key())] = it.value().get<double>();
        }
    }
    if (j.contains("fci_energy") && !j["fci_energy"].is_null()) b.fci_energy = required<double>(j, "fci_energy");

    validate_bundle(b);
    return b;
}

MoleculeBundle load_bundle(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open bundle '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bundle(ss.str());
}

std::string write_bundle(const MoleculeBundle &b) {
    json j;  // std::map backed, so keys come out sorted
    j["schema_version"] = b.schema_version;
    j["name"] = b.name;
    j["geometry_label"] = b.geometry_label;
    j["n_electrons"] = b.active_space.n_electrons;
    j["n_spatial_orbitals"] = b.active_space.n_spatial_orbitals;
    json ham = json::array();
    for (const auto &t : b.hamiltonian.terms()) {
        if (t.coefficient.imag() == 0.0) {
            ham.push_back({t.coefficient.real(), t.word()});
        } else {
            ham.push_back({{t.coefficient.real(), t.coefficient.imag()}, t.word()});
        }
    }
    j["hamiltonian"] = std::move(ham);
    j["hf_occupation"] = occupation_string(b.hf_occupation, b.n_qubits());
    j["hf_energy"] = b.hf_energy;
    json amps = json::object();
    for (const auto &[key, value] : b.mp2_amplitudes) amps[tuple_key(key)] = value;
    j["mp2_amplitudes"] = std::move(amps);
    j["fci_energy"] = b.fci_energy ? json(*b.fci_energy) : json(nullptr);
    return j.dump(1) + "\n";
}

}  // namespace ansatzforge
