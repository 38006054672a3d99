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

#ifndef ANSATZFORGE_POOL_H
#define ANSATZFORGE_POOL_H

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ansatzforge/bundle.h"
#include "ansatzforge/pauli.h"

namespace ansatzforge {

enum class PoolFlavor { kUccsd, kQeb };

std::string flavor_name(PoolFlavor flavor);
PoolFlavor parse_flavor(const std::string &name);

/// A spin-paired set of one or two excitations selected as a unit.
struct OperatorGroup {
    int id = 0;
    std::vector<ExcitationOp> members;
    /// One parameter for the whole group (fermionic pools) or one per member.
    bool shared_parameter = true;
    double mp2_weight = 0.0;
    int cnot_cost_total = 0;

    ExcitationKind kind() const { return members.front().kind; }
    int n_parameters() const { return shared_parameter ? 1 : static_cast<int>(members.size()); }
};

struct OperatorPool {
    std::vector<OperatorGroup> groups;
    PoolFlavor flavor = PoolFlavor::kUccsd;
    ActiveSpace active_space;
    CostModel cost_model;

    int size() const { return static_cast<int>(groups.size()); }
    int n_qubits() const { return active_space.n_qubits(); }
    const OperatorGroup &operator[](int id) const { return groups.at(id); }
};

/// Doubles restriction: decides from the MP2 amplitudes of a candidate
/// group's members whether the group enters the pool.
using DoublesRule = std::function<bool(std::span<const double> member_amplitudes)>;

/// Keeps a doubles group iff some member has |t| > 1e-12, i.e. drops the
/// groups that vanish by spatial or spin symmetry.
bool nonzero_mp2_rule(std::span<const double> member_amplitudes);
/// Keeps every spin-allowed doubles group.
bool keep_all_rule(std::span<const double> member_amplitudes);

struct PoolOptions {
    CostModel cost_model;
    DoublesRule doubles_rule = nonzero_mp2_rule;
};

OperatorPool build_pool(const MoleculeBundle &bundle, PoolFlavor flavor, const PoolOptions &options = {});
OperatorPool build_uccsd_pool(const MoleculeBundle &bundle, const PoolOptions &options = {});
OperatorPool build_qeb_pool(const MoleculeBundle &bundle, const PoolOptions &options = {});

/// Stable descending sort by |weight|; ties keep ascending id.
std::vector<int> mp2_order(std::span<const double> weights);
std::vector<int> mp2_order(const OperatorPool &pool);

/// alpha <-> beta relabelling of spin-orbital indices.
std::vector<int> spin_flip(const std::vector<int> &indices, int n_spatial_orbitals);

/// Columns: group_id, kind, member_tuples, qubit_spans, cnot_cost_total, mp2_weight.
std::string pool_csv(const OperatorPool &pool);

}  // namespace ansatzforge

#endif
