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

#include "ansatzforge/pool.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ansatzforge/error.h"

namespace ansatzforge {

std::string flavor_name(PoolFlavor flavor) { return flavor == PoolFlavor::kUccsd ? "uccsd" : "qeb"; }

PoolFlavor parse_flavor(const std::string &name) {
    if (name == "uccsd") return PoolFlavor::kUccsd;
    if (name == "qeb") return PoolFlavor::kQeb;
    throw validation_error("unknown pool flavor '" + name + "' (expected uccsd or qeb)");
}

bool nonzero_mp2_rule(std::span<const double> member_amplitudes) {
    return std::any_of(member_amplitudes.begin(), member_amplitudes.end(),
                       [](double t) { return std::abs(t) > 1e-12; });
}

bool keep_all_rule(std::span<const double>) { return true; }

std::vector<int> spin_flip(const std::vector<int> &indices, int n_spatial_orbitals) {
    std::vector<int> out = indices;
    for (int &i : out) i = i < n_spatial_orbitals ? i + n_spatial_orbitals : i - n_spatial_orbitals;
    return out;
}

namespace {

using Tuple = std::vector<int>;

// Candidate groups as member index tuples, before screening.
struct Candidate {
    std::vector<Tuple> members;
};

std::vector<Candidate> enumerate_singles(int n_occ, int n_orb) {
    std::vector<Candidate> out;
    for (int i = 0; i < n_occ; ++i) {
        for (int a = n_occ; a < n_orb; ++a) out.push_back({{{a, i}, {a + n_orb, i + n_orb}}});
    }
    return out;
}

std::vector<Candidate> enumerate_doubles(int n_occ, int n_orb) {
    const int nv = n_orb - n_occ;
    auto va = [&](int a) { return n_occ + a; };  // alpha virtual
    auto vb = [&](int a) { return n_occ + a + n_orb; };
    auto oa = [&](int i) { return i; };
    auto ob = [&](int i) { return i + n_orb; };
    std::vector<Candidate> out;
    // same spin: the alpha-alpha excitation paired with its beta-beta image
    for (int i = 0; i < n_occ; ++i) {
        for (int j = 0; j < i; ++j) {
            for (int a = 0; a < nv; ++a) {
                for (int b = 0; b < a; ++b) {
                    Tuple aa{va(b), va(a), oa(i), oa(j)};
                    out.push_back({{aa, spin_flip(aa, n_orb)}});
                }
            }
        }
    }
    // opposite spin
    for (int i = 0; i < n_occ; ++i) {
        for (int j = 0; j <= i; ++j) {
            for (int a = 0; a < nv; ++a) {
                for (int b = 0; b <= a; ++b) {
                    if (i == j && a == b) {
                        // maps onto itself under the spin flip
                        out.push_back({{{vb(a), va(a), oa(i), ob(i)}}});
                        continue;
                    }
                    Tuple ab1{vb(b), va(a), oa(i), ob(j)};
                    out.push_back({{ab1, spin_flip(ab1, n_orb)}});
                    if (i != j && a != b) {
                        Tuple ab3{vb(a), va(b), oa(i), ob(j)};
                        out.push_back({{ab3, spin_flip(ab3, n_orb)}});
                    }
                }
            }
        }
    }
    return out;
}

double lookup_amplitude(const MoleculeBundle &bundle, const Tuple &t) {
    auto it = bundle.mp2_amplitudes.find(t);
    if (it == bundle.mp2_amplitudes.end()) {
        throw validation_error("bundle '" + bundle.name + "' lacks an MP2 amplitude for " + tuple_key(t));
    }
    return it->second;
}

}  // namespace

OperatorPool build_pool(const MoleculeBundle &bundle, PoolFlavor flavor, const PoolOptions &options) {
    const ActiveSpace &as = bundle.active_space;
    const int n_orb = as.n_spatial_orbitals;
    const int n_occ = as.n_occupied();
    const int n = as.n_qubits();

    std::uint64_t aufbau = 0;
    for (int i = 0; i < n_occ; ++i) aufbau |= (std::uint64_t{1} << i) | (std::uint64_t{1} << (i + n_orb));
    if (bundle.hf_occupation != aufbau) {
        throw validation_error("pool construction expects the closed-shell aufbau reference " +
                               occupation_string(aufbau, n));
    }

    std::vector<Candidate> singles = enumerate_singles(n_occ, n_orb);
    std::vector<Candidate> doubles = enumerate_doubles(n_occ, n_orb);

    auto by_members = [](const Candidate &a, const Candidate &b) { return a.members < b.members; };
    for (auto *list : {&singles, &doubles}) {
        for (auto &c : *list) std::sort(c.members.begin(), c.members.end());
        std::sort(list->begin(), list->end(), by_members);
    }

    OperatorPool pool;
    pool.flavor = flavor;
    pool.active_space = as;
    pool.cost_model = options.cost_model;
    auto add = [&](const Candidate &c, ExcitationKind kind, const std::vector<double> &amps) {
        OperatorGroup g;
        g.id = pool.size();
        g.shared_parameter = flavor == PoolFlavor::kUccsd;
        for (std::size_t m = 0; m < c.members.size(); ++m) {
            ExcitationOp op = flavor == PoolFlavor::kUccsd ? jw_excitation(c.members[m], kind, n)
                                                           : qeb_excitation(c.members[m], kind, n);
            g.cnot_cost_total += cnot_cost(op, options.cost_model);
            g.mp2_weight = std::max(g.mp2_weight, std::abs(amps[m]));
            g.members.push_back(std::move(op));
        }
        pool.groups.push_back(std::move(g));
    };

    for (const auto &c : singles) {
        std::vector<double> amps;
        for (const auto &t : c.members) amps.push_back(lookup_amplitude(bundle, t));
        add(c, ExcitationKind::kSingle, amps);
    }
    for (const auto &c : doubles) {
        std::vector<double> amps;
        for (const auto &t : c.members) amps.push_back(lookup_amplitude(bundle, t));
        if (options.doubles_rule(amps)) add(c, ExcitationKind::kDouble, amps);
    }
    return pool;
}

OperatorPool build_uccsd_pool(const MoleculeBundle &bundle, const PoolOptions &options) {
    return build_pool(bundle, PoolFlavor::kUccsd, options);
}

OperatorPool build_qeb_pool(const MoleculeBundle &bundle, const PoolOptions &options) {
    return build_pool(bundle, PoolFlavor::kQeb, options);
}

std::vector<int> mp2_order(std::span<const double> weights) {
    std::vector<int> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(weights[a]) > std::abs(weights[b]); });
    return order;
}

std::vector<int> mp2_order(const OperatorPool &pool) {
    std::vector<double> w;
    for (const auto &g : pool.groups) w.push_back(g.mp2_weight);
    return mp2_order(w);
}

std::string pool_csv(const OperatorPool &pool) {
    std::string out = "group_id,kind,member_tuples,qubit_spans,cnot_cost_total,mp2_weight\n";
    char buf[64];
    for (const auto &g : pool.groups) {
        std::string tuples, spans;
        for (std::size_t m = 0; m < g.members.size(); ++m) {
            if (m) {
                tuples += ' ';
                spans += ' ';
            }
            tuples += g.members[m].tuple_string();
            spans += std::to_string(g.members[m].qubit_span);
        }
        std::snprintf(buf, sizeof buf, "%.17g", g.mp2_weight);
        out += std::to_string(g.id) + ',' + (g.kind() == ExcitationKind::kSingle ? "single" : "double") + ",\"" +
               tuples + "\"," + spans + ',' + std::to_string(g.cnot_cost_total) + ',' + buf + '\n';
    }
    return out;
}

}  // namespace ansatzforge
