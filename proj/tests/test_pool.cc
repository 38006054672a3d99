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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ansatzforge/error.h"
#include "ansatzforge/pool.h"
#include "test_util.h"

namespace ansatzforge {
namespace {

using testing::load_fixture;
using testing::toy_bundle;

// An excitation with its creation and annihilation index sets, order ignored.
using Unordered = std::pair<std::set<int>, std::set<int>>;

Unordered unordered(const std::vector<int> &t) {
    const std::size_t h = t.size() / 2;
    return {std::set<int>(t.begin(), t.begin() + h), std::set<int>(t.begin() + h, t.end())};
}

Unordered flip(const Unordered &u, int n_orb) {
    auto f = [&](const std::set<int> &s) {
        std::set<int> out;
        for (int i : s) out.insert(i < n_orb ? i + n_orb : i - n_orb);
        return out;
    };
    return {f(u.first), f(u.second)};
}

// Brute force over every spin-conserving double from the reference: returns
// the number of spin-flip orbits and the set of excitations.
std::pair<int, std::set<Unordered>> all_doubles(int n_occ, int n_orb) {
    std::vector<int> occ, vir;
    for (int q = 0; q < 2 * n_orb; ++q) ((q % n_orb) < n_occ ? occ : vir).push_back(q);
    auto spin = [&](int q) { return q < n_orb ? 1 : -1; };
    std::set<Unordered> all;
    for (int p : vir) for (int q : vir) for (int r : occ) for (int s : occ) {
        if (p >= q || r >= s) continue;
        if (spin(p) + spin(q) != spin(r) + spin(s)) continue;
        all.insert({{p, q}, {r, s}});
    }
    std::set<Unordered> seen;
    int orbits = 0;
    for (const auto &u : all) {
        if (seen.count(u)) continue;
        ++orbits;
        seen.insert(u);
        seen.insert(flip(u, n_orb));
    }
    return {orbits, all};
}

TEST(Pool, KnownGroupCounts) {
    EXPECT_EQ(build_uccsd_pool(load_fixture("lih_1.50")).size(), 25);
    EXPECT_EQ(build_uccsd_pool(load_fixture("h6_1.00")).size(), 39);
}

TEST(Pool, ToyPoolByHand) {
    auto pool = build_uccsd_pool(toy_bundle());
    ASSERT_EQ(pool.size(), 2);
    EXPECT_EQ(pool[0].kind(), ExcitationKind::kSingle);
    ASSERT_EQ(pool[0].members.size(), 2u);
    EXPECT_EQ(pool[0].members[0].indices, (std::vector<int>{1, 0}));
    EXPECT_EQ(pool[0].members[1].indices, (std::vector<int>{3, 2}));
    EXPECT_EQ(pool[1].kind(), ExcitationKind::kDouble);
    ASSERT_EQ(pool[1].members.size(), 1u);
    EXPECT_EQ(pool[1].members[0].indices, (std::vector<int>{3, 1, 0, 2}));
    EXPECT_DOUBLE_EQ(pool[1].mp2_weight, 0.05);
}

TEST(Pool, H2MatchesExhaustiveEnumeration) {
    auto b = load_fixture("h2_0.74");
    auto pool = build_uccsd_pool(b);
    // one spatial single and one paired double, both surviving the screen
    auto [orbits, all] = all_doubles(1, 2);
    EXPECT_EQ(orbits, 1);
    EXPECT_EQ(pool.size(), 1 + orbits);
}

TEST(Pool, UnscreenedDoublesCoverEverySpinConservingExcitationOnce) {
    for (const char *name : {"lih_1.50", "h4_1.00", "h6_1.00", "h2o_1.50"}) {
        auto b = load_fixture(name);
        PoolOptions opts;
        opts.doubles_rule = keep_all_rule;
        auto pool = build_uccsd_pool(b, opts);
        const int n_occ = b.active_space.n_occupied();
        const int n_orb = b.active_space.n_spatial_orbitals;
        auto [orbits, all] = all_doubles(n_occ, n_orb);
        std::set<Unordered> got;
        int n_double_groups = 0, n_single_groups = 0;
        for (const auto &g : pool.groups) {
            if (g.kind() == ExcitationKind::kSingle) {
                ++n_single_groups;
                continue;
            }
            ++n_double_groups;
            for (const auto &m : g.members) EXPECT_TRUE(got.insert(unordered(m.indices)).second) << name;
        }
        EXPECT_EQ(got, all) << name;
        EXPECT_EQ(n_double_groups, orbits) << name;
        EXPECT_EQ(n_single_groups, n_occ * (n_orb - n_occ)) << name;
    }
}

TEST(Pool, ScreenedPoolKeepsGroupsWithNonzeroAmplitude) {
    auto b = load_fixture("lih_1.50");
    PoolOptions opts;
    opts.doubles_rule = keep_all_rule;
    auto full = build_uccsd_pool(b, opts);
    auto screened = build_uccsd_pool(b);
    int expect = 0;
    for (const auto &g : full.groups) expect += g.kind() == ExcitationKind::kSingle || g.mp2_weight > 1e-12;
    EXPECT_EQ(screened.size(), expect);
}

TEST(Pool, IdsAreDenseAndTuplesUnique) {
    auto pool = build_uccsd_pool(load_fixture("h6_1.00"));
    std::set<std::vector<int>> tuples;
    bool seen_double = false;
    for (int i = 0; i < pool.size(); ++i) {
        EXPECT_EQ(pool[i].id, i);
        if (pool[i].kind() == ExcitationKind::kDouble) seen_double = true;
        else EXPECT_FALSE(seen_double) << "singles come first";
        for (const auto &m : pool[i].members) EXPECT_TRUE(tuples.insert(m.indices).second);
    }
}

TEST(Pool, SpinFlipClosure) {
    for (const char *name : {"lih_1.50", "h2o_1.50"}) {
        auto b = load_fixture(name);
        const int n_orb = b.active_space.n_spatial_orbitals;
        for (const auto &g : build_uccsd_pool(b).groups) {
            std::set<Unordered> members, flipped;
            for (const auto &m : g.members) {
                members.insert(unordered(m.indices));
                flipped.insert(unordered(spin_flip(m.indices, n_orb)));
            }
            EXPECT_EQ(members, flipped) << name << " group " << g.id;
            EXPECT_GE(g.members.size(), 1u);
            EXPECT_LE(g.members.size(), 2u);
        }
    }
}

TEST(Pool, QubitPoolSharesCombinatorics) {
    auto b = load_fixture("h2o_1.50");
    auto u = build_uccsd_pool(b);
    auto q = build_qeb_pool(b);
    ASSERT_EQ(u.size(), q.size());
    for (int i = 0; i < u.size(); ++i) {
        ASSERT_EQ(u[i].members.size(), q[i].members.size());
        EXPECT_TRUE(u[i].shared_parameter);
        EXPECT_FALSE(q[i].shared_parameter);
        int singles = 0, doubles = 0;
        for (std::size_t m = 0; m < q[i].members.size(); ++m) {
            EXPECT_EQ(u[i].members[m].indices, q[i].members[m].indices);
            EXPECT_EQ(q[i].members[m].encoding, Encoding::kQubitExcitation);
            (q[i].members[m].kind == ExcitationKind::kSingle ? singles : doubles)++;
        }
        EXPECT_EQ(q[i].cnot_cost_total, 2 * singles + 14 * doubles);
        EXPECT_EQ(q[i].mp2_weight, u[i].mp2_weight);
    }
}

TEST(Pool, SixteenQubitGroupsHoldSixteenToThirtyTwoOperators) {
    auto q = build_qeb_pool(load_fixture("h2o_1.50"));
    auto order = mp2_order(q);
    int ops = 0;
    for (int k = 0; k < 16; ++k) ops += static_cast<int>(q[order[k]].members.size());
    EXPECT_GE(ops, 16);
    EXPECT_LE(ops, 32);
}

TEST(Pool, MissingAmplitudeIsValidationError) {
    auto b = toy_bundle();
    b.mp2_amplitudes.erase({3, 1, 0, 2});
    EXPECT_THROW(build_uccsd_pool(b), Error);
}

TEST(Pool, NonAufbauReferenceRejected) {
    auto b = toy_bundle();
    b.hf_occupation = 0b0110;
    b.hf_energy = diagonal_expectation(b.hamiltonian, b.hf_occupation);
    EXPECT_THROW(build_uccsd_pool(b), Error);
}

TEST(Mp2Order, StableTieBreak) {
    const std::vector<double> w{0.1, 0.5, 0.5, 0.0};
    EXPECT_EQ(mp2_order(w), (std::vector<int>{1, 2, 0, 3}));
    const std::vector<double> signs{-0.3, 0.3, -0.7};
    EXPECT_EQ(mp2_order(signs), (std::vector<int>{2, 0, 1}));
}

TEST(Mp2Order, AgreesWithReferenceSort) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> level(0, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> w(30);
        for (auto &x : w) x = 0.05 * level(rng) * (rng() % 2 ? 1 : -1);
        std::vector<std::pair<double, int>> ref;
        for (int i = 0; i < 30; ++i) ref.push_back({-std::abs(w[i]), i});
        std::sort(ref.begin(), ref.end());
        auto got = mp2_order(w);
        for (int i = 0; i < 30; ++i) EXPECT_EQ(got[i], ref[i].second);
    }
}

TEST(Mp2Order, QubitTruncationPrefersDoubles) {
    int all_doubles = 0;
    for (const char *name : {"h2o_0.70", "h2o_1.00", "h2o_1.50", "h2o_2.00"}) {
        auto q = build_qeb_pool(load_fixture(name));
        auto order = mp2_order(q);
        int singles = 0;
        for (int k = 0; k < 16; ++k) singles += q[order[k]].kind() == ExcitationKind::kSingle;
        all_doubles += singles == 0;
    }
    EXPECT_GE(all_doubles, 3);
}

TEST(Pool, SerializationIsDeterministic) {
    auto b = load_fixture("lih_1.50");
    EXPECT_EQ(pool_csv(build_uccsd_pool(b)), pool_csv(build_uccsd_pool(b)));
    auto csv = pool_csv(build_uccsd_pool(b));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "group_id,kind,member_tuples,qubit_spans,cnot_cost_total,mp2_weight");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
}

TEST(Pool, FlavorNames) {
    EXPECT_EQ(parse_flavor("uccsd"), PoolFlavor::kUccsd);
    EXPECT_EQ(parse_flavor("qeb"), PoolFlavor::kQeb);
    EXPECT_EQ(flavor_name(PoolFlavor::kQeb), "qeb");
    EXPECT_THROW(parse_flavor("adapt"), Error);
}

}  // namespace
}  // namespace ansatzforge
