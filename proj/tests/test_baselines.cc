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

#include <random>

#include <Eigen/Eigenvalues>

#include "ansatzforge/baselines.h"
#include "ansatzforge/error.h"
#include "test_util.h"

namespace ansatzforge {
namespace {

using testing::load_fixture;

TEST(Lanczos, SingleQubitZ) {
    auto g = fci_ground(PauliSum({PauliString::parse("Z0")}), 1);
    EXPECT_NEAR(g.energy, -1.0, 1e-12);
    EXPECT_NEAR(std::abs(g.state.amplitude(1)), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(g.state.amplitude(0)), 0.0, 1e-10);
}

TEST(Lanczos, RandomPauliSumMatchesDenseDiagonalization) {
    std::mt19937 rng(1234);
    std::normal_distribution<double> coef(0.0, 1.0);
    std::uniform_int_distribution<int> letter(0, 3);
    const int n = 8;
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<PauliString> terms;
        for (int t = 0; t < 40; ++t) {
            PauliString p;
            for (int q = 0; q < n; ++q) {
                const int l = letter(rng);
                if (l == 1 || l == 2) p.x |= std::uint64_t{1} << q;
                if (l == 2 || l == 3) p.z |= std::uint64_t{1} << q;
            }
            p.coefficient = coef(rng);
            terms.push_back(p);
        }
        PauliSum h(terms);
        auto g = fci_ground(h, n);
        // dense reference, built column by column from the Pauli action
        const int dim = 1 << n;
        Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto &p : h.terms()) {
            for (int b = 0; b < dim; ++b) dense(b ^ static_cast<int>(p.x), b) += pauli_phase(p, b);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
        EXPECT_NEAR(g.energy, es.eigenvalues()(0), 1e-9);
        EXPECT_LE(g.residual, 1e-8);
        Eigen::VectorXcd v = g.state.dense();
        EXPECT_LT((dense * v - g.energy * v).norm(), 1e-7);
    }
}

TEST(Lanczos, SectorGroundMatchesStoredReference) {
    for (const char *name : {"h2_0.74", "h4_0.80", "lih_2.20", "h2o_1.50", "beh2_4e5o_1.30"}) {
        auto b = load_fixture(name);
        auto g = fci_ground(b);
        EXPECT_NEAR(g.energy, *b.fci_energy, 1e-8) << name;
        EXPECT_NEAR(g.state.norm(), 1.0, 1e-12);
    }
}

TEST(Lanczos, LithiumHydrideAnchor) {
    auto g = fci_ground(load_fixture("lih_2.20"));
    EXPECT_NEAR(g.energy, -7.8454, 0.5e-3);
}

TEST(Lanczos, DeterministicStart) {
    auto b = load_fixture("h4_1.00");
    auto a = fci_ground(b), c = fci_ground(b);
    EXPECT_EQ(a.energy, c.energy);
    EXPECT_EQ(a.state.amplitudes(), c.state.amplitudes());
}

TEST(Adapt, ScoresFollowMemberGradients) {
    auto b = load_fixture("lih_1.50");
    for (auto flavor : {PoolFlavor::kUccsd, PoolFlavor::kQeb}) {
        auto pool = build_pool(b, flavor);
        Simulator sim(b, pool);
        std::vector<int> groups{pool.size() - 1};
        auto layers = layers_for(pool, groups);
        std::vector<double> theta(slot_count(pool, layers), 0.1);
        State psi = sim.prepare(layers, theta);
        auto scores = adapt_scores(sim, psi);
        auto h_psi = sim.apply_hamiltonian(psi);
        ASSERT_EQ(static_cast<int>(scores.size()), pool.size());
        for (int g = 0; g < pool.size(); ++g) {
            auto m = sim.append_gradients(psi, h_psi, g);
            double expect = 0;
            if (pool[g].shared_parameter) {
                for (double x : m) expect += x;
            } else {
                for (double x : m) expect += x * x;
                expect = std::sqrt(expect);
            }
            EXPECT_NEAR(scores[g], expect, 1e-12);
        }
    }
}

TEST(Adapt, ZeroGroupsIsReference) {
    auto b = load_fixture("h4_0.80");
    Simulator sim(b, build_uccsd_pool(b));
    AdaptConfig cfg;
    cfg.max_groups = 0;
    auto r = adapt_vqe(sim, cfg);
    EXPECT_TRUE(r.structure.empty());
    EXPECT_EQ(r.energy, r.hf_energy);
    EXPECT_NEAR(r.energy, b.hf_energy, 1e-10);
}

TEST(Adapt, HydrogenChainReferenceErrors) {
    auto b = load_fixture("h4_0.80");
    Simulator sim(b, build_uccsd_pool(b));
    AdaptConfig cfg;
    cfg.max_groups = 5;
    auto r = adapt_vqe(sim, cfg);
    ASSERT_EQ(r.steps.size(), 5u);
    EXPECT_NEAR((r.steps[3].energy - *b.fci_energy) * 1e3, 9.25, 1.0);
    EXPECT_NEAR((r.steps[4].energy - *b.fci_energy) * 1e3, 6.93, 1.0);
}

TEST(Adapt, EnergyNeverRises) {
    for (auto flavor : {PoolFlavor::kUccsd, PoolFlavor::kQeb}) {
        auto b = load_fixture("lih_1.50");
        Simulator sim(b, build_pool(b, flavor));
        AdaptConfig cfg;
        cfg.max_groups = 8;
        auto r = adapt_vqe(sim, cfg);
        double previous = r.hf_energy;
        for (const auto &s : r.steps) {
            EXPECT_LE(s.energy, previous + 1e-9);
            EXPECT_GE(s.energy, *b.fci_energy - 1e-9);
            previous = s.energy;
        }
        EXPECT_EQ(r.energy, previous);
        EXPECT_EQ(r.structure.size(), r.steps.size());
    }
}

TEST(Adapt, StopsOnGradientThreshold) {
    auto b = load_fixture("h2_0.74");
    Simulator sim(b, build_uccsd_pool(b));
    AdaptConfig cfg;
    cfg.max_groups = 10;
    cfg.gradient_threshold = 1e-4;
    auto r = adapt_vqe(sim, cfg);
    EXPECT_TRUE(r.stopped_on_threshold);
    EXPECT_LT(r.structure.size(), 10u);
    EXPECT_NEAR(r.energy, *b.fci_energy, 1e-8);
}

TEST(Truncated, NestedAnsatzSpaces) {
    auto b = load_fixture("h4_1.00");
    auto pool = build_uccsd_pool(b);
    Simulator sim(b, pool);
    auto full = truncated_uccsd(sim, pool.size());
    EXPECT_EQ(static_cast<int>(full.structure.size()), pool.size());
    EXPECT_NEAR(truncated_uccsd(sim, 0).energy, b.hf_energy, 1e-10);
    auto order = mp2_order(pool);
    for (int k = 0; k < pool.size(); ++k) {
        auto r = truncated_uccsd(sim, k);
        EXPECT_LE(full.energy, r.energy + 1e-9) << k;
        EXPECT_TRUE(std::equal(r.structure.begin(), r.structure.end(), order.begin()));
    }
    EXPECT_THROW(truncated_uccsd(sim, pool.size() + 1), Error);
}

TEST(Truncated, BerylliumHydrideSixGroups) {
    auto b = load_fixture("beh2_4e5o_1.30");
    Simulator sim(b, build_uccsd_pool(b));
    auto r = truncated_uccsd(sim, 6);
    EXPECT_NEAR((r.energy - *b.fci_energy) * 1e3, 0.57, 0.2);
}

}  // namespace
}  // namespace ansatzforge
