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

#include <cmath>

#include "ansatzforge/error.h"
#include "ansatzforge/search_layerwise.h"
#include "test_util.h"

namespace ansatzforge {
namespace {

using testing::load_fixture;

GlobalConfig quick_config(int epochs) {
    GlobalConfig c;
    c.epochs = epochs;
    c.restarts = 2;
    return c;
}

TEST(Window, EmptyCircuitReducesToGlobalTraining) {
    auto b = load_fixture("h4_1.00");
    auto pool = build_uccsd_pool(b);
    Simulator sim(b, pool);
    auto cfg = quick_config(30);
    auto state = initial_layerwise_state(sim);
    EXPECT_NEAR(state.energy, b.hf_energy, 1e-10);
    ArchState window = search_window(sim, state, 4, 5.0, cfg, 7);
    ArchState direct = init_arch(pool, 4, cfg.alpha_sigma, cfg.seed, 7);
    train_global(sim, direct, cfg);
    EXPECT_EQ(window.alpha, direct.alpha);
    EXPECT_EQ(window.theta, direct.theta);
}

TEST(Window, FrozenParametersAreUntouched) {
    auto b = load_fixture("h4_1.00");
    auto pool = build_uccsd_pool(b);
    Simulator sim(b, pool);
    auto cfg = quick_config(20);
    auto state = initial_layerwise_state(sim);
    auto first = search_window(sim, state, 4, 5.0, cfg, 0);
    auto next = commit_and_finetune(sim, state, first, 2, 2, cfg.finetune);
    const auto frozen = next.theta_fixed;
    const auto committed = next.committed;
    search_window(sim, next, 4, 5.0, cfg, 1);
    EXPECT_EQ(next.theta_fixed, frozen);
    EXPECT_EQ(next.committed, committed);
}

TEST(Window, WarmLayerFavoursCarriedGroup) {
    auto b = load_fixture("h4_1.00");
    auto pool = build_uccsd_pool(b);
    Simulator sim(b, pool);
    LayerwiseState state = initial_layerwise_state(sim);
    state.warm = {{3, {0.05}}, {8, {-0.02}}};
    auto cfg = quick_config(0);
    auto arch = search_window(sim, state, 4, 5.0, cfg, 2);
    EXPECT_EQ(arch.theta(0, 3), 0.05);
    EXPECT_EQ(arch.theta(1, 8), -0.02);
    const int n = 20000;
    int hits0 = 0, hits1 = 0;
    for (const auto &s : sample_batch(arch, n)) {
        hits0 += s[0] == 3;
        hits1 += s[1] == 8;
    }
    const double m = pool.size();
    const double p = std::exp(5.0) / (std::exp(5.0) + m - 1);
    const double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_GT(hits0 / double(n), 0.9);
    EXPECT_NEAR(hits0 / double(n), p, 5 * sigma + 0.01);
    EXPECT_NEAR(hits1 / double(n), p, 5 * sigma + 0.01);
}

TEST(Commit, BufferArithmeticAndMonotoneEnergy) {
    auto b = load_fixture("h4_0.80");
    auto pool = build_uccsd_pool(b);
    Simulator sim(b, pool);
    auto cfg = quick_config(40);
    auto state = initial_layerwise_state(sim);
    for (int step = 0; step < 3; ++step) {
        auto window = search_window(sim, state, 4, 5.0, cfg, step);
        auto next = commit_and_finetune(sim, state, window, 2, 2, cfg.finetune);
        ASSERT_EQ(next.committed.size(), state.committed.size() + 2);
        EXPECT_TRUE(std::equal(state.committed.begin(), state.committed.end(), next.committed.begin()));
        EXPECT_EQ(next.warm.size(), 2u);
        auto picked = extract_discrete(window);
        EXPECT_EQ(next.warm[0].group, picked[2]);
        EXPECT_EQ(next.warm[1].group, picked[3]);
        EXPECT_LE(next.energy, state.energy + 1e-9);
        EXPECT_EQ(static_cast<int>(next.theta_fixed.size()), slot_count(pool, layers_for(pool, next.committed)));
        EXPECT_NEAR(next.energy, sim.energy(layers_for(pool, next.committed), next.theta_fixed), 1e-12);
        EXPECT_EQ(next.step, state.step + 1);
        state = next;
    }
}

TEST(Commit, RejectsBadCounts) {
    auto b = load_fixture("h2_0.74");
    auto pool = build_uccsd_pool(b);
    Simulator sim(b, pool);
    auto state = initial_layerwise_state(sim);
    auto arch = init_arch(pool, 3, 0.01, 0, 0);
    EXPECT_THROW(commit_and_finetune(sim, state, arch, 2, 3, {}), Error);
    EXPECT_THROW(commit_and_finetune(sim, state, arch, 3, 1, {}), Error);
    EXPECT_THROW(commit_and_finetune(sim, state, arch, 2, 0, {}), Error);
}

void check_contracts(const SearchResult &r, int layers, double hf_energy) {
    ASSERT_EQ(static_cast<int>(r.structure.size()), layers);
    double previous = hf_energy;
    Structure prefix;
    for (const auto &s : r.steps) {
        EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), s.committed_groups.begin()));
        EXPECT_EQ(static_cast<int>(s.committed_groups.size()), s.committed_size);
        EXPECT_LE(s.energy, previous + 1e-9);
        previous = s.energy;
        prefix = s.committed_groups;
    }
    EXPECT_EQ(prefix, r.structure);
    EXPECT_EQ(r.energy, r.steps.back().energy);
}

TEST(RunLayerwise, GrowthContracts) {
    auto b = load_fixture("h4_0.80");
    Simulator sim(b, build_uccsd_pool(b));
    LayerwiseConfig cfg;
    cfg.search = quick_config(60);
    auto r = run_layerwise(sim, 7, cfg);
    check_contracts(r, 7, b.hf_energy);
    // 2 + 2 + 2 + 1
    ASSERT_EQ(r.steps.size(), 4u);
    EXPECT_EQ(r.steps.back().committed_size, 7);
    EXPECT_GE(r.energy, *b.fci_energy - 1e-9);
    EXPECT_NEAR(r.energy, sim.energy(r.layers, r.theta), 1e-12);
}

TEST(RunLayerwise, FullWindowTakesTwoSteps) {
    auto b = load_fixture("h4_1.00");
    Simulator sim(b, build_uccsd_pool(b));
    LayerwiseConfig cfg;
    cfg.window = 3;
    cfg.slide = 2;
    cfg.search = quick_config(30);
    auto r = run_layerwise(sim, 3, cfg);
    ASSERT_EQ(r.steps.size(), 2u);
    EXPECT_EQ(r.steps[0].committed_size, 2);
    EXPECT_EQ(r.steps[1].committed_size, 3);
    check_contracts(r, 3, b.hf_energy);
}

TEST(RunLayerwise, QubitPoolAndReproducibility) {
    auto b = load_fixture("h4_1.00");
    Simulator sim(b, build_qeb_pool(b));
    LayerwiseConfig cfg;
    cfg.search = quick_config(30);
    cfg.search.seed = 4;
    auto r1 = run_layerwise(sim, 4, cfg), r2 = run_layerwise(sim, 4, cfg);
    check_contracts(r1, 4, b.hf_energy);
    EXPECT_EQ(r1.structure, r2.structure);
    EXPECT_EQ(r1.theta, r2.theta);
    EXPECT_EQ(r1.energy, r2.energy);
}

TEST(RunLayerwise, RejectsBadWindows) {
    auto b = load_fixture("h2_0.74");
    Simulator sim(b, build_uccsd_pool(b));
    LayerwiseConfig cfg;
    cfg.window = 4;
    cfg.slide = 4;
    EXPECT_THROW(run_layerwise(sim, 8, cfg), Error);
    cfg.slide = 2;
    EXPECT_THROW(run_layerwise(sim, 3, cfg), Error);
    cfg.slide = 0;
    EXPECT_THROW(run_layerwise(sim, 8, cfg), Error);
}

}  // namespace
}  // namespace ansatzforge
