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

#include "ansatzforge/search_layerwise.h"

#include <algorithm>
#include <limits>
#include <optional>

#include "ansatzforge/error.h"
#include "ansatzforge/parallel.h"
#include "ansatzforge/vqe.h"

namespace ansatzforge {

namespace {
constexpr double kMonotoneSlack = 1e-9;
}  // namespace

LayerwiseState initial_layerwise_state(const Simulator &sim) {
    LayerwiseState s;
    s.energy = sim.energy(sim.hf_state());
    return s;
}

ArchState search_window(const Simulator &sim, const LayerwiseState &state, int window, double warm_boost,
                        const GlobalConfig &config, std::uint64_t stream, TrainTrace *trace) {
    if (window <= static_cast<int>(state.warm.size())) throw validation_error("window must exceed the warm buffer");
    const OperatorPool &pool = sim.pool();
    const auto offsets = parameter_offsets(pool);
    ArchState arch = init_arch(pool, window, config.alpha_sigma, config.seed, stream, config.tie_theta);
    for (std::size_t w = 0; w < state.warm.size(); ++w) {
        const WarmEntry &entry = state.warm[w];
        arch.alpha(w, entry.group) += warm_boost;
        for (std::size_t m = 0; m < entry.theta.size(); ++m) arch.theta(arch.theta_row(static_cast<int>(w)), offsets[entry.group] + m) = entry.theta[m];
    }
    const State prefix = sim.prepare(layers_for(pool, state.committed), state.theta_fixed);
    TrainTrace t = train_global(sim, arch, config, &prefix);
    if (trace) *trace = std::move(t);
    return arch;
}

LayerwiseState commit_and_finetune(const Simulator &sim, const LayerwiseState &state, const ArchState &window,
                                   int slide, int n_commit, const QuasiNewtonConfig &finetune, bool *converged) {
    if (n_commit < 1 || n_commit > slide || slide >= window.layers()) {
        throw validation_error("commit count must lie in [1, slide] with slide < window");
    }
    const OperatorPool &pool = sim.pool();
    const Structure picked = extract_discrete(window);

    LayerwiseState next;
    next.step = state.step + 1;
    next.committed = state.committed;
    next.committed.insert(next.committed.end(), picked.begin(), picked.begin() + n_commit);
    const auto layers = layers_for(pool, next.committed);

    const Structure new_groups(picked.begin(), picked.begin() + n_commit);
    std::vector<double> theta = state.theta_fixed;
    const auto carried = gather_theta(pool, window, new_groups);
    theta.insert(theta.end(), carried.begin(), carried.end());

    VqeResult fit = optimize_circuit(sim, layers, theta, finetune);
    if (fit.energy > state.energy + kMonotoneSlack) {
        std::vector<double> reset = state.theta_fixed;
        reset.resize(theta.size(), 0.0);
        VqeResult retry = optimize_circuit(sim, layers, reset, finetune);
        if (retry.energy < fit.energy) fit = std::move(retry);
    }
    next.theta_fixed = std::move(fit.theta);
    next.energy = fit.energy;
    if (converged) *converged = fit.converged;

    const auto offsets = parameter_offsets(pool);
    for (int row = slide; row < window.layers(); ++row) {
        WarmEntry entry;
        entry.group = picked[row];
        for (int m = 0; m < pool[entry.group].n_parameters(); ++m) {
            entry.theta.push_back(window.theta(window.theta_row(row), offsets[entry.group] + m));
        }
        next.warm.push_back(std::move(entry));
    }
    return next;
}

SearchResult run_layerwise(const Simulator &sim, int n_layers, const LayerwiseConfig &config) {
    const int k = config.window;
    const int s = config.slide;
    if (!(1 <= s && s < k && k <= n_layers)) {
        throw validation_error("layerwise search needs 1 <= slide < window <= layers");
    }
    const int restarts = config.search.restarts;
    if (restarts < 1) throw validation_error("restarts must be at least 1");

    SearchResult result;
    result.method = "layerwise";
    LayerwiseState state = initial_layerwise_state(sim);
    bool all_converged = true;
    while (static_cast<int>(state.committed.size()) < n_layers) {
        const int n_commit = std::min(s, n_layers - static_cast<int>(state.committed.size()));
        struct Candidate {
            LayerwiseState next;
            TrainTrace trace;
            bool converged = true;
        };
        std::vector<std::optional<Candidate>> candidates(restarts);
        parallel_for(restarts, [&](std::size_t r) {
            try {
                Candidate c;
                const std::uint64_t stream = static_cast<std::uint64_t>(state.step) * restarts + r;
                ArchState window = search_window(sim, state, k, config.warm_boost, config.search, stream, &c.trace);
                c.next = commit_and_finetune(sim, state, window, s, n_commit, config.search.finetune, &c.converged);
                candidates[r] = std::move(c);
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::kConvergence) throw;
            }
        });
        int chosen = -1;
        for (int r = 0; r < restarts; ++r) {
            if (!candidates[r]) {
                ++result.restarts_failed;
                continue;
            }
            if (chosen < 0 || candidates[r]->next.energy < candidates[chosen]->next.energy) chosen = r;
        }
        if (chosen < 0) {
            throw convergence_error("every restart failed at growth step " + std::to_string(state.step));
        }
        Candidate &best = *candidates[chosen];
        all_converged = all_converged && best.converged;
        result.trace = std::move(best.trace);
        state = std::move(best.next);
        result.steps.push_back({state.step, static_cast<int>(state.committed.size()), state.energy, state.committed});
    }
    result.structure = state.committed;
    result.layers = layers_for(sim.pool(), state.committed);
    result.theta = state.theta_fixed;
    result.energy = state.energy;
    result.pre_finetune_energy = state.energy;
    result.finetune_converged = all_converged;
    result.restarts_used = restarts;
    for (const auto &st : result.steps) result.restart_energies.push_back(st.energy);
    return result;
}

}  // namespace ansatzforge
