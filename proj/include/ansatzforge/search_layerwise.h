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

#ifndef ANSATZFORGE_SEARCH_LAYERWISE_H
#define ANSATZFORGE_SEARCH_LAYERWISE_H

#include <utility>
#include <vector>

#include "ansatzforge/search_global.h"

namespace ansatzforge {

struct LayerwiseConfig {
    int window = 4;
    int slide = 2;
    /// Logit added to the carried group of each warm-started window layer.
    double warm_boost = 5.0;
    /// Window training settings; restarts counts independent windows per growth step.
    GlobalConfig search = [] {
        GlobalConfig c;
        c.restarts = 3;
        return c;
    }();
};

struct WarmEntry {
    int group = 0;
    std::vector<double> theta;
};

struct LayerwiseState {
    Structure committed;
    /// Parameters of the committed circuit, slots as layers_for(committed).
    std::vector<double> theta_fixed;
    std::vector<WarmEntry> warm;
    double energy = 0.0;
    int step = 0;
};

/// Fresh state at the reference determinant.
LayerwiseState initial_layerwise_state(const Simulator &sim);

/// Builds a window of `window` layers, warm-starting its first rows from the
/// carry-over buffer, and trains it on top of the frozen committed circuit.
ArchState search_window(const Simulator &sim, const LayerwiseState &state, int window, double warm_boost,
                        const GlobalConfig &config, std::uint64_t stream, TrainTrace *trace = nullptr);

/// Appends the first n_commit argmax layers of the window, re-optimizes every
/// parameter of the circuit and refills the warm buffer from window rows
/// slide..window-1. If the energy rose, the fit is redone from zero angles on
/// the new layers, which cannot end above the previous energy.
LayerwiseState commit_and_finetune(const Simulator &sim, const LayerwiseState &state, const ArchState &window,
                                   int slide, int n_commit, const QuasiNewtonConfig &finetune, bool *converged = nullptr);

/// Grows the circuit to exactly `layers` layers. Requires 1 <= slide < window <= layers.
SearchResult run_layerwise(const Simulator &sim, int layers, const LayerwiseConfig &config);

}  // namespace ansatzforge

#endif
