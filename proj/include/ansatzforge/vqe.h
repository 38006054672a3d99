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

#ifndef ANSATZFORGE_VQE_H
#define ANSATZFORGE_VQE_H

#include <span>
#include <vector>

#include "ansatzforge/numerics.h"
#include "ansatzforge/sim.h"

namespace ansatzforge {

struct VqeResult {
    std::vector<double> theta;
    double energy = 0.0;
    double start_energy = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Minimizes the energy of a fixed circuit over all of its parameter slots
/// with the quasi-Newton optimizer, starting from theta0.
VqeResult optimize_circuit(const Simulator &sim, std::span<const Layer> layers, std::vector<double> theta0,
                           const QuasiNewtonConfig &config = {}, const State *initial = nullptr);

}  // namespace ansatzforge

#endif
