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

#include "ansatzforge/vqe.h"

#include "ansatzforge/error.h"

namespace ansatzforge {

VqeResult optimize_circuit(const Simulator &sim, std::span<const Layer> layers, std::vector<double> theta0,
                           const QuasiNewtonConfig &config, const State *initial) {
    if (static_cast<int>(theta0.size()) < slot_count(sim.pool(), layers)) {
        throw validation_error("optimize_circuit: too few parameters for the circuit");
    }
    Objective f = [&](std::span<const double> x, std::span<double> g) {
        return sim.energy_and_gradient(layers, x, g, initial);
    };
    VqeResult out;
    out.start_energy = sim.energy(layers, theta0, initial);
    QuasiNewtonResult r = quasi_newton_minimize(f, std::move(theta0), config);
    out.theta = std::move(r.x);
    out.energy = r.f;
    out.converged = r.converged;
    out.iterations = r.iterations;
    return out;
}

}  // namespace ansatzforge
