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

#ifndef ANSATZFORGE_BASELINES_H
#define ANSATZFORGE_BASELINES_H

#include <cstdint>
#include <vector>

#include "ansatzforge/numerics.h"
#include "ansatzforge/search_global.h"
#include "ansatzforge/sim.h"

namespace ansatzforge {

struct LanczosConfig {
    int max_iterations = 500;
    /// Required ||H v - E v|| of the returned vector.
    double residual_tolerance = 1e-8;
    std::uint64_t seed = 20240607;
};

struct GroundState {
    double energy = 0.0;
    State state;
    double residual = 0.0;
    int iterations = 0;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization from a seeded
/// random start vector. Throws a convergence error if the residual target is
/// missed.
GroundState lanczos_ground(const SparseOperator &h, const LanczosConfig &config = {});

/// Ground state of a Pauli sum over the full 2^n register.
GroundState fci_ground(const PauliSum &h, int n_qubits, const LanczosConfig &config = {});

/// Ground state of the bundle Hamiltonian within the reference determinant's
/// alpha/beta electron-number sector.
GroundState fci_ground(const MoleculeBundle &bundle, const LanczosConfig &config = {});

struct AdaptConfig {
    int max_groups = 0;
    double gradient_threshold = 1e-6;
    QuasiNewtonConfig optimizer;
};

struct AdaptStep {
    int step = 0;
    int group = 0;
    double abs_gradient = 0.0;
    double energy = 0.0;
    bool converged = true;
};

struct AdaptResult {
    std::vector<AdaptStep> steps;
    Structure structure;
    std::vector<double> theta;
    double energy = 0.0;
    double hf_energy = 0.0;
    bool stopped_on_threshold = false;
};

/// Selection score of every group at psi. Shared-parameter groups sum their
/// member gradients (the derivative of the shared angle); per-member groups
/// report the Euclidean norm of their member gradients.
std::vector<double> adapt_scores(const Simulator &sim, const State &psi);

/// Greedy growth: append the group with the largest |score| (ties to the
/// lowest id), then re-optimize every angle from the previous optimum with
/// the new angles at zero.
AdaptResult adapt_vqe(const Simulator &sim, const AdaptConfig &config);

struct TruncatedResult {
    Structure structure;
    std::vector<double> theta;
    double energy = 0.0;
    bool converged = true;
};

/// The first k groups in MP2 order, all angles from zero.
TruncatedResult truncated_uccsd(const Simulator &sim, int k, const QuasiNewtonConfig &optimizer = {});

}  // namespace ansatzforge

#endif
