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

#include "ansatzforge/baselines.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "ansatzforge/error.h"
#include "ansatzforge/parallel.h"
#include "ansatzforge/pool.h"
#include "ansatzforge/vqe.h"

namespace ansatzforge {

GroundState lanczos_ground(const SparseOperator &h, const LanczosConfig &config) {
    const Eigen::Index dim = static_cast<Eigen::Index>(h.space().dim());
    if (dim == 0) throw validation_error("empty space");
    std::mt19937_64 rng(config.seed);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }
    v.normalize();

    std::vector<Eigen::VectorXcd> basis{v};
    std::vector<double> alphas, betas;
    Eigen::VectorXcd w;
    double ritz = 0.0;
    Eigen::VectorXd ritz_vector;
    const int limit = static_cast<int>(std::min<Eigen::Index>(dim, config.max_iterations));
    int iterations = 0;
    for (int j = 0; j < limit; ++j) {
        iterations = j + 1;
        h.apply(basis[j], w);
        alphas.push_back(basis[j].dot(w).real());
        // two passes of classical Gram-Schmidt against the whole basis
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : basis) w -= q.dot(w) * q;
        }
        const double beta = w.norm();

        const int m = j + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alphas[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = betas[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
        ritz = eig.eigenvalues()[0];
        ritz_vector = eig.eigenvectors().col(0);
        const double estimate = beta * std::abs(ritz_vector[m - 1]);
        if (estimate < 0.01 * config.residual_tolerance || beta < 1e-13 || m == limit) break;
        betas.push_back(beta);
        basis.push_back(w / beta);
    }

    Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < ritz_vector.size(); ++i) ground += ritz_vector[i] * basis[i];
    ground.normalize();
    h.apply(ground, w);
    const double energy = ground.dot(w).real();
    const double residual = (w - energy * ground).norm();
    if (residual > config.residual_tolerance) {
        throw convergence_error("Lanczos residual " + std::to_string(residual) + " after " +
                                std::to_string(iterations) + " iterations");
    }
    GroundState out;
    out.energy = energy;
    out.residual = residual;
    out.iterations = iterations;
    Eigen::Index phase_at = 0;
    ground.cwiseAbs().maxCoeff(&phase_at);
    ground *= std::abs(ground[phase_at]) / ground[phase_at];  // fix the global phase
    out.state = State(h.space_ptr(), std::move(ground));
    return out;
}

GroundState fci_ground(const PauliSum &h, int n_qubits, const LanczosConfig &config) {
    return lanczos_ground(SparseOperator(h, Space::full(n_qubits)), config);
}

GroundState fci_ground(const MoleculeBundle &bundle, const LanczosConfig &config) {
    return lanczos_ground(SparseOperator(bundle.hamiltonian, Space::for_bundle(bundle)), config);
}

std::vector<double> adapt_scores(const Simulator &sim, const State &psi) {
    const OperatorPool &pool = sim.pool();
    const Eigen::VectorXcd h_psi = sim.apply_hamiltonian(psi);
    std::vector<double> scores(pool.size());
    parallel_for(pool.size(), [&](std::size_t g) {
        const auto members = sim.append_gradients(psi, h_psi, static_cast<int>(g));
        double s = 0.0;
        if (pool[g].shared_parameter) {
            for (double m : members) s += m;
        } else {
            for (double m : members) s += m * m;
            s = std::sqrt(s);
        }
        scores[g] = s;
    });
    return scores;
}

AdaptResult adapt_vqe(const Simulator &sim, const AdaptConfig &config) {
    const OperatorPool &pool = sim.pool();
    if (config.max_groups < 0) throw validation_error("max_groups must be non-negative");
    AdaptResult out;
    out.hf_energy = out.energy = sim.energy(sim.hf_state());
    for (int step = 1; step <= config.max_groups; ++step) {
        const auto layers = layers_for(pool, out.structure);
        const State psi = sim.prepare(layers, out.theta);
        const auto scores = adapt_scores(sim, psi);
        int best = 0;
        for (int g = 1; g < pool.size(); ++g) {
            if (std::abs(scores[g]) > std::abs(scores[best])) best = g;
        }
        if (std::abs(scores[best]) < config.gradient_threshold) {
            out.stopped_on_threshold = true;
            break;
        }
        out.structure.push_back(best);
        std::vector<double> theta = out.theta;
        theta.resize(theta.size() + pool[best].n_parameters(), 0.0);
        VqeResult fit = optimize_circuit(sim, layers_for(pool, out.structure), std::move(theta), config.optimizer);
        out.theta = std::move(fit.theta);
        out.energy = fit.energy;
        out.steps.push_back({step, best, std::abs(scores[best]), fit.energy, fit.converged});
    }
    return out;
}

TruncatedResult truncated_uccsd(const Simulator &sim, int k, const QuasiNewtonConfig &optimizer) {
    const OperatorPool &pool = sim.pool();
    if (k < 0 || k > pool.size()) {
        throw validation_error("k must lie in [0, " + std::to_string(pool.size()) + "]");
    }
    const auto order = mp2_order(pool);
    TruncatedResult out;
    out.structure.assign(order.begin(), order.begin() + k);
    const auto layers = layers_for(pool, out.structure);
    VqeResult fit = optimize_circuit(sim, layers, std::vector<double>(slot_count(pool, layers), 0.0), optimizer);
    out.theta = std::move(fit.theta);
    out.energy = fit.energy;
    out.converged = fit.converged;
    return out;
}

}  // namespace ansatzforge
