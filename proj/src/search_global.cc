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

#include "ansatzforge/search_global.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "ansatzforge/error.h"
#include "ansatzforge/parallel.h"
#include "ansatzforge/vqe.h"

namespace ansatzforge {

std::vector<int> checkpoint_epochs(int epochs) {
    std::vector<int> out;
    for (int e : {0, 10, 100, 400}) {
        if (e < epochs) out.push_back(e);
    }
    out.push_back(epochs);
    return out;
}

std::vector<int> parameter_offsets(const OperatorPool &pool) {
    std::vector<int> out;
    int slot = 0;
    for (const auto &g : pool.groups) {
        out.push_back(slot);
        slot += g.n_parameters();
    }
    out.push_back(slot);
    return out;
}

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> p(logits.size());
    if (logits.empty()) return p;
    const double top = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) total += p[i] = std::exp(logits[i] - top);
    for (double &v : p) v /= total;
    return p;
}

std::vector<double> ArchState::probabilities(int layer) const {
    std::vector<double> row(alpha.cols());
    for (int i = 0; i < alpha.cols(); ++i) row[i] = alpha(layer, i);
    return softmax(row);
}

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller, so the draws do not depend on the standard library's distribution code.
double standard_normal(std::mt19937_64 &rng) {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

constexpr std::uint64_t kInitTag = ~std::uint64_t{0};

}  // namespace

ArchState init_arch(const OperatorPool &pool, int layers, double sigma, std::uint64_t seed, std::uint64_t stream,
                    bool tied) {
    if (layers < 0) throw validation_error("layer count must be non-negative");
    if (pool.size() == 0) throw validation_error("empty operator pool");
    ArchState arch;
    arch.seed = seed;
    arch.stream = stream;
    arch.tied = tied;
    arch.alpha.resize(layers, pool.size());
    auto rng = make_rng(seed, stream, kInitTag, 0);
    for (int l = 0; l < layers; ++l) {
        for (int i = 0; i < pool.size(); ++i) arch.alpha(l, i) = sigma * standard_normal(rng);
    }
    arch.theta = Eigen::MatrixXd::Zero(tied ? 1 : layers, parameter_offsets(pool).back());
    return arch;
}

std::vector<Structure> sample_batch(const ArchState &arch, int k) {
    if (k < 1) throw validation_error("batch size must be at least 1");
    std::vector<std::vector<double>> probs;
    for (int l = 0; l < arch.layers(); ++l) probs.push_back(arch.probabilities(l));
    std::vector<Structure> out;
    for (int b = 0; b < k; ++b) {
        auto rng = make_rng(arch.seed, arch.stream, static_cast<std::uint64_t>(arch.epoch), b);
        Structure s(arch.layers());
        for (int l = 0; l < arch.layers(); ++l) {
            double u = uniform01(rng);
            int pick = arch.candidates() - 1;
            for (int i = 0; i < arch.candidates(); ++i) {
                u -= probs[l][i];
                if (u < 0.0) {
                    pick = i;
                    break;
                }
            }
            s[l] = pick;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<double> gather_theta(const OperatorPool &pool, const ArchState &arch, const Structure &structure) {
    const auto offsets = parameter_offsets(pool);
    std::vector<double> out;
    for (std::size_t l = 0; l < structure.size(); ++l) {
        const int g = structure[l];
        for (int m = 0; m < pool[g].n_parameters(); ++m) out.push_back(arch.theta(arch.theta_row(static_cast<int>(l)), offsets[g] + m));
    }
    return out;
}

BatchEvaluation batch_loss_and_grads(const Simulator &sim, const ArchState &arch, const std::vector<Structure> &batch,
                                     const State *prefix) {
    const OperatorPool &pool = sim.pool();
    const auto offsets = parameter_offsets(pool);
    const int n_layers = arch.layers();
    const std::size_t k = batch.size();
    std::vector<double> energies(k);
    std::vector<std::vector<double>> grads(k);
    parallel_for(k, [&](std::size_t b) {
        const auto layers = layers_for(pool, batch[b]);
        const auto theta = gather_theta(pool, arch, batch[b]);
        grads[b].resize(theta.size());
        energies[b] = sim.energy_and_gradient(layers, theta, grads[b], prefix);
    });

    BatchEvaluation out;
    out.energies = energies;
    out.grad_alpha = Eigen::MatrixXd::Zero(n_layers, arch.candidates());
    out.grad_theta = Eigen::MatrixXd::Zero(arch.theta.rows(), arch.theta.cols());
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= static_cast<double>(k);
    out.mean_energy = mean;

    std::vector<std::vector<double>> probs;
    for (int l = 0; l < n_layers; ++l) probs.push_back(arch.probabilities(l));
    std::set<int> seen;
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t b = 0; b < k; ++b) {
        const double advantage = energies[b] - mean;
        std::size_t cursor = 0;
        for (int l = 0; l < n_layers; ++l) {
            const int g = batch[b][l];
            seen.insert(g);
            for (int i = 0; i < arch.candidates(); ++i) {
                out.grad_alpha(l, i) += inv_k * advantage * ((i == g ? 1.0 : 0.0) - probs[l][i]);
            }
            for (int m = 0; m < pool[g].n_parameters(); ++m) {
                out.grad_theta(arch.theta_row(l), offsets[g] + m) += inv_k * grads[b][cursor++];
            }
        }
    }
    out.distinct_groups = static_cast<int>(seen.size());
    return out;
}

TrainTrace train_global(const Simulator &sim, ArchState &arch, const GlobalConfig &config, const State *prefix) {
    if (config.epochs < 0) throw validation_error("epochs must be non-negative");
    TrainTrace trace;
    trace.checkpoints = checkpoint_epochs(config.epochs);
    auto record = [&] {
        std::vector<double> row;
        for (int l = 0; l < arch.layers(); ++l) {
            auto p = arch.probabilities(l);
            row.push_back(*std::max_element(p.begin(), p.end()));
        }
        trace.max_prob.push_back(std::move(row));
    };
    auto is_checkpoint = [&](int e) {
        return std::find(trace.checkpoints.begin(), trace.checkpoints.end(), e) != trace.checkpoints.end();
    };

    Adam adam_alpha(arch.alpha.size(), {.learning_rate = config.lr_alpha});
    Adam adam_theta(arch.theta.size(), {.learning_rate = config.lr_theta});
    for (int e = 0; e < config.epochs; ++e) {
        arch.epoch = e;
        if (is_checkpoint(e)) record();
        const auto batch = sample_batch(arch, config.batch);
        BatchEvaluation ev = batch_loss_and_grads(sim, arch, batch, prefix);
        if (!std::isfinite(ev.mean_energy)) throw convergence_error("non-finite loss at epoch " + std::to_string(e));
        trace.energy.push_back(ev.mean_energy);
        trace.distinct_groups.push_back(ev.distinct_groups);
        adam_alpha.step(std::span<double>(arch.alpha.data(), arch.alpha.size()),
                        std::span<const double>(ev.grad_alpha.data(), ev.grad_alpha.size()));
        adam_theta.step(std::span<double>(arch.theta.data(), arch.theta.size()),
                        std::span<const double>(ev.grad_theta.data(), ev.grad_theta.size()));
    }
    arch.epoch = config.epochs;
    record();
    return trace;
}

Structure extract_discrete(const ArchState &arch) {
    Structure s(arch.layers());
    for (int l = 0; l < arch.layers(); ++l) {
        int best = 0;
        for (int i = 1; i < arch.candidates(); ++i) {
            if (arch.alpha(l, i) > arch.alpha(l, best)) best = i;
        }
        s[l] = best;
    }
    return s;
}

SearchResult run_global(const Simulator &sim, int n_layers, const GlobalConfig &config) {
    if (n_layers < 0) throw validation_error("layer count must be non-negative");
    if (config.restarts < 1) throw validation_error("restarts must be at least 1");
    SearchResult best;
    best.method = "global";
    if (n_layers == 0) {
        best.energy = best.pre_finetune_energy = sim.energy(sim.hf_state());
        best.restarts_used = config.restarts;
        best.restart_energies.assign(config.restarts, best.energy);
        return best;
    }

    const OperatorPool &pool = sim.pool();
    std::vector<std::optional<SearchResult>> runs(config.restarts);
    parallel_for(config.restarts, [&](std::size_t r) {
        try {
            ArchState arch = init_arch(pool, n_layers, config.alpha_sigma, config.seed, r, config.tie_theta);
            SearchResult res;
            res.method = "global";
            res.trace = train_global(sim, arch, config);
            res.structure = extract_discrete(arch);
            res.layers = layers_for(pool, res.structure);
            std::vector<double> trained = gather_theta(pool, arch, res.structure);
            VqeResult from_trained = optimize_circuit(sim, res.layers, trained, config.finetune);
            VqeResult from_zero =
                optimize_circuit(sim, res.layers, std::vector<double>(trained.size(), 0.0), config.finetune);
            const VqeResult &pick = from_zero.energy < from_trained.energy ? from_zero : from_trained;
            res.pre_finetune_energy = from_trained.start_energy;
            res.theta = pick.theta;
            res.energy = pick.energy;
            res.finetune_converged = pick.converged;
            runs[r] = std::move(res);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::kConvergence) throw;
        }
    });

    int chosen = -1;
    for (int r = 0; r < config.restarts; ++r) {
        best.restart_energies.push_back(runs[r] ? runs[r]->energy : std::numeric_limits<double>::quiet_NaN());
        if (!runs[r]) {
            ++best.restarts_failed;
            continue;
        }
        if (chosen < 0 || runs[r]->energy < runs[chosen]->energy) chosen = r;
    }
    if (chosen < 0) throw convergence_error("all " + std::to_string(config.restarts) + " restarts failed");
    auto energies = std::move(best.restart_energies);
    int failed = best.restarts_failed;
    best = std::move(*runs[chosen]);
    best.restart_energies = std::move(energies);
    best.restarts_failed = failed;
    best.restarts_used = config.restarts;
    return best;
}

}  // namespace ansatzforge
