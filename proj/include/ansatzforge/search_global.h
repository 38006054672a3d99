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

#ifndef ANSATZFORGE_SEARCH_GLOBAL_H
#define ANSATZFORGE_SEARCH_GLOBAL_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ansatzforge/numerics.h"
#include "ansatzforge/sim.h"

namespace ansatzforge {

struct GlobalConfig {
    int epochs = 2000;
    int batch = 16;
    int restarts = 4;
    /// Standard deviation of the initial architecture logits.
    double alpha_sigma = 0.01;
    double lr_alpha = 0.05;
    double lr_theta = 0.005;
    std::uint64_t seed = 0;
    /// One angle per group shared by every layer instead of one per layer.
    bool tie_theta = false;
    QuasiNewtonConfig finetune;
};

/// Epochs at which per-layer max probabilities are recorded: 0, 10, 100, 400
/// and the final epoch, dropping any beyond it.
std::vector<int> checkpoint_epochs(int epochs);

/// Slot offset of each group in one row of the parameter table.
std::vector<int> parameter_offsets(const OperatorPool &pool);

/// Architecture logits and the per-layer parameter table.
///
/// theta is L x P where P is the pool's total parameter count: layer l running
/// group g reads theta(l, offset[g] ...). With tied angles theta has a single
/// row that every layer reads. The stream index separates restarts and growth
/// steps in the random number streams.
struct ArchState {
    Eigen::MatrixXd alpha;
    Eigen::MatrixXd theta;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    long epoch = 0;
    bool tied = false;

    int theta_row(int layer) const { return tied ? 0 : layer; }
    int layers() const { return static_cast<int>(alpha.rows()); }
    int candidates() const { return static_cast<int>(alpha.cols()); }
    std::vector<double> probabilities(int layer) const;
};

std::vector<double> softmax(std::span<const double> logits);

/// alpha ~ N(0, sigma^2), theta = 0.
ArchState init_arch(const OperatorPool &pool, int layers, double sigma, std::uint64_t seed, std::uint64_t stream,
                    bool tied = false);

using Structure = std::vector<int>;

/// K structures drawn independently from the per-layer softmax. Sample b
/// depends only on (seed, stream, epoch, b).
std::vector<Structure> sample_batch(const ArchState &arch, int k);

struct BatchEvaluation {
    double mean_energy = 0.0;
    std::vector<double> energies;
    Eigen::MatrixXd grad_alpha;
    Eigen::MatrixXd grad_theta;
    /// Distinct group ids over the whole batch.
    int distinct_groups = 0;
};

/// Mean energy, parameter-table gradient and the score-function gradient of
/// the logits with the batch mean as baseline. prefix, when given, is the
/// state the sampled layers are applied to.
BatchEvaluation batch_loss_and_grads(const Simulator &sim, const ArchState &arch, const std::vector<Structure> &batch,
                                     const State *prefix = nullptr);

struct TrainTrace {
    std::vector<double> energy;
    std::vector<int> distinct_groups;
    std::vector<int> checkpoints;
    /// max_prob[c][l] at checkpoints[c].
    std::vector<std::vector<double>> max_prob;
};

/// config.epochs rounds of sample, evaluate and Adam update on both alpha and
/// theta. A non-finite loss raises a convergence error.
TrainTrace train_global(const Simulator &sim, ArchState &arch, const GlobalConfig &config,
                        const State *prefix = nullptr);

/// Per-layer argmax of alpha, ties to the lowest index.
Structure extract_discrete(const ArchState &arch);

/// Table entries for a structure occupying the first layers of the table,
/// one group's slots per layer.
std::vector<double> gather_theta(const OperatorPool &pool, const ArchState &arch, const Structure &structure);

struct StepRecord {
    int step = 0;
    int committed_size = 0;
    double energy = 0.0;
    std::vector<int> committed_groups;
};

struct SearchResult {
    std::string method;
    Structure structure;
    std::vector<Layer> layers;
    std::vector<double> theta;
    double energy = 0.0;
    double pre_finetune_energy = 0.0;
    bool finetune_converged = true;
    TrainTrace trace;
    std::vector<double> restart_energies;
    int restarts_used = 0;
    int restarts_failed = 0;
    std::vector<StepRecord> steps;
};

/// Trains, extracts and fine-tunes config.restarts independent runs and keeps
/// the lowest energy (ties to the lower restart index). Each layer of the
/// extracted circuit gets its own parameters. Fine-tuning starts both from the
/// trained table values and from zero and keeps the better result.
SearchResult run_global(const Simulator &sim, int layers, const GlobalConfig &config);

}  // namespace ansatzforge

#endif
