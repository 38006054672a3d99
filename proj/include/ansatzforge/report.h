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

#ifndef ANSATZFORGE_REPORT_H
#define ANSATZFORGE_REPORT_H

#include <string>
#include <vector>

#include "ansatzforge/analysis.h"

namespace ansatzforge {

/// Writes through a temporary sibling file and a rename, so readers never see
/// a partial file. Throws an I/O error on failure.
void write_file_atomic(const std::string &path, const std::string &content);

std::string read_file(const std::string &path);

/// Every knob of a run with defaults materialized.
std::string config_json(const MethodSpec &spec, PoolFlavor flavor, const CostModel &model);

/// Result document: structure, angles, energy, error, CNOT accounting,
/// traces and the configuration. Contains nothing time dependent.
std::string result_json(const MoleculeBundle &bundle, const OperatorPool &pool, const MethodSpec &spec,
                        const MethodOutcome &outcome);

/// epoch, mean_energy, distinct_groups, then per-layer max probability on
/// checkpoint rows.
std::string trace_csv(const TrainTrace &trace);

/// step, committed_size, energy_after_finetune, committed_group_ids.
std::string steps_csv(const std::vector<StepRecord> &steps);

/// step, group_id, abs_gradient, energy, error_vs_fci, cnot_total.
std::string adapt_csv(const AdaptResult &result, const OperatorPool &pool, double fci);

/// Group ids from a result document's "structure" field.
std::vector<int> structure_from_result(const std::string &json_text);

}  // namespace ansatzforge

#endif
