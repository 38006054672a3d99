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

#include "ansatzforge/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ansatzforge/error.h"
#include "json.hpp"

namespace ansatzforge {

using nlohmann::ordered_json;

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw io_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) throw io_error("cannot rename onto '" + path + "': " + ec.message());
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

ordered_json optimizer_json(const QuasiNewtonConfig &q) {
    return {{"gradient_tolerance", q.gradient_tolerance},
            {"max_iterations", q.max_iterations},
            {"c1", q.c1},
            {"c2", q.c2},
            {"max_line_search_evaluations", q.max_line_search_evaluations}};
}

ordered_json search_json(const GlobalConfig &g) {
    const AdamConfig adam;
    return {{"epochs", g.epochs},
            {"batch", g.batch},
            {"restarts", g.restarts},
            {"alpha_sigma", g.alpha_sigma},
            {"lr_alpha", g.lr_alpha},
            {"lr_theta", g.lr_theta},
            {"adam_beta1", adam.beta1},
            {"adam_beta2", adam.beta2},
            {"adam_epsilon", adam.epsilon},
            {"seed", g.seed},
            {"tie_theta", g.tie_theta},
            {"checkpoints", checkpoint_epochs(g.epochs)}};
}

ordered_json config_object(const MethodSpec &spec, PoolFlavor flavor, const CostModel &model) {
    ordered_json j;
    j["method"] = method_name(spec.method);
    j["layers"] = spec.layers;
    j["pool_flavor"] = flavor_name(flavor);
    j["cost_model"] = ordered_json::parse(model.to_json());
    j["optimizer"] = optimizer_json(spec.optimizer);
    switch (spec.method) {
        case Method::kGlobal:
            j["search"] = search_json(spec.global);
            break;
        case Method::kLayerwise:
            j["search"] = search_json(spec.layerwise.search);
            j["window"] = spec.layerwise.window;
            j["slide"] = spec.layerwise.slide;
            j["warm_boost"] = spec.layerwise.warm_boost;
            break;
        case Method::kAdapt:
            j["gradient_threshold"] = spec.adapt_threshold;
            break;
        default:
            break;
    }
    return j;
}

}  // namespace

std::string config_json(const MethodSpec &spec, PoolFlavor flavor, const CostModel &model) {
    return config_object(spec, flavor, model).dump(1);
}

std::string result_json(const MoleculeBundle &bundle, const OperatorPool &pool, const MethodSpec &spec,
                        const MethodOutcome &outcome) {
    const PecRow row = make_row(bundle, pool, outcome);
    ordered_json j;
    j["method"] = outcome.method;
    j["bundle"] = {{"name", bundle.name},
                   {"geometry_label", bundle.geometry_label},
                   {"n_electrons", bundle.active_space.n_electrons},
                   {"n_spatial_orbitals", bundle.active_space.n_spatial_orbitals},
                   {"n_qubits", bundle.n_qubits()}};
    j["pool"] = {{"flavor", flavor_name(pool.flavor)}, {"groups", pool.size()}};
    j["layers"] = outcome.layers;
    j["structure"] = outcome.structure;
    j["theta"] = outcome.theta;
    j["energy"] = outcome.energy;
    j["fci_energy"] = row.fci;
    j["error_mha"] = row.error_mha;
    j["chemical_accuracy"] = row.chemically_accurate;
    j["cnot_total"] = row.cnot;
    j["composition"] = {{"n_singles", row.n_singles}, {"n_doubles", row.n_doubles}};
    if (outcome.ground) {
        j["lanczos"] = {{"iterations", outcome.ground->iterations}, {"residual", outcome.ground->residual}};
    }
    if (outcome.search) {
        const SearchResult &s = *outcome.search;
        j["pre_finetune_energy"] = s.pre_finetune_energy;
        j["finetune_converged"] = s.finetune_converged;
        j["restarts_used"] = s.restarts_used;
        j["restarts_failed"] = s.restarts_failed;
        j["restart_energies"] = s.restart_energies;
        ordered_json layers = ordered_json::array();
        for (const auto &l : s.layers) layers.push_back({{"group", l.group}, {"slot", l.slot}});
        j["circuit"] = layers;
        j["trace"] = {{"energy", s.trace.energy},
                      {"distinct_groups", s.trace.distinct_groups},
                      {"checkpoints", s.trace.checkpoints},
                      {"max_prob", s.trace.max_prob}};
        if (!s.steps.empty()) {
            ordered_json steps = ordered_json::array();
            for (const auto &st : s.steps) {
                steps.push_back({{"step", st.step},
                                 {"committed_size", st.committed_size},
                                 {"energy", st.energy},
                                 {"committed_groups", st.committed_groups}});
            }
            j["steps"] = steps;
        }
    }
    if (outcome.adapt) {
        ordered_json steps = ordered_json::array();
        for (const auto &st : outcome.adapt->steps) {
            steps.push_back({{"step", st.step},
                             {"group", st.group},
                             {"abs_gradient", st.abs_gradient},
                             {"energy", st.energy},
                             {"converged", st.converged}});
        }
        j["adapt_steps"] = steps;
        j["stopped_on_threshold"] = outcome.adapt->stopped_on_threshold;
    }
    j["config"] = config_object(spec, pool.flavor, pool.cost_model);
    return j.dump(1) + "\n";
}

namespace {

std::string fmt(double v, const char *f) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

std::string trace_csv(const TrainTrace &trace) {
    const std::size_t n_layers = trace.max_prob.empty() ? 0 : trace.max_prob.front().size();
    std::string out = "epoch,mean_energy,distinct_groups";
    for (std::size_t l = 0; l < n_layers; ++l) out += ",max_prob_l" + std::to_string(l);
    out += '\n';
    const std::size_t epochs = trace.energy.size();
    for (std::size_t e = 0; e <= epochs; ++e) {
        std::size_t c = 0;
        while (c < trace.checkpoints.size() && trace.checkpoints[c] != static_cast<int>(e)) ++c;
        const bool checkpoint = c < trace.checkpoints.size() && c < trace.max_prob.size();
        if (e == epochs && !checkpoint) break;
        out += std::to_string(e) + ',';
        if (e < epochs) out += fmt(trace.energy[e], "%.10f") + ',' + std::to_string(trace.distinct_groups[e]);
        else out += ',';
        for (std::size_t l = 0; l < n_layers; ++l) {
            out += ',';
            if (checkpoint) out += fmt(trace.max_prob[c][l], "%.6f");
        }
        out += '\n';
    }
    return out;
}

std::string steps_csv(const std::vector<StepRecord> &steps) {
    std::string out = "step,committed_size,energy_after_finetune,committed_group_ids\n";
    for (const auto &s : steps) {
        std::string ids;
        for (std::size_t i = 0; i < s.committed_groups.size(); ++i) {
            if (i) ids += ' ';
            ids += std::to_string(s.committed_groups[i]);
        }
        out += std::to_string(s.step) + ',' + std::to_string(s.committed_size) + ',' + fmt(s.energy, "%.10f") + ',' +
               ids + '\n';
    }
    return out;
}

std::string adapt_csv(const AdaptResult &result, const OperatorPool &pool, double fci) {
    std::string out = "step,group_id,abs_gradient,energy,error_vs_fci,cnot_total\n";
    int cnot = 0;
    for (const auto &s : result.steps) {
        cnot += pool[s.group].cnot_cost_total;
        out += std::to_string(s.step) + ',' + std::to_string(s.group) + ',' + fmt(s.abs_gradient, "%.10e") + ',' +
               fmt(s.energy, "%.10f") + ',' + fmt(std::abs(s.energy - fci), "%.10e") + ',' + std::to_string(cnot) +
               '\n';
    }
    return out;
}

std::vector<int> structure_from_result(const std::string &json_text) {
    try {
        auto j = nlohmann::json::parse(json_text);
        return j.at("structure").get<std::vector<int>>();
    } catch (const nlohmann::json::exception &e) {
        throw validation_error(std::string("result document without a usable 'structure': ") + e.what());
    }
}

}  // namespace ansatzforge
