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

// Command-line front end: one subcommand per method plus pool, sweep and
// decompose utilities. Exit codes are 0 on success, 2 for invalid input,
// 3 when an optimizer or eigensolver fails and 4 for file errors.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ansatzforge/analysis.h"
#include "ansatzforge/error.h"
#include "ansatzforge/report.h"

namespace af = ansatzforge;

namespace {

struct Options {
    std::vector<std::string> bundles;
    std::string flavor = "uccsd";
    std::string cost_model;
    std::string out_dir = ".";
    int layers = 0;
    std::optional<int> window, slide, epochs, batch, restarts;
    std::optional<double> alpha_sigma, lr_alpha, lr_theta, warm_boost;
    std::uint64_t seed = 0;
    bool tie_theta = false;
    double adapt_threshold = 1e-6;
    // sweep
    std::vector<std::string> methods;
    int min_layers = 0;
    int max_layers = 0;
    // decompose
    std::string result_a, result_b;
};

af::PoolOptions pool_options(const Options &o) {
    af::PoolOptions p;
    if (!o.cost_model.empty()) p.cost_model = af::CostModel::load(o.cost_model);
    return p;
}

af::MethodSpec method_spec(af::Method method, const Options &o) {
    af::MethodSpec s;
    s.method = method;
    s.layers = o.layers;
    s.adapt_threshold = o.adapt_threshold;
    for (af::GlobalConfig *g : {&s.global, &s.layerwise.search}) {
        if (o.epochs) g->epochs = *o.epochs;
        if (o.batch) g->batch = *o.batch;
        if (o.restarts) g->restarts = *o.restarts;
        if (o.alpha_sigma) g->alpha_sigma = *o.alpha_sigma;
        if (o.lr_alpha) g->lr_alpha = *o.lr_alpha;
        if (o.lr_theta) g->lr_theta = *o.lr_theta;
        g->seed = o.seed;
        g->tie_theta = o.tie_theta;
    }
    if (o.window) s.layerwise.window = *o.window;
    if (o.slide) s.layerwise.slide = *o.slide;
    if (o.warm_boost) s.layerwise.warm_boost = *o.warm_boost;
    return s;
}

const std::string &single_bundle(const Options &o) {
    if (o.bundles.size() != 1) throw af::validation_error("this subcommand takes exactly one --bundle");
    return o.bundles.front();
}

std::string join(const std::string &dir, const std::string &file) {
    return (std::filesystem::path(dir) / file).string();
}

std::string stem(const af::MoleculeBundle &b, const std::string &method, int layers) {
    std::string s = method + "_" + b.name + "_" + b.geometry_label;
    if (method != "fci") s += "_L" + std::to_string(layers);
    return s;
}

void summary(const std::string &method, int layers, double energy, double error_mha, int cnot, double seconds,
             const std::string &extra = {}) {
    std::printf("%s L=%d energy=%.10f error=%.4f mHa cnot=%d wall=%.2fs%s\n", method.c_str(), layers, energy,
                error_mha, cnot, seconds, extra.c_str());
}

int run_method_command(af::Method method, const Options &o, double &elapsed_out) {
    const auto t0 = std::chrono::steady_clock::now();
    const af::MoleculeBundle bundle = af::load_bundle(single_bundle(o));
    const af::OperatorPool pool = af::build_pool(bundle, af::parse_flavor(o.flavor), pool_options(o));
    const af::Simulator sim(bundle, pool);
    af::MethodSpec spec = method_spec(method, o);
    if (method == af::Method::kFci) spec.layers = 0;
    const af::MethodOutcome outcome = af::run_method(sim, spec);

    const std::string base = stem(bundle, outcome.method, spec.layers);
    af::write_file_atomic(join(o.out_dir, base + ".json"), af::result_json(bundle, pool, spec, outcome));
    if (outcome.search) {
        af::write_file_atomic(join(o.out_dir, base + "_trace.csv"), af::trace_csv(outcome.search->trace));
        if (!outcome.search->steps.empty()) {
            af::write_file_atomic(join(o.out_dir, base + "_steps.csv"), af::steps_csv(outcome.search->steps));
        }
    }
    if (outcome.adapt) {
        af::write_file_atomic(join(o.out_dir, base + "_adapt.csv"),
                              af::adapt_csv(*outcome.adapt, pool, af::reference_energy(bundle)));
    }
    const af::PecRow row = af::make_row(bundle, pool, outcome);
    elapsed_out = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    summary(outcome.method, spec.layers, row.energy, row.error_mha, row.cnot, elapsed_out);
    return 0;
}

int pool_command(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    const af::MoleculeBundle bundle = af::load_bundle(single_bundle(o));
    const af::OperatorPool pool = af::build_pool(bundle, af::parse_flavor(o.flavor), pool_options(o));
    const std::string base = "pool_" + af::flavor_name(pool.flavor) + "_" + bundle.name + "_" + bundle.geometry_label;
    af::write_file_atomic(join(o.out_dir, base + ".csv"), af::pool_csv(pool));
    const af::PoolAverages avg = af::pool_average_costs(pool);
    int singles = 0;
    for (const auto &g : pool.groups) singles += g.kind() == af::ExcitationKind::kSingle;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %d groups (%d singles, %d doubles) avg_cnot_single=%.3f avg_cnot_double=%.3f wall=%.2fs\n",
                af::flavor_name(pool.flavor).c_str(), bundle.name.c_str(), pool.size(), singles, pool.size() - singles,
                boost::rational_cast<double>(avg.single), boost::rational_cast<double>(avg.double_), secs);
    return 0;
}

int sweep_command(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    if (o.methods.empty()) throw af::validation_error("sweep needs at least one --method");
    const af::PoolFlavor flavor = af::parse_flavor(o.flavor);
    const af::PoolOptions popts = pool_options(o);
    bool any_failed = false;
    if (o.max_layers > 0) {
        // layer-count scaling at one geometry
        const af::MoleculeBundle bundle = af::load_bundle(single_bundle(o));
        const af::OperatorPool pool = af::build_pool(bundle, flavor, popts);
        const af::Simulator sim(bundle, pool);
        std::vector<af::MethodSpec> specs;
        for (const auto &m : o.methods) specs.push_back(method_spec(af::parse_method(m), o));
        const int lo = std::max(o.min_layers, 1);
        auto rows = af::scaling(sim, specs, lo, o.max_layers);
        for (const auto &r : rows) any_failed = any_failed || !r.failure.empty();
        af::write_file_atomic(join(o.out_dir, "scaling_" + bundle.name + "_" + bundle.geometry_label + ".csv"),
                              af::scaling_csv(rows));
        std::printf("scaling %s L=%d..%d rows=%zu wall=%.2fs\n", bundle.name.c_str(), lo, o.max_layers, rows.size(),
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    } else {
        if (o.bundles.empty()) throw af::validation_error("sweep needs at least one --bundle");
        std::vector<af::PecRow> rows;
        for (const auto &m : o.methods) {
            auto part = af::sweep(o.bundles, method_spec(af::parse_method(m), o), flavor, popts);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        for (const auto &r : rows) {
            if (!r.failure.empty()) {
                any_failed = true;
                std::fprintf(stderr, "warning: %s (%s): %s\n", r.geometry.c_str(), r.method.c_str(),
                             r.failure.c_str());
            }
        }
        af::write_file_atomic(join(o.out_dir, "pec.csv"), af::pec_csv(rows));
        std::printf("sweep bundles=%zu methods=%zu rows=%zu wall=%.2fs\n", o.bundles.size(), o.methods.size(),
                    rows.size(), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return any_failed ? 1 : 0;
}

int decompose_command(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    const af::MoleculeBundle bundle = af::load_bundle(single_bundle(o));
    const af::OperatorPool pool = af::build_pool(bundle, af::parse_flavor(o.flavor), pool_options(o));
    const auto a = af::structure_from_result(af::read_file(o.result_a));
    const auto b = af::structure_from_result(af::read_file(o.result_b));
    for (int g : a) {
        if (g < 0 || g >= pool.size()) throw af::validation_error("circuit A uses a group outside the pool");
    }
    for (int g : b) {
        if (g < 0 || g >= pool.size()) throw af::validation_error("circuit B uses a group outside the pool");
    }
    const af::DeltaCnot d = af::delta_cnot_decomposition(pool, a, b);
    af::write_file_atomic(join(o.out_dir, "delta_" + bundle.name + "_" + bundle.geometry_label + ".csv"),
                          af::delta_csv(bundle.geometry_label, d));
    std::printf("delta_total=%s delta_count=%s delta_complexity=%s wall=%.2fs\n",
                af::format_rational(d.total).c_str(), af::format_rational(d.count).c_str(),
                af::format_rational(d.complexity).c_str(),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return 0;
}

int exit_code(const af::Error &e) {
    switch (e.kind()) {
        case af::ErrorKind::kValidation:
            return 2;
        case af::ErrorKind::kConvergence:
            return 3;
        case af::ErrorKind::kIo:
            return 4;
    }
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Differentiable quantum architecture search for compact chemistry ansaetze"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--bundle", o.bundles, "Molecule bundle JSON")->required();
        cmd->add_option("--pool-flavor", o.flavor, "Operator pool: uccsd or qeb")
            ->check(CLI::IsMember({"uccsd", "qeb"}));
        cmd->add_option("--cost-model", o.cost_model, "CNOT cost table JSON");
        cmd->add_option("--out-dir", o.out_dir, "Directory for result files");
    };
    auto add_search = [&](CLI::App *cmd) {
        cmd->add_option("--epochs", o.epochs, "Training epochs per run");
        cmd->add_option("--batch", o.batch, "Structures sampled per epoch");
        cmd->add_option("--restarts", o.restarts, "Independent restarts (per growth step for layerwise)");
        cmd->add_option("--seed", o.seed, "Random seed");
        cmd->add_option("--alpha-sigma", o.alpha_sigma, "Std. deviation of the initial logits");
        cmd->add_option("--lr-alpha", o.lr_alpha, "Adam learning rate of the logits");
        cmd->add_option("--lr-theta", o.lr_theta, "Adam learning rate of the angles");
        cmd->add_flag("--tie-theta", o.tie_theta, "Share one angle per group across layers while training");
    };

    auto *fci = app.add_subcommand("fci", "Exact ground-state energy in the reference sector");
    add_common(fci);

    auto *global = app.add_subcommand("global", "Train all layers jointly");
    add_common(global);
    add_search(global);
    global->add_option("--layers,-L", o.layers, "Circuit length")->required();

    auto *layerwise = app.add_subcommand("layerwise", "Grow the circuit window by window");
    add_common(layerwise);
    add_search(layerwise);
    layerwise->add_option("--layers,-L", o.layers, "Circuit length")->required();
    layerwise->add_option("--window", o.window, "Layers trained per growth step");
    layerwise->add_option("--slide", o.slide, "Layers committed per growth step");
    layerwise->add_option("--warm-boost", o.warm_boost, "Logit bonus of carried-over groups");

    auto *adapt = app.add_subcommand("adapt", "Greedy gradient-selected baseline");
    add_common(adapt);
    adapt->add_option("--layers,-L", o.layers, "Maximum number of groups")->required();
    adapt->add_option("--gradient-threshold", o.adapt_threshold, "Stop once every score is below this");

    auto *truncated = app.add_subcommand("truncated", "Leading groups in MP2 order");
    add_common(truncated);
    truncated->add_option("--layers,-L", o.layers, "Number of groups")->required();

    auto *pool = app.add_subcommand("pool", "Write the operator pool table");
    add_common(pool);

    auto *sweep = app.add_subcommand("sweep", "Energy curves over bundles, or error against circuit length");
    add_common(sweep);
    add_search(sweep);
    sweep->add_option("--method", o.methods, "Method(s) to run")->required();
    sweep->add_option("--layers,-L", o.layers, "Circuit length for curves");
    sweep->add_option("--window", o.window, "Layerwise window");
    sweep->add_option("--slide", o.slide, "Layerwise slide");
    sweep->add_option("--min-layers", o.min_layers, "Scaling mode: shortest circuit");
    sweep->add_option("--max-layers", o.max_layers, "Scaling mode: longest circuit (enables scaling mode)");

    auto *decompose = app.add_subcommand("decompose", "Split the CNOT difference of two circuits");
    add_common(decompose);
    decompose->add_option("--a", o.result_a, "Result JSON of circuit A")->required();
    decompose->add_option("--b", o.result_b, "Result JSON of circuit B")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        double elapsed = 0.0;
        if (*fci) return run_method_command(af::Method::kFci, o, elapsed);
        if (*global) return run_method_command(af::Method::kGlobal, o, elapsed);
        if (*layerwise) return run_method_command(af::Method::kLayerwise, o, elapsed);
        if (*adapt) return run_method_command(af::Method::kAdapt, o, elapsed);
        if (*truncated) return run_method_command(af::Method::kTruncated, o, elapsed);
        if (*pool) return pool_command(o);
        if (*sweep) return sweep_command(o);
        if (*decompose) return decompose_command(o);
    } catch (const af::Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code(e);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
