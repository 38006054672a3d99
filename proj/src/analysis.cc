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

#include "ansatzforge/analysis.h"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ansatzforge/error.h"

namespace ansatzforge {

Composition composition(const OperatorPool &pool, std::span<const int> structure) {
    Composition c;
    for (int g : structure) {
        for (const auto &m : pool[g].members) {
            (m.kind == ExcitationKind::kSingle ? c.n_singles : c.n_doubles) += 1;
            c.spans.push_back(m.qubit_span);
        }
    }
    return c;
}

int cnot_total(const OperatorPool &pool, std::span<const int> structure) {
    int total = 0;
    for (int g : structure) total += pool[g].cnot_cost_total;
    return total;
}

PoolAverages pool_average_costs(const OperatorPool &pool) {
    long long sum_s = 0, n_s = 0, sum_d = 0, n_d = 0;
    for (const auto &g : pool.groups) {
        for (const auto &m : g.members) {
            const int c = cnot_cost(m, pool.cost_model);
            if (m.kind == ExcitationKind::kSingle) {
                sum_s += c;
                ++n_s;
            } else {
                sum_d += c;
                ++n_d;
            }
        }
    }
    PoolAverages out;
    if (n_s) out.single = Rational(sum_s, n_s);
    if (n_d) out.double_ = Rational(sum_d, n_d);
    return out;
}

Rational count_contribution(int delta_singles, int delta_doubles, Rational avg_single, Rational avg_double) {
    return Rational(delta_singles) * avg_single + Rational(delta_doubles) * avg_double;
}

DeltaCnot delta_cnot_decomposition(const OperatorPool &pool, std::span<const int> a, std::span<const int> b) {
    const Composition ca = composition(pool, a);
    const Composition cb = composition(pool, b);
    const PoolAverages avg = pool_average_costs(pool);
    DeltaCnot d;
    d.total = Rational(cnot_total(pool, b) - cnot_total(pool, a));
    d.count = count_contribution(cb.n_singles - ca.n_singles, cb.n_doubles - ca.n_doubles, avg.single, avg.double_);
    d.complexity = d.total - d.count;
    return d;
}

CostModel calibrate_cost_model(const OperatorPool &pool, double target_single, double target_double, int per_z) {
    long long z_s = 0, n_s = 0, z_d = 0, n_d = 0;
    for (const auto &g : pool.groups) {
        for (const auto &m : g.members) {
            if (m.kind == ExcitationKind::kSingle) {
                z_s += m.z_string_length;
                ++n_s;
            } else {
                z_d += m.z_string_length;
                ++n_d;
            }
        }
    }
    CostModel model = pool.cost_model;
    model.per_z = per_z;
    auto best_base = [&](long long z, long long n, double target) {
        if (n == 0) return 0;
        const double mean_z = static_cast<double>(z) / static_cast<double>(n);
        return std::max(0, static_cast<int>(std::lround(target - per_z * mean_z)));
    };
    model.single_base = best_base(z_s, n_s, target_single);
    model.double_base = best_base(z_d, n_d, target_double);
    return model;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::kFci:
            return "fci";
        case Method::kGlobal:
            return "global";
        case Method::kLayerwise:
            return "layerwise";
        case Method::kAdapt:
            return "adapt";
        case Method::kTruncated:
            return "truncated";
    }
    return "?";
}

Method parse_method(const std::string &name) {
    for (Method m : {Method::kFci, Method::kGlobal, Method::kLayerwise, Method::kAdapt, Method::kTruncated}) {
        if (method_name(m) == name) return m;
    }
    throw validation_error("unknown method '" + name + "'");
}

MethodOutcome run_method(const Simulator &sim, const MethodSpec &spec) {
    MethodOutcome out;
    out.method = method_name(spec.method);
    out.layers = spec.layers;
    switch (spec.method) {
        case Method::kFci: {
            out.ground = fci_ground(sim.bundle());
            out.energy = out.ground->energy;
            break;
        }
        case Method::kGlobal: {
            GlobalConfig cfg = spec.global;
            cfg.finetune = spec.optimizer;
            out.search = run_global(sim, spec.layers, cfg);
            break;
        }
        case Method::kLayerwise: {
            LayerwiseConfig cfg = spec.layerwise;
            cfg.search.finetune = spec.optimizer;
            out.search = run_layerwise(sim, spec.layers, cfg);
            break;
        }
        case Method::kAdapt: {
            out.adapt = adapt_vqe(sim, {spec.layers, spec.adapt_threshold, spec.optimizer});
            out.structure = out.adapt->structure;
            out.theta = out.adapt->theta;
            out.energy = out.adapt->energy;
            break;
        }
        case Method::kTruncated: {
            TruncatedResult t = truncated_uccsd(sim, spec.layers, spec.optimizer);
            out.structure = t.structure;
            out.theta = t.theta;
            out.energy = t.energy;
            break;
        }
    }
    if (out.search) {
        out.structure = out.search->structure;
        out.theta = out.search->theta;
        out.energy = out.search->energy;
    }
    return out;
}

double reference_energy(const MoleculeBundle &bundle) {
    return bundle.fci_energy ? *bundle.fci_energy : fci_ground(bundle).energy;
}

PecRow make_row(const MoleculeBundle &bundle, const OperatorPool &pool, const MethodOutcome &outcome) {
    PecRow row;
    row.geometry = bundle.geometry_label;
    row.method = outcome.method;
    row.layers = outcome.layers;
    row.energy = outcome.energy;
    row.fci = reference_energy(bundle);
    row.error_mha = 1e3 * std::abs(row.energy - row.fci);
    row.cnot = cnot_total(pool, outcome.structure);
    const Composition c = composition(pool, outcome.structure);
    row.n_singles = c.n_singles;
    row.n_doubles = c.n_doubles;
    row.chemically_accurate = row.error_mha < 1e3 * kChemicalAccuracy;
    return row;
}

std::vector<PecRow> sweep(const std::vector<std::string> &bundle_paths, const MethodSpec &spec, PoolFlavor flavor,
                          const PoolOptions &options) {
    std::vector<PecRow> rows;
    for (const auto &path : bundle_paths) {
        try {
            const MoleculeBundle bundle = load_bundle(path);
            const OperatorPool pool = build_pool(bundle, flavor, options);
            const Simulator sim(bundle, pool);
            rows.push_back(make_row(bundle, pool, run_method(sim, spec)));
        } catch (const std::exception &e) {
            PecRow row;
            row.geometry = path;
            row.method = method_name(spec.method);
            row.layers = spec.layers;
            row.energy = row.fci = row.error_mha = std::numeric_limits<double>::quiet_NaN();
            row.failure = e.what();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<PecRow> scaling(const Simulator &sim, const std::vector<MethodSpec> &specs, int min_layers,
                            int max_layers) {
    std::vector<PecRow> rows;
    for (int l = min_layers; l <= max_layers; ++l) {
        for (MethodSpec spec : specs) {
            spec.layers = l;
            if (spec.method == Method::kLayerwise) {
                // shrink the window for circuits shorter than it
                spec.layerwise.window = std::min(spec.layerwise.window, l);
                spec.layerwise.slide = std::min(spec.layerwise.slide, spec.layerwise.window - 1);
            }
            try {
                rows.push_back(make_row(sim.bundle(), sim.pool(), run_method(sim, spec)));
            } catch (const Error &e) {
                PecRow row;
                row.geometry = sim.bundle().geometry_label;
                row.method = method_name(spec.method);
                row.layers = l;
                row.energy = row.fci = row.error_mha = std::numeric_limits<double>::quiet_NaN();
                row.failure = e.what();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

namespace {

std::string num(double v, const char *fmt) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

std::string pec_csv(const std::vector<PecRow> &rows) {
    std::string out = "geometry,method,L,energy_ha,fci_ha,error_mha,cnot,n_singles,n_doubles,chemical_accuracy\n";
    for (const auto &r : rows) {
        out += r.geometry + ',' + r.method + ',' + std::to_string(r.layers) + ',' + num(r.energy, "%.10f") + ',' +
               num(r.fci, "%.10f") + ',' + num(r.error_mha, "%.6f") + ',' +
               (r.failure.empty() ? std::to_string(r.cnot) + ',' + std::to_string(r.n_singles) + ',' +
                                        std::to_string(r.n_doubles) + ',' + (r.chemically_accurate ? "1" : "0")
                                  : std::string(",,,")) +
               '\n';
    }
    return out;
}

std::string scaling_csv(const std::vector<PecRow> &rows) {
    std::string out = "L,method,energy_ha,error_mha,cnot\n";
    for (const auto &r : rows) {
        out += std::to_string(r.layers) + ',' + r.method + ',' + num(r.energy, "%.10f") + ',' +
               num(r.error_mha, "%.6f") + ',' + (r.failure.empty() ? std::to_string(r.cnot) : std::string()) + '\n';
    }
    return out;
}

std::string format_rational(const Rational &r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string delta_csv(const std::string &geometry, const DeltaCnot &d) {
    auto show = [](const Rational &r) {
        return num(boost::rational_cast<double>(r), "%.6f");
    };
    return "geometry,delta_total,delta_count,delta_complexity,delta_count_exact,delta_complexity_exact\n" + geometry +
           ',' + show(d.total) + ',' + show(d.count) + ',' + show(d.complexity) + ',' + format_rational(d.count) +
           ',' + format_rational(d.complexity) + '\n';
}

}  // namespace ansatzforge
