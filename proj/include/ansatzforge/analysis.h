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

#ifndef ANSATZFORGE_ANALYSIS_H
#define ANSATZFORGE_ANALYSIS_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ansatzforge/baselines.h"
#include "ansatzforge/pool.h"
#include "ansatzforge/search_global.h"
#include "ansatzforge/search_layerwise.h"

namespace ansatzforge {

using Rational = boost::rational<long long>;

/// Error below which a result counts as chemically accurate, in Hartree.
inline constexpr double kChemicalAccuracy = 1.6e-3;

/// Operator-level make-up of a circuit: spin-paired groups count twice.
struct Composition {
    int n_singles = 0;
    int n_doubles = 0;
    std::vector<int> spans;

    int total() const { return n_singles + n_doubles; }
};

Composition composition(const OperatorPool &pool, std::span<const int> structure);
int cnot_total(const OperatorPool &pool, std::span<const int> structure);

/// Mean CNOT cost of the single and of the double excitations over every
/// operator in the pool.
struct PoolAverages {
    Rational single{0};
    Rational double_{0};
};
PoolAverages pool_average_costs(const OperatorPool &pool);

/// Difference (B - A) of two circuits split into the part explained by the
/// operator counts at pool-average cost and the residual from operator spans.
struct DeltaCnot {
    Rational total{0};
    Rational count{0};
    Rational complexity{0};
};

Rational count_contribution(int delta_singles, int delta_doubles, Rational avg_single, Rational avg_double);
DeltaCnot delta_cnot_decomposition(const OperatorPool &pool, std::span<const int> a, std::span<const int> b);

/// Fermionic model with the given per-Z charge whose pool-average costs come
/// closest to the targets, searching integer bases.
CostModel calibrate_cost_model(const OperatorPool &pool, double target_single, double target_double, int per_z = 2);

enum class Method { kFci, kGlobal, kLayerwise, kAdapt, kTruncated };
std::string method_name(Method m);
Method parse_method(const std::string &name);

struct MethodSpec {
    Method method = Method::kGlobal;
    int layers = 0;
    GlobalConfig global;
    LayerwiseConfig layerwise;
    double adapt_threshold = 1e-6;
    QuasiNewtonConfig optimizer;
};

struct MethodOutcome {
    std::string method;
    int layers = 0;
    Structure structure;
    std::vector<double> theta;
    double energy = 0.0;
    std::optional<SearchResult> search;
    std::optional<AdaptResult> adapt;
    std::optional<GroundState> ground;
};

MethodOutcome run_method(const Simulator &sim, const MethodSpec &spec);

/// FCI reference of a bundle: the stored value, else a Lanczos solve.
double reference_energy(const MoleculeBundle &bundle);

struct PecRow {
    std::string geometry;
    std::string method;
    int layers = 0;
    double energy = 0.0;
    double fci = 0.0;
    double error_mha = 0.0;
    int cnot = 0;
    int n_singles = 0;
    int n_doubles = 0;
    bool chemically_accurate = false;
    std::string failure;
};

PecRow make_row(const MoleculeBundle &bundle, const OperatorPool &pool, const MethodOutcome &outcome);

/// One row per bundle; a failing geometry yields a row with `failure` set and
/// the sweep carries on.
std::vector<PecRow> sweep(const std::vector<std::string> &bundle_paths, const MethodSpec &spec, PoolFlavor flavor,
                          const PoolOptions &options);

/// Energy error against layer count at one geometry.
std::vector<PecRow> scaling(const Simulator &sim, const std::vector<MethodSpec> &specs, int min_layers,
                            int max_layers);

std::string pec_csv(const std::vector<PecRow> &rows);
std::string scaling_csv(const std::vector<PecRow> &rows);
std::string delta_csv(const std::string &geometry, const DeltaCnot &d);

std::string format_rational(const Rational &r);

}  // namespace ansatzforge

#endif
