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

#ifndef ANSATZFORGE_NUMERICS_H
#define ANSATZFORGE_NUMERICS_H

#include <functional>
#include <span>
#include <vector>

namespace ansatzforge {

struct AdamConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Bias-corrected Adam.
class Adam {
   public:
    Adam(std::size_t n, AdamConfig config = {});

    /// Throws a convergence error on a non-finite gradient, leaving params untouched.
    void step(std::span<double> params, std::span<const double> gradient);

    const std::vector<double> &first_moment() const { return m_; }
    const std::vector<double> &second_moment() const { return v_; }
    long steps() const { return t_; }
    const AdamConfig &config() const { return config_; }

   private:
    AdamConfig config_;
    std::vector<double> m_;
    std::vector<double> v_;
    long t_ = 0;
};

struct QuasiNewtonConfig {
    /// Stop once max |g_i| falls to this.
    double gradient_tolerance = 1e-8;
    int max_iterations = 1000;
    /// Sufficient-decrease and curvature constants of the strong Wolfe conditions.
    double c1 = 1e-4;
    double c2 = 0.9;
    int max_line_search_evaluations = 40;
};

struct QuasiNewtonResult {
    std::vector<double> x;
    double f = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    bool line_search_failed = false;
};

/// f(x) with the gradient written into grad.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// BFGS with a dense inverse-Hessian and a strong-Wolfe line search. Always
/// returns the best point evaluated, so the result is never worse than x0.
QuasiNewtonResult quasi_newton_minimize(const Objective &objective, std::vector<double> x0,
                                        const QuasiNewtonConfig &config = {});

}  // namespace ansatzforge

#endif
