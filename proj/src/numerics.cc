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

#include "ansatzforge/numerics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ansatzforge/error.h"

namespace ansatzforge {

Adam::Adam(std::size_t n, AdamConfig config) : config_(config), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> gradient) {
    if (params.size() != m_.size() || gradient.size() != m_.size()) {
        throw validation_error("adam: parameter and gradient sizes differ from the optimizer state");
    }
    for (double g : gradient) {
        if (!std::isfinite(g)) throw convergence_error("adam: non-finite gradient");
    }
    ++t_;
    const double b1t = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
    const double b2t = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * gradient[i];
        v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * gradient[i] * gradient[i];
        const double mhat = m_[i] / b1t;
        const double vhat = v_[i] / b2t;
        params[i] -= config_.learning_rate * mhat / (std::sqrt(vhat) + config_.epsilon);
    }
}

namespace {

using Vec = Eigen::VectorXd;

struct Point {
    double alpha = 0.0;
    double f = 0.0;
    double d = 0.0;  // directional derivative
};

// Minimizer of the cubic through two points with slopes, or NaN.
double cubic_min(const Point &a, const Point &b) {
    const double d1 = a.d + b.d - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.d * b.d;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.d - a.d + 2.0 * d2;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return b.alpha - (b.alpha - a.alpha) * (b.d + d2 - d1) / denom;
}

class Minimizer {
   public:
    Minimizer(const Objective &f, const QuasiNewtonConfig &config, std::size_t n)
        : f_(f), config_(config), grad_buf_(n) {}

    // Evaluates at x, tracking the best point seen.
    double eval(const Vec &x, Vec &g) {
        ++evaluations;
        double v = f_(std::span<const double>(x.data(), x.size()), grad_buf_);
        g = Eigen::Map<const Vec>(grad_buf_.data(), grad_buf_.size());
        if (std::isfinite(v) && g.allFinite() && v < best_f) {
            best_f = v;
            best_x = x;
            best_g = g;
        }
        return v;
    }

    // Strong-Wolfe step along p from x; returns false on failure.
    bool line_search(const Vec &x, double f0, const Vec &g0, const Vec &p, double alpha_init, Vec &x_out,
                     double &f_out, Vec &g_out) {
        const double d0 = g0.dot(p);
        if (!(d0 < 0.0)) return false;
        Vec g;
        auto probe = [&](double alpha) {
            Vec xa = x + alpha * p;
            double fa = eval(xa, g);
            Point pt{alpha, fa, g.dot(p)};
            if (!std::isfinite(fa) || !std::isfinite(pt.d)) {
                pt.f = std::numeric_limits<double>::infinity();
                pt.d = std::numeric_limits<double>::quiet_NaN();
            }
            return std::make_pair(pt, xa);
        };
        auto accept = [&](const Point &pt, const Vec &xa) {
            x_out = xa;
            f_out = pt.f;
            g_out = g;
            return true;
        };

        Point prev{0.0, f0, d0};
        double alpha = alpha_init;
        int budget = config_.max_line_search_evaluations;
        Point lo, hi;
        bool bracketed = false;
        for (int i = 0; budget-- > 0; ++i) {
            auto [cur, xa] = probe(alpha);
            if (!std::isfinite(cur.f)) {
                alpha = 0.5 * (prev.alpha + alpha);
                if (alpha - prev.alpha < 1e-16) return false;
                continue;
            }
            if (cur.f > f0 + config_.c1 * cur.alpha * d0 || (i > 0 && cur.f >= prev.f)) {
                lo = prev;
                hi = cur;
                bracketed = true;
                break;
            }
            if (std::abs(cur.d) <= -config_.c2 * d0) return accept(cur, xa);
            if (cur.d >= 0.0) {
                lo = cur;
                hi = prev;
                bracketed = true;
                break;
            }
            prev = cur;
            alpha *= 2.0;
        }
        if (!bracketed) return false;

        while (budget-- > 0) {
            const double a = std::min(lo.alpha, hi.alpha);
            const double b = std::max(lo.alpha, hi.alpha);
            const double width = b - a;
            if (width < 1e-16 * std::max(1.0, b)) return false;
            double trial = cubic_min(lo, hi);
            if (!std::isfinite(trial) || trial < a + 0.1 * width || trial > b - 0.1 * width) trial = 0.5 * (a + b);
            auto [cur, xa] = probe(trial);
            if (!std::isfinite(cur.f) || cur.f > f0 + config_.c1 * cur.alpha * d0 || cur.f >= lo.f) {
                hi = cur;
                if (!std::isfinite(cur.f)) hi.d = 0.0;
            } else {
                if (std::abs(cur.d) <= -config_.c2 * d0) return accept(cur, xa);
                if (cur.d * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = cur;
            }
        }
        return false;
    }

    int evaluations = 0;
    double best_f = std::numeric_limits<double>::infinity();
    Vec best_x;
    Vec best_g;

   private:
    const Objective &f_;
    const QuasiNewtonConfig &config_;
    std::vector<double> grad_buf_;
};

}  // namespace

QuasiNewtonResult quasi_newton_minimize(const Objective &objective, std::vector<double> x0,
                                        const QuasiNewtonConfig &config) {
    if (!(config.gradient_tolerance > 0.0)) throw validation_error("quasi-Newton tolerance must be positive");
    const std::size_t n = x0.size();
    QuasiNewtonResult result;
    Minimizer mz(objective, config, n);
    Vec x = Eigen::Map<const Vec>(x0.data(), n);
    Vec g;
    double f = mz.eval(x, g);
    if (!std::isfinite(f) || !g.allFinite()) throw convergence_error("quasi-Newton: objective not finite at start");

    auto finish = [&](bool converged, bool failed) {
        result.x.assign(mz.best_x.data(), mz.best_x.data() + n);
        result.f = mz.best_f;
        result.gradient_norm = n ? mz.best_g.cwiseAbs().maxCoeff() : 0.0;
        result.evaluations = mz.evaluations;
        result.converged = converged || result.gradient_norm <= config.gradient_tolerance;
        result.line_search_failed = failed;
        return result;
    };
    if (n == 0) {
        mz.best_x = x;
        mz.best_g = g;
        return finish(true, false);
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    bool scaled = false;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        result.iterations = iter;
        if (g.cwiseAbs().maxCoeff() <= config.gradient_tolerance) return finish(true, false);
        Vec p = -h * g;
        if (!(g.dot(p) < 0.0)) {
            h.setIdentity();
            p = -g;
        }
        double alpha0 = 1.0;
        if (!scaled) alpha0 = std::min(1.0, 1.0 / g.cwiseAbs().maxCoeff());
        Vec x_new, g_new;
        double f_new;
        if (!mz.line_search(x, f, g, p, alpha0, x_new, f_new, g_new)) {
            // retry once along steepest descent from a fresh metric
            h.setIdentity();
            scaled = false;
            p = -g;
            alpha0 = std::min(1.0, 1.0 / g.cwiseAbs().maxCoeff());
            if (!mz.line_search(x, f, g, p, alpha0, x_new, f_new, g_new)) return finish(false, true);
        }
        Vec s = x_new - x;
        Vec y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            if (!scaled) {
                h *= sy / y.dot(y);
                scaled = true;
            }
            const double rho = 1.0 / sy;
            Vec hy = h * y;
            // (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded
            h += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }
        x = std::move(x_new);
        g = std::move(g_new);
        f = f_new;
    }
    result.iterations = config.max_iterations;
    return finish(false, false);
}

}  // namespace ansatzforge
