// Copyright 2026 The qvbench Authors
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qvbench/apps.hpp"
#include "qvbench/rng.hpp"

namespace qvb {

namespace {

class Recorder {
   public:
    Recorder(const Objective &f, OptimizerTrace &trace) : f_(f), trace_(trace) {}

    double operator()(std::span<const double> x) {
        const double v = f_(x, static_cast<std::uint64_t>(trace_.evaluations++));
        if (!std::isfinite(v)) {
            throw OptimizerDiverged("objective returned a non-finite value at evaluation " +
                                        std::to_string(trace_.evaluations),
                                    trace_);
        }
        return v;
    }

    void iteration(double value) {
        trace_.values.push_back(value);
        trace_.best.push_back(trace_.best.empty() ? value : std::min(trace_.best.back(), value));
        ++trace_.iterations;
    }

   private:
    const Objective &f_;
    OptimizerTrace &trace_;
};

}  // namespace

OptimizerTrace spsa_minimize(const Objective &f, std::vector<double> x, const SpsaOptions &o) {
    if (o.max_iterations < 1) {
        throw InvalidInput("SPSA needs at least one iteration");
    }
    OptimizerTrace trace;
    Recorder eval(f, trace);
    Rng rng(o.seed);
    const double big_a = o.big_a >= 0 ? o.big_a : 0.1 * o.max_iterations;
    const std::size_t p = x.size();
    std::vector<double> delta(p), plus(p), minus(p);
    for (int k = 0; k < o.max_iterations; ++k) {
        const double ak = o.a / std::pow(k + 1 + big_a, o.alpha);
        const double ck = o.c / std::pow(k + 1, o.gamma);
        for (std::size_t i = 0; i < p; ++i) {
            delta[i] = rng.sign();
            plus[i] = x[i] + ck * delta[i];
            minus[i] = x[i] - ck * delta[i];
        }
        const double fp = eval(plus);
        const double fm = eval(minus);
        const double g = (fp - fm) / (2 * ck);
        for (std::size_t i = 0; i < p; ++i) {
            x[i] -= ak * g * delta[i];
        }
        eval.iteration(0.5 * (fp + fm));
        const int n = static_cast<int>(trace.values.size());
        if (o.window > 0 && n > o.window && std::abs(trace.values[n - 1] - trace.values[n - 1 - o.window]) < o.tol) {
            trace.converged = true;
            break;
        }
    }
    trace.final_value = eval(x);
    trace.x = std::move(x);
    return trace;
}

OptimizerTrace nelder_mead_minimize(const Objective &f, std::vector<double> x0, const NelderMeadOptions &o) {
    OptimizerTrace trace;
    Recorder eval(f, trace);
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += o.initial_step;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = eval(simplex[i]);
    }
    std::vector<std::size_t> order(n + 1);
    auto point = [&](const std::vector<double> &centroid, const std::vector<double> &worst, double t) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = centroid[i] + t * (worst[i] - centroid[i]);
        }
        return out;
    };
    for (int it = 0; it < o.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n > 0 ? n - 1 : 0];
        eval.iteration(fv[best]);
        if (fv[worst] - fv[best] < o.tol) {
            trace.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += simplex[order[k]][i] / static_cast<double>(n);
            }
        }
        const auto xr = point(centroid, simplex[worst], -1.0);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            const auto xe = point(centroid, simplex[worst], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const auto xc = point(centroid, outside ? xr : simplex[worst], 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    auto &v = simplex[order[k]];
                    for (std::size_t i = 0; i < n; ++i) {
                        v[i] = simplex[best][i] + 0.5 * (v[i] - simplex[best][i]);
                    }
                    fv[order[k]] = eval(v);
                }
            }
        }
    }
    const std::size_t best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    trace.x = simplex[best];
    trace.final_value = fv[best];
    return trace;
}

OptimizerKind optimizer_from_name(std::string_view name) {
    if (name == "spsa") {
        return OptimizerKind::Spsa;
    }
    if (name == "nelder-mead") {
        return OptimizerKind::NelderMead;
    }
    throw InvalidInput("unknown optimizer '" + std::string(name) + "' (expected spsa or nelder-mead)");
}

std::string_view optimizer_name(OptimizerKind kind) { return kind == OptimizerKind::Spsa ? "spsa" : "nelder-mead"; }

VqeResult vqe(const PauliHamiltonian &hamiltonian, const VqeOptions &options) {
    if (options.ansatz.num_qubits != hamiltonian.num_qubits()) {
        throw InvalidInput("ansatz width does not match the Hamiltonian");
    }
    if (options.zne && !options.device) {
        throw InvalidInput("ZNE-mitigated VQE needs a device");
    }
    std::vector<double> x0 = options.initial;
    if (x0.empty()) {
        Rng rng(derive_seed(options.seed, 0));
        x0.resize(options.ansatz.num_parameters());
        for (double &v : x0) {
            v = rng.uniform(-std::numbers::pi, std::numbers::pi);
        }
    } else if (static_cast<int>(x0.size()) != options.ansatz.num_parameters()) {
        throw InvalidInput("initial parameter vector has the wrong length");
    }

    NoiseModel noise;
    if (options.device) {
        noise = build_noise_model(*options.device, 1.0);
    }
    const std::uint64_t eval_seed = derive_seed(options.seed, 1);
    const Objective objective = [&](std::span<const double> theta, std::uint64_t call) {
        const Circuit c = build_ansatz(options.ansatz, theta);
        const std::uint64_t s = derive_seed(eval_seed, call);
        if (options.zne) {
            return zne_energy(hamiltonian, c, *options.device, options.stretches, options.shots, s);
        }
        return energy(hamiltonian, c, Backend{options.device ? &noise : nullptr, options.shots}, s);
    };

    OptimizerTrace t;
    if (options.optimizer == OptimizerKind::Spsa) {
        SpsaOptions so = options.spsa;
        so.seed = derive_seed(options.seed, 2);
        t = spsa_minimize(objective, std::move(x0), so);
    } else {
        t = nelder_mead_minimize(objective, std::move(x0), options.nelder_mead);
    }
    VqeResult r;
    r.theta = std::move(t.x);
    r.trace = std::move(t.values);
    r.best = std::move(t.best);
    r.final_energy = t.final_value;
    r.iterations = t.iterations;
    r.evaluations = t.evaluations;
    r.converged = t.converged;
    return r;
}

}  // namespace qvb
