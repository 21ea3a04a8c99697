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
#include <limits>
#include <numbers>

#include "qvbench/apps.hpp"
#include "qvbench/parallel.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/simulator.hpp"

namespace qvb {

Circuit feature_map(const FeatureMapConfig &config, std::span<const double> x) {
    const int n = config.num_qubits;
    if (n < 1 || config.repetitions < 1) {
        throw InvalidInput("feature map needs at least one qubit and one repetition");
    }
    if (static_cast<int>(x.size()) != n) {
        throw InvalidInput("data point has dimension " + std::to_string(x.size()) + ", feature map expects " +
                           std::to_string(n));
    }
    constexpr double pi = std::numbers::pi;
    Circuit c(n, 0, "feature_map");
    for (int r = 0; r < config.repetitions; ++r) {
        for (int q = 0; q < n; ++q) {
            c.append(Gate::h(q));
            c.append(Gate::u1(q, 2 * x[q]));
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                c.append(Gate::cx(i, j));
                c.append(Gate::u1(j, 2 * (pi - x[i]) * (pi - x[j])));
                c.append(Gate::cx(i, j));
            }
        }
    }
    return c;
}

namespace {

StateVector embed(const FeatureMapConfig &config, std::span<const double> x) {
    return run_statevector(feature_map(config, x));
}

double overlap(const StateVector &a, const StateVector &b) {
    cplx acc = 0;
    const auto pa = a.amplitudes(), pb = b.amplitudes();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        acc += std::conj(pa[i]) * pb[i];
    }
    return std::norm(acc);
}

}  // namespace

double kernel_entry(const FeatureMapConfig &config, std::span<const double> a, std::span<const double> b,
                    const KernelOptions &options, std::uint64_t seed) {
    if (options.shots == 0 && !options.noise) {
        return overlap(embed(config, a), embed(config, b));
    }
    Circuit c = feature_map(config, b);
    c.append(inverse(feature_map(config, a)));
    std::vector<double> p;
    if (options.noise) {
        p = run_density(c, *options.noise).probabilities();
    } else {
        p = run_statevector(c).probabilities();
    }
    if (options.shots == 0) {
        return p[0];
    }
    const MeasureMap mm = MeasureMap::identity(config.num_qubits);
    const Counts counts =
        sample_counts(p, mm, options.shots, options.noise ? &options.noise->readout() : nullptr, seed);
    auto it = counts.find(std::string(config.num_qubits, '0'));
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(options.shots);
}

KernelMatrix kernel_matrix(const Points &x, const FeatureMapConfig &config, const KernelOptions &options) {
    const std::size_t n = x.size();
    for (const auto &p : x) {
        if (static_cast<int>(p.size()) != config.num_qubits) {
            throw InvalidInput("data point dimension does not match the feature map");
        }
    }
    KernelMatrix k;
    k.shots = options.shots;
    k.backend = options.noise ? "density" : "statevector";
    k.values = Eigen::MatrixXd::Zero(n, n);
    const unsigned threads = resolve_threads(options.threads);
    if (options.shots == 0 && !options.noise) {
        std::vector<StateVector> states;
        states.reserve(n);
        for (const auto &p : x) {
            states.push_back(embed(config, p));
        }
        parallel_for(n, threads, [&](std::size_t i) {
            for (std::size_t j = i; j < n; ++j) {
                k.values(i, j) = overlap(states[i], states[j]);
            }
        });
    } else {
        parallel_for(n, threads, [&](std::size_t i) {
            for (std::size_t j = i; j < n; ++j) {
                k.values(i, j) = kernel_entry(config, x[i], x[j], options, derive_seed(options.seed, i * n + j));
            }
        });
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            k.values(i, j) = k.values(j, i);
        }
    }
    return k;
}

Eigen::MatrixXd kernel_cross(const Points &rows, const Points &cols, const FeatureMapConfig &config,
                             const KernelOptions &options) {
    Eigen::MatrixXd k(rows.size(), cols.size());
    const std::size_t nc = cols.size();
    parallel_for(rows.size(), resolve_threads(options.threads), [&](std::size_t i) {
        for (std::size_t j = 0; j < nc; ++j) {
            k(i, j) = kernel_entry(config, rows[i], cols[j], options,
                                   derive_seed(options.seed ^ 0xC055ULL, i * nc + j));
        }
    });
    return k;
}

namespace {

struct Violation {
    double m = -std::numeric_limits<double>::infinity();
    double big_m = std::numeric_limits<double>::infinity();
    std::size_t i = 0, j = 0;
};

// Maximal violating pair over -y_t G_t.
Violation find_violation(const std::vector<double> &alpha, const std::vector<double> &grad, std::span<const int> y,
                         double c) {
    Violation v;
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        const double s = -y[t] * grad[t];
        const bool up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
        const bool low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
        if (up && s > v.m) {
            v.m = s;
            v.i = t;
        }
        if (low && s < v.big_m) {
            v.big_m = s;
            v.j = t;
        }
    }
    return v;
}

}  // namespace

SvmModel train_svm(const Eigen::MatrixXd &k, std::span<const int> labels, double c, double tol, int max_iterations) {
    const std::size_t n = labels.size();
    if (k.rows() != static_cast<Eigen::Index>(n) || k.cols() != static_cast<Eigen::Index>(n)) {
        throw InvalidInput("kernel matrix size does not match label count");
    }
    if (!k.allFinite()) {
        throw InvalidInput("kernel matrix has non-finite entries");
    }
    if (!(c > 0)) {
        throw InvalidInput("SVM regularization C must be positive");
    }
    for (int y : labels) {
        if (y != 1 && y != -1) {
            throw InvalidInput("SVM labels must be +1 or -1");
        }
    }
    SvmModel model;
    model.c = c;
    model.labels.assign(labels.begin(), labels.end());
    model.alpha.assign(n, 0.0);
    if (n == 0) {
        throw InvalidInput("SVM needs training data");
    }
    if (std::all_of(labels.begin(), labels.end(), [&](int y) { return y == labels[0]; })) {
        model.constant = true;
        model.b = labels[0];
        return model;
    }

    std::vector<double> grad(n, -1.0);
    Violation v = find_violation(model.alpha, grad, labels, c);
    while (v.m - v.big_m >= tol && model.iterations < max_iterations) {
        const std::size_t i = v.i, j = v.j;
        const int yi = labels[i], yj = labels[j];
        double a = k(i, i) + k(j, j) - 2 * k(i, j);
        if (a <= 0) {
            a = 1e-12;
        }
        double t = (v.m - v.big_m) / a;
        t = std::min(t, yi > 0 ? c - model.alpha[i] : model.alpha[i]);
        t = std::min(t, yj > 0 ? model.alpha[j] : c - model.alpha[j]);
        model.alpha[i] += yi * t;
        model.alpha[j] -= yj * t;
        model.alpha[i] = std::clamp(model.alpha[i], 0.0, c);
        model.alpha[j] = std::clamp(model.alpha[j], 0.0, c);
        for (std::size_t s = 0; s < n; ++s) {
            grad[s] += t * labels[s] * (k(s, i) - k(s, j));
        }
        ++model.iterations;
        v = find_violation(model.alpha, grad, labels, c);
    }
    model.kkt_gap = v.m - v.big_m;

    double sum = 0;
    int free = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (model.alpha[s] > 1e-12 && model.alpha[s] < c - 1e-12) {
            sum += -labels[s] * grad[s];
            ++free;
        }
    }
    model.b = free ? sum / free : 0.5 * (v.m + v.big_m);
    return model;
}

double svm_decision(const SvmModel &model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.alpha.size()) {
        throw InvalidInput("kernel row length does not match the training set");
    }
    double f = model.b;
    for (std::size_t i = 0; i < model.alpha.size(); ++i) {
        f += model.alpha[i] * model.labels[i] * kernel_row[i];
    }
    return f;
}

int svm_predict(const SvmModel &model, std::span<const double> kernel_row) {
    return svm_decision(model, kernel_row) >= 0 ? 1 : -1;
}

double svm_kkt_violation(const SvmModel &model, const Eigen::MatrixXd &k) {
    if (model.constant) {
        return 0;
    }
    const std::size_t n = model.alpha.size();
    std::vector<double> grad(n, -1.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            grad[s] += model.labels[s] * model.labels[t] * model.alpha[t] * k(s, t);
        }
    }
    const Violation v = find_violation(model.alpha, grad, model.labels, model.c);
    return std::max(0.0, v.m - v.big_m);
}

}  // namespace qvb
