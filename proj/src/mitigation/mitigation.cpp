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

#include "qvbench/mitigation.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "qvbench/errors.hpp"
#include "qvbench/parallel.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/simulator.hpp"

namespace qvb {

void validate_stretches(std::span<const double> stretches) {
    if (stretches.empty()) {
        throw InvalidInput("stretch schedule is empty");
    }
    if (std::abs(stretches[0] - 1.0) > 1e-12) {
        throw InvalidInput("stretch schedule must start at 1");
    }
    for (std::size_t i = 1; i < stretches.size(); ++i) {
        if (!(stretches[i] > stretches[i - 1]) || !std::isfinite(stretches[i])) {
            throw InvalidInput("stretch schedule must be strictly increasing");
        }
    }
}

std::vector<double> richardson_coefficients(std::span<const double> stretches) {
    validate_stretches(stretches);
    const Eigen::Index n = static_cast<Eigen::Index>(stretches.size());
    Eigen::MatrixXd v(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double p = 1;
        for (Eigen::Index k = 0; k < n; ++k) {
            v(k, j) = p;
            p *= stretches[j];
        }
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = 1;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
    if (!lu.isInvertible()) {
        throw InvalidInput("Richardson system is singular");
    }
    const Eigen::VectorXd g = lu.solve(rhs);
    return {g.data(), g.data() + n};
}

ZneResult zne_combine(std::span<const double> stretches, std::span<const double> raw,
                      std::span<const double> raw_stderr) {
    if (raw.size() != stretches.size() || raw_stderr.size() != stretches.size()) {
        throw InvalidInput("one raw value per stretch is required");
    }
    ZneResult r;
    r.stretches.assign(stretches.begin(), stretches.end());
    r.coefficients = richardson_coefficients(stretches);
    r.raw.assign(raw.begin(), raw.end());
    r.raw_stderr.assign(raw_stderr.begin(), raw_stderr.end());
    double var = 0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        r.mitigated += r.coefficients[j] * raw[j];
        var += r.coefficients[j] * r.coefficients[j] * raw_stderr[j] * raw_stderr[j];
    }
    r.stderr_ = std::sqrt(var);
    return r;
}

double measure_expectation(DensityMatrix rho, const PauliString &observable, std::uint64_t shots,
                            const ReadoutMap *readout, std::uint64_t seed) {
    const int n = rho.num_qubits();
    if (observable.num_qubits() != n) {
        throw InvalidInput("observable width does not match the state");
    }
    std::vector<int> support;
    for (int q = 0; q < n; ++q) {
        if (observable[q] == Pauli::X) {
            rho.apply(Gate::h(q));
        } else if (observable[q] == Pauli::Y) {
            rho.apply(Gate::sdg(q));
            rho.apply(Gate::h(q));
        }
        if (observable[q] != Pauli::I) {
            support.push_back(q);
        }
    }
    if (support.empty()) {
        return 1.0;
    }
    if (shots == 0) {
        // sum_x p(x) prod_q E[(-1)^read | x_q]
        std::vector<std::array<double, 2>> w(support.size(), {1.0, -1.0});
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (readout) {
                auto it = readout->find(support[i]);
                if (it != readout->end()) {
                    const Eigen::Matrix2d &m = it->second;
                    w[i] = {m(0, 0) - m(1, 0), m(0, 1) - m(1, 1)};
                }
            }
        }
        const auto p = rho.probabilities();
        double acc = 0;
        for (std::size_t x = 0; x < p.size(); ++x) {
            double f = p[x];
            for (std::size_t i = 0; i < support.size(); ++i) {
                f *= w[i][(x >> support[i]) & 1U];
            }
            acc += f;
        }
        return acc;
    }
    MeasureMap mm;
    mm.num_clbits = n;
    std::uint64_t mask = 0;
    for (int q : support) {
        mm.qubit_to_clbit.emplace_back(q, q);
        mask |= std::uint64_t{1} << q;
    }
    return parity_expectation(sample_counts(rho, mm, shots, readout, seed), mask);
}

double noisy_expectation(const Circuit &circuit, const PauliString &observable, const NoiseModel &noise,
                         std::uint64_t shots, std::uint64_t seed, bool apply_readout) {
    const int n = circuit.num_qubits();
    if (observable.num_qubits() != n) {
        throw InvalidInput("observable has " + std::to_string(observable.num_qubits()) + " qubits, circuit has " +
                           std::to_string(n));
    }
    if (n > kMaxDensityQubits) {
        throw CapacityError("circuit exceeds density backend capacity");
    }
    return measure_expectation(run_density(without_measurements(circuit), noise), observable, shots,
                                apply_readout ? &noise.readout() : nullptr, seed);
}

ZneResult zne_estimate(const Circuit &circuit, const PauliString &observable, const DeviceModel &device,
                       const ZneOptions &options) {
    validate_stretches(options.stretches);
    std::vector<double> raw, err;
    for (std::size_t j = 0; j < options.stretches.size(); ++j) {
        const NoiseModel noise = build_noise_model(device, options.stretches[j]);
        const double e = noisy_expectation(circuit, observable, noise, options.shots, derive_seed(options.seed, j));
        raw.push_back(e);
        err.push_back(options.shots ? std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(options.shots))
                                    : 0.0);
    }
    return zne_combine(options.stretches, raw, err);
}

QuasiProbability invert_channel(const QuantumChannel &channel, std::span<const QuantumChannel> basis) {
    const int k = channel.num_qubits();
    const int d2 = 1 << (2 * k);
    QuasiProbability q;
    q.num_qubits = k;
    if (basis.empty()) {
        for (int i = 0; i < d2; ++i) {
            std::string label;
            for (int j = k - 1; j >= 0; --j) {
                label += "IXYZ"[(i >> (2 * j)) & 3];
            }
            q.operations.push_back(QuantumChannel::unitary(pauli_basis_matrix(k, i), label));
        }
    } else {
        for (const auto &b : basis) {
            if (b.num_qubits() != k) {
                throw InvalidInput("basis operation '" + b.label() + "' has the wrong qubit count");
            }
            q.operations.push_back(b);
        }
    }

    const Eigen::MatrixXd &ptm = channel.ptm();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ptm);
    const auto &sv = svd.singularValues();
    const double smin = sv(sv.size() - 1), smax = sv(0);
    if (!(smin > 1e-10 * std::max(1.0, smax))) {
        throw InvalidInput("channel '" + channel.label() + "' has a singular transfer matrix");
    }
    q.condition_number = smax / smin;
    const Eigen::MatrixXd inv = ptm.inverse();

    const Eigen::Index m = static_cast<Eigen::Index>(q.operations.size());
    Eigen::MatrixXd a(d2 * d2, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a.col(i) = q.operations[i].ptm().reshaped();
    }
    const Eigen::VectorXd target = inv.reshaped();
    const Eigen::VectorXd w = a.completeOrthogonalDecomposition().solve(target);
    const double residual = (a * w - target).norm();
    if (residual > 1e-6) {
        throw InvalidInput("basis does not span the inverse of channel '" + channel.label() +
                           "' (residual " + std::to_string(residual) + ")");
    }
    q.gamma = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        q.terms.push_back({q.operations[i].label(), w(i)});
        q.gamma += std::abs(w(i));
    }
    return q;
}

PecResult pec_estimate(const Circuit &circuit, const PauliString &observable, const NoiseModel &noise,
                       const NoiseModel &characterization, const PecOptions &options) {
    if (options.num_samples < 2) {
        throw InvalidInput("PEC needs at least two samples");
    }
    const Circuit body = without_measurements(circuit);
    const int n = body.num_qubits();
    if (n > kMaxDensityQubits) {
        throw CapacityError("circuit exceeds density backend capacity");
    }
    if (observable.num_qubits() != n) {
        throw InvalidInput("observable width does not match circuit");
    }

    struct Location {
        const QuasiProbability *quasi = nullptr;
        std::vector<double> cumulative;
    };
    std::map<NoiseLocation, QuasiProbability> cache;
    std::vector<Location> per_gate(body.size());
    PecResult res;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const Gate &g = body.gates()[i];
        if (!noise.channel_for(g)) {
            continue;
        }
        const QuantumChannel *c = characterization.channel_for(g);
        if (!c) {
            throw InvalidInput("no characterized channel for noisy location " + g.str());
        }
        const NoiseLocation key{g.kind, g.qubits};
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, invert_channel(*c)).first;
        }
        Location &loc = per_gate[i];
        loc.quasi = &it->second;
        double acc = 0;
        for (const auto &t : loc.quasi->terms) {
            acc += std::abs(t.weight) / loc.quasi->gamma;
            loc.cumulative.push_back(acc);
        }
        res.gamma_total *= loc.quasi->gamma;
        ++res.noisy_locations;
    }

    std::vector<double> values(options.num_samples);
    parallel_for(options.num_samples, resolve_threads(options.threads), [&](std::size_t s) {
        Rng rng(derive_seed(options.seed, s));
        DensityMatrix rho(n);
        double sign = 1;
        for (std::size_t i = 0; i < body.size(); ++i) {
            const Gate &g = body.gates()[i];
            apply_noisy_gate(rho, g, noise);
            const Location &loc = per_gate[i];
            if (!loc.quasi) {
                continue;
            }
            const double u = rng.uniform();
            std::size_t pick = 0;
            while (pick + 1 < loc.cumulative.size() && u >= loc.cumulative[pick]) {
                ++pick;
            }
            if (loc.quasi->terms[pick].weight < 0) {
                sign = -sign;
            }
            rho.apply_channel(loc.quasi->operations[pick], g.qubits);
        }
        const double e = measure_expectation(std::move(rho), observable, options.shots_per_sample, nullptr,
                                              derive_seed(options.seed ^ 0x5eedULL, s));
        values[s] = res.gamma_total * sign * e;
    });

    const double ns = static_cast<double>(options.num_samples);
    res.num_samples = options.num_samples;
    res.estimate = std::accumulate(values.begin(), values.end(), 0.0) / ns;
    double ss = 0;
    for (double v : values) {
        ss += (v - res.estimate) * (v - res.estimate);
    }
    res.stderr_ = std::sqrt(ss / (ns - 1)) / std::sqrt(ns);
    return res;
}

}  // namespace qvb
