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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qvbench/channel.hpp"
#include "qvbench/circuit.hpp"
#include "qvbench/device.hpp"
#include "qvbench/noise_model.hpp"
#include "qvbench/pauli.hpp"
#include "qvbench/simulator.hpp"

namespace qvb {

/// Throws unless strictly increasing, first entry 1.
void validate_stretches(std::span<const double> stretches);

inline std::vector<double> default_stretches() { return {1.0, 1.5, 2.0}; }

/// Solves sum(g) = 1, sum(g * c^k) = 0 for k = 1..n-1.
std::vector<double> richardson_coefficients(std::span<const double> stretches);

struct ZneOptions {
    std::vector<double> stretches = default_stretches();
    /// 0 reads expectations from the density matrix without sampling.
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct ZneResult {
    double mitigated = 0;
    double stderr_ = 0;
    std::vector<double> stretches;
    std::vector<double> coefficients;
    std::vector<double> raw;
    std::vector<double> raw_stderr;
};

/// Combines raw values measured at each stretch.
ZneResult zne_combine(std::span<const double> stretches, std::span<const double> raw,
                      std::span<const double> raw_stderr);

/// Rotates the support of `observable` into the Z basis and reads the
/// parity, exactly when shots == 0 (readout confusion still applied
/// analytically) or by sampling.
double measure_expectation(DensityMatrix rho, const PauliString &observable, std::uint64_t shots,
                           const ReadoutMap *readout, std::uint64_t seed);

/// Expectation of `observable` after `circuit` under `noise`, exact when
/// shots == 0, otherwise by basis rotation and parity sampling.
double noisy_expectation(const Circuit &circuit, const PauliString &observable, const NoiseModel &noise,
                         std::uint64_t shots, std::uint64_t seed, bool apply_readout = true);

ZneResult zne_estimate(const Circuit &circuit, const PauliString &observable, const DeviceModel &device,
                       const ZneOptions &options);

struct QuasiTerm {
    std::string label;
    double weight = 0;
};

struct QuasiProbability {
    int num_qubits = 1;
    std::vector<QuasiTerm> terms;
    /// Channel implementing each term, same order.
    std::vector<QuantumChannel> operations;
    double gamma = 1;
    double condition_number = 1;
};

/// Quasi-probability decomposition of the inverse of `channel` over a basis
/// of implementable unitaries; Pauli operators when `basis` is empty.
QuasiProbability invert_channel(const QuantumChannel &channel, std::span<const QuantumChannel> basis = {});

struct PecOptions {
    std::size_t num_samples = 1000;
    /// 0 uses the exact expectation of each sampled circuit.
    std::uint64_t shots_per_sample = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

struct PecResult {
    double estimate = 0;
    double stderr_ = 0;
    double gamma_total = 1;
    std::size_t num_samples = 0;
    std::size_t noisy_locations = 0;
};

/// `noise` is what the simulated device does; `characterization` supplies
/// the channel inverted at each noisy gate location.
PecResult pec_estimate(const Circuit &circuit, const PauliString &observable, const NoiseModel &noise,
                       const NoiseModel &characterization, const PecOptions &options);

inline PecResult pec_estimate(const Circuit &circuit, const PauliString &observable, const NoiseModel &noise,
                              const PecOptions &options) {
    return pec_estimate(circuit, observable, noise, noise, options);
}

}  // namespace qvb
