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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qvbench/circuit.hpp"
#include "qvbench/device.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/simulator.hpp"

namespace qvb {

/// Haar-random unitary of dimension `dim` (QR of a complex Ginibre matrix).
Eigen::MatrixXcd haar_unitary(int dim, Rng &rng);
/// Haar-random element of SU(4).
Eigen::Matrix4cd haar_su4(Rng &rng);

struct ModelCircuit {
    int width = 0;
    std::uint64_t seed = 0;
    /// One permutation per layer; pairs are (perm[2k], perm[2k+1]).
    std::vector<std::vector<int>> permutations;
    Circuit circuit;
};

ModelCircuit generate_model_circuit(int width, std::uint64_t seed);

/// `value` as `width` characters, most significant bit first.
std::string to_bitstring(std::uint64_t value, int width);

/// Median of all entries (mean of the two middle values for even counts).
double median(std::span<const double> values);

/// Outcomes whose probability strictly exceeds the median, as bitstrings
/// of width log2(size).
std::set<std::string> heavy_set(std::span<const double> ideal_probabilities);

double heavy_output_probability(const Counts &counts, const std::set<std::string> &heavy);

struct QVOptions {
    int width = 2;
    int num_circuits = 100;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    bool transpile = true;
    /// Pass rule: mean - z * sigma / sqrt(n) > 2/3.
    double z = 2.0;
    std::string pipeline = "unroll,layout,route,unroll,fix_direction,optimize";
    unsigned threads = 0;
};

struct QVCircuitResult {
    std::uint64_t seed = 0;
    double hop = 0;
    /// Ideal probability mass of the heavy set.
    double ideal_heavy_mass = 0;
    std::size_t heavy_count = 0;
    std::size_t cx_count = 0;
    std::size_t depth = 0;
    int simulated_qubits = 0;
};

struct QVResult {
    std::string device;
    int width = 0;
    int num_circuits = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    bool transpiled = true;
    double z = 2.0;
    std::vector<QVCircuitResult> circuits;
    double mean_hop = 0;
    double stddev_hop = 0;
    double lower_bound = 0;
    double mean_ideal_heavy_mass = 0;
    bool pass = false;
};

QVResult qv_experiment(const DeviceModel &device, const QVOptions &options);

struct QVSweepResult {
    std::vector<QVResult> results;
    /// Largest passing width with every smaller swept width passing; 0 if none.
    int claimed_width = 0;
    /// 2^claimed_width, or 1 when nothing passes.
    std::uint64_t quantum_volume = 1;
};

/// Widths are swept in ascending order; `options.width` is ignored.
QVSweepResult qv_sweep(const DeviceModel &device, std::vector<int> widths, const QVOptions &options);

/// Per-circuit rows: width,index,seed,hop,ideal_heavy_mass,cx_count,depth.
std::string qv_csv(std::span<const QVResult> results);

}  // namespace qvb
