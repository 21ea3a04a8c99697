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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qvbench/circuit.hpp"
#include "qvbench/errors.hpp"
#include "qvbench/noise_model.hpp"

namespace qvb {

/// Validation failure that names the offending field, e.g. "gates[3].error".
class DeviceError : public InvalidInput {
   public:
    DeviceError(std::string field, const std::string &message)
        : InvalidInput(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

   private:
    std::string field_;
};

struct GateSpec {
    GateKind kind = GateKind::U3;
    std::vector<int> qubits;
    /// Depolarizing error probability.
    double error = 0;
    double duration_ns = 0;
};

struct ReadoutSpec {
    int qubit = 0;
    double error = 0;
};

struct CoherenceSpec {
    int qubit = 0;
    double t1_us = 0;
    double t2_us = 0;
};

/// Static snapshot of a device: directed coupling, per-gate error rates and
/// durations, readout error and optional coherence times.
struct DeviceModel {
    std::string name;
    int num_qubits = 0;
    std::vector<std::pair<int, int>> coupling;
    std::vector<GateSpec> gates;
    std::vector<ReadoutSpec> readout;
    std::vector<CoherenceSpec> coherence;

    /// Throws DeviceError on the first violated invariant.
    void validate() const;

    bool has_directed_edge(int control, int target) const;
    bool has_edge(int a, int b) const { return has_directed_edge(a, b) || has_directed_edge(b, a); }
    /// Undirected neighbour count per qubit.
    std::vector<int> degree_sequence() const;
    /// Undirected adjacency lists, neighbours ascending.
    std::vector<std::vector<int>> adjacency() const;

    const GateSpec *find_gate(GateKind kind, const std::vector<int> &qubits) const;
    /// Error of a gate as executed: exact entry, else u3 on the same qubit
    /// for non-u1 single-qubit gates, else 0.
    double gate_error(GateKind kind, const std::vector<int> &qubits) const;
    /// Error of the cheaper direction of a coupling edge; 0 if none listed.
    double edge_error(int a, int b) const;
    std::optional<double> readout_error(int qubit) const;
    std::optional<CoherenceSpec> coherence_of(int qubit) const;

    double mean_gate_error(GateKind kind) const;
    double mean_readout_error() const;

    /// Uniform synthetic device. `coupling` is used as given (directed).
    static DeviceModel uniform(std::string name, int num_qubits, std::vector<std::pair<int, int>> coupling,
                               double cx_error, double single_qubit_error, double readout_error);
};

/// Both directions of each edge of an undirected line 0-1-...-(n-1).
std::vector<std::pair<int, int>> line_coupling(int num_qubits, bool bidirectional = true);

DeviceModel parse_device(std::string_view json_text);
DeviceModel load_device(const std::filesystem::path &path);
std::string serialize_device(const DeviceModel &device);
void save_device(const DeviceModel &device, const std::filesystem::path &path);

/// Depolarizing probability after composing a k-qubit depolarizing channel
/// of probability p `stretch` times (PTM-eigenvalue power for fractional
/// stretch).
double amplified_error(double p, int num_qubits, double stretch);

/// Depolarizing channel per listed gate location with amplified error, plus
/// readout confusion (never amplified).
NoiseModel build_noise_model(const DeviceModel &device, double stretch = 1.0);

}  // namespace qvb
