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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qvb {

/// Gate vocabulary of the circuit IR. The device-native subset is
/// {U1, U2, U3, CX}; everything else is unrolled by the transpiler.
enum class GateKind : std::uint8_t {
    U1,
    U2,
    U3,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    RX,
    RY,
    RZ,
    CX,
    Swap,
    SU4,
    Barrier,
    Measure,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Number of qubit operands; 0 means variadic (barrier).
std::size_t gate_arity(GateKind kind);
std::size_t gate_param_count(GateKind kind);
bool is_native(GateKind kind);

/// True for unitary gates acting on exactly one qubit.
bool is_single_qubit_unitary(GateKind kind);
bool is_two_qubit_unitary(GateKind kind);

struct Gate {
    GateKind kind = GateKind::Barrier;
    std::vector<int> qubits;
    std::vector<double> params;
    /// Classical target; only meaningful for Measure.
    int clbit = -1;
    /// Explicit 4x4 matrix; only set for SU4. Local basis index is
    /// bit(qubits[0]) + 2 * bit(qubits[1]).
    std::shared_ptr<const Eigen::Matrix4cd> matrix;

    static Gate u1(int q, double lambda);
    static Gate u2(int q, double phi, double lambda);
    static Gate u3(int q, double theta, double phi, double lambda);
    static Gate h(int q);
    static Gate x(int q);
    static Gate y(int q);
    static Gate z(int q);
    static Gate s(int q);
    static Gate sdg(int q);
    static Gate t(int q);
    static Gate tdg(int q);
    static Gate rx(int q, double theta);
    static Gate ry(int q, double theta);
    static Gate rz(int q, double theta);
    static Gate cx(int control, int target);
    static Gate swap(int a, int b);
    static Gate su4(int a, int b, const Eigen::Matrix4cd &m);
    static Gate barrier(std::vector<int> qubits);
    static Gate measure(int q, int c);

    bool operator==(const Gate &other) const;
    std::string str() const;
};

/// Ordered gate list over flattened qubit/clbit registers.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(int num_qubits, int num_clbits = 0, std::string name = {});

    /// Validates indices, arity, parameter count and (for SU4) unitarity.
    /// Throws InvalidInput on violation.
    void append(Gate gate);
    void append(const Circuit &other);

    int num_qubits() const { return num_qubits_; }
    int num_clbits() const { return num_clbits_; }
    const std::string &name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    auto begin() const { return gates_.begin(); }
    auto end() const { return gates_.end(); }

    bool has_measure() const;
    std::size_t count(GateKind kind) const;
    /// Number of gates acting on two qubits (cx, swap, su4).
    std::size_t two_qubit_count() const;

    /// Same gates on a wider register.
    Circuit widened(int num_qubits) const;

    bool operator==(const Circuit &other) const;

   private:
    int num_qubits_ = 0;
    int num_clbits_ = 0;
    std::string name_;
    std::vector<Gate> gates_;
};

/// Longest dependency chain. Barriers synchronize their qubits but add no
/// layer.
std::size_t depth(const Circuit &circuit);

/// Adjoint circuit (reverse order, inverted gates). Rejects measurements.
Circuit inverse(const Circuit &circuit);

/// Same circuit with measurements removed.
Circuit without_measurements(const Circuit &circuit);

}  // namespace qvb
