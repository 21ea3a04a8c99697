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

#include "qvbench/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qvbench/errors.hpp"

namespace qvb {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    std::size_t arity;
    std::size_t params;
};

constexpr std::array<KindInfo, 19> kKinds{{
    {GateKind::U1, "u1", 1, 1},
    {GateKind::U2, "u2", 1, 2},
    {GateKind::U3, "u3", 1, 3},
    {GateKind::H, "h", 1, 0},
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},
    {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::RX, "rx", 1, 1},
    {GateKind::RY, "ry", 1, 1},
    {GateKind::RZ, "rz", 1, 1},
    {GateKind::CX, "cx", 2, 0},
    {GateKind::Swap, "swap", 2, 0},
    {GateKind::SU4, "su4", 2, 0},
    {GateKind::Barrier, "barrier", 0, 0},
    {GateKind::Measure, "measure", 1, 0},
}};

const KindInfo &info(GateKind kind) {
    return kKinds[static_cast<std::size_t>(kind)];
}

Gate make(GateKind kind, std::vector<int> qubits, std::vector<double> params = {}) {
    Gate g;
    g.kind = kind;
    g.qubits = std::move(qubits);
    g.params = std::move(params);
    return g;
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

std::size_t gate_arity(GateKind kind) { return info(kind).arity; }
std::size_t gate_param_count(GateKind kind) { return info(kind).params; }

bool is_native(GateKind kind) {
    return kind == GateKind::U1 || kind == GateKind::U2 || kind == GateKind::U3 || kind == GateKind::CX;
}

bool is_single_qubit_unitary(GateKind kind) {
    return info(kind).arity == 1 && kind != GateKind::Measure;
}

bool is_two_qubit_unitary(GateKind kind) { return info(kind).arity == 2; }

Gate Gate::u1(int q, double lambda) { return make(GateKind::U1, {q}, {lambda}); }
Gate Gate::u2(int q, double phi, double lambda) { return make(GateKind::U2, {q}, {phi, lambda}); }
Gate Gate::u3(int q, double theta, double phi, double lambda) {
    return make(GateKind::U3, {q}, {theta, phi, lambda});
}
Gate Gate::h(int q) { return make(GateKind::H, {q}); }
Gate Gate::x(int q) { return make(GateKind::X, {q}); }
Gate Gate::y(int q) { return make(GateKind::Y, {q}); }
Gate Gate::z(int q) { return make(GateKind::Z, {q}); }
Gate Gate::s(int q) { return make(GateKind::S, {q}); }
Gate Gate::sdg(int q) { return make(GateKind::Sdg, {q}); }
Gate Gate::t(int q) { return make(GateKind::T, {q}); }
Gate Gate::tdg(int q) { return make(GateKind::Tdg, {q}); }
Gate Gate::rx(int q, double theta) { return make(GateKind::RX, {q}, {theta}); }
Gate Gate::ry(int q, double theta) { return make(GateKind::RY, {q}, {theta}); }
Gate Gate::rz(int q, double theta) { return make(GateKind::RZ, {q}, {theta}); }
Gate Gate::cx(int control, int target) { return make(GateKind::CX, {control, target}); }
Gate Gate::swap(int a, int b) { return make(GateKind::Swap, {a, b}); }
Gate Gate::su4(int a, int b, const Eigen::Matrix4cd &m) {
    Gate g = make(GateKind::SU4, {a, b});
    g.matrix = std::make_shared<const Eigen::Matrix4cd>(m);
    return g;
}
Gate Gate::barrier(std::vector<int> qubits) { return make(GateKind::Barrier, std::move(qubits)); }
Gate Gate::measure(int q, int c) {
    Gate g = make(GateKind::Measure, {q});
    g.clbit = c;
    return g;
}

bool Gate::operator==(const Gate &other) const {
    if (kind != other.kind || qubits != other.qubits || params != other.params || clbit != other.clbit) {
        return false;
    }
    if (kind == GateKind::SU4) {
        return matrix && other.matrix && *matrix == *other.matrix;
    }
    return true;
}

std::string Gate::str() const {
    std::ostringstream out;
    out << gate_name(kind);
    if (!params.empty()) {
        out << '(';
        for (std::size_t i = 0; i < params.size(); ++i) {
            out << (i ? "," : "") << params[i];
        }
        out << ')';
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        out << (i ? "," : " ") << 'q' << qubits[i];
    }
    if (kind == GateKind::Measure) {
        out << " -> c" << clbit;
    }
    return out.str();
}

Circuit::Circuit(int num_qubits, int num_clbits, std::string name)
    : num_qubits_(num_qubits), num_clbits_(num_clbits), name_(std::move(name)) {
    if (num_qubits < 0 || num_clbits < 0) {
        throw InvalidInput("register sizes must be non-negative");
    }
}

void Circuit::append(Gate gate) {
    const auto &k = info(gate.kind);
    if (k.arity != 0 && gate.qubits.size() != k.arity) {
        throw InvalidInput("gate '" + std::string(k.name) + "' expects " + std::to_string(k.arity) +
                           " qubit(s), got " + std::to_string(gate.qubits.size()));
    }
    if (gate.params.size() != k.params) {
        throw InvalidInput("gate '" + std::string(k.name) + "' expects " + std::to_string(k.params) +
                           " parameter(s), got " + std::to_string(gate.params.size()));
    }
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        int q = gate.qubits[i];
        if (q < 0 || q >= num_qubits_) {
            throw InvalidInput("qubit index " + std::to_string(q) + " out of range for " +
                               std::to_string(num_qubits_) + "-qubit circuit");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.qubits[j] == q) {
                throw InvalidInput("repeated qubit operand " + std::to_string(q) + " in " + gate.str());
            }
        }
    }
    for (double p : gate.params) {
        if (!std::isfinite(p)) {
            throw InvalidInput("non-finite parameter in " + std::string(k.name));
        }
    }
    if (gate.kind == GateKind::Measure) {
        if (gate.clbit < 0 || gate.clbit >= num_clbits_) {
            throw InvalidInput("measure target clbit " + std::to_string(gate.clbit) + " out of range");
        }
    } else {
        gate.clbit = -1;
    }
    if (gate.kind == GateKind::SU4) {
        if (!gate.matrix) {
            throw InvalidInput("su4 gate without matrix");
        }
        const Eigen::Matrix4cd &m = *gate.matrix;
        double err = (m * m.adjoint() - Eigen::Matrix4cd::Identity()).norm();
        if (err > 1e-10) {
            throw InvalidInput("su4 matrix is not unitary (Frobenius error " + std::to_string(err) + ")");
        }
    } else {
        gate.matrix.reset();
    }
    gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit &other) {
    if (other.num_qubits_ > num_qubits_ || other.num_clbits_ > num_clbits_) {
        throw InvalidInput("appended circuit is wider than target");
    }
    for (const auto &g : other.gates_) {
        append(g);
    }
}

bool Circuit::has_measure() const {
    return std::any_of(gates_.begin(), gates_.end(), [](const Gate &g) { return g.kind == GateKind::Measure; });
}

std::size_t Circuit::count(GateKind kind) const {
    return std::count_if(gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind == kind; });
}

std::size_t Circuit::two_qubit_count() const {
    return std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) { return is_two_qubit_unitary(g.kind); });
}

Circuit Circuit::widened(int num_qubits) const {
    if (num_qubits < num_qubits_) {
        throw InvalidInput("cannot narrow a circuit");
    }
    Circuit out = *this;
    out.num_qubits_ = num_qubits;
    return out;
}

bool Circuit::operator==(const Circuit &other) const {
    return num_qubits_ == other.num_qubits_ && num_clbits_ == other.num_clbits_ && gates_ == other.gates_;
}

std::size_t depth(const Circuit &circuit) {
    std::vector<std::size_t> level(circuit.num_qubits(), 0);
    std::size_t best = 0;
    for (const auto &g : circuit) {
        std::size_t start = 0;
        for (int q : g.qubits) {
            start = std::max(start, level[q]);
        }
        std::size_t finish = g.kind == GateKind::Barrier ? start : start + 1;
        for (int q : g.qubits) {
            level[q] = finish;
        }
        best = std::max(best, finish);
    }
    return best;
}

Circuit inverse(const Circuit &circuit) {
    using std::numbers::pi;
    Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.name().empty() ? "" : circuit.name() + "_dg");
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const Gate &g = *it;
        const int q = g.qubits.empty() ? 0 : g.qubits[0];
        switch (g.kind) {
            case GateKind::U1:
                out.append(Gate::u1(q, -g.params[0]));
                break;
            case GateKind::U2:
                out.append(Gate::u3(q, -pi / 2, -g.params[1], -g.params[0]));
                break;
            case GateKind::U3:
                out.append(Gate::u3(q, -g.params[0], -g.params[2], -g.params[1]));
                break;
            case GateKind::S:
                out.append(Gate::sdg(q));
                break;
            case GateKind::Sdg:
                out.append(Gate::s(q));
                break;
            case GateKind::T:
                out.append(Gate::tdg(q));
                break;
            case GateKind::Tdg:
                out.append(Gate::t(q));
                break;
            case GateKind::RX:
                out.append(Gate::rx(q, -g.params[0]));
                break;
            case GateKind::RY:
                out.append(Gate::ry(q, -g.params[0]));
                break;
            case GateKind::RZ:
                out.append(Gate::rz(q, -g.params[0]));
                break;
            case GateKind::SU4:
                out.append(Gate::su4(g.qubits[0], g.qubits[1], g.matrix->adjoint()));
                break;
            case GateKind::Measure:
                throw InvalidInput("cannot invert a circuit containing measurements");
            default:
                out.append(g);
                break;
        }
    }
    return out;
}

Circuit without_measurements(const Circuit &circuit) {
    Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.name());
    for (const auto &g : circuit) {
        if (g.kind != GateKind::Measure) {
            out.append(g);
        }
    }
    return out;
}

}  // namespace qvb
