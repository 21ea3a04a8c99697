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

#include <numbers>

#include "qvbench/errors.hpp"
#include "qvbench/synthesis.hpp"
#include "qvbench/transpiler.hpp"
#include "qvbench/unitary.hpp"

namespace qvb {

namespace {

constexpr double pi = std::numbers::pi;

Gate relabel(const Gate &g, const std::vector<int> &map) {
    Gate out = g;
    for (int &q : out.qubits) {
        q = map[q];
    }
    return out;
}

void unroll_gate(const Gate &g, Circuit &out) {
    const int q = g.qubits.empty() ? -1 : g.qubits[0];
    switch (g.kind) {
        case GateKind::U1:
        case GateKind::U2:
        case GateKind::U3:
        case GateKind::CX:
        case GateKind::Barrier:
        case GateKind::Measure:
            out.append(g);
            return;
        case GateKind::H:
            out.append(Gate::u2(q, 0, pi));
            return;
        case GateKind::X:
            out.append(Gate::u3(q, pi, 0, pi));
            return;
        case GateKind::Y:
            out.append(Gate::u3(q, pi, pi / 2, pi / 2));
            return;
        case GateKind::Z:
            out.append(Gate::u1(q, pi));
            return;
        case GateKind::S:
            out.append(Gate::u1(q, pi / 2));
            return;
        case GateKind::Sdg:
            out.append(Gate::u1(q, -pi / 2));
            return;
        case GateKind::T:
            out.append(Gate::u1(q, pi / 4));
            return;
        case GateKind::Tdg:
            out.append(Gate::u1(q, -pi / 4));
            return;
        case GateKind::RX:
            out.append(Gate::u3(q, g.params[0], -pi / 2, pi / 2));
            return;
        case GateKind::RY:
            out.append(Gate::u3(q, g.params[0], 0, 0));
            return;
        case GateKind::RZ:
            out.append(Gate::u1(q, g.params[0]));
            return;
        case GateKind::Swap:
            out.append(Gate::cx(g.qubits[0], g.qubits[1]));
            out.append(Gate::cx(g.qubits[1], g.qubits[0]));
            out.append(Gate::cx(g.qubits[0], g.qubits[1]));
            return;
        case GateKind::SU4:
            for (auto &h : decompose_two_qubit(*g.matrix, g.qubits[0], g.qubits[1])) {
                out.append(std::move(h));
            }
            return;
    }
}

bool is_diagonal(const Eigen::Matrix2cd &m) { return std::abs(m(0, 1)) < 1e-12 && std::abs(m(1, 0)) < 1e-12; }

bool commutes_with_x(const Eigen::Matrix2cd &m) {
    return std::abs(m(0, 0) - m(1, 1)) < 1e-12 && std::abs(m(0, 1) - m(1, 0)) < 1e-12;
}

bool is_native_1q(GateKind k) { return k == GateKind::U1 || k == GateKind::U2 || k == GateKind::U3; }

}  // namespace

Circuit unroll(const Circuit &circuit) {
    Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.name());
    for (const auto &g : circuit) {
        unroll_gate(g, out);
    }
    return out;
}

Circuit apply_layout(const Circuit &circuit, const Layout &layout) {
    if (layout.num_virtual() < circuit.num_qubits() || !layout.valid()) {
        throw InvalidInput("layout does not cover the circuit");
    }
    Circuit out(layout.num_physical, circuit.num_clbits(), circuit.name());
    for (const auto &g : circuit) {
        for (int q : g.qubits) {
            if (layout[q] < 0) {
                throw InvalidInput("layout leaves qubit " + std::to_string(q) + " unassigned");
            }
        }
        out.append(relabel(g, layout.v2p));
    }
    return out;
}

Circuit fix_direction(const Circuit &circuit, const DeviceModel &device) {
    Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.name());
    for (const auto &g : circuit) {
        if (g.kind != GateKind::CX) {
            out.append(g);
            continue;
        }
        const int c = g.qubits[0], t = g.qubits[1];
        if (device.has_directed_edge(c, t)) {
            out.append(g);
        } else if (device.has_directed_edge(t, c)) {
            out.append(Gate::u2(c, 0, pi));
            out.append(Gate::u2(t, 0, pi));
            out.append(Gate::cx(t, c));
            out.append(Gate::u2(c, 0, pi));
            out.append(Gate::u2(t, 0, pi));
        } else {
            throw InvalidInput("cx(" + std::to_string(c) + ", " + std::to_string(t) + ") is off the coupling graph");
        }
    }
    return out;
}

Circuit merge_1q_runs(const Circuit &circuit) {
    const int n = circuit.num_qubits();
    struct Run {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
        std::vector<const Gate *> gates;
    };
    std::vector<Run> runs(n);
    Circuit out(n, circuit.num_clbits(), circuit.name());
    auto flush = [&](int q) {
        Run &r = runs[q];
        if (r.gates.empty()) {
            return;
        }
        if (r.gates.size() == 1 && is_native_1q(r.gates[0]->kind) &&
            phase_insensitive_distance(r.m, Eigen::Matrix2cd::Identity()) >= 1e-10) {
            out.append(*r.gates[0]);
        } else {
            for (auto &g : synthesize_1q(r.m, q)) {
                out.append(std::move(g));
            }
        }
        r = Run{};
    };
    for (const auto &g : circuit) {
        if (is_single_qubit_unitary(g.kind)) {
            Run &r = runs[g.qubits[0]];
            r.m = single_qubit_matrix(g) * r.m;
            r.gates.push_back(&g);
            continue;
        }
        for (int q : g.qubits) {
            flush(q);
        }
        out.append(g);
    }
    for (int q = 0; q < n; ++q) {
        flush(q);
    }
    return out;
}

Circuit cancel_commuting(const Circuit &circuit) {
    const auto &gates = circuit.gates();
    std::vector<bool> removed(gates.size(), false);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (removed[i] || gates[i].kind != GateKind::CX) {
            continue;
        }
        const int c = gates[i].qubits[0], t = gates[i].qubits[1];
        for (std::size_t j = i + 1; j < gates.size(); ++j) {
            if (removed[j]) {
                continue;
            }
            const Gate &g = gates[j];
            bool on_c = false, on_t = false;
            for (int q : g.qubits) {
                on_c |= q == c;
                on_t |= q == t;
            }
            if (!on_c && !on_t) {
                continue;
            }
            if (g.kind == GateKind::CX) {
                if (g.qubits[0] == c && g.qubits[1] == t) {
                    removed[i] = removed[j] = true;
                    break;
                }
                // cx gates sharing only the control, or only the target, commute.
                const bool shares_control = g.qubits[0] == c && !on_t;
                const bool shares_target = g.qubits[1] == t && !on_c;
                if (shares_control || shares_target) {
                    continue;
                }
                break;
            }
            if (is_single_qubit_unitary(g.kind)) {
                const Eigen::Matrix2cd m = single_qubit_matrix(g);
                if ((on_c && is_diagonal(m)) || (on_t && commutes_with_x(m))) {
                    continue;
                }
            }
            break;
        }
    }
    Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.name());
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!removed[i]) {
            out.append(gates[i]);
        }
    }
    return out;
}

OptimizeResult optimize_to_fixed_point(const Circuit &circuit, const DeviceModel *) {
    OptimizeResult r;
    r.circuit = circuit;
    r.depth_history.push_back(depth(circuit));
    while (r.iterations < kMaxOptimizeIterations) {
        Circuit next = cancel_commuting(merge_1q_runs(r.circuit));
        const std::size_t d = depth(next);
        ++r.iterations;
        const bool fixed = d == r.depth_history.back() && next.size() == r.circuit.size();
        r.circuit = std::move(next);
        r.depth_history.push_back(d);
        if (fixed) {
            break;
        }
    }
    return r;
}

bool equivalent_under_layouts(const Circuit &original, const Circuit &routed, const Layout &initial,
                              const Layout &final_layout, double tol) {
    const int n = routed.num_qubits();
    const Layout init = initial.completed();
    const Layout fin = final_layout.completed();
    if (init.num_physical != n || fin.num_physical != n) {
        throw InvalidInput("layouts do not match the routed circuit width");
    }
    const Eigen::MatrixXcd u_in = circuit_unitary(without_measurements(original).widened(n));
    const Eigen::MatrixXcd u_out = circuit_unitary(without_measurements(routed));
    const Eigen::MatrixXcd p_init = qubit_permutation_matrix(init.v2p);
    const Eigen::MatrixXcd p_fin = qubit_permutation_matrix(fin.v2p);
    return equal_up_to_global_phase(u_out, p_fin * u_in * p_init.adjoint(), tol);
}

CircuitMetrics circuit_metrics(const Circuit &circuit, const DeviceModel *device) {
    CircuitMetrics m;
    m.depth = depth(circuit);
    m.cx_count = circuit.count(GateKind::CX);
    for (const auto &g : circuit) {
        if (g.kind == GateKind::Barrier) {
            continue;
        }
        ++m.gate_count;
        if (device) {
            m.fidelity_proxy *= 1.0 - device->gate_error(g.kind, g.qubits);
        }
    }
    return m;
}

}  // namespace qvb
