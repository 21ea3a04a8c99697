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

#include "qvbench/errors.hpp"
#include "qvbench/transpiler.hpp"

namespace qvb {

namespace {

double duration_of(const Gate &g, const DeviceModel &device) {
    if (g.kind == GateKind::Barrier) {
        return 0;
    }
    if (const GateSpec *s = device.find_gate(g.kind, g.qubits)) {
        return s->duration_ns;
    }
    if (is_single_qubit_unitary(g.kind) && g.kind != GateKind::U1) {
        if (const GateSpec *s = device.find_gate(GateKind::U3, g.qubits)) {
            return s->duration_ns;
        }
    }
    throw InvalidInput("device '" + device.name + "' lists no duration for " + g.str());
}

// Start times by as-soon-as-possible list scheduling in circuit order.
std::vector<double> asap_starts(const std::vector<Gate> &gates, const std::vector<double> &dur, int n,
                                double &makespan) {
    std::vector<double> ready(n, 0.0);
    std::vector<double> start(gates.size());
    makespan = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        double t = 0;
        for (int q : gates[i].qubits) {
            t = std::max(t, ready[q]);
        }
        start[i] = t;
        for (int q : gates[i].qubits) {
            ready[q] = t + dur[i];
        }
        makespan = std::max(makespan, t + dur[i]);
    }
    return start;
}

}  // namespace

Circuit Schedule::to_circuit() const {
    std::vector<std::size_t> order(ops.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ops[a].start_ns < ops[b].start_ns; });
    Circuit c(num_qubits, num_clbits);
    for (std::size_t i : order) {
        c.append(ops[i].gate);
    }
    return c;
}

Schedule schedule(const Circuit &circuit, const DeviceModel &device, ScheduleMode mode, bool dynamical_decoupling,
                  double slack_ns) {
    const int n = circuit.num_qubits();
    if (n > device.num_qubits) {
        throw CapacityError("circuit wider than device '" + device.name + "'");
    }
    const auto &gates = circuit.gates();
    std::vector<double> dur(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
        dur[i] = duration_of(gates[i], device);
    }

    Schedule s;
    s.num_qubits = n;
    s.num_clbits = circuit.num_clbits();
    std::vector<double> start;
    if (mode == ScheduleMode::Asap) {
        start = asap_starts(gates, dur, n, s.makespan_ns);
    } else {
        std::vector<Gate> rev(gates.rbegin(), gates.rend());
        std::vector<double> rdur(dur.rbegin(), dur.rend());
        const std::vector<double> rstart = asap_starts(rev, rdur, n, s.makespan_ns);
        start.resize(gates.size());
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const std::size_t r = gates.size() - 1 - i;
            start[i] = s.makespan_ns - (rstart[r] + dur[i]);
        }
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        s.ops.push_back({gates[i], start[i], dur[i], false});
    }

    std::vector<std::vector<std::size_t>> per_qubit(n);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        for (int q : gates[i].qubits) {
            per_qubit[q].push_back(i);
        }
    }
    for (int q = 0; q < n; ++q) {
        const auto &ids = per_qubit[q];
        for (std::size_t k = 1; k < ids.size(); ++k) {
            const double gap_start = start[ids[k - 1]] + dur[ids[k - 1]];
            const double gap_end = start[ids[k]];
            if (gap_end - gap_start > 1e-9) {
                s.idle.push_back({q, gap_start, gap_end});
            }
        }
    }

    if (dynamical_decoupling) {
        for (const auto &gap : s.idle) {
            const Gate x = Gate::u3(gap.qubit, std::numbers::pi, 0, std::numbers::pi);
            const double dx = duration_of(x, device);
            const double len = gap.end_ns - gap.start_ns;
            if (len + 1e-9 < 2 * dx + 2 * slack_ns) {
                continue;
            }
            const double mid = 0.5 * (gap.start_ns + gap.end_ns);
            s.ops.push_back({x, mid - dx, dx, true});
            s.ops.push_back({x, mid, dx, true});
        }
    }
    return s;
}

std::vector<IdleDecay> idle_decay_report(const Schedule &sched, const DeviceModel &device) {
    std::vector<double> busy(sched.num_qubits, 0.0);
    std::vector<double> idle(sched.num_qubits, 0.0);
    for (const auto &gap : sched.idle) {
        idle[gap.qubit] += gap.end_ns - gap.start_ns;
    }
    for (const auto &op : sched.ops) {
        if (op.inserted) {
            busy[op.gate.qubits[0]] += op.duration_ns;
        }
    }
    std::vector<IdleDecay> out;
    for (int q = 0; q < sched.num_qubits; ++q) {
        IdleDecay d;
        d.qubit = q;
        d.idle_ns = std::max(0.0, idle[q] - busy[q]);
        if (auto c = device.coherence_of(q)) {
            d.t1_factor = std::exp(-d.idle_ns / (c->t1_us * 1e3));
            d.t2_factor = std::exp(-d.idle_ns / (c->t2_us * 1e3));
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace qvb
