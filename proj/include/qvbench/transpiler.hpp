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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qvbench/circuit.hpp"
#include "qvbench/device.hpp"

namespace qvb {

/// Virtual-to-physical qubit assignment. Entries of -1 are unassigned.
struct Layout {
    std::vector<int> v2p;
    int num_physical = 0;

    static Layout trivial(int num_virtual, int num_physical);

    int num_virtual() const { return static_cast<int>(v2p.size()); }
    int operator[](int v) const { return v2p[v]; }
    /// Physical-to-virtual inverse; -1 for unused physical qubits.
    std::vector<int> p2v() const;
    /// True when injective and within range.
    bool valid() const;
    /// Assigns any unassigned virtual qubit, and adds ancilla virtual qubits
    /// until every physical qubit is used, smallest free physical first.
    Layout completed() const;

    bool operator==(const Layout &) const = default;
};

/// Rewrites onto {u1, u2, u3, cx} plus barrier and measure.
Circuit unroll(const Circuit &circuit);

/// Distinct unordered interacting pairs (a < b) with multiplicity.
std::map<std::pair<int, int>, int> interaction_graph(const Circuit &circuit);

struct LayoutOptions {
    /// Search-node budget for each of the exact and heuristic searches.
    std::size_t node_budget = 2'000'000;
};

Layout select_layout(const Circuit &circuit, const DeviceModel &device, const LayoutOptions &options = {});

/// Number of distinct interacting pairs mapped onto coupling edges.
int satisfied_interactions(const Circuit &circuit, const DeviceModel &device, const Layout &layout);

struct RouteOptions {
    int lookahead = 20;
};

struct RoutingResult {
    /// Circuit on device qubits. Every cx lies on a directed coupling edge.
    Circuit circuit;
    /// Complete layouts (ancillas included) before and after routing.
    Layout initial_layout;
    Layout final_layout;
    int swaps = 0;
};

RoutingResult route(const Circuit &circuit, const DeviceModel &device, const Layout &layout,
                    const RouteOptions &options = {});

/// Relabels virtual qubits to physical ones without routing.
Circuit apply_layout(const Circuit &circuit, const Layout &layout);

/// Reverses cx gates that run against a directed coupling edge using
/// Hadamard conjugation (u2(0, pi)). Throws if a cx is on no edge at all.
Circuit fix_direction(const Circuit &circuit, const DeviceModel &device);

Circuit merge_1q_runs(const Circuit &circuit);

Circuit cancel_commuting(const Circuit &circuit);

constexpr int kMaxOptimizeIterations = 100;

struct OptimizeResult {
    Circuit circuit;
    /// Depth before the first iteration, then after each iteration.
    std::vector<std::size_t> depth_history;
    int iterations = 0;
};

OptimizeResult optimize_to_fixed_point(const Circuit &circuit, const DeviceModel *device = nullptr);

/// Checks unitary(routed) == P_final * unitary(original) * P_initial^T
/// modulo global phase, original widened to the device width.
bool equivalent_under_layouts(const Circuit &original, const Circuit &routed, const Layout &initial,
                              const Layout &final_layout, double tol);

struct CircuitMetrics {
    std::size_t depth = 0;
    std::size_t cx_count = 0;
    std::size_t gate_count = 0;
    /// Product of (1 - error) over gates executed on the device.
    double fidelity_proxy = 1.0;
};

CircuitMetrics circuit_metrics(const Circuit &circuit, const DeviceModel *device);

struct PassContext {
    const DeviceModel *device = nullptr;
    Circuit circuit;
    std::optional<Layout> layout;
    std::optional<Layout> initial_layout;
    std::optional<Layout> final_layout;
    bool routed = false;
    std::map<std::string, double> properties;
    std::vector<std::size_t> depth_history;
};

struct Pass {
    enum class Kind { Analysis, Transformation };
    std::string name;
    Kind kind = Kind::Transformation;
    std::function<void(PassContext &)> run;
};

struct TranspileResult {
    Circuit circuit;
    Layout initial_layout;
    Layout final_layout;
    CircuitMetrics metrics;
    std::map<std::string, double> properties;
    std::vector<std::size_t> depth_history;
    std::vector<std::string> passes;
};

class PassManager {
   public:
    void append(Pass pass);
    /// Repeats `body` until `done` holds after an iteration, at most
    /// kMaxOptimizeIterations times.
    void append_loop(std::string name, std::vector<Pass> body, std::function<bool(const PassContext &)> done);

    TranspileResult run(const Circuit &circuit, const DeviceModel *device) const;

    std::vector<std::string> pass_names() const;

    /// Known names: unroll, layout, route, fix_direction, merge_1q,
    /// cancel_cx, depth, optimize.
    static Pass named_pass(std::string_view name);
    static PassManager from_names(std::string_view comma_separated);
    static std::string default_pipeline() { return "unroll,layout,route,unroll,fix_direction,optimize"; }
    static std::string routing_only_pipeline() { return "unroll,layout,route,unroll"; }

   private:
    std::vector<Pass> passes_;
};

TranspileResult transpile(const Circuit &circuit, const DeviceModel &device,
                          std::string_view pipeline = "unroll,layout,route,unroll,fix_direction,optimize");

enum class ScheduleMode { Asap, Alap };

struct ScheduledGate {
    Gate gate;
    double start_ns = 0;
    double duration_ns = 0;
    /// True for pulses inserted by dynamical decoupling.
    bool inserted = false;
};

struct IdleInterval {
    int qubit = 0;
    double start_ns = 0;
    double end_ns = 0;
};

struct Schedule {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<ScheduledGate> ops;
    /// Gaps between consecutive operations on each qubit, before DD.
    std::vector<IdleInterval> idle;
    double makespan_ns = 0;

    /// Gates ordered by start time.
    Circuit to_circuit() const;
};

Schedule schedule(const Circuit &circuit, const DeviceModel &device, ScheduleMode mode, bool dynamical_decoupling,
                  double slack_ns = 1.0);

struct IdleDecay {
    int qubit = 0;
    double idle_ns = 0;
    /// exp(-idle / T1) and exp(-idle / T2); 1 when coherence is unknown.
    double t1_factor = 1;
    double t2_factor = 1;
};

/// Idle time left uncovered by gates (DD pulses count as covered) per
/// qubit, with the decay implied by T1 and T2.
std::vector<IdleDecay> idle_decay_report(const Schedule &schedule, const DeviceModel &device);

}  // namespace qvb
