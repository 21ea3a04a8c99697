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

#include <gtest/gtest.h>

#include <cmath>

#include "qvbench/qasm.hpp"
#include "qvbench/transpiler.hpp"
#include "qvbench/unitary.hpp"
#include "test_util.hpp"

using namespace qvb;
using qvb::testing::kPi;

namespace {

DeviceModel line(int n, bool bidirectional = true) {
    return DeviceModel::uniform("line" + std::to_string(n), n, line_coupling(n, bidirectional), 0.01, 0.001, 0.02);
}

bool same_unitary(const Circuit &a, const Circuit &b, double tol = 1e-8) {
    return equal_up_to_global_phase(circuit_unitary(a), circuit_unitary(b), tol);
}

void expect_on_coupling(const Circuit &c, const DeviceModel &d) {
    for (const Gate &g : c) {
        if (g.kind == GateKind::CX) {
            EXPECT_TRUE(d.has_directed_edge(g.qubits[0], g.qubits[1])) << g.str();
        }
    }
}

void expect_native(const Circuit &c) {
    for (const Gate &g : c) {
        EXPECT_TRUE(is_native(g.kind) || g.kind == GateKind::Barrier || g.kind == GateKind::Measure) << g.str();
    }
}

std::vector<std::filesystem::path> corpus() {
    std::vector<std::filesystem::path> out;
    for (const auto &e : std::filesystem::directory_iterator(qvb::testing::asset("corpus"))) {
        out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Unroll, HadamardIsU2) {
    Circuit c(1);
    c.append(Gate::h(0));
    const Circuit u = unroll(c);
    ASSERT_EQ(u.size(), 1u);
    EXPECT_EQ(u.gates()[0], Gate::u2(0, 0, kPi));
}

TEST(Unroll, SwapIsThreeCx) {
    Circuit c(2);
    c.append(Gate::swap(0, 1));
    const Circuit u = unroll(c);
    EXPECT_EQ(u.size(), 3u);
    EXPECT_EQ(u.count(GateKind::CX), 3u);
    EXPECT_TRUE(same_unitary(u, c));
}

TEST(Unroll, Su4UsesAtMostThreeCx) {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        Circuit c(3);
        c.append(Gate::su4(static_cast<int>(trial % 3), static_cast<int>((trial + 1) % 3), haar_su4(rng)));
        const Circuit u = unroll(c);
        expect_native(u);
        EXPECT_LE(u.count(GateKind::CX), 3u);
        EXPECT_TRUE(same_unitary(u, c));
    }
}

TEST(Unroll, RandomCircuitsKeepSemantics) {
    Rng rng(52);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = qvb::testing::random_circuit(4, 40, rng, true);
        const Circuit u = unroll(c);
        expect_native(u);
        EXPECT_TRUE(same_unitary(u, c));
    }
}

TEST(Layout, SingleInteractionOnLine) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    const Layout l = select_layout(c, line(3));
    EXPECT_EQ(l.v2p, (std::vector<int>{0, 1}));
}

TEST(Layout, TriangleOnLineSatisfiesTwo) {
    Circuit c(3);
    c.append(Gate::cx(0, 1));
    c.append(Gate::cx(1, 2));
    c.append(Gate::cx(0, 2));
    const DeviceModel d = line(3);
    const Layout l = select_layout(c, d);
    EXPECT_TRUE(l.valid());
    EXPECT_EQ(satisfied_interactions(c, d, l), 2);
}

TEST(Layout, BeatsRandomLayouts) {
    const DeviceModel d = load_device(qvb::testing::asset("devices/synthetic20.json"));
    Rng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        const Circuit c = unroll(qvb::testing::random_circuit(4, 30, rng, true));
        const Layout l = select_layout(c, d);
        ASSERT_TRUE(l.valid());
        const int chosen = satisfied_interactions(c, d, l);
        std::vector<int> phys(20);
        std::iota(phys.begin(), phys.end(), 0);
        for (int r = 0; r < 1000; ++r) {
            rng.shuffle(phys);
            Layout rl;
            rl.num_physical = 20;
            rl.v2p.assign(phys.begin(), phys.begin() + 4);
            ASSERT_GE(chosen, satisfied_interactions(c, d, rl));
        }
    }
}

TEST(Layout, ExactEmbeddingWhenAvailable) {
    // A 4-cycle embeds in the grid device but not in a line.
    Circuit c(4);
    c.append(Gate::cx(0, 1));
    c.append(Gate::cx(1, 2));
    c.append(Gate::cx(2, 3));
    c.append(Gate::cx(3, 0));
    const DeviceModel grid = load_device(qvb::testing::asset("devices/synthetic20.json"));
    EXPECT_EQ(satisfied_interactions(c, grid, select_layout(c, grid)), 4);
    EXPECT_EQ(satisfied_interactions(c, line(6), select_layout(c, line(6))), 3);
}

TEST(Layout, RejectsTooWideCircuit) {
    EXPECT_THROW(select_layout(Circuit(4), line(3)), CapacityError);
}

TEST(Layout, CompletedFillsAncillas) {
    Layout l;
    l.num_physical = 4;
    l.v2p = {2, -1};
    const Layout c = l.completed();
    EXPECT_EQ(c.v2p, (std::vector<int>{2, 0, 1, 3}));
    EXPECT_TRUE(c.valid());
}

TEST(Route, AlreadyMappedIsUnchanged) {
    Circuit c(3);
    c.append(Gate::h(0));
    c.append(Gate::cx(0, 1));
    c.append(Gate::cx(2, 1));
    const RoutingResult r = route(c, line(3), Layout::trivial(3, 3));
    EXPECT_EQ(r.circuit, c);
    EXPECT_EQ(r.swaps, 0);
    EXPECT_EQ(r.initial_layout, r.final_layout);
}

TEST(Route, DistantCxInsertsOneSwap) {
    Circuit c(3);
    c.append(Gate::cx(0, 2));
    const DeviceModel d = line(3);
    const RoutingResult r = route(c, d, Layout::trivial(3, 3));
    EXPECT_EQ(r.swaps, 1);
    EXPECT_EQ(r.circuit.count(GateKind::CX), 4u);
    expect_on_coupling(r.circuit, d);
    EXPECT_TRUE(equivalent_under_layouts(c, r.circuit, r.initial_layout, r.final_layout, 1e-8));
}

TEST(Route, ModelCircuitOnLineFour) {
    const DeviceModel d = line(4, false);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Circuit c = unroll(generate_model_circuit(4, seed).circuit);
        const RoutingResult r = route(c, d, Layout::trivial(4, 4));
        expect_on_coupling(r.circuit, d);
        EXPECT_TRUE(equivalent_under_layouts(c, r.circuit, r.initial_layout, r.final_layout, 1e-8));
    }
}

TEST(Route, DisconnectedComponentsAreRejected) {
    const DeviceModel d = DeviceModel::uniform("split", 4, {{0, 1}, {2, 3}}, 0.01, 0.001, 0.0);
    Circuit c(4);
    c.append(Gate::cx(0, 2));
    EXPECT_THROW(route(c, d, Layout::trivial(4, 4)), InvalidInput);
}

TEST(FixDirection, ReversesAgainstDirectedEdge) {
    const DeviceModel d = line(2, false);
    Circuit c(2);
    c.append(Gate::cx(1, 0));
    const Circuit f = fix_direction(c, d);
    expect_on_coupling(f, d);
    EXPECT_EQ(f.count(GateKind::U2), 4u);
    EXPECT_TRUE(same_unitary(f, c));
}

TEST(Merge, HadamardPairVanishes) {
    Circuit c(1);
    c.append(Gate::h(0));
    c.append(Gate::h(0));
    EXPECT_TRUE(merge_1q_runs(c).empty());
}

TEST(Merge, RzRunBecomesU1) {
    Circuit c(1);
    c.append(Gate::rz(0, 0.3));
    c.append(Gate::rz(0, 0.5));
    const Circuit m = merge_1q_runs(c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.gates()[0].kind, GateKind::U1);
    EXPECT_NEAR(std::remainder(m.gates()[0].params[0] - 0.8, 2 * kPi), 0, 1e-10);
}

TEST(Merge, RandomRunBecomesOneU3) {
    Rng rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c(1);
        for (int k = 0; k < 5; ++k) {
            c.append(Gate::u3(0, rng.uniform(0, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)));
        }
        const Circuit m = merge_1q_runs(c);
        ASSERT_EQ(m.size(), 1u);
        EXPECT_TRUE(same_unitary(m, c));
    }
}

TEST(Merge, NoAdjacentSingleQubitGatesRemain) {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = unroll(qvb::testing::random_circuit(4, 60, rng, false, false));
        const Circuit m = merge_1q_runs(c);
        EXPECT_TRUE(same_unitary(m, c));
        std::vector<bool> last_1q(4, false);
        for (const Gate &g : m) {
            if (is_single_qubit_unitary(g.kind)) {
                EXPECT_FALSE(last_1q[g.qubits[0]]);
                last_1q[g.qubits[0]] = true;
            } else {
                for (int q : g.qubits) {
                    last_1q[q] = false;
                }
            }
        }
    }
}

TEST(Cancel, ZOnControlCommutes) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    c.append(Gate::rz(0, 0.7));
    c.append(Gate::cx(0, 1));
    const Circuit out = cancel_commuting(c);
    EXPECT_EQ(out.count(GateKind::CX), 0u);
    EXPECT_TRUE(same_unitary(out, c));
}

TEST(Cancel, XOnTargetCommutes) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    c.append(Gate::rx(1, 0.4));
    c.append(Gate::x(1));
    c.append(Gate::cx(0, 1));
    const Circuit out = cancel_commuting(c);
    EXPECT_EQ(out.count(GateKind::CX), 0u);
    EXPECT_TRUE(same_unitary(out, c));
}

TEST(Cancel, ZOnTargetBlocks) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    c.append(Gate::rz(1, 0.7));
    c.append(Gate::cx(0, 1));
    EXPECT_EQ(cancel_commuting(c), c);
}

TEST(Cancel, BarrierIsAFence) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    c.append(Gate::barrier({0, 1}));
    c.append(Gate::cx(0, 1));
    EXPECT_EQ(cancel_commuting(c), c);
    EXPECT_EQ(optimize_to_fixed_point(c).circuit, c);
}

TEST(Cancel, RandomCircuitsKeepSemantics) {
    Rng rng(56);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = unroll(qvb::testing::random_circuit(3, 50, rng));
        EXPECT_TRUE(same_unitary(cancel_commuting(c), c));
    }
}

TEST(Optimize, OptimalCircuitTakesOneIteration) {
    Circuit c(2);
    c.append(Gate::u3(0, 0.1, 0.2, 0.3));
    c.append(Gate::cx(0, 1));
    const OptimizeResult r = optimize_to_fixed_point(c);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(r.circuit, c);
}

TEST(Optimize, HadamardChainVanishes) {
    Circuit c(1);
    for (int k = 0; k < 10; ++k) {
        c.append(Gate::h(0));
        c.append(Gate::h(0));
    }
    EXPECT_TRUE(optimize_to_fixed_point(c).circuit.empty());
}

TEST(Optimize, DepthNeverIncreases) {
    Rng rng(57);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = unroll(qvb::testing::random_circuit(4, 80, rng));
        const OptimizeResult r = optimize_to_fixed_point(c);
        EXPECT_LE(r.iterations, kMaxOptimizeIterations);
        for (std::size_t k = 1; k < r.depth_history.size(); ++k) {
            EXPECT_LE(r.depth_history[k], r.depth_history[k - 1]);
        }
        EXPECT_TRUE(same_unitary(r.circuit, c));
    }
}

TEST(Optimize, CorpusTerminatesWithMonotoneDepth) {
    const DeviceModel d = load_device(qvb::testing::asset("devices/line6_noiseless.json"));
    for (const auto &path : corpus()) {
        const TranspileResult r = transpile(read_qasm_file(path), d);
        ASSERT_FALSE(r.depth_history.empty()) << path;
        for (std::size_t k = 1; k < r.depth_history.size(); ++k) {
            EXPECT_LE(r.depth_history[k], r.depth_history[k - 1]) << path;
        }
        EXPECT_LE(r.depth_history.size(), static_cast<std::size_t>(kMaxOptimizeIterations) + 1);
    }
}

TEST(Optimize, CorpusBeatsRoutingOnlyByFifteenPercent) {
    const DeviceModel d = load_device(qvb::testing::asset("devices/line6_noiseless.json"));
    double best = 0;
    for (const auto &path : corpus()) {
        const Circuit c = read_qasm_file(path);
        const auto opt = transpile(c, d).metrics.cx_count;
        const auto base = transpile(c, d, PassManager::routing_only_pipeline()).metrics.cx_count;
        ASSERT_GT(base, 0u);
        EXPECT_LE(opt, base) << path;
        best = std::max(best, 1.0 - static_cast<double>(opt) / static_cast<double>(base));
    }
    EXPECT_GE(best, 0.15);
}

TEST(Pipeline, SemanticPreservationOnRandomDevices) {
    Rng rng(58);
    for (int trial = 0; trial < 40; ++trial) {
        const DeviceModel d = qvb::testing::random_device(5 + static_cast<int>(rng.uniform_int(3)), rng);
        const int n = 2 + static_cast<int>(rng.uniform_int(4));
        const Circuit c = qvb::testing::random_circuit(n, 30, rng, true);
        const TranspileResult r = transpile(c, d);
        expect_native(r.circuit);
        expect_on_coupling(r.circuit, d);
        ASSERT_TRUE(equivalent_under_layouts(c, r.circuit, r.initial_layout, r.final_layout, 1e-7)) << trial;
    }
}

TEST(Pipeline, EmptyPipelineIsPassThrough) {
    Rng rng(59);
    const Circuit c = qvb::testing::random_circuit(3, 20, rng);
    const TranspileResult r = transpile(c, line(3), "");
    EXPECT_EQ(r.circuit, c);
    EXPECT_TRUE(r.passes.empty());
}

TEST(Pipeline, RejectsBadNames) {
    EXPECT_THROW(PassManager::from_names("unroll,bogus"), InvalidInput);
    EXPECT_THROW(PassManager::from_names("unroll,,route"), InvalidInput);
    const auto names = PassManager::from_names(PassManager::default_pipeline()).pass_names();
    EXPECT_EQ(names.front(), "unroll");
    EXPECT_EQ(names.back(), "optimize");
}

TEST(Pipeline, ReportsFidelityProxy) {
    const DeviceModel d = line(3);
    Circuit c(3);
    c.append(Gate::cx(0, 2));
    const TranspileResult r = transpile(c, d);
    double expected = 1.0;
    for (const Gate &g : r.circuit) {
        expected *= 1.0 - d.gate_error(g.kind, g.qubits);
    }
    EXPECT_NEAR(r.metrics.fidelity_proxy, expected, 1e-12);
    EXPECT_LT(r.metrics.fidelity_proxy, 1.0);
}

TEST(Schedule, SingleGate) {
    Circuit c(1);
    c.append(Gate::u3(0, 0.1, 0.2, 0.3));
    const Schedule s = schedule(c, line(3), ScheduleMode::Asap, false);
    ASSERT_EQ(s.ops.size(), 1u);
    EXPECT_EQ(s.ops[0].start_ns, 0.0);
    EXPECT_DOUBLE_EQ(s.makespan_ns, 71.1);
}

TEST(Schedule, AsapAndAlapPlacement) {
    Circuit c(3);
    c.append(Gate::h(0));
    c.append(Gate::cx(1, 2));
    const DeviceModel d = line(3);
    const Schedule asap = schedule(c, d, ScheduleMode::Asap, false);
    const Schedule alap = schedule(c, d, ScheduleMode::Alap, false);
    EXPECT_EQ(asap.ops[0].start_ns, 0.0);
    EXPECT_DOUBLE_EQ(alap.makespan_ns, 320.0);
    EXPECT_DOUBLE_EQ(alap.ops[0].start_ns, 320.0 - 71.1);
}

TEST(Schedule, DynamicalDecouplingPreservesUnitary) {
    const DeviceModel d = line(3);
    Circuit c(3);
    c.append(Gate::u3(0, 0.3, 0.1, 0.2));
    c.append(Gate::cx(0, 1));
    for (int k = 0; k < 3; ++k) {
        c.append(Gate::cx(1, 2));
    }
    c.append(Gate::cx(0, 1));
    for (ScheduleMode mode : {ScheduleMode::Asap, ScheduleMode::Alap}) {
        const Schedule s = schedule(c, d, mode, true);
        const auto inserted = std::count_if(s.ops.begin(), s.ops.end(), [](const auto &o) { return o.inserted; });
        EXPECT_GE(inserted, 2);
        EXPECT_EQ(inserted % 2, 0);
        EXPECT_TRUE(same_unitary(s.to_circuit(), c));
        for (std::size_t i = 0; i < s.ops.size(); ++i) {
            for (std::size_t j = i + 1; j < s.ops.size(); ++j) {
                const auto &a = s.ops[i];
                const auto &b = s.ops[j];
                const bool share = std::any_of(a.gate.qubits.begin(), a.gate.qubits.end(), [&](int q) {
                    return std::find(b.gate.qubits.begin(), b.gate.qubits.end(), q) != b.gate.qubits.end();
                });
                if (share) {
                    EXPECT_TRUE(a.start_ns + a.duration_ns <= b.start_ns + 1e-9 ||
                                b.start_ns + b.duration_ns <= a.start_ns + 1e-9);
                }
            }
        }
    }
}

TEST(Schedule, ShortGapsGetNoPulses) {
    const DeviceModel d = line(3);
    Circuit c(2);
    c.append(Gate::u3(0, 0.3, 0.1, 0.2));
    c.append(Gate::u2(1, 0.1, 0.2));
    c.append(Gate::cx(0, 1));
    const Schedule s = schedule(c, d, ScheduleMode::Asap, true);
    EXPECT_TRUE(std::none_of(s.ops.begin(), s.ops.end(), [](const auto &o) { return o.inserted; }));
}

TEST(Schedule, MissingDurationIsAnError) {
    DeviceModel d = line(2);
    std::erase_if(d.gates, [](const GateSpec &g) { return g.kind == GateKind::CX; });
    d.coupling.clear();
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    EXPECT_THROW(schedule(c, d, ScheduleMode::Asap, false), InvalidInput);
}

TEST(Schedule, IdleDecayUsesCoherence) {
    DeviceModel d = line(3);
    d.coherence = {{0, 50.0, 40.0}};
    Circuit c(3);
    c.append(Gate::u3(0, 0.3, 0.1, 0.2));
    c.append(Gate::cx(1, 2));
    c.append(Gate::cx(0, 1));
    const Schedule s = schedule(c, d, ScheduleMode::Asap, false);
    const auto report = idle_decay_report(s, d);
    const auto it = std::find_if(report.begin(), report.end(), [](const IdleDecay &r) { return r.qubit == 0; });
    ASSERT_NE(it, report.end());
    EXPECT_GT(it->idle_ns, 0.0);
    EXPECT_NEAR(it->t1_factor, std::exp(-it->idle_ns / 50000.0), 1e-12);
    EXPECT_NEAR(it->t2_factor, std::exp(-it->idle_ns / 40000.0), 1e-12);
}
