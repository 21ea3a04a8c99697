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

#include <bit>
#include <cmath>
#include <numeric>

#include "qvbench/qv.hpp"
#include "qvbench/simulator.hpp"
#include "qvbench/unitary.hpp"
#include "test_util.hpp"

using namespace qvb;

namespace {

DeviceModel noiseless_line() { return load_device(qvb::testing::asset("devices/line6_noiseless.json")); }

// Binomial standard error of a mean of per-circuit HOPs whose true values are `p`.
double mean_sigma(const std::vector<double> &p, std::uint64_t shots) {
    double var = 0;
    for (double q : p) {
        var += q * (1 - q) / static_cast<double>(shots);
    }
    return std::sqrt(var) / static_cast<double>(p.size());
}

}  // namespace

TEST(ModelCircuit, WidthTwoStructure) {
    const ModelCircuit m = generate_model_circuit(2, 1);
    EXPECT_EQ(m.permutations.size(), 2u);
    EXPECT_EQ(m.circuit.count(GateKind::SU4), 2u);
    EXPECT_EQ(m.circuit.size(), 2u);
}

TEST(ModelCircuit, WidthFiveStructure) {
    const ModelCircuit m = generate_model_circuit(5, 2);
    ASSERT_EQ(m.permutations.size(), 5u);
    EXPECT_EQ(m.circuit.count(GateKind::SU4), 10u);
    for (std::size_t layer = 0; layer < 5; ++layer) {
        std::vector<int> perm = m.permutations[layer];
        std::sort(perm.begin(), perm.end());
        EXPECT_EQ(perm, (std::vector<int>{0, 1, 2, 3, 4}));
        for (int k = 0; k < 2; ++k) {
            const Gate &g = m.circuit.gates()[layer * 2 + k];
            EXPECT_EQ(g.qubits, (std::vector<int>{m.permutations[layer][2 * k], m.permutations[layer][2 * k + 1]}));
            const Eigen::Matrix4cd &u = *g.matrix;
            EXPECT_LT((u * u.adjoint() - Eigen::Matrix4cd::Identity()).norm(), 1e-10);
        }
    }
}

TEST(ModelCircuit, DeterministicPerSeed) {
    EXPECT_EQ(generate_model_circuit(4, 77).circuit, generate_model_circuit(4, 77).circuit);
    EXPECT_FALSE(generate_model_circuit(4, 77).circuit == generate_model_circuit(4, 78).circuit);
    EXPECT_THROW(generate_model_circuit(1, 0), InvalidInput);
}

TEST(ModelCircuit, HaarSu4HasUniformFirstColumnMoments) {
    // For Haar-random U(4), E|U_00|^2 = 1/4 and E|U_00|^4 = 1/10.
    Rng rng(61);
    double m2 = 0, m4 = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double a = std::norm(haar_su4(rng)(0, 0));
        m2 += a;
        m4 += a * a;
    }
    EXPECT_NEAR(m2 / n, 0.25, 0.01);
    EXPECT_NEAR(m4 / n, 0.1, 0.01);
}

TEST(HeavySet, Examples) {
    const std::vector<double> p = {0.7, 0.1, 0.1, 0.1};
    EXPECT_EQ(heavy_set(p), (std::set<std::string>{"00"}));
    const std::vector<double> u(8, 0.125);
    EXPECT_TRUE(heavy_set(u).empty());
    EXPECT_THROW(heavy_set(std::vector<double>{0.5, 0.2}), InvalidInput);
}

TEST(HeavySet, MatchesExhaustiveOracle) {
    const ModelCircuit m = generate_model_circuit(3, 5);
    const Eigen::MatrixXcd u = circuit_unitary(m.circuit);
    std::vector<double> p(8);
    for (int i = 0; i < 8; ++i) {
        p[i] = std::norm(u(i, 0));
    }
    std::vector<double> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    const double med = (sorted[3] + sorted[4]) / 2;
    std::set<std::string> oracle;
    for (int i = 0; i < 8; ++i) {
        if (p[i] > med) {
            oracle.insert(to_bitstring(i, 3));
        }
    }
    EXPECT_EQ(heavy_set(run_statevector(m.circuit).probabilities()), oracle);
    EXPECT_EQ(oracle.size(), 4u);
}

TEST(HeavySet, MassIsAtLeastHalfForModelCircuits) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = run_statevector(generate_model_circuit(4, seed).circuit).probabilities();
        const auto heavy = heavy_set(p);
        double mass = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            mass += heavy.count(to_bitstring(i, 4)) ? p[i] : 0;
        }
        EXPECT_GE(mass, 0.5);
    }
}

TEST(Hop, Examples) {
    const std::set<std::string> heavy = {"01", "10"};
    EXPECT_EQ(heavy_output_probability(Counts{{"01", 5}, {"10", 3}}, heavy), 1.0);
    EXPECT_EQ(heavy_output_probability(Counts{{"00", 5}, {"11", 3}}, heavy), 0.0);
    EXPECT_EQ(heavy_output_probability(Counts{{"00", 1}, {"01", 3}}, heavy), 0.75);
    EXPECT_THROW(heavy_output_probability(Counts{}, heavy), InvalidInput);
}

TEST(Hop, IdealSamplingConvergesToHeavyMass) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const StateVector s = run_statevector(generate_model_circuit(4, seed).circuit);
        const auto p = s.probabilities();
        const auto heavy = heavy_set(p);
        double mass = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            mass += heavy.count(to_bitstring(i, 4)) ? p[i] : 0;
        }
        const std::uint64_t shots = 100000;
        const double hop = heavy_output_probability(sample_counts(s, MeasureMap::identity(4), shots, nullptr, seed),
                                                    heavy);
        EXPECT_LT(std::abs(hop - mass), 3 * std::sqrt(mass * (1 - mass) / shots));
    }
}

TEST(Experiment, NoiselessWidthThreePasses) {
    QVOptions o;
    o.width = 3;
    o.num_circuits = 100;
    o.shots = 4000;
    o.seed = 11;
    const QVResult r = qv_experiment(noiseless_line(), o);
    EXPECT_TRUE(r.pass);
    EXPECT_GE(r.mean_hop, 0.80);
    EXPECT_LE(r.mean_hop, 0.90);
    std::vector<double> mass;
    for (const auto &c : r.circuits) {
        mass.push_back(c.ideal_heavy_mass);
        EXPECT_GE(c.hop, 0.0);
        EXPECT_LE(c.hop, 1.0);
    }
    EXPECT_LT(std::abs(r.mean_hop - r.mean_ideal_heavy_mass), 3 * mean_sigma(mass, o.shots));
    EXPECT_NEAR(r.lower_bound, r.mean_hop - 2 * r.stddev_hop / std::sqrt(100.0), 1e-12);
    EXPECT_EQ(r.pass, r.lower_bound > 2.0 / 3.0);
}

TEST(Experiment, FullyDepolarizingDeviceFails) {
    DeviceModel d = DeviceModel::uniform("dead", 3, line_coupling(3), 15.0 / 16.0, 0.75, 0.0);
    QVOptions o;
    o.width = 3;
    o.num_circuits = 30;
    o.shots = 2000;
    o.seed = 12;
    const QVResult r = qv_experiment(d, o);
    EXPECT_FALSE(r.pass);
    // Touched qubits end maximally mixed; a qubit no layer pairs stays in |0>.
    std::vector<double> uniform_mass;
    for (const auto &c : r.circuits) {
        const ModelCircuit mc = generate_model_circuit(3, c.seed);
        unsigned touched = 0;
        for (const Gate &g : mc.circuit) {
            for (int q : g.qubits) {
                touched |= 1u << q;
            }
        }
        const auto heavy = heavy_set(run_statevector(mc.circuit).probabilities());
        double mass = 0;
        for (unsigned i = 0; i < 8; ++i) {
            if ((i & ~touched) == 0 && heavy.contains(to_bitstring(i, 3))) {
                mass += 1.0 / (1u << std::popcount(touched));
            }
        }
        uniform_mass.push_back(mass);
    }
    const double expected = std::accumulate(uniform_mass.begin(), uniform_mass.end(), 0.0) / uniform_mass.size();
    EXPECT_LT(std::abs(r.mean_hop - expected), 3 * mean_sigma(uniform_mass, o.shots));
}

TEST(Experiment, TranspilationKeepsHopOnNoiselessDevice) {
    QVOptions o;
    o.width = 4;
    o.num_circuits = 20;
    o.shots = 4000;
    o.seed = 13;
    const DeviceModel d = noiseless_line();
    const QVResult routed = qv_experiment(d, o);
    o.transpile = false;
    const QVResult raw = qv_experiment(d, o);
    std::vector<double> mass;
    for (std::size_t i = 0; i < routed.circuits.size(); ++i) {
        EXPECT_NEAR(routed.circuits[i].ideal_heavy_mass, raw.circuits[i].ideal_heavy_mass, 1e-12);
        mass.push_back(routed.circuits[i].ideal_heavy_mass);
    }
    const double sigma = mean_sigma(mass, o.shots);
    EXPECT_LT(std::abs(routed.mean_hop - routed.mean_ideal_heavy_mass), 3 * sigma);
    EXPECT_LT(std::abs(routed.mean_hop - raw.mean_hop), 3 * std::sqrt(2.0) * sigma);
}

TEST(Experiment, DeterministicAndSeededPerCircuit) {
    QVOptions o;
    o.width = 2;
    o.num_circuits = 10;
    o.shots = 500;
    o.seed = 14;
    const DeviceModel d = load_device(qvb::testing::asset("devices/line3.json"));
    const QVResult a = qv_experiment(d, o);
    o.threads = 2;
    const QVResult b = qv_experiment(d, o);
    ASSERT_EQ(a.circuits.size(), b.circuits.size());
    for (std::size_t i = 0; i < a.circuits.size(); ++i) {
        EXPECT_EQ(a.circuits[i].hop, b.circuits[i].hop);
        EXPECT_EQ(a.circuits[i].seed, o.seed ^ i);
    }
    EXPECT_EQ(a.mean_hop, b.mean_hop);
}

TEST(Experiment, RejectsBadArguments) {
    const DeviceModel d = load_device(qvb::testing::asset("devices/line3.json"));
    QVOptions o;
    o.width = 4;
    EXPECT_THROW(qv_experiment(d, o), CapacityError);
    o.width = 2;
    o.num_circuits = 5;
    EXPECT_THROW(qv_experiment(d, o), InvalidInput);
    EXPECT_THROW(qv_sweep(d, {}, QVOptions{}), InvalidInput);
}

TEST(Sweep, NoiselessLineClaimsSixteen) {
    QVOptions o;
    o.num_circuits = 30;
    o.shots = 2000;
    o.seed = 15;
    const QVSweepResult s = qv_sweep(noiseless_line(), {2, 3, 4}, o);
    EXPECT_EQ(s.claimed_width, 4);
    EXPECT_EQ(s.quantum_volume, 16u);
    const std::string csv = qv_csv(s.results);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 30);
}

TEST(Sweep, ClaimRequiresSmallerWidthsToPass) {
    QVOptions o;
    o.num_circuits = 10;
    o.shots = 200;
    const DeviceModel d = DeviceModel::uniform("dead", 3, line_coupling(3), 15.0 / 16.0, 0.75, 0.0);
    const QVSweepResult s = qv_sweep(d, {2, 3}, o);
    EXPECT_EQ(s.claimed_width, 0);
    EXPECT_EQ(s.quantum_volume, 1u);
}
