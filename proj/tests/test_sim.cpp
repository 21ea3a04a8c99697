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

#include "qvbench/channel.hpp"
#include "qvbench/noise_model.hpp"
#include "qvbench/pauli.hpp"
#include "qvbench/simulator.hpp"
#include "qvbench/unitary.hpp"
#include "test_util.hpp"

using namespace qvb;
using qvb::testing::kPi;

namespace {

Circuit bell() {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cx(0, 1));
    return c;
}

Eigen::MatrixXcd projector(const StateVector &psi) {
    Eigen::VectorXcd v(psi.amplitudes().size());
    for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = psi[i];
    }
    return v * v.adjoint();
}

void expect_physical(const DensityMatrix &rho) {
    const Eigen::MatrixXcd &m = rho.matrix();
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8);
}

NoiseModel random_noise(int n, Rng &rng) {
    NoiseModel noise;
    for (int q = 0; q < n; ++q) {
        for (GateKind k : {GateKind::U1, GateKind::U2, GateKind::U3, GateKind::H, GateKind::X, GateKind::RY}) {
            noise.add_channel(k, {q}, QuantumChannel::depolarizing(1, rng.uniform(0, 0.05)));
        }
        for (int r = 0; r < n; ++r) {
            if (r != q) {
                noise.add_channel(GateKind::CX, {q, r}, QuantumChannel::depolarizing(2, rng.uniform(0, 0.05)));
            }
        }
    }
    return noise;
}

double total_variation(const Counts &counts, const std::vector<double> &p, int n) {
    double tv = 0;
    const double shots = static_cast<double>(total_shots(counts));
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::string key = to_bitstring(i, n);
        const auto it = counts.find(key);
        const double f = it == counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
        tv += std::abs(f - p[i]);
    }
    return tv / 2;
}

}  // namespace

TEST(StateVector, HadamardSuperposition) {
    Circuit c(1);
    c.append(Gate::h(0));
    const StateVector s = run_statevector(c);
    EXPECT_NEAR(std::abs(s[0] - 1 / std::sqrt(2.0)), 0, 1e-12);
    EXPECT_NEAR(std::abs(s[1] - 1 / std::sqrt(2.0)), 0, 1e-12);
}

TEST(StateVector, BellState) {
    const StateVector s = run_statevector(bell());
    EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s[3].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(s[1]) + std::abs(s[2]), 0, 1e-12);
}

TEST(StateVector, MatchesUnitaryOracleOnTenQubits) {
    Rng rng(21);
    const Circuit c = qvb::testing::random_circuit(10, 120, rng, true);
    const StateVector s = run_statevector(c);
    const Eigen::MatrixXcd u = circuit_unitary(c);
    double err = 0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        err = std::max(err, std::abs(s[static_cast<std::size_t>(i)] - u(i, 0)));
    }
    EXPECT_LT(err, 1e-10);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
}

TEST(StateVector, NormConservedAfterEveryGate) {
    Rng rng(22);
    const Circuit c = qvb::testing::random_circuit(5, 80, rng, true);
    StateVector s(5);
    for (const Gate &g : c) {
        s.apply(g);
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-9);
    }
}

TEST(StateVector, RejectsMeasureAndOversize) {
    Circuit m(1, 1);
    m.append(Gate::measure(0, 0));
    EXPECT_THROW(run_statevector(m), InvalidInput);
    EXPECT_THROW(run_statevector(Circuit(kMaxStatevectorQubits + 1)), CapacityError);
}

TEST(StateVector, SupportsTwentyFourQubits) {
    Circuit c(24);
    c.append(Gate::h(23));
    c.append(Gate::cx(23, 0));
    const StateVector s = run_statevector(c);
    EXPECT_NEAR(std::norm(s[(1u << 23) | 1u]), 0.5, 1e-12);
}

TEST(Density, EmptyNoiseGivesPureProjector) {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(6));
        const Circuit c = qvb::testing::random_circuit(n, 30, rng, true);
        const DensityMatrix rho = run_density(c, NoiseModel{});
        ASSERT_LT((rho.matrix() - projector(run_statevector(c))).norm(), 1e-8);
    }
}

TEST(Density, FullDepolarizationGivesMaximallyMixed) {
    Rng rng(24);
    for (int trial = 0; trial < 5; ++trial) {
        Circuit c(1);
        c.append(Gate::u3(0, rng.uniform(0, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)));
        DensityMatrix rho = run_density(c, NoiseModel{});
        const int q[] = {0};
        rho.apply_channel(QuantumChannel::depolarizing(1, 0.75), q);
        EXPECT_LT((rho.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0).norm(), 1e-12);
    }
}

TEST(Density, AmplitudeDampingOnExcitedState) {
    Circuit c(1);
    c.append(Gate::x(0));
    DensityMatrix rho = run_density(c, NoiseModel{});
    const int q[] = {0};
    rho.apply_channel(QuantumChannel::amplitude_damping(0.3), q);
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.3, 1e-12);
    EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.7, 1e-12);
}

TEST(Density, StaysPhysicalUnderNoise) {
    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(3));
        const NoiseModel noise = random_noise(n, rng);
        const Circuit c = qvb::testing::random_circuit(n, 30, rng);
        DensityMatrix rho(n);
        for (const Gate &g : c) {
            apply_noisy_gate(rho, g, noise);
            ASSERT_NEAR(rho.trace().real(), 1.0, 1e-9);
        }
        expect_physical(rho);
    }
}

TEST(Density, ChannelOnPairMatchesKrausOracle) {
    Rng rng(26);
    const Eigen::MatrixXcd u = haar_unitary(4, rng);
    const QuantumChannel ch = QuantumChannel::unitary(u, "u");
    Circuit prep = qvb::testing::random_circuit(3, 20, rng);
    DensityMatrix rho = run_density(prep, NoiseModel{});
    const Eigen::MatrixXcd before = rho.matrix();
    const int q[] = {2, 0};
    rho.apply_channel(ch, q);
    Circuit su(3);
    su.append(Gate::su4(2, 0, u));
    const Eigen::MatrixXcd full = circuit_unitary(su);
    EXPECT_LT((rho.matrix() - full * before * full.adjoint()).norm(), 1e-10);
}

TEST(Density, RejectsOversizeAndArityMismatch) {
    EXPECT_THROW(run_density(Circuit(kMaxDensityQubits + 1), NoiseModel{}), CapacityError);
    DensityMatrix rho(2);
    const int one[] = {0};
    EXPECT_THROW(rho.apply_channel(QuantumChannel::depolarizing(2, 0.1), one), InvalidInput);
}

TEST(Channel, KrausMustBeTracePreserving) {
    std::vector<Eigen::MatrixXcd> k = {Eigen::MatrixXcd::Identity(2, 2) * 0.9};
    EXPECT_THROW(QuantumChannel(k, "bad"), InvalidInput);
}

TEST(Channel, PtmMatchesDefinition) {
    Rng rng(27);
    const QuantumChannel ch = QuantumChannel::amplitude_damping(0.2);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
            for (const auto &k : ch.kraus()) {
                out += k * pauli_basis_matrix(1, j) * k.adjoint();
            }
            const double r = (pauli_basis_matrix(1, i) * out).trace().real() / 2;
            EXPECT_NEAR(ch.ptm()(i, j), r, 1e-12);
        }
    }
    const QuantumChannel dep = QuantumChannel::depolarizing(2, 0.1);
    const double f = 1 - 16 * 0.1 / 15;
    EXPECT_NEAR(dep.ptm()(0, 0), 1, 1e-12);
    for (int i = 1; i < 16; ++i) {
        EXPECT_NEAR(dep.ptm()(i, i), f, 1e-12);
    }
}

TEST(Sampling, BellCountsAreBalanced) {
    const StateVector s = run_statevector(bell());
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Counts c = sample_counts(s, MeasureMap::identity(2), 10000, nullptr, seed);
        ASSERT_EQ(total_shots(c), 10000u);
        ASSERT_EQ(c.count("01") + c.count("10"), 0u);
        const auto n00 = c.at("00");
        good += n00 >= 4500 && n00 <= 5500;
    }
    EXPECT_GE(good, 99);
}

TEST(Sampling, ReadoutFlipMatchesDeviceAverage) {
    const StateVector s(1);
    ReadoutMap readout{{0, symmetric_confusion(0.047)}};
    const Counts c = sample_counts(s, MeasureMap::identity(1), 10000, &readout, 42);
    const double sigma = std::sqrt(10000 * 0.047 * 0.953);
    EXPECT_LT(std::abs(static_cast<double>(c.at("1")) - 470.0), 4 * sigma);
}

TEST(Sampling, DeterministicForSeed) {
    Rng rng(28);
    const StateVector s = run_statevector(qvb::testing::random_circuit(4, 30, rng));
    ReadoutMap readout{{1, symmetric_confusion(0.1)}};
    const auto a = sample_counts(s, MeasureMap::identity(4), 2000, &readout, 9);
    const auto b = sample_counts(s, MeasureMap::identity(4), 2000, &readout, 9);
    const auto c = sample_counts(s, MeasureMap::identity(4), 2000, &readout, 10);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(Sampling, ConvergesToBornDistribution) {
    Rng rng(29);
    const StateVector s = run_statevector(qvb::testing::random_circuit(3, 25, rng));
    const auto p = s.probabilities();
    for (std::uint64_t shots : {1000ull, 10000ull, 100000ull}) {
        const auto c = sample_counts(s, MeasureMap::identity(3), shots, nullptr, shots);
        EXPECT_LT(total_variation(c, p, 3), 5 / std::sqrt(static_cast<double>(shots)));
    }
}

TEST(Sampling, UsesMeasureMapAndRejectsEmpty) {
    Circuit c(2, 3);
    c.append(Gate::x(0));
    c.append(Gate::measure(0, 2));
    c.append(Gate::measure(1, 0));
    const auto counts = sample_counts(run_statevector(without_measurements(c)), MeasureMap::from_circuit(c), 50,
                                      nullptr, 1);
    ASSERT_EQ(counts.size(), 1u);
    EXPECT_EQ(counts.begin()->first, "100");
    EXPECT_THROW(sample_counts(StateVector(2), MeasureMap{}, 10, nullptr, 1), InvalidInput);
}

TEST(Expectation, Examples) {
    EXPECT_NEAR(expectation(StateVector(1), PauliString::parse("Z")), 1.0, 1e-12);
    const StateVector b = run_statevector(bell());
    EXPECT_NEAR(expectation(b, PauliString::parse("XX")), 1.0, 1e-12);
    EXPECT_NEAR(expectation(b, PauliString::parse("ZZ")), 1.0, 1e-12);
    DensityMatrix rho(1);
    const int q[] = {0};
    rho.apply_channel(QuantumChannel::depolarizing(1, 0.3), q);
    EXPECT_NEAR(expectation(rho, PauliString::parse("Z")), 0.6, 1e-12);
    EXPECT_THROW(expectation(b, PauliString::parse("Z")), InvalidInput);
}

TEST(Expectation, MatchesDenseTraceOracle) {
    Rng rng(30);
    const char ops[] = "IXYZ";
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3;
        const NoiseModel noise = random_noise(n, rng);
        const DensityMatrix rho = run_density(qvb::testing::random_circuit(n, 20, rng), noise);
        std::string label;
        for (int q = 0; q < n; ++q) {
            label += ops[rng.uniform_int(4)];
        }
        const PauliString p = PauliString::parse(label);
        const double oracle = (rho.matrix() * p.matrix()).trace().real();
        EXPECT_NEAR(expectation(rho, p), oracle, 1e-9);
        const StateVector psi = run_statevector(qvb::testing::random_circuit(n, 20, rng));
        const Eigen::MatrixXcd pr = projector(psi);
        EXPECT_NEAR(expectation(psi, p), (pr * p.matrix()).trace().real(), 1e-9);
    }
}

TEST(Pauli, LeftmostCharacterIsHighestQubit) {
    const PauliString p = PauliString::parse("XZ");
    EXPECT_EQ(p[0], Pauli::Z);
    EXPECT_EQ(p[1], Pauli::X);
    EXPECT_EQ(p.str(), "XZ");
    EXPECT_THROW(PauliString::parse("XQ"), InvalidInput);
}

TEST(Pauli, ParityFromCounts) {
    const Counts c{{"00", 30}, {"01", 10}, {"11", 60}};
    EXPECT_NEAR(parity_expectation(c, 0b01), (30.0 - 10 - 60) / 100, 1e-12);
    EXPECT_NEAR(parity_expectation(c, 0b11), (30.0 - 10 + 60) / 100, 1e-12);
}

TEST(NoiseModel, SpectatorChannelsApplyToPassiveQubit) {
    NoiseModel noise;
    noise.add_spectator(GateKind::CX, {0, 1}, 2, QuantumChannel::depolarizing(1, 0.75));
    Circuit c(3);
    c.append(Gate::x(2));
    c.append(Gate::cx(0, 1));
    const DensityMatrix rho = run_density(c, noise);
    EXPECT_NEAR(expectation(rho, PauliString::parse("ZII")), 0.0, 1e-12);
    EXPECT_NEAR(expectation(rho, PauliString::parse("IIZ")), 1.0, 1e-12);
}
