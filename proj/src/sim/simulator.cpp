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

#include "qvbench/simulator.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "qvbench/errors.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/unitary.hpp"

namespace qvb {

namespace {

void check_statevector_capacity(int n) {
    if (n > kMaxStatevectorQubits) {
        throw CapacityError("statevector backend holds at most " + std::to_string(kMaxStatevectorQubits) +
                            " qubits, requested " + std::to_string(n));
    }
}

void check_density_capacity(int n) {
    if (n > kMaxDensityQubits) {
        throw CapacityError("density-matrix backend holds at most " + std::to_string(kMaxDensityQubits) +
                            " qubits, requested " + std::to_string(n));
    }
}

cplx pauli_phase(std::uint64_t basis, std::uint64_t z_mask, int y_count) {
    static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx ph = kIPow[y_count & 3];
    return (std::popcount(basis & z_mask) & 1) ? -ph : ph;
}

int count_y(const PauliString &p) {
    int n = 0;
    for (int q = 0; q < p.num_qubits(); ++q) {
        n += p[q] == Pauli::Y;
    }
    return n;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) {
        throw InvalidInput("negative qubit count");
    }
    check_statevector_capacity(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, cplx{0, 0});
    amps_[0] = 1;
}

StateVector::StateVector(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    check_statevector_capacity(num_qubits);
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw InvalidInput("amplitude count does not match qubit count");
    }
}

void StateVector::apply(const Gate &gate) { apply_gate(amps_, gate); }

double StateVector::norm_squared() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(), [](cplx a) { return std::norm(a); });
    return p;
}

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) {
        throw InvalidInput("negative qubit count");
    }
    check_density_capacity(num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    rho_ = Eigen::MatrixXcd::Zero(dim, dim);
    rho_(0, 0) = 1;
}

DensityMatrix DensityMatrix::from_statevector(const StateVector &psi) {
    DensityMatrix out(psi.num_qubits());
    const auto a = psi.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(a.data(), static_cast<Eigen::Index>(a.size()));
    out.rho_ = v * v.adjoint();
    return out;
}

void DensityMatrix::apply(const Gate &gate) {
    if (gate.kind == GateKind::Barrier) {
        return;
    }
    if (gate.kind == GateKind::Measure) {
        throw InvalidInput("measurement is not supported mid-circuit by the density backend");
    }
    // vec(rho) is a 2n-qubit vector: row bits low, column bits high.
    const int n = num_qubits_;
    if (is_single_qubit_unitary(gate.kind)) {
        const Eigen::Matrix2cd u = single_qubit_matrix(gate);
        apply_1q(flat(), gate.qubits[0], u);
        apply_1q(flat(), gate.qubits[0] + n, u.conjugate());
    } else {
        const Eigen::Matrix4cd u = two_qubit_matrix(gate);
        apply_2q(flat(), gate.qubits[0], gate.qubits[1], u);
        apply_2q(flat(), gate.qubits[0] + n, gate.qubits[1] + n, u.conjugate());
    }
}

void DensityMatrix::apply_channel(const QuantumChannel &channel, std::span<const int> qubits) {
    if (static_cast<int>(qubits.size()) != channel.num_qubits()) {
        throw InvalidInput("channel '" + channel.label() + "' arity does not match " + std::to_string(qubits.size()) +
                           " target qubit(s)");
    }
    const int n = num_qubits_;
    if (qubits.size() == 1) {
        const Eigen::Matrix4cd s = channel.superoperator();
        apply_2q(flat(), qubits[0], qubits[0] + n, s);
    } else {
        const int targets[4] = {qubits[0], qubits[1], qubits[0] + n, qubits[1] + n};
        apply_kq(flat(), targets, channel.superoperator());
    }
}

std::vector<double> DensityMatrix::probabilities() const {
    std::vector<double> p(rho_.rows());
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
        p[i] = std::max(0.0, rho_(i, i).real());
    }
    return p;
}

StateVector run_statevector(const Circuit &circuit) {
    if (circuit.has_measure()) {
        throw InvalidInput("run_statevector: circuit contains measurements");
    }
    StateVector psi(circuit.num_qubits());
    for (const auto &g : circuit) {
        psi.apply(g);
    }
    return psi;
}

void apply_noisy_gate(DensityMatrix &rho, const Gate &gate, const NoiseModel &noise) {
    rho.apply(gate);
    if (const QuantumChannel *ch = noise.channel_for(gate)) {
        rho.apply_channel(*ch, gate.qubits);
    }
    for (const auto &s : noise.spectators_for(gate)) {
        if (s.qubit < rho.num_qubits()) {
            const int q[1] = {s.qubit};
            rho.apply_channel(s.channel, q);
        }
    }
}

DensityMatrix run_density(const Circuit &circuit, const NoiseModel &noise) {
    if (circuit.has_measure()) {
        throw InvalidInput("run_density: circuit contains measurements");
    }
    DensityMatrix rho(circuit.num_qubits());
    for (const auto &g : circuit) {
        apply_noisy_gate(rho, g, noise);
    }
    return rho;
}

std::uint64_t total_shots(const Counts &counts) {
    std::uint64_t s = 0;
    for (const auto &[k, v] : counts) {
        s += v;
    }
    return s;
}

MeasureMap MeasureMap::from_circuit(const Circuit &circuit) {
    MeasureMap m;
    m.num_clbits = circuit.num_clbits();
    for (const auto &g : circuit) {
        if (g.kind == GateKind::Measure) {
            m.qubit_to_clbit.emplace_back(g.qubits[0], g.clbit);
        }
    }
    return m;
}

MeasureMap MeasureMap::identity(int num_qubits) {
    MeasureMap m;
    m.num_clbits = num_qubits;
    for (int q = 0; q < num_qubits; ++q) {
        m.qubit_to_clbit.emplace_back(q, q);
    }
    return m;
}

Counts sample_counts(std::span<const double> probabilities, const MeasureMap &measure, std::uint64_t shots,
                     const ReadoutMap *readout, std::uint64_t seed) {
    if (measure.qubit_to_clbit.empty()) {
        throw InvalidInput("sample_counts: no measured qubits");
    }
    if (shots == 0) {
        throw InvalidInput("sample_counts: shots must be at least 1");
    }
    std::vector<double> cdf(probabilities.size());
    std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
    const double total = cdf.back();
    if (!(total > 0)) {
        throw InvalidInput("sample_counts: probabilities sum to zero");
    }

    struct Flip {
        double p_one_given_zero;
        double p_one_given_one;
        bool noisy;
    };
    std::vector<Flip> flips;
    flips.reserve(measure.qubit_to_clbit.size());
    for (const auto &[q, c] : measure.qubit_to_clbit) {
        Flip f{0.0, 1.0, false};
        if (readout) {
            auto it = readout->find(q);
            if (it != readout->end()) {
                f = Flip{it->second(1, 0), it->second(1, 1), true};
            }
        }
        flips.push_back(f);
    }

    const std::uint64_t outcome_seed = derive_seed(seed, 0);
    const std::uint64_t readout_seed = derive_seed(seed, 1);
    const std::uint64_t npairs = measure.qubit_to_clbit.size();
    std::string bits(measure.num_clbits, '0');
    Counts counts;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = counter_uniform(outcome_seed, shot) * total;
        std::size_t outcome = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        outcome = std::min(outcome, cdf.size() - 1);
        std::fill(bits.begin(), bits.end(), '0');
        for (std::uint64_t j = 0; j < npairs; ++j) {
            const auto [q, c] = measure.qubit_to_clbit[j];
            int bit = static_cast<int>((outcome >> q) & 1U);
            const Flip &f = flips[j];
            if (f.noisy) {
                const double p_one = bit ? f.p_one_given_one : f.p_one_given_zero;
                bit = counter_uniform(readout_seed, shot * npairs + j) < p_one ? 1 : 0;
            }
            bits[measure.num_clbits - 1 - c] = bit ? '1' : '0';
        }
        ++counts[bits];
    }
    return counts;
}

Counts sample_counts(const StateVector &state, const MeasureMap &measure, std::uint64_t shots,
                     const ReadoutMap *readout, std::uint64_t seed) {
    const auto p = state.probabilities();
    return sample_counts(p, measure, shots, readout, seed);
}

Counts sample_counts(const DensityMatrix &state, const MeasureMap &measure, std::uint64_t shots,
                     const ReadoutMap *readout, std::uint64_t seed) {
    const auto p = state.probabilities();
    return sample_counts(p, measure, shots, readout, seed);
}

double expectation(const StateVector &state, const PauliString &pauli) {
    if (pauli.num_qubits() != state.num_qubits()) {
        throw InvalidInput("Pauli string length " + std::to_string(pauli.num_qubits()) + " does not match " +
                           std::to_string(state.num_qubits()) + " qubits");
    }
    const std::uint64_t x = pauli.x_mask(), z = pauli.z_mask();
    const int ny = count_y(pauli);
    const auto amps = state.amplitudes();
    cplx acc = 0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        acc += std::conj(amps[i ^ x]) * pauli_phase(i, z, ny) * amps[i];
    }
    return acc.real();
}

double expectation(const DensityMatrix &state, const PauliString &pauli) {
    if (pauli.num_qubits() != state.num_qubits()) {
        throw InvalidInput("Pauli string length " + std::to_string(pauli.num_qubits()) + " does not match " +
                           std::to_string(state.num_qubits()) + " qubits");
    }
    const std::uint64_t x = pauli.x_mask(), z = pauli.z_mask();
    const int ny = count_y(pauli);
    const auto &rho = state.matrix();
    cplx acc = 0;
    for (Eigen::Index a = 0; a < rho.rows(); ++a) {
        acc += rho(a, static_cast<Eigen::Index>(a ^ x)) * pauli_phase(a, z, ny);
    }
    return acc.real();
}

double parity_expectation(const Counts &counts, std::uint64_t clbit_mask) {
    double acc = 0;
    std::uint64_t shots = 0;
    for (const auto &[bits, n] : counts) {
        int parity = 0;
        const std::size_t len = bits.size();
        for (std::size_t c = 0; c < len && c < 64; ++c) {
            if ((clbit_mask >> c) & 1U) {
                parity ^= bits[len - 1 - c] == '1';
            }
        }
        acc += parity ? -static_cast<double>(n) : static_cast<double>(n);
        shots += n;
    }
    if (shots == 0) {
        throw InvalidInput("parity_expectation: empty counts");
    }
    return acc / static_cast<double>(shots);
}

}  // namespace qvb
