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
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qvbench/channel.hpp"
#include "qvbench/circuit.hpp"
#include "qvbench/noise_model.hpp"
#include "qvbench/pauli.hpp"

namespace qvb {

using cplx = std::complex<double>;

inline constexpr int kMaxStatevectorQubits = 26;
inline constexpr int kMaxDensityQubits = 12;

class StateVector {
   public:
    /// |0...0> on n qubits.
    explicit StateVector(int num_qubits);
    StateVector(int num_qubits, std::vector<cplx> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    void apply(const Gate &gate);
    double norm_squared() const;
    std::vector<double> probabilities() const;

   private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

class DensityMatrix {
   public:
    /// |0...0><0...0| on n qubits.
    explicit DensityMatrix(int num_qubits);
    static DensityMatrix from_statevector(const StateVector &psi);

    int num_qubits() const { return num_qubits_; }
    const Eigen::MatrixXcd &matrix() const { return rho_; }

    void apply(const Gate &gate);
    /// Applies `channel` to `qubits` (channel local bit j = qubits[j]).
    void apply_channel(const QuantumChannel &channel, std::span<const int> qubits);

    cplx trace() const { return rho_.trace(); }
    std::vector<double> probabilities() const;

   private:
    std::span<cplx> flat() { return {rho_.data(), static_cast<std::size_t>(rho_.size())}; }

    int num_qubits_;
    Eigen::MatrixXcd rho_;
};

/// Ideal execution from |0...0>. Rejects measurements.
StateVector run_statevector(const Circuit &circuit);

/// Each gate is applied ideally, then its bound channel (and spectator
/// channels) from `noise`. Rejects measurements; capped at kMaxDensityQubits.
DensityMatrix run_density(const Circuit &circuit, const NoiseModel &noise);

/// Applies one gate with its noise to an existing state.
void apply_noisy_gate(DensityMatrix &rho, const Gate &gate, const NoiseModel &noise);

/// Shot histogram keyed by clbit string, highest clbit leftmost.
using Counts = std::map<std::string, std::uint64_t>;

std::uint64_t total_shots(const Counts &counts);

/// Which qubit feeds which clbit.
struct MeasureMap {
    int num_clbits = 0;
    std::vector<std::pair<int, int>> qubit_to_clbit;

    /// Measurements found in `circuit`.
    static MeasureMap from_circuit(const Circuit &circuit);
    /// Qubit i -> clbit i for i < n.
    static MeasureMap identity(int num_qubits);
};

/// Draws `shots` outcomes from `probabilities` (indexed by little-endian
/// basis state), reads the mapped qubits, then flips each read bit according
/// to `readout` (if given). Shot i uses counter-based randomness derived
/// from (seed, i), so the result is a pure function of the inputs.
Counts sample_counts(std::span<const double> probabilities, const MeasureMap &measure, std::uint64_t shots,
                     const ReadoutMap *readout, std::uint64_t seed);
Counts sample_counts(const StateVector &state, const MeasureMap &measure, std::uint64_t shots,
                     const ReadoutMap *readout, std::uint64_t seed);
Counts sample_counts(const DensityMatrix &state, const MeasureMap &measure, std::uint64_t shots,
                     const ReadoutMap *readout, std::uint64_t seed);

double expectation(const StateVector &state, const PauliString &pauli);
double expectation(const DensityMatrix &state, const PauliString &pauli);

/// Mean of the product of +/-1 eigenvalues over the clbits in `mask`
/// (bit i = clbit i).
double parity_expectation(const Counts &counts, std::uint64_t clbit_mask);

}  // namespace qvb
