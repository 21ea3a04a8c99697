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
#include <span>
#include <string>
#include <vector>

namespace qvb {

/// Pauli-basis index of a k-qubit Pauli: digit j (base 4, I/X/Y/Z = 0..3)
/// is the Pauli on local qubit j.
Eigen::MatrixXcd pauli_basis_matrix(int num_qubits, int index);

/// R_ij = Tr(P_i E(P_j)) / d over the normalized Pauli basis.
Eigen::MatrixXd pauli_transfer_matrix(std::span<const Eigen::MatrixXcd> kraus);

/// Trace-preserving map on 1 or 2 qubits, stored as Kraus operators with a
/// cached Pauli transfer matrix and superoperator.
class QuantumChannel {
   public:
    /// Throws InvalidInput unless sum K^dag K = I within 1e-9 and every
    /// operator is 2x2 or 4x4.
    QuantumChannel(std::vector<Eigen::MatrixXcd> kraus, std::string label);

    static QuantumChannel identity(int num_qubits);
    /// rho -> (1 - p) rho + p / (d^2 - 1) * sum_{P != I} P rho P.
    static QuantumChannel depolarizing(int num_qubits, double p);
    static QuantumChannel amplitude_damping(double gamma);
    /// probs[i] weights Pauli i in the basis order of pauli_basis_matrix.
    static QuantumChannel pauli(int num_qubits, std::span<const double> probs);
    static QuantumChannel unitary(const Eigen::MatrixXcd &u, std::string label);

    int num_qubits() const { return num_qubits_; }
    const std::string &label() const { return label_; }
    const std::vector<Eigen::MatrixXcd> &kraus() const { return kraus_; }
    const Eigen::MatrixXd &ptm() const { return ptm_; }

    /// Superoperator acting on vec(rho) with local index
    /// row_bits + 2^k * col_bits (column-major vectorization).
    const Eigen::MatrixXcd &superoperator() const { return superop_; }

   private:
    int num_qubits_ = 1;
    std::string label_;
    std::vector<Eigen::MatrixXcd> kraus_;
    Eigen::MatrixXd ptm_;
    Eigen::MatrixXcd superop_;
};

}  // namespace qvb
