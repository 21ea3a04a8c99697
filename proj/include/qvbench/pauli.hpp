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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qvb {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Tensor product of single-qubit Paulis. Text form follows the bitstring
/// convention: the leftmost character acts on the highest qubit, so "XZ"
/// is X on qubit 1 and Z on qubit 0.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> per_qubit) : ops_(std::move(per_qubit)) {}

    /// Throws InvalidInput on characters outside IXYZ.
    static PauliString parse(std::string_view text);
    static PauliString identity(int num_qubits) { return PauliString(std::vector<Pauli>(num_qubits, Pauli::I)); }

    int num_qubits() const { return static_cast<int>(ops_.size()); }
    Pauli operator[](int qubit) const { return ops_[qubit]; }
    Pauli &operator[](int qubit) { return ops_[qubit]; }
    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;
    int weight() const;
    bool is_identity() const { return weight() == 0; }
    std::string str() const;

    /// Dense 2^n x 2^n matrix (small n only).
    Eigen::MatrixXcd matrix() const;

    bool operator==(const PauliString &) const = default;

   private:
    std::vector<Pauli> ops_;
};

Eigen::Matrix2cd pauli_matrix(Pauli p);

}  // namespace qvb
