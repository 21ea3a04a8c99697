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
#include <span>

#include "qvbench/circuit.hpp"

namespace qvb {

using cplx = std::complex<double>;

/// Hard cap for dense unitary construction.
inline constexpr int kMaxUnitaryQubits = 10;

Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda);

/// Matrix of a single-qubit unitary gate.
Eigen::Matrix2cd single_qubit_matrix(const Gate &gate);

/// Matrix of a two-qubit unitary gate; local index bit(q[0]) + 2*bit(q[1]).
Eigen::Matrix4cd two_qubit_matrix(const Gate &gate);

/// Applies a 2x2 matrix to `target` of a little-endian amplitude array
/// holding `amps.size()` = 2^n entries.
void apply_1q(std::span<cplx> amps, int target, const Eigen::Matrix2cd &m);

/// Applies a 4x4 matrix to (q0, q1); local index bit(q0) + 2*bit(q1).
void apply_2q(std::span<cplx> amps, int q0, int q1, const Eigen::Matrix4cd &m);

/// Applies a 2^k x 2^k matrix to `targets` (targets[0] is the least
/// significant local bit).
void apply_kq(std::span<cplx> amps, std::span<const int> targets, const Eigen::MatrixXcd &m);

/// Applies a unitary gate (barriers are no-ops). Throws on measure.
void apply_gate(std::span<cplx> amps, const Gate &gate);

/// Dense unitary of a measure-free circuit, qubit 0 as the least significant
/// basis bit. First gate acts first. Limited to kMaxUnitaryQubits.
Eigen::MatrixXcd circuit_unitary(const Circuit &circuit);

/// max |a - e^{i phi} b| with phi aligning the largest-magnitude entry of b.
double phase_insensitive_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

inline bool equal_up_to_global_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && phase_insensitive_distance(a, b) < tol;
}

/// Permutation matrix sending basis state with qubit v set to the state with
/// qubit perm[v] set.
Eigen::MatrixXcd qubit_permutation_matrix(std::span<const int> perm);

}  // namespace qvb
