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
#include <utility>
#include <vector>

#include "qvbench/circuit.hpp"

namespace qvb {

/// m = e^{i phase} * u3(theta, phi, lambda).
struct EulerAngles {
    double theta = 0;
    double phi = 0;
    double lambda = 0;
    double phase = 0;
};

EulerAngles euler_zyz(const Eigen::Matrix2cd &m);

/// Shortest native gate for a 2x2 unitary: nothing (identity modulo phase
/// within `tol`), u1 when diagonal, u2 when theta = pi/2, otherwise u3.
std::vector<Gate> synthesize_1q(const Eigen::Matrix2cd &m, int qubit, double tol = 1e-10);

/// Splits l = high (x) low in Kronecker order; low acts on local bit 0.
/// Only meaningful when l is a product operator.
std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> kron_factor(const Eigen::Matrix4cd &l);

/// Cartan form u = e^{i phase} (a1 (x) a0) exp(i(a XX + b YY + c ZZ)) (b1 (x) b0),
/// with a0/b0 acting on local bit 0.
struct KakDecomposition {
    Eigen::Matrix2cd after0, after1;
    Eigen::Matrix2cd before0, before1;
    double a = 0, b = 0, c = 0;
    double phase = 0;
};

KakDecomposition kak_decompose(const Eigen::Matrix4cd &u);

/// exp(i(a XX + b YY + c ZZ)).
Eigen::Matrix4cd canonical_gate(double a, double b, double c);

/// Exact three-cx realization of a two-qubit unitary on (q0, q1) using
/// u3/u1 and cx, equal to `u` modulo global phase.
std::vector<Gate> decompose_two_qubit(const Eigen::Matrix4cd &u, int q0, int q1);

}  // namespace qvb
