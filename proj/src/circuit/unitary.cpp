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

#include "qvbench/unitary.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qvbench/errors.hpp"

namespace qvb {

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::Matrix2cd diag2(cplx a, cplx b) {
    Eigen::Matrix2cd m;
    m << a, 0, 0, b;
    return m;
}

}  // namespace

Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Eigen::Matrix2cd m;
    m << c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s, std::exp(kI * (phi + lambda)) * c;
    return m;
}

Eigen::Matrix2cd single_qubit_matrix(const Gate &gate) {
    using std::numbers::pi;
    const auto &p = gate.params;
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix2cd m;
    switch (gate.kind) {
        case GateKind::U1:
            return diag2(1.0, std::exp(kI * p[0]));
        case GateKind::U2:
            return u3_matrix(pi / 2, p[0], p[1]);
        case GateKind::U3:
            return u3_matrix(p[0], p[1], p[2]);
        case GateKind::H:
            m << r, r, r, -r;
            return m;
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m << 0, -kI, kI, 0;
            return m;
        case GateKind::Z:
            return diag2(1.0, -1.0);
        case GateKind::S:
            return diag2(1.0, kI);
        case GateKind::Sdg:
            return diag2(1.0, -kI);
        case GateKind::T:
            return diag2(1.0, std::exp(kI * (pi / 4)));
        case GateKind::Tdg:
            return diag2(1.0, std::exp(-kI * (pi / 4)));
        case GateKind::RX: {
            const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
            m << c, -kI * s, -kI * s, c;
            return m;
        }
        case GateKind::RY: {
            const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::RZ:
            return diag2(std::exp(-kI * (p[0] / 2)), std::exp(kI * (p[0] / 2)));
        default:
            throw InvalidInput("not a single-qubit unitary: " + gate.str());
    }
}

Eigen::Matrix4cd two_qubit_matrix(const Gate &gate) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    switch (gate.kind) {
        case GateKind::CX:
            // control = local bit 0, target = local bit 1
            m(0, 0) = 1;
            m(2, 2) = 1;
            m(3, 1) = 1;
            m(1, 3) = 1;
            return m;
        case GateKind::Swap:
            m(0, 0) = 1;
            m(3, 3) = 1;
            m(1, 2) = 1;
            m(2, 1) = 1;
            return m;
        case GateKind::SU4:
            return *gate.matrix;
        default:
            throw InvalidInput("not a two-qubit unitary: " + gate.str());
    }
}

void apply_1q(std::span<cplx> amps, int target, const Eigen::Matrix2cd &m) {
    const std::size_t stride = std::size_t{1} << target;
    const std::size_t n = amps.size();
    const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cplx a0 = amps[i];
            const cplx a1 = amps[i + stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

void apply_2q(std::span<cplx> amps, int q0, int q1, const Eigen::Matrix4cd &m) {
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i & (b0 | b1)) {
            continue;
        }
        const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
        const cplx v[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
        }
    }
}

void apply_kq(std::span<cplx> amps, std::span<const int> targets, const Eigen::MatrixXcd &m) {
    const std::size_t k = targets.size();
    const std::size_t dim = std::size_t{1} << k;
    std::size_t mask = 0;
    std::vector<std::size_t> offsets(dim, 0);
    for (std::size_t j = 0; j < k; ++j) {
        mask |= std::size_t{1} << targets[j];
    }
    for (std::size_t local = 0; local < dim; ++local) {
        for (std::size_t j = 0; j < k; ++j) {
            if (local & (std::size_t{1} << j)) {
                offsets[local] |= std::size_t{1} << targets[j];
            }
        }
    }
    std::vector<cplx> in(dim);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        for (std::size_t a = 0; a < dim; ++a) {
            in[a] = amps[i | offsets[a]];
        }
        for (std::size_t r = 0; r < dim; ++r) {
            cplx acc = 0;
            for (std::size_t c = 0; c < dim; ++c) {
                acc += m(r, c) * in[c];
            }
            amps[i | offsets[r]] = acc;
        }
    }
}

void apply_gate(std::span<cplx> amps, const Gate &gate) {
    if (gate.kind == GateKind::Barrier) {
        return;
    }
    if (gate.kind == GateKind::Measure) {
        throw InvalidInput("measurement is not a unitary operation");
    }
    if (is_single_qubit_unitary(gate.kind)) {
        apply_1q(amps, gate.qubits[0], single_qubit_matrix(gate));
    } else {
        apply_2q(amps, gate.qubits[0], gate.qubits[1], two_qubit_matrix(gate));
    }
}

Eigen::MatrixXcd circuit_unitary(const Circuit &circuit) {
    if (circuit.has_measure()) {
        throw InvalidInput("circuit_unitary: circuit contains measurements");
    }
    if (circuit.num_qubits() > kMaxUnitaryQubits) {
        throw CapacityError("circuit_unitary: " + std::to_string(circuit.num_qubits()) +
                            " qubits exceeds the limit of " + std::to_string(kMaxUnitaryQubits));
    }
    const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : circuit) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            apply_gate(std::span<cplx>(u.col(col).data(), static_cast<std::size_t>(dim)), g);
        }
    }
    return u;
}

double phase_insensitive_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    const cplx ab = a(r, c), bb = b(r, c);
    cplx phase = 1.0;
    if (std::abs(ab) > 0 && std::abs(bb) > 0) {
        phase = (ab / std::abs(ab)) * std::conj(bb / std::abs(bb));
    }
    return (a - phase * b).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd qubit_permutation_matrix(std::span<const int> perm) {
    const std::size_t n = perm.size();
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index j = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (i & (Eigen::Index{1} << v)) {
                j |= Eigen::Index{1} << perm[v];
            }
        }
        p(j, i) = 1;
    }
    return p;
}

}  // namespace qvb
