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

#include "qvbench/channel.hpp"

#include <cmath>
#include <sstream>

#include "qvbench/errors.hpp"
#include "qvbench/pauli.hpp"

namespace qvb {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::string format_probability(double p) {
    std::ostringstream s;
    s.precision(6);
    s << p;
    return s.str();
}

}  // namespace

Eigen::MatrixXcd pauli_basis_matrix(int num_qubits, int index) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = num_qubits - 1; q >= 0; --q) {
        const int digit = (index >> (2 * q)) & 3;
        m = kron(m, pauli_matrix(static_cast<Pauli>(digit)));
    }
    return m;
}

Eigen::MatrixXd pauli_transfer_matrix(std::span<const Eigen::MatrixXcd> kraus) {
    const Eigen::Index dim = kraus.front().rows();
    const int k = dim == 2 ? 1 : 2;
    const int n = 1 << (2 * k);
    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) {
        basis.push_back(pauli_basis_matrix(k, i));
    }
    Eigen::MatrixXd ptm(n, n);
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto &op : kraus) {
            image += op * basis[j] * op.adjoint();
        }
        for (int i = 0; i < n; ++i) {
            ptm(i, j) = (basis[i] * image).trace().real() / static_cast<double>(dim);
        }
    }
    return ptm;
}

QuantumChannel::QuantumChannel(std::vector<Eigen::MatrixXcd> kraus, std::string label)
    : label_(std::move(label)), kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw InvalidInput("channel '" + label_ + "' has no Kraus operators");
    }
    const Eigen::Index dim = kraus_.front().rows();
    if (dim != 2 && dim != 4) {
        throw InvalidInput("channel '" + label_ + "' must act on one or two qubits");
    }
    num_qubits_ = dim == 2 ? 1 : 2;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &k : kraus_) {
        if (k.rows() != dim || k.cols() != dim) {
            throw InvalidInput("channel '" + label_ + "' has Kraus operators of mixed sizes");
        }
        sum += k.adjoint() * k;
    }
    const double err = (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (err > 1e-9) {
        throw InvalidInput("channel '" + label_ + "' is not trace preserving (deviation " + std::to_string(err) + ")");
    }
    ptm_ = pauli_transfer_matrix(kraus_);
    superop_ = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
    for (const auto &k : kraus_) {
        superop_ += kron(k.conjugate(), k);
    }
}

QuantumChannel QuantumChannel::identity(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    return QuantumChannel({Eigen::MatrixXcd::Identity(dim, dim)}, "identity");
}

QuantumChannel QuantumChannel::depolarizing(int num_qubits, double p) {
    if (num_qubits < 1 || num_qubits > 2) {
        throw InvalidInput("depolarizing channel supports one or two qubits");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput("depolarizing probability " + std::to_string(p) + " outside [0, 1]");
    }
    const int n = 1 << (2 * num_qubits);
    std::vector<Eigen::MatrixXcd> kraus;
    kraus.push_back(std::sqrt(1.0 - p) * pauli_basis_matrix(num_qubits, 0));
    if (p > 0) {
        const double w = std::sqrt(p / (n - 1));
        for (int i = 1; i < n; ++i) {
            kraus.push_back(w * pauli_basis_matrix(num_qubits, i));
        }
    }
    return QuantumChannel(std::move(kraus), "depolarizing(" + format_probability(p) + ")");
}

QuantumChannel QuantumChannel::amplitude_damping(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidInput("damping rate outside [0, 1]");
    }
    Eigen::MatrixXcd k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return QuantumChannel({k0, k1}, "amplitude_damping(" + format_probability(gamma) + ")");
}

QuantumChannel QuantumChannel::pauli(int num_qubits, std::span<const double> probs) {
    const std::size_t n = std::size_t{1} << (2 * num_qubits);
    if (probs.size() != n) {
        throw InvalidInput("Pauli channel needs " + std::to_string(n) + " probabilities");
    }
    double total = 0;
    std::vector<Eigen::MatrixXcd> kraus;
    for (std::size_t i = 0; i < n; ++i) {
        if (probs[i] < 0) {
            throw InvalidInput("negative Pauli channel probability");
        }
        total += probs[i];
        if (probs[i] > 0) {
            kraus.push_back(std::sqrt(probs[i]) * pauli_basis_matrix(num_qubits, static_cast<int>(i)));
        }
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidInput("Pauli channel probabilities sum to " + std::to_string(total));
    }
    return QuantumChannel(std::move(kraus), "pauli");
}

QuantumChannel QuantumChannel::unitary(const Eigen::MatrixXcd &u, std::string label) {
    return QuantumChannel({u}, std::move(label));
}

}  // namespace qvb
