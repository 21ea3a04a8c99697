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

#include "qvbench/pauli.hpp"

#include <algorithm>
#include <complex>

#include "qvbench/errors.hpp"

namespace qvb {

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    using c = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, c(0, -1), c(0, 1), 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> ops(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        Pauli p;
        switch (text[i]) {
            case 'I':
                p = Pauli::I;
                break;
            case 'X':
                p = Pauli::X;
                break;
            case 'Y':
                p = Pauli::Y;
                break;
            case 'Z':
                p = Pauli::Z;
                break;
            default:
                throw InvalidInput("invalid Pauli character '" + std::string(1, text[i]) + "' in '" +
                                   std::string(text) + "'");
        }
        ops[text.size() - 1 - i] = p;
    }
    return PauliString(std::move(ops));
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < ops_.size(); ++q) {
        if (ops_[q] == Pauli::X || ops_[q] == Pauli::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < ops_.size(); ++q) {
        if (ops_[q] == Pauli::Z || ops_[q] == Pauli::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

int PauliString::weight() const {
    return static_cast<int>(std::count_if(ops_.begin(), ops_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::str() const {
    std::string s;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        s += "IXYZ"[static_cast<int>(*it)];
    }
    return s;
}

Eigen::MatrixXcd PauliString::matrix() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = num_qubits() - 1; q >= 0; --q) {
        const Eigen::Matrix2cd p = pauli_matrix(ops_[q]);
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                next.block<2, 2>(2 * i, 2 * j) = m(i, j) * p;
            }
        }
        m = std::move(next);
    }
    return m;
}

}  // namespace qvb
