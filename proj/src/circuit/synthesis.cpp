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

#include "qvbench/synthesis.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qvbench/errors.hpp"
#include "qvbench/unitary.hpp"

namespace qvb {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double wrap_angle(double a) {
    a = std::remainder(a, 2 * pi);
    if (a <= -pi) {
        a += 2 * pi;
    }
    return a;
}

// Magic basis: XX, YY, ZZ are diagonal in it and local unitaries map to SO(4).
const Eigen::Matrix4cd &magic_basis() {
    static const Eigen::Matrix4cd b = [] {
        const double r = 1.0 / std::numbers::sqrt2;
        Eigen::Matrix4cd m;
        m << r, 0, 0, r * kI,  //
            0, r * kI, r, 0,   //
            0, r * kI, -r, 0,  //
            r, 0, 0, -r * kI;
        return m;
    }();
    return b;
}

// Eigenvalues of XX, YY, ZZ along the magic-basis diagonal.
constexpr std::array<double, 4> kXX{1, 1, -1, -1};
constexpr std::array<double, 4> kYY{-1, 1, -1, 1};
constexpr std::array<double, 4> kZZ{1, -1, -1, 1};

Eigen::Matrix2cd rz_matrix(double t) {
    Eigen::Matrix2cd m;
    m << std::exp(-kI * (t / 2)), 0, 0, std::exp(kI * (t / 2));
    return m;
}

Eigen::Matrix2cd ry_matrix(double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
}

// Real orthogonal P with P^T m P diagonal, for complex symmetric unitary m.
Eigen::Matrix4d diagonalize_symmetric_unitary(const Eigen::Matrix4cd &m) {
    const Eigen::Matrix4d re = m.real();
    const Eigen::Matrix4d im = m.imag();
    constexpr std::array<double, 8> mixes{0.5772156649, 1.6180339887, 0.3183098862, 2.7182818285,
                                          0.1234567891, 4.6692016091, 0.0072973525, 1.4142135624};
    for (double r : mixes) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(re + r * im);
        Eigen::Matrix4d p = solver.eigenvectors();
        Eigen::Matrix4cd d = p.transpose() * m * p;
        double off = (d - Eigen::Matrix4cd(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
        if (off < 1e-9) {
            if (p.determinant() < 0) {
                p.col(0) *= -1;
            }
            return p;
        }
    }
    throw Error("kak_decompose: failed to diagonalize the magic-basis Gram matrix");
}

}  // namespace

EulerAngles euler_zyz(const Eigen::Matrix2cd &m) {
    EulerAngles e;
    const double c = std::abs(m(0, 0));
    const double s = std::abs(m(1, 0));
    e.theta = 2 * std::atan2(s, c);
    if (c > 1e-9) {
        e.phase = std::arg(m(0, 0));
        if (s > 1e-12) {
            e.phi = std::arg(m(1, 0)) - e.phase;
            e.lambda = std::arg(-m(0, 1)) - e.phase;
        } else {
            e.phi = 0;
            e.lambda = std::arg(m(1, 1)) - e.phase;
        }
    } else {
        e.lambda = 0;
        e.phase = std::arg(-m(0, 1));
        e.phi = std::arg(m(1, 0)) - e.phase;
    }
    e.phi = wrap_angle(e.phi);
    e.lambda = wrap_angle(e.lambda);
    e.phase = wrap_angle(e.phase);
    return e;
}

std::vector<Gate> synthesize_1q(const Eigen::Matrix2cd &m, int qubit, double tol) {
    if (phase_insensitive_distance(m, Eigen::Matrix2cd::Identity()) < tol) {
        return {};
    }
    EulerAngles e = euler_zyz(m);
    if (std::abs(e.theta) < tol) {
        return {Gate::u1(qubit, wrap_angle(e.phi + e.lambda))};
    }
    if (std::abs(e.theta - pi / 2) < tol) {
        return {Gate::u2(qubit, e.phi, e.lambda)};
    }
    return {Gate::u3(qubit, e.theta, e.phi, e.lambda)};
}

std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> kron_factor(const Eigen::Matrix4cd &l) {
    // Block (i, j) of a product operator is high(i, j) * low.
    int bi = 0, bj = 0;
    double best = -1;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            double n = l.block<2, 2>(2 * i, 2 * j).norm();
            if (n > best) {
                best = n;
                bi = i;
                bj = j;
            }
        }
    }
    Eigen::Matrix2cd low = l.block<2, 2>(2 * bi, 2 * bj);
    low *= std::numbers::sqrt2 / low.norm();
    Eigen::Matrix2cd high;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            high(i, j) = (low.adjoint() * l.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
        }
    }
    return {high, low};
}

Eigen::Matrix4cd canonical_gate(double a, double b, double c) {
    const Eigen::Matrix4cd &bm = magic_basis();
    Eigen::Vector4cd d;
    for (int k = 0; k < 4; ++k) {
        d(k) = std::exp(kI * (a * kXX[k] + b * kYY[k] + c * kZZ[k]));
    }
    return bm * d.asDiagonal() * bm.adjoint();
}

KakDecomposition kak_decompose(const Eigen::Matrix4cd &u) {
    const Eigen::Matrix4cd &bm = magic_basis();
    const cplx det = u.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-8) {
        throw InvalidInput("kak_decompose: matrix is not unitary");
    }
    const cplx root = std::pow(det, 0.25);
    const Eigen::Matrix4cd us = u / root;

    const Eigen::Matrix4cd up = bm.adjoint() * us * bm;
    const Eigen::Matrix4cd gram = up.transpose() * up;
    const Eigen::Matrix4d p = diagonalize_symmetric_unitary(gram);
    const Eigen::Matrix4cd d = p.transpose() * gram * p;

    std::array<double, 4> theta{};
    for (int k = 0; k < 4; ++k) {
        theta[k] = std::arg(d(k, k)) / 2;
    }
    auto left_factor = [&] {
        Eigen::Vector4cd inv;
        for (int k = 0; k < 4; ++k) {
            inv(k) = std::exp(-kI * theta[k]);
        }
        return Eigen::Matrix4cd(up * p * inv.asDiagonal());
    };
    Eigen::Matrix4cd k1 = left_factor();
    if (k1.real().determinant() < 0) {
        theta[0] += pi;
        k1 = left_factor();
    }

    KakDecomposition out;
    double phi = 0;
    for (int k = 0; k < 4; ++k) {
        phi += theta[k] / 4;
        out.a += kXX[k] * theta[k] / 4;
        out.b += kYY[k] * theta[k] / 4;
        out.c += kZZ[k] * theta[k] / 4;
    }
    const Eigen::Matrix4cd l1 = bm * Eigen::Matrix4cd(k1.real().cast<cplx>()) * bm.adjoint();
    const Eigen::Matrix4cd l2 = bm * Eigen::Matrix4cd(p.transpose().cast<cplx>()) * bm.adjoint();
    std::tie(out.after1, out.after0) = kron_factor(l1);
    std::tie(out.before1, out.before0) = kron_factor(l2);
    out.phase = std::arg(root) + phi;
    return out;
}

std::vector<Gate> decompose_two_qubit(const Eigen::Matrix4cd &u, int q0, int q1) {
    const KakDecomposition k = kak_decompose(u);
    std::vector<Gate> out;
    auto emit = [&out](const Eigen::Matrix2cd &m, int q) {
        for (auto &g : synthesize_1q(m, q)) {
            out.push_back(std::move(g));
        }
    };
    // exp(i(a XX + b YY + c ZZ)) modulo phase, as a three-cx network; the
    // leading rz on q1 and trailing rz on q0 are folded into the local layers.
    emit(k.before0, q0);
    emit(rz_matrix(-pi / 2) * k.before1, q1);
    out.push_back(Gate::cx(q1, q0));
    emit(rz_matrix(pi / 2 - 2 * k.c), q0);
    emit(ry_matrix(2 * k.a - pi / 2), q1);
    out.push_back(Gate::cx(q0, q1));
    emit(ry_matrix(pi / 2 - 2 * k.b), q1);
    out.push_back(Gate::cx(q1, q0));
    emit(k.after0 * rz_matrix(pi / 2), q0);
    emit(k.after1, q1);
    return out;
}

}  // namespace qvb
