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

#include <gtest/gtest.h>

#include "qvbench/circuit.hpp"
#include "qvbench/qasm.hpp"
#include "qvbench/synthesis.hpp"
#include "qvbench/unitary.hpp"
#include "test_util.hpp"

using namespace qvb;
using qvb::testing::kPi;

namespace {

QasmErrorKind parse_error_kind(std::string_view text) {
    try {
        parse_qasm(text);
    } catch (const QasmError &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return QasmErrorKind::Syntax;
}

// Independent Kronecker-product construction of a gate embedding.
Eigen::MatrixXcd embed_1q(const Eigen::Matrix2cd &m, int q, int n) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
        const Eigen::MatrixXcd f = k == q ? Eigen::MatrixXcd(m) : Eigen::MatrixXcd::Identity(2, 2);
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
            }
        }
        out = next;
    }
    return out;
}

}  // namespace

TEST(Qasm, ParsesMinimalProgram) {
    const Circuit c = parse_qasm("OPENQASM 2.0; qreg q[2]; cx q[0],q[1];");
    EXPECT_EQ(c.num_qubits(), 2);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.gates()[0], Gate::cx(0, 1));
}

TEST(Qasm, EmptyRegisterIsEmptyCircuit) {
    const Circuit c = parse_qasm("OPENQASM 2.0; qreg q[1];");
    EXPECT_EQ(c.num_qubits(), 1);
    EXPECT_TRUE(c.empty());
    EXPECT_EQ(depth(c), 0u);
}

TEST(Qasm, ArityMismatchIsReported) {
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[2]; cx q[0];"), QasmErrorKind::Arity);
}

TEST(Qasm, DistinguishesErrorKinds) {
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[2]; h r[0];"), QasmErrorKind::UndeclaredRegister);
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[2]; h q[2];"), QasmErrorKind::IndexOutOfRange);
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[2]; h q[0]"), QasmErrorKind::Syntax);
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[1]; gate foo a { h a; }"), QasmErrorKind::Unsupported);
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[1]; creg c[1]; if (c==1) x q[0];"),
              QasmErrorKind::Unsupported);
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; include \"other.inc\"; qreg q[1];"), QasmErrorKind::Unsupported);
    EXPECT_EQ(parse_error_kind("OPENQASM 2.0; qreg q[1]; ccx q[0],q[0],q[0];"), QasmErrorKind::Unsupported);
}

TEST(Qasm, SyntaxErrorCarriesPosition) {
    try {
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0] q[1];\n");
        FAIL();
    } catch (const QasmError &e) {
        EXPECT_EQ(e.kind(), QasmErrorKind::Syntax);
        EXPECT_EQ(e.line(), 3);
        EXPECT_GT(e.column(), 1);
    }
}

TEST(Qasm, FlattensRegistersAndBroadcasts) {
    const Circuit c = parse_qasm(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[2];\nqreg b[3];\ncreg m[5];\n"
        "cx a[1],b[0];\nh b;\nmeasure b[2] -> m[4];\n");
    EXPECT_EQ(c.num_qubits(), 5);
    EXPECT_EQ(c.num_clbits(), 5);
    ASSERT_EQ(c.size(), 5u);
    EXPECT_EQ(c.gates()[0], Gate::cx(1, 2));
    EXPECT_EQ(c.gates()[1], Gate::h(2));
    EXPECT_EQ(c.gates()[3], Gate::h(4));
    EXPECT_EQ(c.gates()[4], Gate::measure(4, 4));
}

TEST(Qasm, EvaluatesParameterExpressions) {
    const Circuit c = parse_qasm("OPENQASM 2.0; qreg q[1]; u3(-pi/2, 3*(0.5+0.25), -(pi)) q[0]; rz(2*pi/4) q[0];");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_DOUBLE_EQ(c.gates()[0].params[0], -kPi / 2);
    EXPECT_DOUBLE_EQ(c.gates()[0].params[1], 2.25);
    EXPECT_DOUBLE_EQ(c.gates()[0].params[2], -kPi);
    EXPECT_DOUBLE_EQ(c.gates()[1].params[0], kPi / 2);
}

TEST(Qasm, EmitsEmptyCircuitAsHeaderAndRegister) {
    const std::string text = emit_qasm(Circuit(3));
    EXPECT_EQ(text, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n");
}

TEST(Qasm, EmitsHadamard) {
    Circuit c(1);
    c.append(Gate::h(0));
    EXPECT_NE(emit_qasm(c).find("h q[0];"), std::string::npos);
}

TEST(Qasm, RoundTripsRandomCircuits) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_int(6));
        Circuit c(n, n);
        c.append(qvb::testing::random_circuit(n, 50, rng));
        for (int q = 0; q < n; ++q) {
            c.append(Gate::measure(q, static_cast<int>(rng.uniform_int(n))));
        }
        const Circuit back = parse_qasm(emit_qasm(c));
        ASSERT_EQ(back, c) << emit_qasm(c);
    }
}

TEST(Qasm, Su4IsEmittedAsEquivalentDecomposition) {
    Rng rng(5);
    Circuit c(3);
    c.append(Gate::su4(2, 0, haar_su4(rng)));
    c.append(Gate::h(1));
    c.append(Gate::su4(0, 1, haar_su4(rng)));
    const Circuit back = parse_qasm(emit_qasm(c));
    EXPECT_EQ(back.count(GateKind::SU4), 0u);
    EXPECT_LE(back.count(GateKind::CX), 6u);
    EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(back), circuit_unitary(c), 1e-8));
}

TEST(CircuitIr, ValidatesGates) {
    Circuit c(2, 1);
    EXPECT_THROW(c.append(Gate::cx(0, 0)), InvalidInput);
    EXPECT_THROW(c.append(Gate::h(2)), InvalidInput);
    EXPECT_THROW(c.append(Gate::measure(0, 1)), InvalidInput);
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity();
    bad(0, 0) = 1.1;
    EXPECT_THROW(c.append(Gate::su4(0, 1, bad)), InvalidInput);
    Gate g;
    g.kind = GateKind::U3;
    g.qubits = {0};
    g.params = {0.1};
    EXPECT_THROW(c.append(g), InvalidInput);
}

TEST(Unitary, HadamardMatrix) {
    Circuit c(1);
    c.append(Gate::h(0));
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    EXPECT_LT((circuit_unitary(c) - h).norm(), 1e-12);
}

TEST(Unitary, CxIsAnInvolution) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    c.append(Gate::cx(0, 1));
    EXPECT_LT((circuit_unitary(c) - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-12);
}

TEST(Unitary, LittleEndianCx) {
    Circuit c(2);
    c.append(Gate::cx(0, 1));
    const Eigen::MatrixXcd u = circuit_unitary(c);
    // |01> (qubit 0 set, index 1) -> |11> (index 3).
    EXPECT_NEAR(std::abs(u(3, 1)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(u(2, 2)), 1.0, 1e-12);
}

TEST(Unitary, MatchesKroneckerOracleForSingleQubitGates) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        const int q = static_cast<int>(rng.uniform_int(n));
        const Gate g = Gate::u3(q, rng.uniform(0, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        Circuit c(n);
        c.append(g);
        EXPECT_LT((circuit_unitary(c) - embed_1q(single_qubit_matrix(g), q, n)).norm(), 1e-12);
    }
}

TEST(Unitary, RandomCircuitsAreUnitary) {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXcd u = circuit_unitary(qvb::testing::random_circuit(3, 40, rng, true));
        EXPECT_LT((u * u.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Unitary, ConcatenationIsMatrixProduct) {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit a = qvb::testing::random_circuit(3, 15, rng, true);
        const Circuit b = qvb::testing::random_circuit(3, 15, rng, true);
        Circuit ab = a;
        ab.append(b);
        EXPECT_LT((circuit_unitary(ab) - circuit_unitary(b) * circuit_unitary(a)).norm(), 1e-10);
    }
}

TEST(Unitary, InverseIsAdjoint) {
    Rng rng(9);
    const Circuit c = qvb::testing::random_circuit(3, 30, rng, true);
    EXPECT_LT((circuit_unitary(inverse(c)) - circuit_unitary(c).adjoint()).norm(), 1e-10);
}

TEST(Unitary, RejectsMeasureAndOversize) {
    Circuit m(1, 1);
    m.append(Gate::measure(0, 0));
    EXPECT_THROW(circuit_unitary(m), InvalidInput);
    EXPECT_THROW(circuit_unitary(Circuit(kMaxUnitaryQubits + 1)), CapacityError);
}

TEST(Unitary, PhaseInsensitiveComparison) {
    Rng rng(10);
    const Eigen::MatrixXcd u = circuit_unitary(qvb::testing::random_circuit(2, 10, rng, true));
    EXPECT_LT(phase_insensitive_distance(std::polar(1.0, 0.77) * u, u), 1e-12);
    EXPECT_GT(phase_insensitive_distance(u, Eigen::MatrixXcd::Identity(4, 4)), 1e-3);
}

TEST(Depth, Examples) {
    EXPECT_EQ(depth(Circuit(2)), 0u);
    Circuit par(2);
    par.append(Gate::h(0));
    par.append(Gate::h(1));
    EXPECT_EQ(depth(par), 1u);
    Circuit chain(2);
    chain.append(Gate::h(0));
    chain.append(Gate::cx(0, 1));
    chain.append(Gate::h(1));
    EXPECT_EQ(depth(chain), 3u);
}

TEST(Depth, BarrierOrdersButAddsNothing) {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::barrier({0, 1}));
    c.append(Gate::h(1));
    EXPECT_EQ(depth(c), 2u);
    Circuit only(2);
    only.append(Gate::barrier({0, 1}));
    EXPECT_EQ(depth(only), 0u);
}

TEST(Depth, InvariantUnderGatesOnFreshQubits) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = qvb::testing::random_circuit(3, 25, rng);
        Circuit wide = c.widened(5);
        wide.append(Gate::h(3));
        wide.append(Gate::cx(3, 4));
        EXPECT_EQ(depth(wide), std::max<std::size_t>(depth(c), 2));
        Circuit wide1 = c.widened(4);
        wide1.append(Gate::x(3));
        EXPECT_EQ(depth(wide1), std::max<std::size_t>(depth(c), 1));
    }
}

TEST(Synthesis, EulerAnglesReconstruct) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Matrix2cd m = haar_unitary(2, rng);
        const EulerAngles e = euler_zyz(m);
        const Eigen::Matrix2cd r = std::polar(1.0, e.phase) * u3_matrix(e.theta, e.phi, e.lambda);
        EXPECT_LT((r - m).norm(), 1e-10);
    }
}

TEST(Synthesis, OneQubitIdentityIsDropped) {
    EXPECT_TRUE(synthesize_1q(std::polar(1.0, 0.3) * Eigen::Matrix2cd::Identity(), 0).empty());
    const auto g = synthesize_1q(single_qubit_matrix(Gate::rz(0, 0.4)), 0);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].kind, GateKind::U1);
}

TEST(Synthesis, TwoQubitDecompositionIsExact) {
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Matrix4cd u = haar_su4(rng);
        Circuit c(2);
        for (auto &g : decompose_two_qubit(u, 0, 1)) {
            EXPECT_TRUE(is_native(g.kind));
            c.append(g);
        }
        EXPECT_LE(c.count(GateKind::CX), 3u);
        EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(c), u, 1e-8));
    }
}

TEST(Synthesis, KakFormReconstructs) {
    Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Matrix4cd u = haar_su4(rng);
        const KakDecomposition k = kak_decompose(u);
        Eigen::Matrix4cd after, before;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                after(i, j) = k.after1(i >> 1, j >> 1) * k.after0(i & 1, j & 1);
                before(i, j) = k.before1(i >> 1, j >> 1) * k.before0(i & 1, j & 1);
            }
        }
        const Eigen::Matrix4cd r = std::polar(1.0, k.phase) * after * canonical_gate(k.a, k.b, k.c) * before;
        EXPECT_LT((r - u).norm(), 1e-8);
    }
}
