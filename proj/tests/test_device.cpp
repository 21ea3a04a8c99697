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

#include "json.hpp"
#include "qvbench/device.hpp"
#include "qvbench/noise_model.hpp"
#include "qvbench/pauli.hpp"
#include "qvbench/simulator.hpp"
#include "test_util.hpp"

using namespace qvb;
using nlohmann::json;

namespace {

json line3_json() {
    return json::parse(serialize_device(DeviceModel::uniform("line3", 3, {{0, 1}, {1, 2}}, 0.01, 0.001, 0.02)));
}

std::string device_error_field(const json &j) {
    try {
        parse_device(j.dump());
    } catch (const DeviceError &e) {
        return e.field();
    }
    ADD_FAILURE() << "accepted: " << j.dump();
    return {};
}

}  // namespace

TEST(Device, LoadsTwentyQubitAsset) {
    const DeviceModel d = load_device(qvb::testing::asset("devices/synthetic20.json"));
    EXPECT_EQ(d.num_qubits, 20);
    EXPECT_NEAR(d.mean_gate_error(GateKind::CX), 0.013, 1e-12);
    EXPECT_NEAR(d.mean_gate_error(GateKind::U3), 0.00038, 1e-12);
    EXPECT_NEAR(d.mean_readout_error(), 0.047, 1e-12);
    ASSERT_TRUE(d.coherence_of(5).has_value());
    EXPECT_LE(d.coherence_of(5)->t2_us, 2 * d.coherence_of(5)->t1_us);
}

TEST(Device, LineDegreeSequence) {
    const DeviceModel d = parse_device(line3_json().dump());
    EXPECT_EQ(d.degree_sequence(), (std::vector<int>{1, 2, 1}));
    EXPECT_TRUE(d.has_directed_edge(0, 1));
    EXPECT_FALSE(d.has_directed_edge(1, 0));
    EXPECT_TRUE(d.has_edge(1, 0));
}

TEST(Device, RejectsCxOnUncoupledPair) {
    json j = line3_json();
    j["gates"].push_back({{"kind", "cx"}, {"qubits", {0, 2}}, {"error", 0.01}, {"duration_ns", 300}});
    EXPECT_NE(device_error_field(j).find("qubits"), std::string::npos);
}

TEST(Device, ValidationNamesOffendingField) {
    json j = line3_json();
    j["readout"][1]["error"] = 1.5;
    EXPECT_EQ(device_error_field(j), "readout[1].error");

    j = line3_json();
    j["coupling"].push_back({0, 7});
    EXPECT_EQ(device_error_field(j), "coupling[2]");

    j = line3_json();
    j["coherence"] = json::array({{{"qubit", 0}, {"t1_us", 50.0}, {"t2_us", 120.0}}});
    EXPECT_EQ(device_error_field(j), "coherence[0].t2_us");

    j = line3_json();
    j["frequency"] = 5.0;
    EXPECT_EQ(device_error_field(j), "frequency");

    j = line3_json();
    j.erase("num_qubits");
    EXPECT_EQ(device_error_field(j), "num_qubits");

    EXPECT_THROW(parse_device("{ not json"), InvalidInput);
    EXPECT_THROW(load_device("/nonexistent/device.json"), InvalidInput);
}

TEST(Device, SerializeRoundTripIsIdempotent) {
    for (const char *name : {"devices/synthetic20.json", "devices/line3.json", "devices/line6_noiseless.json"}) {
        const DeviceModel a = load_device(qvb::testing::asset(name));
        const auto path = qvb::testing::temp_path("roundtrip.json");
        save_device(a, path);
        const DeviceModel b = load_device(path);
        EXPECT_EQ(serialize_device(a), serialize_device(b)) << name;
    }
}

TEST(Device, GateErrorFallsBackToU3) {
    const DeviceModel d = DeviceModel::uniform("u", 2, {{0, 1}}, 0.02, 0.003, 0.0);
    EXPECT_DOUBLE_EQ(d.gate_error(GateKind::H, {1}), 0.003);
    EXPECT_DOUBLE_EQ(d.gate_error(GateKind::U1, {1}), 0.0);
    EXPECT_DOUBLE_EQ(d.gate_error(GateKind::CX, {0, 1}), 0.02);
    EXPECT_DOUBLE_EQ(d.edge_error(1, 0), 0.02);
}

TEST(NoiseBuild, StretchOneKeepsProbabilities) {
    for (double p : {0.0, 0.001, 0.013, 0.3}) {
        EXPECT_NEAR(amplified_error(p, 1, 1.0), p, 1e-15);
        EXPECT_NEAR(amplified_error(p, 2, 1.0), p, 1e-15);
    }
}

TEST(NoiseBuild, StretchZeroIsIdentity) {
    const DeviceModel d = load_device(qvb::testing::asset("devices/line3.json"));
    const NoiseModel n = build_noise_model(d, 0.0);
    for (const auto &[loc, ch] : n.channels()) {
        EXPECT_LT((ch.ptm() - Eigen::MatrixXd::Identity(ch.ptm().rows(), ch.ptm().cols())).norm(), 1e-12);
    }
    EXPECT_FALSE(n.readout().empty());
    EXPECT_THROW(build_noise_model(d, -1.0), InvalidInput);
}

TEST(NoiseBuild, StretchTwoSquaresDecay) {
    const DeviceModel d = DeviceModel::uniform("one", 1, {}, 0.0, 0.01, 0.0);
    const NoiseModel n = build_noise_model(d, 2.0);
    Circuit c(1);
    c.append(Gate::u3(0, 0, 0, 0));
    const double z = expectation(run_density(c, n), PauliString::parse("Z"));
    const double f1 = 1 - 4 * 0.01 / 3;
    EXPECT_NEAR(z, f1 * f1, 1e-12);
}

TEST(NoiseBuild, IntegerStretchIsPtmPower) {
    Rng rng(41);
    const DeviceModel d = qvb::testing::random_device(4, rng, 0.05);
    const NoiseModel base = build_noise_model(d, 1.0);
    for (int c = 0; c <= 4; ++c) {
        const NoiseModel amp = build_noise_model(d, c);
        for (const auto &[loc, ch] : amp.channels()) {
            const Eigen::MatrixXd &b = base.channels().at(loc).ptm();
            Eigen::MatrixXd power = Eigen::MatrixXd::Identity(b.rows(), b.cols());
            for (int k = 0; k < c; ++k) {
                power = power * b;
            }
            EXPECT_LT((ch.ptm() - power).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(NoiseBuild, DecayIsMonotoneInStretch) {
    for (double p : {0.001, 0.02, 0.2, 0.7}) {
        for (int k : {1, 2}) {
            const double d2 = k == 1 ? 4 : 16;
            double prev = 1.0;
            for (double c = 0; c <= 4; c += 0.25) {
                const double f = 1 - d2 * amplified_error(p, k, c) / (d2 - 1);
                EXPECT_LE(f, prev + 1e-15);
                prev = f;
            }
        }
    }
}

TEST(NoiseBuild, ReadoutIsNotStretched) {
    const DeviceModel d = DeviceModel::uniform("ro", 1, {}, 0.0, 0.0, 0.05);
    const NoiseModel n = build_noise_model(d, 3.0);
    EXPECT_NEAR(n.readout().at(0)(1, 0), 0.05, 1e-15);
}

TEST(NoiseModel, RelabelDropsAndRenames) {
    NoiseModel n;
    n.add_channel(GateKind::CX, {0, 2}, QuantumChannel::depolarizing(2, 0.1));
    n.add_channel(GateKind::U3, {1}, QuantumChannel::depolarizing(1, 0.1));
    n.set_readout(2, symmetric_confusion(0.1));
    const int map[] = {1, -1, 0};
    const NoiseModel r = n.relabeled(map);
    EXPECT_NE(r.channel_for(Gate::cx(1, 0)), nullptr);
    EXPECT_EQ(r.channel_for(Gate::u3(0, 0, 0, 0)), nullptr);
    EXPECT_EQ(r.readout().count(0), 1u);
}
