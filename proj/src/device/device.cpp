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

#include "qvbench/device.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qvb {

using nlohmann::json;

namespace {

std::string idx(const std::string &base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void check_probability(double p, const std::string &field) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DeviceError(field, "probability " + std::to_string(p) + " outside [0, 1]");
    }
}

void check_qubit(int q, int n, const std::string &field) {
    if (q < 0 || q >= n) {
        throw DeviceError(field, "qubit " + std::to_string(q) + " outside [0, " + std::to_string(n) + ")");
    }
}

const json &require(const json &obj, const char *key, const std::string &field) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw DeviceError(field.empty() ? std::string(key) : field + "." + key, "missing");
    }
    return *it;
}

void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &field) {
    for (const auto &[k, v] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return k == a; })) {
            throw DeviceError(field.empty() ? k : field + "." + k, "unknown key");
        }
    }
}

double get_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        throw DeviceError(field, "expected a number");
    }
    return v.get<double>();
}

int get_int(const json &v, const std::string &field) {
    if (!v.is_number_integer()) {
        throw DeviceError(field, "expected an integer");
    }
    return v.get<int>();
}

const json &get_array(const json &v, const std::string &field) {
    if (!v.is_array()) {
        throw DeviceError(field, "expected an array");
    }
    return v;
}

const json &get_object(const json &v, const std::string &field) {
    if (!v.is_object()) {
        throw DeviceError(field, "expected an object");
    }
    return v;
}

std::vector<int> get_qubits(const json &v, const std::string &field) {
    std::vector<int> out;
    const json &arr = get_array(v, field);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(get_int(arr[i], idx(field, i)));
    }
    return out;
}

}  // namespace

void DeviceModel::validate() const {
    if (name.empty()) {
        throw DeviceError("name", "must be a non-empty string");
    }
    if (num_qubits < 1) {
        throw DeviceError("num_qubits", "must be at least 1");
    }
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < coupling.size(); ++i) {
        const auto [a, b] = coupling[i];
        check_qubit(a, num_qubits, idx("coupling", i));
        check_qubit(b, num_qubits, idx("coupling", i));
        if (a == b) {
            throw DeviceError(idx("coupling", i), "self loop");
        }
        if (!edges.insert({a, b}).second) {
            throw DeviceError(idx("coupling", i), "duplicate pair");
        }
    }
    std::set<std::pair<GateKind, std::vector<int>>> seen;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const GateSpec &g = gates[i];
        const std::string f = idx("gates", i);
        const bool ok_kind =
            g.kind == GateKind::CX || g.kind == GateKind::Measure || is_single_qubit_unitary(g.kind);
        if (!ok_kind) {
            throw DeviceError(f + ".kind", "unsupported gate kind '" + std::string(gate_name(g.kind)) + "'");
        }
        const std::size_t arity = g.kind == GateKind::CX ? 2 : 1;
        if (g.qubits.size() != arity) {
            throw DeviceError(f + ".qubits", "expected " + std::to_string(arity) + " qubit(s)");
        }
        for (int q : g.qubits) {
            check_qubit(q, num_qubits, f + ".qubits");
        }
        if (g.kind == GateKind::CX && !edges.contains({g.qubits[0], g.qubits[1]})) {
            throw DeviceError(f + ".qubits", "cx on uncoupled pair (" + std::to_string(g.qubits[0]) + ", " +
                                                 std::to_string(g.qubits[1]) + ")");
        }
        check_probability(g.error, f + ".error");
        if (!(g.duration_ns >= 0) || !std::isfinite(g.duration_ns)) {
            throw DeviceError(f + ".duration_ns", "must be a finite non-negative number");
        }
        if (!seen.insert({g.kind, g.qubits}).second) {
            throw DeviceError(f, "duplicate entry");
        }
    }
    std::set<int> rq;
    for (std::size_t i = 0; i < readout.size(); ++i) {
        check_qubit(readout[i].qubit, num_qubits, idx("readout", i) + ".qubit");
        check_probability(readout[i].error, idx("readout", i) + ".error");
        if (!rq.insert(readout[i].qubit).second) {
            throw DeviceError(idx("readout", i), "duplicate qubit");
        }
    }
    std::set<int> cq;
    for (std::size_t i = 0; i < coherence.size(); ++i) {
        const auto &c = coherence[i];
        const std::string f = idx("coherence", i);
        check_qubit(c.qubit, num_qubits, f + ".qubit");
        if (!(c.t1_us > 0) || !std::isfinite(c.t1_us)) {
            throw DeviceError(f + ".t1_us", "must be positive");
        }
        if (!(c.t2_us > 0) || !std::isfinite(c.t2_us)) {
            throw DeviceError(f + ".t2_us", "must be positive");
        }
        if (c.t2_us > 2 * c.t1_us) {
            throw DeviceError(f + ".t2_us", "T2 exceeds 2*T1");
        }
        if (!cq.insert(c.qubit).second) {
            throw DeviceError(f, "duplicate qubit");
        }
    }
}

bool DeviceModel::has_directed_edge(int control, int target) const {
    return std::find(coupling.begin(), coupling.end(), std::pair{control, target}) != coupling.end();
}

std::vector<int> DeviceModel::degree_sequence() const {
    const auto adj = adjacency();
    std::vector<int> d(adj.size());
    for (std::size_t q = 0; q < adj.size(); ++q) {
        d[q] = static_cast<int>(adj[q].size());
    }
    return d;
}

std::vector<std::vector<int>> DeviceModel::adjacency() const {
    std::vector<std::set<int>> s(num_qubits);
    for (const auto &[a, b] : coupling) {
        s[a].insert(b);
        s[b].insert(a);
    }
    std::vector<std::vector<int>> out(num_qubits);
    for (int q = 0; q < num_qubits; ++q) {
        out[q].assign(s[q].begin(), s[q].end());
    }
    return out;
}

const GateSpec *DeviceModel::find_gate(GateKind kind, const std::vector<int> &qubits) const {
    for (const auto &g : gates) {
        if (g.kind == kind && g.qubits == qubits) {
            return &g;
        }
    }
    return nullptr;
}

double DeviceModel::gate_error(GateKind kind, const std::vector<int> &qubits) const {
    if (const GateSpec *g = find_gate(kind, qubits)) {
        return g->error;
    }
    if (is_single_qubit_unitary(kind) && kind != GateKind::U1) {
        if (const GateSpec *g = find_gate(GateKind::U3, qubits)) {
            return g->error;
        }
    }
    return 0.0;
}

double DeviceModel::edge_error(int a, int b) const {
    const GateSpec *f = find_gate(GateKind::CX, {a, b});
    const GateSpec *r = find_gate(GateKind::CX, {b, a});
    if (f && r) {
        return std::min(f->error, r->error);
    }
    return f ? f->error : r ? r->error : 0.0;
}

std::optional<double> DeviceModel::readout_error(int qubit) const {
    for (const auto &r : readout) {
        if (r.qubit == qubit) {
            return r.error;
        }
    }
    return std::nullopt;
}

std::optional<CoherenceSpec> DeviceModel::coherence_of(int qubit) const {
    for (const auto &c : coherence) {
        if (c.qubit == qubit) {
            return c;
        }
    }
    return std::nullopt;
}

double DeviceModel::mean_gate_error(GateKind kind) const {
    double s = 0;
    int n = 0;
    for (const auto &g : gates) {
        if (g.kind == kind) {
            s += g.error;
            ++n;
        }
    }
    return n ? s / n : 0.0;
}

double DeviceModel::mean_readout_error() const {
    if (readout.empty()) {
        return 0.0;
    }
    double s = 0;
    for (const auto &r : readout) {
        s += r.error;
    }
    return s / static_cast<double>(readout.size());
}

DeviceModel DeviceModel::uniform(std::string name, int num_qubits, std::vector<std::pair<int, int>> coupling,
                                 double cx_error, double single_qubit_error, double readout_error) {
    DeviceModel d;
    d.name = std::move(name);
    d.num_qubits = num_qubits;
    d.coupling = std::move(coupling);
    for (int q = 0; q < num_qubits; ++q) {
        d.gates.push_back({GateKind::U1, {q}, 0.0, 0.0});
        d.gates.push_back({GateKind::U2, {q}, single_qubit_error, 35.5});
        d.gates.push_back({GateKind::U3, {q}, single_qubit_error, 71.1});
        d.gates.push_back({GateKind::Measure, {q}, 0.0, 3500.0});
        d.readout.push_back({q, readout_error});
    }
    for (const auto &[a, b] : d.coupling) {
        d.gates.push_back({GateKind::CX, {a, b}, cx_error, 320.0});
    }
    d.validate();
    return d;
}

std::vector<std::pair<int, int>> line_coupling(int num_qubits, bool bidirectional) {
    std::vector<std::pair<int, int>> out;
    for (int q = 0; q + 1 < num_qubits; ++q) {
        out.emplace_back(q, q + 1);
        if (bidirectional) {
            out.emplace_back(q + 1, q);
        }
    }
    return out;
}

DeviceModel parse_device(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw InvalidInput(std::string("device file parse error: ") + e.what());
    }
    get_object(root, "<root>");
    reject_unknown(root, {"name", "num_qubits", "coupling", "gates", "readout", "coherence"}, "");

    DeviceModel d;
    const json &name = require(root, "name", "");
    if (!name.is_string()) {
        throw DeviceError("name", "expected a string");
    }
    d.name = name.get<std::string>();
    d.num_qubits = get_int(require(root, "num_qubits", ""), "num_qubits");

    const json &coupling = get_array(require(root, "coupling", ""), "coupling");
    for (std::size_t i = 0; i < coupling.size(); ++i) {
        const auto pair = get_qubits(coupling[i], idx("coupling", i));
        if (pair.size() != 2) {
            throw DeviceError(idx("coupling", i), "expected [control, target]");
        }
        d.coupling.emplace_back(pair[0], pair[1]);
    }

    const json &gates = get_array(require(root, "gates", ""), "gates");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string f = idx("gates", i);
        const json &g = get_object(gates[i], f);
        reject_unknown(g, {"kind", "qubits", "error", "duration_ns"}, f);
        const json &kind = require(g, "kind", f);
        if (!kind.is_string()) {
            throw DeviceError(f + ".kind", "expected a string");
        }
        const auto k = gate_kind_from_name(kind.get<std::string>());
        if (!k) {
            throw DeviceError(f + ".kind", "unknown gate kind '" + kind.get<std::string>() + "'");
        }
        GateSpec spec;
        spec.kind = *k;
        spec.qubits = get_qubits(require(g, "qubits", f), f + ".qubits");
        spec.error = get_number(require(g, "error", f), f + ".error");
        if (g.contains("duration_ns")) {
            spec.duration_ns = get_number(g["duration_ns"], f + ".duration_ns");
        }
        d.gates.push_back(std::move(spec));
    }

    if (root.contains("readout")) {
        const json &readout = get_array(root["readout"], "readout");
        for (std::size_t i = 0; i < readout.size(); ++i) {
            const std::string f = idx("readout", i);
            const json &r = get_object(readout[i], f);
            reject_unknown(r, {"qubit", "error"}, f);
            d.readout.push_back(
                {get_int(require(r, "qubit", f), f + ".qubit"), get_number(require(r, "error", f), f + ".error")});
        }
    }
    if (root.contains("coherence")) {
        const json &coh = get_array(root["coherence"], "coherence");
        for (std::size_t i = 0; i < coh.size(); ++i) {
            const std::string f = idx("coherence", i);
            const json &c = get_object(coh[i], f);
            reject_unknown(c, {"qubit", "t1_us", "t2_us"}, f);
            d.coherence.push_back({get_int(require(c, "qubit", f), f + ".qubit"),
                                   get_number(require(c, "t1_us", f), f + ".t1_us"),
                                   get_number(require(c, "t2_us", f), f + ".t2_us")});
        }
    }
    d.validate();
    return d;
}

DeviceModel load_device(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open device file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_device(buf.str());
}

std::string serialize_device(const DeviceModel &device) {
    json root;
    root["name"] = device.name;
    root["num_qubits"] = device.num_qubits;
    root["coupling"] = json::array();
    for (const auto &[a, b] : device.coupling) {
        root["coupling"].push_back({a, b});
    }
    root["gates"] = json::array();
    for (const auto &g : device.gates) {
        root["gates"].push_back(
            {{"kind", gate_name(g.kind)}, {"qubits", g.qubits}, {"error", g.error}, {"duration_ns", g.duration_ns}});
    }
    root["readout"] = json::array();
    for (const auto &r : device.readout) {
        root["readout"].push_back({{"qubit", r.qubit}, {"error", r.error}});
    }
    if (!device.coherence.empty()) {
        root["coherence"] = json::array();
        for (const auto &c : device.coherence) {
            root["coherence"].push_back({{"qubit", c.qubit}, {"t1_us", c.t1_us}, {"t2_us", c.t2_us}});
        }
    }
    return root.dump(2) + "\n";
}

void save_device(const DeviceModel &device, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot write device file '" + path.string() + "'");
    }
    out << serialize_device(device);
}

double amplified_error(double p, int num_qubits, double stretch) {
    if (!(stretch >= 0) || !std::isfinite(stretch)) {
        throw InvalidInput("noise stretch must be a finite non-negative number");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput("error probability outside [0, 1]");
    }
    const double d2 = std::ldexp(1.0, 2 * num_qubits);
    const double f = 1.0 - d2 * p / (d2 - 1.0);
    if (f < 0 && stretch != std::floor(stretch)) {
        throw InvalidInput("fractional stretch of a channel with negative PTM eigenvalue is undefined");
    }
    double out = (d2 - 1.0) / d2 * (1.0 - std::pow(f, stretch));
    // Round-off can push the endpoints slightly outside [0, 1].
    out = std::clamp(out, 0.0, 1.0);
    assert(out >= 0.0 && out <= 1.0);
    return out;
}

NoiseModel build_noise_model(const DeviceModel &device, double stretch) {
    if (!(stretch >= 0) || !std::isfinite(stretch)) {
        throw InvalidInput("noise stretch must be a finite non-negative number");
    }
    NoiseModel noise;
    noise.set_stretch(stretch);
    for (const auto &g : device.gates) {
        if (g.kind == GateKind::Measure || g.error == 0.0) {
            continue;
        }
        const int k = static_cast<int>(g.qubits.size());
        noise.add_channel(g.kind, g.qubits, QuantumChannel::depolarizing(k, amplified_error(g.error, k, stretch)));
    }
    for (const auto &r : device.readout) {
        noise.set_readout(r.qubit, symmetric_confusion(r.error));
    }
    return noise;
}

}  // namespace qvb
