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

#include "qvbench/qv.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qvbench/errors.hpp"
#include "qvbench/parallel.hpp"
#include "qvbench/transpiler.hpp"

namespace qvb {

Eigen::MatrixXcd haar_unitary(int dim, Rng &rng) {
    Eigen::MatrixXcd z(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = cplx(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

Eigen::Matrix4cd haar_su4(Rng &rng) {
    Eigen::Matrix4cd u = haar_unitary(4, rng);
    const cplx det = u.determinant();
    u *= std::pow(det, -0.25);
    return u;
}

ModelCircuit generate_model_circuit(int width, std::uint64_t seed) {
    if (width < 2) {
        throw InvalidInput("model circuit width must be at least 2");
    }
    ModelCircuit mc;
    mc.width = width;
    mc.seed = seed;
    mc.circuit = Circuit(width, 0, "qv_" + std::to_string(width) + "_" + std::to_string(seed));
    Rng rng(seed);
    for (int layer = 0; layer < width; ++layer) {
        std::vector<int> perm(width);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        for (int k = 0; k + 1 < width; k += 2) {
            mc.circuit.append(Gate::su4(perm[k], perm[k + 1], haar_su4(rng)));
        }
        mc.permutations.push_back(std::move(perm));
    }
    return mc;
}

std::string to_bitstring(std::uint64_t value, int width) {
    std::string s(width, '0');
    for (int b = 0; b < width; ++b) {
        if ((value >> b) & 1U) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidInput("median of an empty list");
    }
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double hi = v[mid];
    if (v.size() % 2) {
        return hi;
    }
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

std::set<std::string> heavy_set(std::span<const double> ideal_probabilities) {
    const std::size_t n = ideal_probabilities.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw InvalidInput("heavy_set: distribution size must be a power of two");
    }
    const double total = std::accumulate(ideal_probabilities.begin(), ideal_probabilities.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidInput("heavy_set: probabilities sum to " + std::to_string(total));
    }
    const int width = std::countr_zero(n);
    const double med = median(ideal_probabilities);
    std::set<std::string> heavy;
    for (std::size_t i = 0; i < n; ++i) {
        if (ideal_probabilities[i] > med) {
            heavy.insert(to_bitstring(i, width));
        }
    }
    return heavy;
}

double heavy_output_probability(const Counts &counts, const std::set<std::string> &heavy) {
    const std::uint64_t shots = total_shots(counts);
    if (shots == 0) {
        throw InvalidInput("heavy_output_probability: empty counts");
    }
    std::uint64_t hits = 0;
    for (const auto &[bits, n] : counts) {
        hits += heavy.contains(bits) ? n : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(shots);
}

namespace {

QVCircuitResult run_one(const DeviceModel &device, const NoiseModel &noise, const QVOptions &opt,
                        std::uint64_t circuit_seed) {
    QVCircuitResult r;
    r.seed = circuit_seed;
    const ModelCircuit mc = generate_model_circuit(opt.width, circuit_seed);
    const std::vector<double> ideal = run_statevector(mc.circuit).probabilities();
    const std::set<std::string> heavy = heavy_set(ideal);
    r.heavy_count = heavy.size();
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        if (heavy.contains(to_bitstring(i, opt.width))) {
            r.ideal_heavy_mass += ideal[i];
        }
    }

    Circuit physical;
    Layout final_layout;
    if (opt.transpile) {
        TranspileResult t = transpile(mc.circuit, device, opt.pipeline);
        physical = std::move(t.circuit);
        final_layout = t.final_layout.completed();
    } else {
        physical = unroll(mc.circuit).widened(device.num_qubits);
        final_layout = Layout::trivial(device.num_qubits, device.num_qubits);
    }
    r.cx_count = physical.count(GateKind::CX);
    r.depth = depth(physical);

    // Simulate only the qubits that are touched or measured.
    std::vector<bool> active(device.num_qubits, false);
    for (const auto &g : physical) {
        for (int q : g.qubits) {
            active[q] = true;
        }
    }
    for (int v = 0; v < opt.width; ++v) {
        active[final_layout[v]] = true;
    }
    std::vector<int> old_to_new(device.num_qubits, -1);
    int k = 0;
    for (int q = 0; q < device.num_qubits; ++q) {
        if (active[q]) {
            old_to_new[q] = k++;
        }
    }
    if (k > kMaxDensityQubits) {
        throw CapacityError("QV circuit touches " + std::to_string(k) + " qubits; density backend holds " +
                            std::to_string(kMaxDensityQubits));
    }
    r.simulated_qubits = k;
    Circuit compact(k);
    for (const auto &g : physical) {
        if (g.kind == GateKind::Barrier) {
            continue;
        }
        Gate h = g;
        for (int &q : h.qubits) {
            q = old_to_new[q];
        }
        compact.append(std::move(h));
    }
    const NoiseModel local = noise.relabeled(old_to_new);
    const DensityMatrix rho = run_density(compact, local);

    MeasureMap mm;
    mm.num_clbits = opt.width;
    for (int v = 0; v < opt.width; ++v) {
        mm.qubit_to_clbit.emplace_back(old_to_new[final_layout[v]], v);
    }
    const Counts counts = sample_counts(rho, mm, opt.shots, &local.readout(), derive_seed(circuit_seed, 7));
    r.hop = heavy_output_probability(counts, heavy);
    return r;
}

}  // namespace

QVResult qv_experiment(const DeviceModel &device, const QVOptions &options) {
    if (options.width < 2) {
        throw InvalidInput("QV width must be at least 2");
    }
    if (options.width > device.num_qubits) {
        throw CapacityError("QV width " + std::to_string(options.width) + " exceeds device '" + device.name +
                            "' with " + std::to_string(device.num_qubits) + " qubits");
    }
    if (options.width > kMaxDensityQubits) {
        throw CapacityError("QV width " + std::to_string(options.width) + " exceeds density backend capacity " +
                            std::to_string(kMaxDensityQubits));
    }
    if (options.num_circuits < 10) {
        throw InvalidInput("QV needs at least 10 circuits per width");
    }
    if (options.shots == 0) {
        throw InvalidInput("QV needs at least one shot per circuit");
    }
    const NoiseModel noise = build_noise_model(device, 1.0);

    QVResult res;
    res.device = device.name;
    res.width = options.width;
    res.num_circuits = options.num_circuits;
    res.shots = options.shots;
    res.seed = options.seed;
    res.transpiled = options.transpile;
    res.z = options.z;
    res.circuits.resize(options.num_circuits);
    parallel_for(options.num_circuits, resolve_threads(options.threads), [&](std::size_t i) {
        res.circuits[i] = run_one(device, noise, options, options.seed ^ static_cast<std::uint64_t>(i));
    });

    const double n = options.num_circuits;
    double sum = 0, mass = 0;
    for (const auto &c : res.circuits) {
        sum += c.hop;
        mass += c.ideal_heavy_mass;
    }
    res.mean_hop = sum / n;
    res.mean_ideal_heavy_mass = mass / n;
    double ss = 0;
    for (const auto &c : res.circuits) {
        ss += (c.hop - res.mean_hop) * (c.hop - res.mean_hop);
    }
    res.stddev_hop = std::sqrt(ss / (n - 1));
    res.lower_bound = res.mean_hop - options.z * res.stddev_hop / std::sqrt(n);
    res.pass = res.lower_bound > 2.0 / 3.0;
    return res;
}

QVSweepResult qv_sweep(const DeviceModel &device, std::vector<int> widths, const QVOptions &options) {
    if (widths.empty()) {
        throw InvalidInput("QV sweep needs at least one width");
    }
    std::sort(widths.begin(), widths.end());
    widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
    QVSweepResult out;
    bool all_pass = true;
    for (int m : widths) {
        QVOptions o = options;
        o.width = m;
        out.results.push_back(qv_experiment(device, o));
        all_pass = all_pass && out.results.back().pass;
        if (all_pass) {
            out.claimed_width = m;
        }
    }
    out.quantum_volume = out.claimed_width > 0 ? std::uint64_t{1} << out.claimed_width : 1;
    return out;
}

std::string qv_csv(std::span<const QVResult> results) {
    std::ostringstream s;
    s.precision(17);
    s << "width,index,seed,hop,ideal_heavy_mass,cx_count,depth\n";
    for (const auto &r : results) {
        for (std::size_t i = 0; i < r.circuits.size(); ++i) {
            const auto &c = r.circuits[i];
            s << r.width << ',' << i << ',' << c.seed << ',' << c.hop << ',' << c.ideal_heavy_mass << ','
              << c.cx_count << ',' << c.depth << '\n';
        }
    }
    return s.str();
}

}  // namespace qvb
