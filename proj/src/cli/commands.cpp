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

#include "cli/commands.hpp"

#include <Eigen/Eigenvalues>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "qvbench/apps.hpp"
#include "qvbench/device.hpp"
#include "qvbench/mitigation.hpp"
#include "qvbench/parallel.hpp"
#include "qvbench/qasm.hpp"
#include "qvbench/qv.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/simulator.hpp"
#include "qvbench/transpiler.hpp"
#include "qvbench/unitary.hpp"

namespace qvb::cli {

namespace {

using nlohmann::json;

std::string absolute(const std::string &path) {
    if (path.empty()) {
        return path;
    }
    return std::filesystem::absolute(path).lexically_normal().string();
}

template <class T>
std::vector<T> parse_list(const std::string &text, const char *flag) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string item = text.substr(start, end - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        T v{};
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw InvalidInput(std::string(flag) + ": '" + item + "' is not a number");
        }
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

json matrix_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(m(i, j));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string csv_number(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path);
    if (!f || !(f << text)) {
        throw Error("cannot write '" + path + "'");
    }
}

CLI::App *subcommand(CLI::App &app, const char *name, const char *help, CommonOptions &common) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--seed", common.seed, "Master seed; a random seed is drawn and recorded when omitted");
    sub->add_option("--out", common.out, "Write the report here instead of stdout");
    sub->add_option("--format", common.format, "json (report) or csv (per-item series)");
    sub->add_option("--threads", common.threads, "Worker cap; falls back to QVBENCH_THREADS, then 1");
    // Consumed before parsing; registered so it shows up in --help.
    sub->add_option("--config", "Rerun from the config embedded in a previous report");
    return sub;
}

// Ideal or noisy outcome distribution over classical bits, readout confusion
// applied analytically.
std::vector<double> clbit_distribution(std::span<const double> probs, const MeasureMap &mm, const ReadoutMap *readout) {
    std::vector<double> dist(std::size_t{1} << mm.num_clbits, 0.0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0) {
            continue;
        }
        std::size_t key = 0;
        for (const auto &[q, c] : mm.qubit_to_clbit) {
            const std::size_t bit = std::size_t{1} << c;
            key = ((i >> q) & 1) ? (key | bit) : (key & ~bit);
        }
        dist[key] += probs[i];
    }
    if (readout) {
        for (const auto &[q, c] : mm.qubit_to_clbit) {
            const auto it = readout->find(q);
            if (it == readout->end()) {
                continue;
            }
            const Eigen::Matrix2d &m = it->second;
            const std::size_t bit = std::size_t{1} << c;
            for (std::size_t i = 0; i < dist.size(); ++i) {
                if (i & bit) {
                    continue;
                }
                const double a = dist[i], b = dist[i | bit];
                dist[i] = m(0, 0) * a + m(0, 1) * b;
                dist[i | bit] = m(1, 0) * a + m(1, 1) * b;
            }
        }
    }
    return dist;
}

std::string bits(std::size_t value, int width) {
    std::string s(width, '0');
    for (int b = 0; b < width; ++b) {
        if ((value >> b) & 1) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

json metrics_json(const CircuitMetrics &m, bool with_fidelity) {
    json j = {{"depth", m.depth}, {"cx_count", m.cx_count}, {"gate_count", m.gate_count}};
    if (with_fidelity) {
        j["fidelity_proxy"] = m.fidelity_proxy;
    }
    return j;
}

// ---------------------------------------------------------------------------

Command transpile_command(CLI::App &app, CommonOptions &common) {
    struct Opts {
        std::string input, device, passes = PassManager::default_pipeline(), qasm_out;
        bool verify = false;
    };
    auto o = std::make_shared<Opts>();
    CLI::App *sub = subcommand(app, "transpile", "Map a QASM circuit onto a device", common);
    sub->add_option("--input", o->input, "OpenQASM 2.0 circuit")->required();
    sub->add_option("--device", o->device, "Device JSON")->required();
    sub->add_option("--passes", o->passes, "Comma-separated pass list; empty for pass-through")->capture_default_str();
    sub->add_option("--qasm-out", o->qasm_out, "Write the transpiled circuit here");
    sub->add_option("--verify", o->verify, "Check unitary equivalence under the layouts (up to 10 qubits)");
    return {sub, [o](std::uint64_t) {
                Output out;
                const Circuit circuit = read_qasm_file(o->input);
                const DeviceModel device = load_device(o->device);
                const TranspileResult r = transpile(circuit, device, o->passes);
                const TranspileResult baseline = transpile(circuit, device, PassManager::routing_only_pipeline());
                const CircuitMetrics before = circuit_metrics(unroll(circuit), nullptr);
                const std::string qasm = emit_qasm(r.circuit);
                if (!o->qasm_out.empty()) {
                    write_file(o->qasm_out, qasm);
                }
                out.config = {{"input", absolute(o->input)},
                              {"device", absolute(o->device)},
                              {"passes", o->passes},
                              {"verify", o->verify}};
                json &res = out.results;
                res["device"] = device.name;
                res["passes"] = r.passes;
                res["before"] = metrics_json(circuit_metrics(circuit, nullptr), false);
                res["unrolled"] = metrics_json(before, false);
                res["after"] = metrics_json(r.metrics, true);
                res["routing_only"] = metrics_json(baseline.metrics, true);
                res["cx_reduction_vs_routing_only"] =
                    baseline.metrics.cx_count == 0
                        ? 0.0
                        : 1.0 - static_cast<double>(r.metrics.cx_count) / static_cast<double>(baseline.metrics.cx_count);
                res["initial_layout"] = r.initial_layout.v2p;
                res["final_layout"] = r.final_layout.v2p;
                res["depth_history"] = r.depth_history;
                res["properties"] = r.properties;
                if (o->verify) {
                    if (r.circuit.num_qubits() > kMaxUnitaryQubits) {
                        throw CapacityError("--verify supports at most " + std::to_string(kMaxUnitaryQubits) +
                                            " qubits");
                    }
                    res["equivalent"] =
                        equivalent_under_layouts(circuit, r.circuit, r.initial_layout, r.final_layout, 1e-7);
                }
                res["qasm"] = qasm;
                out.csv = "metric,before,after,routing_only\n";
                out.csv += "depth," + std::to_string(before.depth) + "," + std::to_string(r.metrics.depth) + "," +
                           std::to_string(baseline.metrics.depth) + "\n";
                out.csv += "cx_count," + std::to_string(before.cx_count) + "," + std::to_string(r.metrics.cx_count) +
                           "," + std::to_string(baseline.metrics.cx_count) + "\n";
                out.csv += "gate_count," + std::to_string(before.gate_count) + "," +
                           std::to_string(r.metrics.gate_count) + "," + std::to_string(baseline.metrics.gate_count) +
                           "\n";
                return out;
            }};
}

Command simulate_command(CLI::App &app, CommonOptions &common) {
    struct Opts {
        std::string input, device;
        std::uint64_t shots = 1024;
    };
    auto o = std::make_shared<Opts>();
    CLI::App *sub = subcommand(app, "simulate", "Run a QASM circuit, ideal or under a device noise model", common);
    sub->add_option("--input", o->input, "OpenQASM 2.0 circuit")->required();
    sub->add_option("--device", o->device, "Device JSON; enables the noisy density-matrix backend");
    sub->add_option("--shots", o->shots, "Shots; 0 reports the exact outcome distribution")->capture_default_str();
    return {sub, [o](std::uint64_t seed) {
                Output out;
                const Circuit circuit = read_qasm_file(o->input);
                const MeasureMap mm = circuit.has_measure() ? MeasureMap::from_circuit(circuit)
                                                            : MeasureMap::identity(circuit.num_qubits());
                const Circuit body = without_measurements(circuit);
                std::vector<double> probs;
                NoiseModel noise;
                std::string backend = "statevector";
                std::string device_name;
                if (!o->device.empty()) {
                    const DeviceModel device = load_device(o->device);
                    if (circuit.num_qubits() > device.num_qubits) {
                        throw InvalidInput("circuit uses " + std::to_string(circuit.num_qubits()) +
                                           " qubits, device has " + std::to_string(device.num_qubits));
                    }
                    noise = build_noise_model(device);
                    probs = run_density(body, noise).probabilities();
                    backend = "density";
                    device_name = device.name;
                } else {
                    probs = run_statevector(body).probabilities();
                }
                const ReadoutMap *readout = o->device.empty() ? nullptr : &noise.readout();
                out.config = {{"input", absolute(o->input)}, {"device", absolute(o->device)}, {"shots", o->shots}};
                json &res = out.results;
                res["backend"] = backend;
                res["num_qubits"] = circuit.num_qubits();
                res["num_clbits"] = mm.num_clbits;
                if (!device_name.empty()) {
                    res["device"] = device_name;
                }
                if (o->shots > 0) {
                    const Counts counts = sample_counts(probs, mm, o->shots, readout, derive_seed(seed, 0));
                    res["shots"] = o->shots;
                    res["counts"] = counts;
                    out.csv = "outcome,count\n";
                    for (const auto &[k, v] : counts) {
                        out.csv += k + "," + std::to_string(v) + "\n";
                    }
                } else {
                    const auto dist = clbit_distribution(probs, mm, readout);
                    json p = json::object();
                    out.csv = "outcome,probability\n";
                    for (std::size_t i = 0; i < dist.size(); ++i) {
                        if (dist[i] > 1e-15) {
                            p[bits(i, mm.num_clbits)] = dist[i];
                            out.csv += bits(i, mm.num_clbits) + "," + csv_number(dist[i]) + "\n";
                        }
                    }
                    res["probabilities"] = p;
                }
                return out;
            }};
}

Command qv_command(CLI::App &app, CommonOptions &common) {
    struct Opts {
        std::string device, widths = "2,3,4", passes = PassManager::default_pipeline();
        int circuits = 100;
        std::uint64_t shots = 1000;
        bool transpile = true;
        double z = 2.0;
    };
    auto o = std::make_shared<Opts>();
    CLI::App *sub = subcommand(app, "qv", "Quantum volume sweep", common);
    sub->add_option("--device", o->device, "Device JSON")->required();
    sub->add_option("--widths", o->widths, "Comma-separated model circuit widths")->capture_default_str();
    sub->add_option("--circuits", o->circuits, "Model circuits per width")->capture_default_str();
    sub->add_option("--shots", o->shots, "Shots per circuit")->capture_default_str();
    sub->add_option("--passes", o->passes, "Transpiler pipeline")->capture_default_str();
    sub->add_option("--transpile", o->transpile, "false: unroll only, trivial layout")->capture_default_str();
    sub->add_option("--z", o->z, "Confidence multiplier of the pass rule")->capture_default_str();
    return {sub, [o, &common](std::uint64_t seed) {
                Output out;
                const DeviceModel device = load_device(o->device);
                const std::vector<int> widths = parse_list<int>(o->widths, "--widths");
                QVOptions q;
                q.num_circuits = o->circuits;
                q.shots = o->shots;
                q.seed = seed;
                q.transpile = o->transpile;
                q.z = o->z;
                q.pipeline = o->passes;
                q.threads = resolve_threads(common.threads);
                const QVSweepResult sweep = qv_sweep(device, widths, q);
                out.config = {{"device", absolute(o->device)}, {"widths", widths},       {"circuits", o->circuits},
                              {"shots", o->shots},             {"passes", o->passes},    {"transpile", o->transpile},
                              {"z", o->z}};
                json &res = out.results;
                res["device"] = device.name;
                res["claimed_width"] = sweep.claimed_width;
                res["quantum_volume"] = sweep.quantum_volume;
                json per_width = json::array();
                for (const QVResult &r : sweep.results) {
                    json circuits = json::array();
                    for (const auto &c : r.circuits) {
                        circuits.push_back({{"seed", c.seed},
                                            {"hop", c.hop},
                                            {"ideal_heavy_mass", c.ideal_heavy_mass},
                                            {"heavy_count", c.heavy_count},
                                            {"cx_count", c.cx_count},
                                            {"depth", c.depth},
                                            {"simulated_qubits", c.simulated_qubits}});
                    }
                    per_width.push_back({{"width", r.width},
                                         {"num_circuits", r.num_circuits},
                                         {"shots", r.shots},
                                         {"mean_hop", r.mean_hop},
                                         {"stddev_hop", r.stddev_hop},
                                         {"lower_bound", r.lower_bound},
                                         {"mean_ideal_heavy_mass", r.mean_ideal_heavy_mass},
                                         {"pass", r.pass},
                                         {"circuits", std::move(circuits)}});
                }
                res["widths"] = std::move(per_width);
                out.csv = qv_csv(sweep.results);
                return out;
            }};
}

Command mitigate_command(CLI::App &app, CommonOptions &common) {
    struct Opts {
        std::string input, device, observable, method = "zne", stretches = "1,1.5,2";
        std::uint64_t shots = 0, shots_per_sample = 0;
        std::size_t samples = 1000;
    };
    auto o = std::make_shared<Opts>();
    CLI::App *sub = subcommand(app, "mitigate", "Zero-noise extrapolation or probabilistic error cancellation", common);
    sub->add_option("--input", o->input, "OpenQASM 2.0 circuit (measurements ignored)")->required();
    sub->add_option("--device", o->device, "Device JSON providing the noise model")->required();
    sub->add_option("--observable", o->observable, "Pauli string, highest qubit leftmost")->required();
    sub->add_option("--method", o->method, "zne or pec")->capture_default_str();
    sub->add_option("--stretches", o->stretches, "ZNE noise stretch factors")->capture_default_str();
    sub->add_option("--shots", o->shots, "ZNE shots per stretch; 0 is exact")->capture_default_str();
    sub->add_option("--samples", o->samples, "PEC circuit samples")->capture_default_str();
    sub->add_option("--shots-per-sample", o->shots_per_sample, "PEC shots per sample; 0 is exact")
        ->capture_default_str();
    return {sub, [o, &common](std::uint64_t seed) {
                Output out;
                const Circuit circuit = without_measurements(read_qasm_file(o->input));
                const DeviceModel device = load_device(o->device);
                const PauliString obs = PauliString::parse(o->observable);
                if (obs.num_qubits() != circuit.num_qubits()) {
                    throw InvalidInput("observable acts on " + std::to_string(obs.num_qubits()) +
                                       " qubits, circuit has " + std::to_string(circuit.num_qubits()));
                }
                if (circuit.num_qubits() > device.num_qubits) {
                    throw InvalidInput("circuit is wider than the device");
                }
                out.config = {{"input", absolute(o->input)},
                              {"device", absolute(o->device)},
                              {"observable", o->observable},
                              {"method", o->method}};
                json &res = out.results;
                res["method"] = o->method;
                res["ideal"] = expectation(run_statevector(circuit), obs);
                if (o->method == "zne") {
                    ZneOptions z;
                    z.stretches = parse_list<double>(o->stretches, "--stretches");
                    z.shots = o->shots;
                    z.seed = seed;
                    const ZneResult r = zne_estimate(circuit, obs, device, z);
                    out.config["stretches"] = z.stretches;
                    out.config["shots"] = o->shots;
                    res["mitigated"] = r.mitigated;
                    res["stderr"] = r.stderr_;
                    res["stretches"] = r.stretches;
                    res["coefficients"] = r.coefficients;
                    res["raw"] = r.raw;
                    res["raw_stderr"] = r.raw_stderr;
                    out.csv = "stretch,coefficient,raw,raw_stderr\n";
                    for (std::size_t j = 0; j < r.stretches.size(); ++j) {
                        out.csv += csv_number(r.stretches[j]) + "," + csv_number(r.coefficients[j]) + "," +
                                   csv_number(r.raw[j]) + "," + csv_number(r.raw_stderr[j]) + "\n";
                    }
                } else if (o->method == "pec") {
                    const NoiseModel noise = build_noise_model(device);
                    PecOptions p;
                    p.num_samples = o->samples;
                    p.shots_per_sample = o->shots_per_sample;
                    p.seed = seed;
                    p.threads = resolve_threads(common.threads);
                    const PecResult r = pec_estimate(circuit, obs, noise, p);
                    out.config["samples"] = o->samples;
                    out.config["shots-per-sample"] = o->shots_per_sample;
                    res["unmitigated"] = noisy_expectation(circuit, obs, noise, 0, 0, false);
                    res["estimate"] = r.estimate;
                    res["stderr"] = r.stderr_;
                    res["gamma_total"] = r.gamma_total;
                    res["num_samples"] = r.num_samples;
                    res["noisy_locations"] = r.noisy_locations;
                    out.csv = "quantity,value\n";
                    for (const char *k : {"ideal", "unmitigated", "estimate", "stderr", "gamma_total"}) {
                        out.csv += std::string(k) + "," + csv_number(res[k].get<double>()) + "\n";
                    }
                } else {
                    throw InvalidInput("--method must be zne or pec");
                }
                return out;
            }};
}

Command vqe_command(CLI::App &app, CommonOptions &common) {
    struct Opts {
        std::string hamiltonian, device, entangler = "linear", optimizer = "spsa", stretches = "1,1.5,2";
        int layers = 1, max_iterations = 200;
        double spsa_a = 0.2, spsa_c = 0.1;
        std::uint64_t shots = 0;
        bool zne = false;
    };
    auto o = std::make_shared<Opts>();
    CLI::App *sub = subcommand(app, "vqe", "Variational ground-state search for a Pauli Hamiltonian", common);
    sub->add_option("--hamiltonian", o->hamiltonian, "Hamiltonian JSON: list of {coeff, pauli}")->required();
    sub->add_option("--layers", o->layers, "Entangler layers of the trial state")->capture_default_str();
    sub->add_option("--entangler", o->entangler, "linear or ring")->capture_default_str();
    sub->add_option("--optimizer", o->optimizer, "spsa or nelder-mead")->capture_default_str();
    sub->add_option("--max-iterations", o->max_iterations, "Optimizer iteration cap")->capture_default_str();
    sub->add_option("--spsa-a", o->spsa_a, "SPSA step gain a")->capture_default_str();
    sub->add_option("--spsa-c", o->spsa_c, "SPSA perturbation gain c")->capture_default_str();
    sub->add_option("--device", o->device, "Device JSON; noisy evaluation when given");
    sub->add_option("--shots", o->shots, "Shots per Pauli term; 0 is exact")->capture_default_str();
    sub->add_option("--zne", o->zne, "Richardson-mitigate every energy evaluation")->capture_default_str();
    sub->add_option("--stretches", o->stretches, "ZNE stretch factors")->capture_default_str();
    return {sub, [o](std::uint64_t seed) {
                Output out;
                const PauliHamiltonian h = PauliHamiltonian::load(o->hamiltonian);
                std::optional<DeviceModel> device;
                if (!o->device.empty()) {
                    device = load_device(o->device);
                }
                VqeOptions v;
                v.ansatz = {h.num_qubits(), o->layers, entangler_from_name(o->entangler)};
                v.optimizer = optimizer_from_name(o->optimizer);
                v.spsa.max_iterations = o->max_iterations;
                v.spsa.a = o->spsa_a;
                v.spsa.c = o->spsa_c;
                v.nelder_mead.max_iterations = o->max_iterations;
                v.device = device ? &*device : nullptr;
                v.shots = o->shots;
                v.zne = o->zne;
                v.stretches = parse_list<double>(o->stretches, "--stretches");
                v.seed = seed;
                if (o->layers < 0) {
                    throw InvalidInput("--layers must be non-negative");
                }
                const VqeResult r = vqe(h, v);
                const double ground = h.ground_energy();
                out.config = {{"hamiltonian", absolute(o->hamiltonian)},
                              {"layers", o->layers},
                              {"entangler", o->entangler},
                              {"optimizer", o->optimizer},
                              {"max-iterations", o->max_iterations},
                              {"spsa-a", o->spsa_a},
                              {"spsa-c", o->spsa_c},
                              {"device", absolute(o->device)},
                              {"shots", o->shots},
                              {"zne", o->zne},
                              {"stretches", v.stretches}};
                json &res = out.results;
                res["num_qubits"] = h.num_qubits();
                res["num_parameters"] = v.ansatz.num_parameters();
                res["ground_energy_oracle"] = ground;
                res["final_energy"] = r.final_energy;
                res["error"] = r.final_energy - ground;
                res["theta"] = r.theta;
                res["trace"] = r.trace;
                res["best"] = r.best;
                res["iterations"] = r.iterations;
                res["evaluations"] = r.evaluations;
                res["converged"] = r.converged;
                out.csv = "iteration,value,best\n";
                for (std::size_t i = 0; i < r.trace.size(); ++i) {
                    out.csv += std::to_string(i) + "," + csv_number(r.trace[i]) + "," + csv_number(r.best[i]) + "\n";
                }
                return out;
            }};
}

Command kernel_command(CLI::App &app, CommonOptions &common) {
    struct Opts {
        std::string dataset, test_dataset, device, classifier = "svm", entangler = "linear";
        int reps = 2, layers = 1, max_iterations = 200;
        std::uint64_t shots = 0;
        double svm_c = 1.0, spsa_a = 0.2, spsa_c = 0.1;
    };
    auto o = std::make_shared<Opts>();
    CLI::App *sub = subcommand(app, "kernel", "Quantum-kernel SVM or variational classifier", common);
    sub->add_option("--dataset", o->dataset, "Training CSV: x0..x{n-1},label")->required();
    sub->add_option("--test-dataset", o->test_dataset, "Held-out CSV with the same columns");
    sub->add_option("--reps", o->reps, "Feature map repetitions")->capture_default_str();
    sub->add_option("--shots", o->shots, "Shots per kernel entry or per score; 0 is exact")->capture_default_str();
    sub->add_option("--device", o->device, "Device JSON; noisy kernel estimation when given");
    sub->add_option("--classifier", o->classifier, "svm or variational")->capture_default_str();
    sub->add_option("--svm-c", o->svm_c, "SVM soft-margin constant")->capture_default_str();
    sub->add_option("--layers", o->layers, "Variational classifier layers")->capture_default_str();
    sub->add_option("--entangler", o->entangler, "Variational classifier entangler")->capture_default_str();
    sub->add_option("--max-iterations", o->max_iterations, "SPSA iterations")->capture_default_str();
    sub->add_option("--spsa-a", o->spsa_a, "SPSA step gain a")->capture_default_str();
    sub->add_option("--spsa-c", o->spsa_c, "SPSA perturbation gain c")->capture_default_str();
    return {sub, [o, &common](std::uint64_t seed) {
                Output out;
                const Dataset train = load_dataset(o->dataset);
                std::optional<Dataset> test;
                if (!o->test_dataset.empty()) {
                    test = load_dataset(o->test_dataset);
                    if (test->dim() != train.dim()) {
                        throw InvalidInput("test dataset dimension differs from the training dataset");
                    }
                }
                const FeatureMapConfig fm{train.dim(), o->reps};
                out.config = {{"dataset", absolute(o->dataset)},
                              {"test-dataset", absolute(o->test_dataset)},
                              {"reps", o->reps},
                              {"shots", o->shots},
                              {"device", absolute(o->device)},
                              {"classifier", o->classifier}};
                json &res = out.results;
                res["num_points"] = train.size();
                res["dimension"] = train.dim();
                if (o->classifier == "svm") {
                    std::optional<DeviceModel> device;
                    NoiseModel noise;
                    if (!o->device.empty()) {
                        device = load_device(o->device);
                        noise = build_noise_model(*device);
                    }
                    KernelOptions ko;
                    ko.shots = o->shots;
                    ko.seed = derive_seed(seed, 0);
                    ko.noise = device ? &noise : nullptr;
                    ko.threads = resolve_threads(common.threads);
                    const KernelMatrix k = kernel_matrix(train.x, fm, ko);
                    const SvmModel model = train_svm(k.values, train.y, o->svm_c);
                    std::vector<int> pred;
                    for (Eigen::Index i = 0; i < k.values.rows(); ++i) {
                        const Eigen::VectorXd row = k.values.row(i);
                        pred.push_back(svm_predict(model, std::span<const double>(row.data(), row.size())));
                    }
                    const Eigen::MatrixXd sym = 0.5 * (k.values + k.values.transpose());
                    out.config["svm-c"] = o->svm_c;
                    res["backend"] = k.backend;
                    res["kernel"] = matrix_json(k.values);
                    res["kernel_min_eigenvalue"] =
                        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly).eigenvalues()(0);
                    res["alpha"] = model.alpha;
                    res["b"] = model.b;
                    res["smo_iterations"] = model.iterations;
                    res["kkt_gap"] = model.kkt_gap;
                    res["train_predictions"] = pred;
                    res["train_accuracy"] = accuracy(pred, train.y);
                    if (test) {
                        KernelOptions tko = ko;
                        tko.seed = derive_seed(seed, 1);
                        const Eigen::MatrixXd kt = kernel_cross(test->x, train.x, fm, tko);
                        std::vector<int> tp;
                        for (Eigen::Index i = 0; i < kt.rows(); ++i) {
                            const Eigen::VectorXd row = kt.row(i);
                            tp.push_back(svm_predict(model, std::span<const double>(row.data(), row.size())));
                        }
                        res["test_predictions"] = tp;
                        res["test_accuracy"] = accuracy(tp, test->y);
                    }
                    std::ostringstream csv;
                    csv.precision(17);
                    for (Eigen::Index i = 0; i < k.values.rows(); ++i) {
                        for (Eigen::Index j = 0; j < k.values.cols(); ++j) {
                            csv << (j ? "," : "") << k.values(i, j);
                        }
                        csv << "\n";
                    }
                    out.csv = csv.str();
                } else if (o->classifier == "variational") {
                    if (!o->device.empty()) {
                        throw InvalidInput("the variational classifier runs on the ideal backend only");
                    }
                    VariationalClassifierOptions vo;
                    vo.feature_map = fm;
                    vo.ansatz = {train.dim(), o->layers, entangler_from_name(o->entangler)};
                    vo.spsa.max_iterations = o->max_iterations;
                    vo.spsa.a = o->spsa_a;
                    vo.spsa.c = o->spsa_c;
                    vo.shots = o->shots;
                    vo.seed = seed;
                    const VariationalClassifier vc = train_variational_classifier(train, vo);
                    out.config["layers"] = o->layers;
                    out.config["entangler"] = o->entangler;
                    out.config["max-iterations"] = o->max_iterations;
                    out.config["spsa-a"] = o->spsa_a;
                    out.config["spsa-c"] = o->spsa_c;
                    res["backend"] = "statevector";
                    res["constant"] = vc.constant;
                    res["theta"] = vc.theta;
                    res["loss_trace"] = vc.loss_trace;
                    res["train_accuracy"] = vc.training_accuracy;
                    out.csv = "iteration,loss\n";
                    for (std::size_t i = 0; i < vc.loss_trace.size(); ++i) {
                        out.csv += std::to_string(i) + "," + csv_number(vc.loss_trace[i]) + "\n";
                    }
                    if (test) {
                        std::vector<int> tp;
                        for (const auto &x : test->x) {
                            tp.push_back(vc.predict(x));
                        }
                        res["test_predictions"] = tp;
                        res["test_accuracy"] = accuracy(tp, test->y);
                    }
                } else {
                    throw InvalidInput("--classifier must be svm or variational");
                }
                return out;
            }};
}

Command device_validate_command(CLI::App &app, CommonOptions &common) {
    auto path = std::make_shared<std::string>();
    CLI::App *sub = subcommand(app, "device-validate", "Check a device file and summarize it", common);
    sub->add_option("--device", *path, "Device JSON")->required();
    return {sub, [path](std::uint64_t) {
                Output out;
                const DeviceModel d = load_device(*path);
                out.config = {{"device", absolute(*path)}};
                json &res = out.results;
                std::size_t undirected = 0;
                for (const auto &nbrs : d.adjacency()) {
                    undirected += nbrs.size();
                }
                res["valid"] = true;
                res["name"] = d.name;
                res["num_qubits"] = d.num_qubits;
                res["directed_edges"] = d.coupling.size();
                res["undirected_edges"] = undirected / 2;
                res["degree_sequence"] = d.degree_sequence();
                res["num_gate_entries"] = d.gates.size();
                res["mean_cx_error"] = d.mean_gate_error(GateKind::CX);
                res["mean_u3_error"] = d.mean_gate_error(GateKind::U3);
                res["mean_readout_error"] = d.mean_readout_error();
                res["has_coherence"] = !d.coherence.empty();
                out.csv = "quantity,value\n";
                for (const char *k : {"num_qubits", "directed_edges", "undirected_edges", "num_gate_entries"}) {
                    out.csv += std::string(k) + "," + res[k].dump() + "\n";
                }
                for (const char *k : {"mean_cx_error", "mean_u3_error", "mean_readout_error"}) {
                    out.csv += std::string(k) + "," + csv_number(res[k].get<double>()) + "\n";
                }
                return out;
            }};
}

}  // namespace

std::vector<Command> make_commands(CLI::App &app, CommonOptions &common) {
    return {transpile_command(app, common), simulate_command(app, common), qv_command(app, common),
            mitigate_command(app, common),  vqe_command(app, common),      kernel_command(app, common),
            device_validate_command(app, common)};
}

}  // namespace qvb::cli
