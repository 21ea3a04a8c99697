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

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qvbench/apps.hpp"
#include "qvbench/mitigation.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/simulator.hpp"

namespace qvb {

using nlohmann::json;

void PauliHamiltonian::add_term(double coeff, const PauliString &pauli) {
    if (!std::isfinite(coeff)) {
        throw InvalidInput("Hamiltonian coefficient is not finite");
    }
    if (terms_.empty() && num_qubits_ == 0) {
        num_qubits_ = pauli.num_qubits();
    }
    if (pauli.num_qubits() != num_qubits_) {
        throw InvalidInput("Pauli term '" + pauli.str() + "' does not act on " + std::to_string(num_qubits_) +
                           " qubits");
    }
    terms_.push_back({coeff, pauli});
}

Eigen::MatrixXcd PauliHamiltonian::matrix() const {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : terms_) {
        h += t.coeff * t.pauli.matrix();
    }
    return h;
}

double PauliHamiltonian::ground_energy() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

PauliHamiltonian PauliHamiltonian::parse_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidInput(std::string("Hamiltonian parse error: ") + e.what());
    }
    if (!root.is_array() || root.empty()) {
        throw InvalidInput("Hamiltonian must be a non-empty list of {coeff, pauli} terms");
    }
    PauliHamiltonian h;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const json &t = root[i];
        const std::string where = "term " + std::to_string(i);
        if (!t.is_object() || !t.contains("coeff") || !t.contains("pauli")) {
            throw InvalidInput(where + ": expected {\"coeff\": number, \"pauli\": string}");
        }
        if (!t["coeff"].is_number() || !t["pauli"].is_string()) {
            throw InvalidInput(where + ": coeff must be a number and pauli a string");
        }
        for (const auto &[k, v] : t.items()) {
            if (k != "coeff" && k != "pauli") {
                throw InvalidInput(where + ": unknown key '" + k + "'");
            }
        }
        h.add_term(t["coeff"].get<double>(), PauliString::parse(t["pauli"].get<std::string>()));
    }
    return h;
}

PauliHamiltonian PauliHamiltonian::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open Hamiltonian file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

std::string PauliHamiltonian::to_json() const {
    json out = json::array();
    for (const auto &t : terms_) {
        out.push_back({{"coeff", t.coeff}, {"pauli", t.pauli.str()}});
    }
    return out.dump(2) + "\n";
}

Entangler entangler_from_name(std::string_view name) {
    if (name == "linear") {
        return Entangler::Linear;
    }
    if (name == "ring") {
        return Entangler::Ring;
    }
    throw InvalidInput("unknown entangler '" + std::string(name) + "' (expected linear or ring)");
}

std::string_view entangler_name(Entangler e) { return e == Entangler::Linear ? "linear" : "ring"; }

Circuit build_ansatz(const AnsatzConfig &config, std::span<const double> theta) {
    if (config.num_qubits < 1 || config.layers < 0) {
        throw InvalidInput("ansatz needs at least one qubit and a non-negative layer count");
    }
    if (static_cast<int>(theta.size()) != config.num_parameters()) {
        throw InvalidInput("ansatz expects " + std::to_string(config.num_parameters()) + " parameters, got " +
                           std::to_string(theta.size()));
    }
    const int n = config.num_qubits;
    Circuit c(n, 0, "ansatz");
    std::size_t k = 0;
    for (int layer = 0; layer <= config.layers; ++layer) {
        for (int q = 0; q < n; ++q) {
            c.append(Gate::ry(q, theta[k++]));
            c.append(Gate::rz(q, theta[k++]));
        }
        if (layer == config.layers) {
            break;
        }
        for (int q = 0; q + 1 < n; ++q) {
            c.append(Gate::cx(q, q + 1));
        }
        if (config.entangler == Entangler::Ring && n > 2) {
            c.append(Gate::cx(n - 1, 0));
        }
    }
    return c;
}

namespace {

double statevector_term(const StateVector &psi, const PauliString &p, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        return expectation(psi, p);
    }
    StateVector r = psi;
    MeasureMap mm;
    mm.num_clbits = psi.num_qubits();
    std::uint64_t mask = 0;
    for (int q = 0; q < psi.num_qubits(); ++q) {
        if (p[q] == Pauli::I) {
            continue;
        }
        if (p[q] == Pauli::X) {
            r.apply(Gate::h(q));
        } else if (p[q] == Pauli::Y) {
            r.apply(Gate::sdg(q));
            r.apply(Gate::h(q));
        }
        mm.qubit_to_clbit.emplace_back(q, q);
        mask |= std::uint64_t{1} << q;
    }
    if (mask == 0) {
        return 1.0;
    }
    return parity_expectation(sample_counts(r, mm, shots, nullptr, seed), mask);
}

}  // namespace

double energy(const PauliHamiltonian &hamiltonian, const Circuit &state_prep, const Backend &backend,
              std::uint64_t seed) {
    if (state_prep.num_qubits() != hamiltonian.num_qubits()) {
        throw InvalidInput("state preparation has " + std::to_string(state_prep.num_qubits()) +
                           " qubits, Hamiltonian has " + std::to_string(hamiltonian.num_qubits()));
    }
    const auto &terms = hamiltonian.terms();
    double e = 0;
    if (!backend.noise) {
        const StateVector psi = run_statevector(without_measurements(state_prep));
        for (std::size_t t = 0; t < terms.size(); ++t) {
            e += terms[t].coeff * statevector_term(psi, terms[t].pauli, backend.shots, derive_seed(seed, t));
        }
        return e;
    }
    const DensityMatrix rho = run_density(without_measurements(state_prep), *backend.noise);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        e += terms[t].coeff * measure_expectation(rho, terms[t].pauli, backend.shots, &backend.noise->readout(),
                                                  derive_seed(seed, t));
    }
    return e;
}

double zne_energy(const PauliHamiltonian &hamiltonian, const Circuit &state_prep, const DeviceModel &device,
                  std::span<const double> stretches, std::uint64_t shots, std::uint64_t seed) {
    const std::vector<double> g = richardson_coefficients(stretches);
    double e = 0;
    for (std::size_t j = 0; j < stretches.size(); ++j) {
        const NoiseModel noise = build_noise_model(device, stretches[j]);
        e += g[j] * energy(hamiltonian, state_prep, Backend{&noise, shots}, derive_seed(seed, 1000 + j));
    }
    return e;
}

}  // namespace qvb
