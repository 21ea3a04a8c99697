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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qvbench/circuit.hpp"
#include "qvbench/device.hpp"
#include "qvbench/errors.hpp"
#include "qvbench/noise_model.hpp"
#include "qvbench/pauli.hpp"

namespace qvb {

// ---------------------------------------------------------------------------
// Hamiltonians and trial states.

struct PauliTerm {
    double coeff = 0;
    PauliString pauli;
};

class PauliHamiltonian {
   public:
    PauliHamiltonian() = default;
    explicit PauliHamiltonian(int num_qubits) : num_qubits_(num_qubits) {}

    /// Throws on non-finite coefficient or length mismatch.
    void add_term(double coeff, const PauliString &pauli);

    int num_qubits() const { return num_qubits_; }
    const std::vector<PauliTerm> &terms() const { return terms_; }

    Eigen::MatrixXcd matrix() const;
    /// Smallest eigenvalue of the dense matrix.
    double ground_energy() const;

    /// JSON list of {"coeff": number, "pauli": string}.
    static PauliHamiltonian parse_json(std::string_view text);
    static PauliHamiltonian load(const std::filesystem::path &path);
    std::string to_json() const;

   private:
    int num_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

enum class Entangler { Linear, Ring };

Entangler entangler_from_name(std::string_view name);
std::string_view entangler_name(Entangler e);

/// Hardware-efficient trial state: d + 1 rotation layers (ry then rz on
/// every qubit) separated by d cx entangler layers.
struct AnsatzConfig {
    int num_qubits = 1;
    int layers = 0;
    Entangler entangler = Entangler::Linear;

    int num_parameters() const { return num_qubits * (layers + 1) * 2; }
};

Circuit build_ansatz(const AnsatzConfig &config, std::span<const double> theta);

/// How expectations are evaluated. With no noise model the statevector
/// backend is used; with one, the density backend.
struct Backend {
    const NoiseModel *noise = nullptr;
    /// 0 = exact expectation values.
    std::uint64_t shots = 0;
};

/// Sum of coeff * <P>; in shot mode each term is measured separately.
double energy(const PauliHamiltonian &hamiltonian, const Circuit &state_prep, const Backend &backend,
              std::uint64_t seed = 0);

/// Richardson-mitigated energy over noise models built from `device` at
/// each stretch.
double zne_energy(const PauliHamiltonian &hamiltonian, const Circuit &state_prep, const DeviceModel &device,
                  std::span<const double> stretches, std::uint64_t shots, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Classical optimizers.

/// Objective value for parameters x; `call` counts evaluations so shot-based
/// objectives can derive independent seeds.
using Objective = std::function<double(std::span<const double> x, std::uint64_t call)>;

struct OptimizerTrace {
    std::vector<double> x;
    /// One value per iteration.
    std::vector<double> values;
    /// Running minimum of `values`.
    std::vector<double> best;
    double final_value = 0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

class OptimizerDiverged : public Error {
   public:
    OptimizerDiverged(const std::string &message, OptimizerTrace trace)
        : Error(message), trace_(std::move(trace)) {}
    const OptimizerTrace &trace() const { return trace_; }

   private:
    OptimizerTrace trace_;
};

struct SpsaOptions {
    int max_iterations = 200;
    double a = 0.2;
    double c = 0.1;
    /// Stability constant; negative selects 10% of max_iterations.
    double big_a = -1;
    double alpha = 0.602;
    double gamma = 0.101;
    /// Stop when the value changed by less than `tol` over `window` iterations.
    int window = 25;
    double tol = 1e-7;
    std::uint64_t seed = 0;
};

/// Value per iteration is the mean of the two perturbed evaluations.
OptimizerTrace spsa_minimize(const Objective &f, std::vector<double> x0, const SpsaOptions &options);

struct NelderMeadOptions {
    int max_iterations = 500;
    double initial_step = 0.5;
    /// Stop when the simplex value spread drops below `tol`.
    double tol = 1e-9;
};

OptimizerTrace nelder_mead_minimize(const Objective &f, std::vector<double> x0, const NelderMeadOptions &options);

enum class OptimizerKind { Spsa, NelderMead };

OptimizerKind optimizer_from_name(std::string_view name);
std::string_view optimizer_name(OptimizerKind kind);

// ---------------------------------------------------------------------------
// Variational eigensolver.

struct VqeOptions {
    AnsatzConfig ansatz;
    OptimizerKind optimizer = OptimizerKind::Spsa;
    SpsaOptions spsa;
    NelderMeadOptions nelder_mead;
    /// Noise source; nullptr for an ideal backend.
    const DeviceModel *device = nullptr;
    std::uint64_t shots = 0;
    /// Mitigate every energy evaluation with these stretches (needs device).
    bool zne = false;
    std::vector<double> stretches = {1.0, 1.5, 2.0};
    std::uint64_t seed = 0;
    /// Starting point; drawn uniformly from [-pi, pi) when empty.
    std::vector<double> initial;
};

struct VqeResult {
    std::vector<double> theta;
    std::vector<double> trace;
    std::vector<double> best;
    double final_energy = 0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

VqeResult vqe(const PauliHamiltonian &hamiltonian, const VqeOptions &options);

// ---------------------------------------------------------------------------
// Quantum kernels and classifiers.

/// Per repetition: h on every qubit, u1(2 x_i), then for each pair i < j
/// cx(i, j), u1(2 (pi - x_i)(pi - x_j)) on j, cx(i, j).
struct FeatureMapConfig {
    int num_qubits = 2;
    int repetitions = 2;
};

Circuit feature_map(const FeatureMapConfig &config, std::span<const double> x);

struct KernelOptions {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    const NoiseModel *noise = nullptr;
    unsigned threads = 0;
};

struct KernelMatrix {
    Eigen::MatrixXd values;
    std::uint64_t shots = 0;
    std::string backend;
};

using Points = std::vector<std::vector<double>>;

/// |<phi(a)|phi(b)>|^2, or the all-zeros frequency of U(b) U(a)^dag in shot mode.
double kernel_entry(const FeatureMapConfig &config, std::span<const double> a, std::span<const double> b,
                    const KernelOptions &options, std::uint64_t seed);

KernelMatrix kernel_matrix(const Points &x, const FeatureMapConfig &config, const KernelOptions &options);

/// Rows index `rows`, columns index `cols`.
Eigen::MatrixXd kernel_cross(const Points &rows, const Points &cols, const FeatureMapConfig &config,
                             const KernelOptions &options);

struct SvmModel {
    std::vector<double> alpha;
    std::vector<int> labels;
    double b = 0;
    double c = 1;
    int iterations = 0;
    /// max violation m - M at termination.
    double kkt_gap = 0;
    /// Set when every training label is identical.
    bool constant = false;
};

SvmModel train_svm(const Eigen::MatrixXd &k, std::span<const int> labels, double c, double tol = 1e-3,
                   int max_iterations = 1'000'000);

/// sum_i alpha_i y_i K(x_i, x) + b.
double svm_decision(const SvmModel &model, std::span<const double> kernel_row);
int svm_predict(const SvmModel &model, std::span<const double> kernel_row);

/// Largest KKT violation of the model over the training kernel.
double svm_kkt_violation(const SvmModel &model, const Eigen::MatrixXd &k);

struct Dataset {
    Points x;
    std::vector<int> y;
    int dim() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
    std::size_t size() const { return x.size(); }
};

/// CSV with header x0,...,x{n-1},label and labels in {-1, +1}.
Dataset parse_dataset_csv(std::string_view text);
Dataset load_dataset(const std::filesystem::path &path);
std::string dataset_to_csv(const Dataset &data);

/// Points drawn uniformly from [0, 2pi)^n, labelled by the sign of
/// <phi(x)| V^dag Z...Z V |phi(x)> for a fixed random trial state V of
/// `classifier`; points with |value| < margin are rejected.
Dataset make_separable_dataset(const FeatureMapConfig &map, const AnsatzConfig &classifier, std::size_t num_points,
                               double margin, std::uint64_t seed);

double accuracy(std::span<const int> predicted, std::span<const int> labels);

struct VariationalClassifierOptions {
    FeatureMapConfig feature_map;
    AnsatzConfig ansatz;
    SpsaOptions spsa;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct VariationalClassifier {
    FeatureMapConfig feature_map;
    AnsatzConfig ansatz;
    std::vector<double> theta;
    /// Set when every training label is identical.
    bool constant = false;
    int constant_label = 1;
    std::vector<double> loss_trace;
    double training_accuracy = 0;

    /// Exact parity score <Z...Z> after feature map and trial state.
    double score(std::span<const double> x) const;
    int predict(std::span<const double> x) const;
};

VariationalClassifier train_variational_classifier(const Dataset &data, const VariationalClassifierOptions &options);

}  // namespace qvb
