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

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qvbench/apps.hpp"
#include "qvbench/rng.hpp"
#include "qvbench/simulator.hpp"

namespace qvb {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(',', start);
        std::string_view cell = line.substr(start, end == std::string_view::npos ? line.npos : end - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
            cell.remove_prefix(1);
        }
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
            cell.remove_suffix(1);
        }
        out.emplace_back(cell);
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

double parse_double(const std::string &s, std::size_t line) {
    double v = 0;
    const char *b = s.data();
    if (!s.empty() && s[0] == '+') {
        ++b;
    }
    const auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw InvalidInput("dataset line " + std::to_string(line) + ": '" + s + "' is not a finite number");
    }
    return v;
}

double parity_score(const Circuit &c) {
    const StateVector psi = run_statevector(c);
    const auto amps = psi.amplitudes();
    double s = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        s += (std::popcount(i) & 1 ? -1.0 : 1.0) * std::norm(amps[i]);
    }
    return s;
}

Circuit classifier_circuit(const FeatureMapConfig &map, const AnsatzConfig &ansatz, std::span<const double> x,
                           std::span<const double> theta) {
    Circuit c = feature_map(map, x);
    c.append(build_ansatz(ansatz, theta));
    return c;
}

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double &t : v) {
        t = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return v;
}

}  // namespace

Dataset parse_dataset_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
        start = end + 1;
    }
    if (lines.empty()) {
        throw InvalidInput("dataset is empty");
    }
    const auto header = split_csv_line(lines[0]);
    const auto label_it = std::find(header.begin(), header.end(), "label");
    if (label_it == header.end()) {
        throw InvalidInput("dataset header has no 'label' column");
    }
    const std::size_t label_col = label_it - header.begin();
    std::vector<std::size_t> feature_cols;
    for (std::size_t f = 0; f < header.size(); ++f) {
        const auto it = std::find(header.begin(), header.end(), "x" + std::to_string(f));
        if (it == header.end()) {
            break;
        }
        feature_cols.push_back(it - header.begin());
    }
    if (feature_cols.empty()) {
        throw InvalidInput("dataset header has no feature columns x0, x1, ...");
    }
    if (feature_cols.size() + 1 != header.size()) {
        throw InvalidInput("dataset header must be x0..x" + std::to_string(feature_cols.size() - 1) +
                           " plus label; found unexpected or missing columns");
    }
    Dataset d;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto cells = split_csv_line(lines[l]);
        if (cells.size() != header.size()) {
            throw InvalidInput("dataset line " + std::to_string(l + 1) + " has " + std::to_string(cells.size()) +
                               " columns, header has " + std::to_string(header.size()));
        }
        std::vector<double> x;
        for (std::size_t col : feature_cols) {
            x.push_back(parse_double(cells[col], l + 1));
        }
        const double y = parse_double(cells[label_col], l + 1);
        if (y != 1.0 && y != -1.0) {
            throw InvalidInput("dataset line " + std::to_string(l + 1) + ": label must be -1 or 1");
        }
        d.x.push_back(std::move(x));
        d.y.push_back(static_cast<int>(y));
    }
    if (d.x.empty()) {
        throw InvalidInput("dataset has no rows");
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open dataset '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_dataset_csv(buf.str());
}

std::string dataset_to_csv(const Dataset &data) {
    std::ostringstream s;
    s.precision(17);
    for (int f = 0; f < data.dim(); ++f) {
        s << 'x' << f << ',';
    }
    s << "label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.x[i]) {
            s << v << ',';
        }
        s << data.y[i] << '\n';
    }
    return s.str();
}

Dataset make_separable_dataset(const FeatureMapConfig &map, const AnsatzConfig &classifier, std::size_t num_points,
                               double margin, std::uint64_t seed) {
    if (classifier.num_qubits != map.num_qubits) {
        throw InvalidInput("classifier and feature map widths differ");
    }
    const std::vector<double> theta = random_angles(classifier.num_parameters(), derive_seed(seed, 0));
    Rng rng(derive_seed(seed, 1));
    Dataset d;
    const std::size_t max_draws = 1000 * std::max<std::size_t>(num_points, 1);
    for (std::size_t draw = 0; d.size() < num_points; ++draw) {
        if (draw >= max_draws) {
            throw InvalidInput("margin " + std::to_string(margin) + " rejects nearly every point");
        }
        std::vector<double> x(map.num_qubits);
        for (double &v : x) {
            v = rng.uniform(0, 2 * std::numbers::pi);
        }
        const double s = parity_score(classifier_circuit(map, classifier, x, theta));
        if (std::abs(s) < margin) {
            continue;
        }
        d.x.push_back(std::move(x));
        d.y.push_back(s > 0 ? 1 : -1);
    }
    return d;
}

double accuracy(std::span<const int> predicted, std::span<const int> labels) {
    if (predicted.size() != labels.size() || labels.empty()) {
        throw InvalidInput("accuracy needs equally sized, non-empty label lists");
    }
    std::size_t ok = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ok += predicted[i] == labels[i];
    }
    return static_cast<double>(ok) / static_cast<double>(labels.size());
}

double VariationalClassifier::score(std::span<const double> x) const {
    if (constant) {
        return constant_label;
    }
    return parity_score(classifier_circuit(feature_map, ansatz, x, theta));
}

int VariationalClassifier::predict(std::span<const double> x) const { return score(x) >= 0 ? 1 : -1; }

VariationalClassifier train_variational_classifier(const Dataset &data, const VariationalClassifierOptions &options) {
    if (data.size() == 0) {
        throw InvalidInput("classifier needs training data");
    }
    if (data.dim() != options.feature_map.num_qubits || options.ansatz.num_qubits != options.feature_map.num_qubits) {
        throw InvalidInput("dataset, feature map and classifier widths must agree");
    }
    VariationalClassifier vc;
    vc.feature_map = options.feature_map;
    vc.ansatz = options.ansatz;
    if (std::all_of(data.y.begin(), data.y.end(), [&](int y) { return y == data.y[0]; })) {
        vc.constant = true;
        vc.constant_label = data.y[0];
        vc.training_accuracy = 1.0;
        return vc;
    }

    const int n = options.feature_map.num_qubits;
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    const MeasureMap mm = MeasureMap::identity(n);
    const std::uint64_t eval_seed = derive_seed(options.seed, 3);
    const Objective loss = [&](std::span<const double> theta, std::uint64_t call) {
        double total = 0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const Circuit c = classifier_circuit(options.feature_map, options.ansatz, data.x[i], theta);
            double s;
            if (options.shots == 0) {
                s = parity_score(c);
            } else {
                const StateVector psi = run_statevector(c);
                s = parity_expectation(
                    sample_counts(psi, mm, options.shots, nullptr, derive_seed(eval_seed, call * data.size() + i)),
                    mask);
            }
            total += std::max(0.0, 1.0 - data.y[i] * s);
        }
        return total / static_cast<double>(data.size());
    };
    SpsaOptions so = options.spsa;
    so.seed = derive_seed(options.seed, 2);
    OptimizerTrace t =
        spsa_minimize(loss, random_angles(options.ansatz.num_parameters(), derive_seed(options.seed, 1)), so);
    vc.theta = std::move(t.x);
    vc.loss_trace = std::move(t.values);
    std::vector<int> pred;
    for (const auto &x : data.x) {
        pred.push_back(vc.predict(x));
    }
    vc.training_accuracy = accuracy(pred, data.y);
    return vc;
}

}  // namespace qvb
