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

#include "qvbench/noise_model.hpp"

#include "qvbench/errors.hpp"

namespace qvb {

Eigen::Matrix2d symmetric_confusion(double flip_probability) {
    if (!(flip_probability >= 0.0 && flip_probability <= 1.0)) {
        throw InvalidInput("readout flip probability outside [0, 1]");
    }
    Eigen::Matrix2d m;
    m << 1 - flip_probability, flip_probability, flip_probability, 1 - flip_probability;
    return m;
}

void NoiseModel::add_channel(GateKind kind, std::vector<int> qubits, QuantumChannel channel) {
    if (static_cast<int>(qubits.size()) != channel.num_qubits()) {
        throw InvalidInput("channel '" + channel.label() + "' acts on " + std::to_string(channel.num_qubits()) +
                           " qubit(s) but location has " + std::to_string(qubits.size()));
    }
    if (gate_arity(kind) != 0 && gate_arity(kind) != qubits.size()) {
        throw InvalidInput("noise location arity does not match gate '" + std::string(gate_name(kind)) + "'");
    }
    NoiseLocation loc{kind, std::move(qubits)};
    channels_.insert_or_assign(std::move(loc), std::move(channel));
}

void NoiseModel::add_spectator(GateKind kind, std::vector<int> qubits, int spectator, QuantumChannel channel) {
    if (channel.num_qubits() != 1) {
        throw InvalidInput("spectator channels act on one qubit");
    }
    for (int q : qubits) {
        if (q == spectator) {
            throw InvalidInput("spectator qubit must not be an operand of the gate");
        }
    }
    spectators_[NoiseLocation{kind, std::move(qubits)}].push_back(SpectatorChannel{spectator, std::move(channel)});
}

void NoiseModel::set_readout(int qubit, const Eigen::Matrix2d &confusion) {
    const Eigen::RowVector2d col_sums = confusion.colwise().sum();
    if ((confusion.array() < 0).any() || std::abs(col_sums(0) - 1) > 1e-9 || std::abs(col_sums(1) - 1) > 1e-9) {
        throw InvalidInput("readout confusion matrix columns must be probability vectors");
    }
    readout_[qubit] = confusion;
}

const QuantumChannel *NoiseModel::channel_for(const Gate &gate) const {
    if (gate.kind == GateKind::Barrier || gate.kind == GateKind::Measure) {
        return nullptr;
    }
    auto it = channels_.find(NoiseLocation{gate.kind, gate.qubits});
    if (it != channels_.end()) {
        return &it->second;
    }
    if (is_single_qubit_unitary(gate.kind) && gate.kind != GateKind::U1) {
        it = channels_.find(NoiseLocation{GateKind::U3, gate.qubits});
        if (it != channels_.end()) {
            return &it->second;
        }
    }
    return nullptr;
}

std::span<const SpectatorChannel> NoiseModel::spectators_for(const Gate &gate) const {
    if (spectators_.empty()) {
        return {};
    }
    auto it = spectators_.find(NoiseLocation{gate.kind, gate.qubits});
    if (it == spectators_.end()) {
        return {};
    }
    return it->second;
}

NoiseModel NoiseModel::relabeled(std::span<const int> old_to_new) const {
    auto map = [&](const std::vector<int> &qs, std::vector<int> &out) {
        out.clear();
        for (int q : qs) {
            if (q < 0 || q >= static_cast<int>(old_to_new.size()) || old_to_new[q] < 0) {
                return false;
            }
            out.push_back(old_to_new[q]);
        }
        return true;
    };
    NoiseModel out;
    out.stretch_ = stretch_;
    std::vector<int> qs;
    for (const auto &[loc, ch] : channels_) {
        if (map(loc.qubits, qs)) {
            out.channels_.insert_or_assign(NoiseLocation{loc.kind, qs}, ch);
        }
    }
    for (const auto &[loc, list] : spectators_) {
        if (!map(loc.qubits, qs)) {
            continue;
        }
        for (const auto &s : list) {
            std::vector<int> sq;
            if (map({s.qubit}, sq)) {
                out.spectators_[NoiseLocation{loc.kind, qs}].push_back(SpectatorChannel{sq[0], s.channel});
            }
        }
    }
    for (const auto &[q, m] : readout_) {
        if (q >= 0 && q < static_cast<int>(old_to_new.size()) && old_to_new[q] >= 0) {
            out.readout_[old_to_new[q]] = m;
        }
    }
    return out;
}

}  // namespace qvb
