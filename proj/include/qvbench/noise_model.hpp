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
#include <map>
#include <span>
#include <vector>

#include "qvbench/channel.hpp"
#include "qvbench/circuit.hpp"

namespace qvb {

/// Where a channel fires: after gates of `kind` on exactly `qubits`.
struct NoiseLocation {
    GateKind kind;
    std::vector<int> qubits;

    auto operator<=>(const NoiseLocation &) const = default;
};

/// Extra channel on a qubit that is idle while `location` runs.
struct SpectatorChannel {
    int qubit;
    QuantumChannel channel;
};

/// Per-qubit assignment matrix: m(i, j) = P(read i | prepared j).
using ReadoutMap = std::map<int, Eigen::Matrix2d>;

Eigen::Matrix2d symmetric_confusion(double flip_probability);

/// Channels attached to gate locations plus readout confusion. Channels fire
/// after the ideal gate. Lookup is exact on (kind, qubits); a single-qubit
/// gate other than u1 without its own entry falls back to the u3 entry on
/// the same qubit (u3 is the device's generic pulse).
class NoiseModel {
   public:
    void add_channel(GateKind kind, std::vector<int> qubits, QuantumChannel channel);
    void add_spectator(GateKind kind, std::vector<int> qubits, int spectator, QuantumChannel channel);
    void set_readout(int qubit, const Eigen::Matrix2d &confusion);

    const QuantumChannel *channel_for(const Gate &gate) const;
    std::span<const SpectatorChannel> spectators_for(const Gate &gate) const;

    const std::map<NoiseLocation, QuantumChannel> &channels() const { return channels_; }
    const ReadoutMap &readout() const { return readout_; }

    double stretch() const { return stretch_; }
    void set_stretch(double c) { stretch_ = c; }

    bool empty() const { return channels_.empty() && spectators_.empty() && readout_.empty(); }

    /// Keeps locations whose qubits all appear in `old_to_new` (entry -1 =
    /// dropped) and relabels them.
    NoiseModel relabeled(std::span<const int> old_to_new) const;

   private:
    std::map<NoiseLocation, QuantumChannel> channels_;
    std::map<NoiseLocation, std::vector<SpectatorChannel>> spectators_;
    ReadoutMap readout_;
    double stretch_ = 1.0;
};

}  // namespace qvb
