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
#include <deque>
#include <limits>

#include "qvbench/errors.hpp"
#include "qvbench/transpiler.hpp"

namespace qvb {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

std::vector<std::vector<int>> all_pairs_distance(const std::vector<std::vector<int>> &adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
    for (int s = 0; s < n; ++s) {
        std::deque<int> queue{s};
        dist[s][s] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int w : adj[u]) {
                if (dist[s][w] == kUnreachable) {
                    dist[s][w] = dist[s][u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return dist;
}

}  // namespace

RoutingResult route(const Circuit &circuit, const DeviceModel &device, const Layout &layout,
                    const RouteOptions &options) {
    const int np = device.num_qubits;
    if (circuit.num_qubits() > np) {
        throw CapacityError("circuit wider than device '" + device.name + "'");
    }
    if (layout.num_physical != np || layout.num_virtual() < circuit.num_qubits() || !layout.valid()) {
        throw InvalidInput("layout does not match circuit and device");
    }
    const Layout init = layout.completed();
    const Circuit work = circuit.widened(np);
    const auto adj = device.adjacency();
    const auto dist = all_pairs_distance(adj);

    std::vector<int> v2p = init.v2p;
    std::vector<int> p2v = init.p2v();

    const auto &gates = work.gates();
    for (const auto &g : gates) {
        if (g.qubits.size() == 2 && dist[v2p[g.qubits[0]]][v2p[g.qubits[1]]] == kUnreachable) {
            throw InvalidInput("interaction between qubits " + std::to_string(g.qubits[0]) + " and " +
                               std::to_string(g.qubits[1]) + " crosses disconnected parts of the coupling graph");
        }
    }

    // Per-qubit queues of pending gate indices.
    std::vector<std::deque<std::size_t>> pending(np);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        for (int q : gates[i].qubits) {
            pending[q].push_back(i);
        }
    }
    std::vector<bool> done(gates.size(), false);
    std::size_t remaining = gates.size();
    std::size_t cursor = 0;  // lowest index not yet executed

    RoutingResult out;
    out.circuit = Circuit(np, work.num_clbits(), circuit.name());
    out.initial_layout = init;

    auto ready = [&](std::size_t i) {
        for (int q : gates[i].qubits) {
            if (pending[q].front() != i) {
                return false;
            }
        }
        return true;
    };
    auto executable = [&](std::size_t i) {
        const Gate &g = gates[i];
        if (g.qubits.size() != 2 || g.kind == GateKind::Barrier) {
            return true;
        }
        return dist[v2p[g.qubits[0]]][v2p[g.qubits[1]]] == 1;
    };
    auto execute = [&](std::size_t i) {
        Gate g = gates[i];
        for (int &q : g.qubits) {
            q = v2p[q];
        }
        out.circuit.append(std::move(g));
        for (int q : gates[i].qubits) {
            pending[q].pop_front();
        }
        done[i] = true;
        --remaining;
    };
    auto emit_swap = [&](int a, int b) {
        // Orient the outer cx pair along a listed direction when possible.
        if (!device.has_directed_edge(a, b) && device.has_directed_edge(b, a)) {
            std::swap(a, b);
        }
        out.circuit.append(Gate::cx(a, b));
        out.circuit.append(Gate::cx(b, a));
        out.circuit.append(Gate::cx(a, b));
        std::swap(p2v[a], p2v[b]);
        v2p[p2v[a]] = a;
        v2p[p2v[b]] = b;
        ++out.swaps;
    };

    int swaps_since_progress = 0;
    std::pair<int, int> last_swap{-1, -1};
    while (remaining > 0) {
        bool progressed = true;
        while (progressed) {
            progressed = false;
            while (cursor < gates.size() && done[cursor]) {
                ++cursor;
            }
            for (std::size_t i = cursor; i < gates.size(); ++i) {
                if (!done[i] && ready(i) && executable(i)) {
                    execute(i);
                    progressed = true;
                    swaps_since_progress = 0;
                    last_swap = {-1, -1};
                }
            }
        }
        if (remaining == 0) {
            break;
        }

        std::vector<std::size_t> front;
        std::vector<std::size_t> upcoming;
        for (std::size_t i = cursor; i < gates.size(); ++i) {
            if (done[i] || gates[i].qubits.size() != 2 || gates[i].kind == GateKind::Barrier) {
                continue;
            }
            if (ready(i)) {
                front.push_back(i);
            }
            if (static_cast<int>(upcoming.size()) < options.lookahead) {
                upcoming.push_back(i);
            }
        }

        if (swaps_since_progress > 2 * np) {
            // Stalled: walk the first blocked pair together along a shortest path.
            const Gate &g = gates[front.front()];
            const int a = v2p[g.qubits[0]], b = v2p[g.qubits[1]];
            int step = -1;
            for (int w : adj[a]) {
                if (dist[w][b] == dist[a][b] - 1) {
                    step = w;
                    break;
                }
            }
            emit_swap(a, step);
            continue;
        }

        std::vector<std::pair<int, int>> candidates;
        for (std::size_t i : front) {
            for (int q : gates[i].qubits) {
                const int p = v2p[q];
                for (int w : adj[p]) {
                    candidates.emplace_back(std::min(p, w), std::max(p, w));
                }
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::pair<int, int> best{-1, -1};
        long best_score = 0;
        double best_err = 0;
        for (const auto &[a, b] : candidates) {
            // Undoing the previous swap only helps if nothing else is possible.
            if (std::pair{a, b} == last_swap && candidates.size() > 1) {
                continue;
            }
            auto where = [&](int v) {
                const int p = v2p[v];
                return p == a ? b : p == b ? a : p;
            };
            long score = 0;
            for (std::size_t i : upcoming) {
                score += dist[where(gates[i].qubits[0])][where(gates[i].qubits[1])];
            }
            const double err = device.edge_error(a, b);
            const bool better = best.first < 0 || score < best_score ||
                                (score == best_score && err < best_err - 1e-15);
            if (better) {
                best = {a, b};
                best_score = score;
                best_err = err;
            }
        }
        emit_swap(best.first, best.second);
        last_swap = best;
        ++swaps_since_progress;
    }

    out.circuit = fix_direction(out.circuit, device);
    out.final_layout.num_physical = np;
    out.final_layout.v2p = v2p;
    return out;
}

}  // namespace qvb
