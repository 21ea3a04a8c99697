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
#include <numeric>

#include "qvbench/errors.hpp"
#include "qvbench/transpiler.hpp"

namespace qvb {

Layout Layout::trivial(int num_virtual, int num_physical) {
    if (num_virtual > num_physical) {
        throw CapacityError("circuit has " + std::to_string(num_virtual) + " qubits but device has " +
                            std::to_string(num_physical));
    }
    Layout l;
    l.num_physical = num_physical;
    l.v2p.resize(num_virtual);
    std::iota(l.v2p.begin(), l.v2p.end(), 0);
    return l;
}

std::vector<int> Layout::p2v() const {
    std::vector<int> out(num_physical, -1);
    for (int v = 0; v < num_virtual(); ++v) {
        if (v2p[v] >= 0) {
            out[v2p[v]] = v;
        }
    }
    return out;
}

bool Layout::valid() const {
    std::vector<bool> used(num_physical, false);
    for (int p : v2p) {
        if (p == -1) {
            continue;
        }
        if (p < 0 || p >= num_physical || used[p]) {
            return false;
        }
        used[p] = true;
    }
    return true;
}

Layout Layout::completed() const {
    if (!valid() || num_virtual() > num_physical) {
        throw InvalidInput("cannot complete an invalid layout");
    }
    Layout out = *this;
    out.v2p.resize(num_physical, -1);
    std::vector<bool> used(num_physical, false);
    for (int p : out.v2p) {
        if (p >= 0) {
            used[p] = true;
        }
    }
    int next = 0;
    for (int &p : out.v2p) {
        if (p < 0) {
            while (used[next]) {
                ++next;
            }
            p = next;
            used[next] = true;
        }
    }
    return out;
}

std::map<std::pair<int, int>, int> interaction_graph(const Circuit &circuit) {
    std::map<std::pair<int, int>, int> out;
    for (const auto &g : circuit) {
        if (is_two_qubit_unitary(g.kind)) {
            const int a = std::min(g.qubits[0], g.qubits[1]);
            const int b = std::max(g.qubits[0], g.qubits[1]);
            ++out[{a, b}];
        }
    }
    return out;
}

int satisfied_interactions(const Circuit &circuit, const DeviceModel &device, const Layout &layout) {
    int n = 0;
    for (const auto &[e, count] : interaction_graph(circuit)) {
        const int a = layout[e.first], b = layout[e.second];
        n += a >= 0 && b >= 0 && device.has_edge(a, b);
    }
    return n;
}

namespace {

struct Candidate {
    int satisfied = -1;
    double error = 0;
    std::vector<int> v2p;

    bool better_than(const Candidate &o) const {
        if (satisfied != o.satisfied) {
            return satisfied > o.satisfied;
        }
        if (std::abs(error - o.error) > 1e-12) {
            return error < o.error;
        }
        return v2p < o.v2p;
    }
};

class LayoutSearch {
   public:
    LayoutSearch(const Circuit &circuit, const DeviceModel &device, std::size_t budget)
        : device_(device), budget_(budget), nv_(circuit.num_qubits()), np_(device.num_qubits) {
        vadj_.resize(nv_);
        for (const auto &[e, count] : interaction_graph(circuit)) {
            vadj_[e.first].push_back(e.second);
            vadj_[e.second].push_back(e.first);
            ++num_edges_;
        }
        padj_ = device.adjacency();
        is_edge_.assign(np_, std::vector<bool>(np_, false));
        edge_err_.assign(np_, std::vector<double>(np_, 0.0));
        for (const auto &[a, b] : device.coupling) {
            is_edge_[a][b] = is_edge_[b][a] = true;
            edge_err_[a][b] = edge_err_[b][a] = device.edge_error(a, b);
        }
        order_ = search_order();
    }

    int num_edges() const { return num_edges_; }

    /// Best exact embedding, or nullopt if none was found within budget.
    std::optional<Candidate> exact() {
        reset();
        exact_rec(0, 0.0);
        if (best_.satisfied < 0) {
            return std::nullopt;
        }
        return best_;
    }

    /// Branch and bound on the number of satisfied interactions.
    Candidate heuristic() {
        reset();
        heuristic_rec(0, 0, 0.0);
        return best_;
    }

   private:
    void reset() {
        nodes_ = 0;
        best_ = Candidate{};
        v2p_.assign(nv_, -1);
        used_.assign(np_, false);
    }

    // Interacting qubits first, highest degree first, each next qubit chosen
    // to have the most already-placed neighbours.
    std::vector<int> search_order() const {
        std::vector<int> order;
        std::vector<bool> placed(nv_, false);
        std::vector<int> active;
        for (int v = 0; v < nv_; ++v) {
            if (!vadj_[v].empty()) {
                active.push_back(v);
            }
        }
        while (order.size() < active.size()) {
            int best = -1;
            std::pair<int, int> key{-1, -1};
            for (int v : active) {
                if (placed[v]) {
                    continue;
                }
                int conn = 0;
                for (int u : vadj_[v]) {
                    conn += placed[u];
                }
                const std::pair<int, int> k{conn, static_cast<int>(vadj_[v].size())};
                if (k > key) {
                    key = k;
                    best = v;
                }
            }
            placed[best] = true;
            order.push_back(best);
        }
        return order;
    }

    void finish(int satisfied, double error) {
        // Isolated virtual qubits take the smallest free physical qubits.
        std::vector<int> full = v2p_;
        std::vector<bool> used = used_;
        int next = 0;
        for (int v = 0; v < nv_; ++v) {
            if (full[v] < 0) {
                while (used[next]) {
                    ++next;
                }
                full[v] = next;
                used[next] = true;
            }
        }
        Candidate c{satisfied, error, std::move(full)};
        if (best_.satisfied < 0 || c.better_than(best_)) {
            best_ = std::move(c);
        }
    }

    void exact_rec(std::size_t depth, double error) {
        if (nodes_++ > budget_) {
            return;
        }
        if (depth == order_.size()) {
            finish(num_edges_, error);
            return;
        }
        const int v = order_[depth];
        const int vdeg = static_cast<int>(vadj_[v].size());
        for (int p = 0; p < np_; ++p) {
            if (used_[p] || static_cast<int>(padj_[p].size()) < vdeg) {
                continue;
            }
            double added = 0;
            bool ok = true;
            for (int u : vadj_[v]) {
                const int pu = v2p_[u];
                if (pu >= 0) {
                    if (!is_edge_[p][pu]) {
                        ok = false;
                        break;
                    }
                    added += edge_err_[p][pu];
                }
            }
            if (!ok) {
                continue;
            }
            v2p_[v] = p;
            used_[p] = true;
            exact_rec(depth + 1, error + added);
            v2p_[v] = -1;
            used_[p] = false;
        }
    }

    void heuristic_rec(std::size_t depth, int satisfied, double error) {
        if (nodes_++ > budget_ && best_.satisfied >= 0) {
            return;
        }
        if (depth == order_.size()) {
            finish(satisfied, error);
            return;
        }
        // Edges not yet decided can add at most one each.
        int open = 0;
        for (std::size_t i = depth; i < order_.size(); ++i) {
            for (int u : vadj_[order_[i]]) {
                const bool u_later = v2p_[u] < 0;
                // Count each undecided edge once.
                if (!u_later || u > order_[i]) {
                    ++open;
                }
            }
        }
        if (best_.satisfied >= 0 && satisfied + open < best_.satisfied) {
            return;
        }
        const int v = order_[depth];
        // Physical qubits next to placed neighbours first.
        std::vector<std::pair<int, int>> cand;
        for (int p = 0; p < np_; ++p) {
            if (used_[p]) {
                continue;
            }
            int gain = 0;
            for (int u : vadj_[v]) {
                gain += v2p_[u] >= 0 && is_edge_[p][v2p_[u]];
            }
            cand.emplace_back(-gain, p);
        }
        std::sort(cand.begin(), cand.end());
        for (const auto &[neg_gain, p] : cand) {
            double added = 0;
            for (int u : vadj_[v]) {
                if (v2p_[u] >= 0 && is_edge_[p][v2p_[u]]) {
                    added += edge_err_[p][v2p_[u]];
                }
            }
            v2p_[v] = p;
            used_[p] = true;
            heuristic_rec(depth + 1, satisfied - neg_gain, error + added);
            v2p_[v] = -1;
            used_[p] = false;
            if (nodes_ > budget_ && best_.satisfied >= 0) {
                return;
            }
        }
    }

    const DeviceModel &device_;
    std::size_t budget_;
    int nv_, np_;
    int num_edges_ = 0;
    std::vector<std::vector<int>> vadj_, padj_;
    std::vector<std::vector<bool>> is_edge_;
    std::vector<std::vector<double>> edge_err_;
    std::vector<int> order_;
    std::size_t nodes_ = 0;
    std::vector<int> v2p_;
    std::vector<bool> used_;
    Candidate best_;
};

}  // namespace

Layout select_layout(const Circuit &circuit, const DeviceModel &device, const LayoutOptions &options) {
    if (circuit.num_qubits() > device.num_qubits) {
        throw CapacityError("circuit has " + std::to_string(circuit.num_qubits()) + " qubits but device '" +
                            device.name + "' has " + std::to_string(device.num_qubits));
    }
    LayoutSearch search(circuit, device, options.node_budget);
    std::optional<Candidate> best = search.exact();
    if (!best) {
        best = search.heuristic();
    }
    Layout l;
    l.num_physical = device.num_qubits;
    l.v2p = std::move(best->v2p);
    return l;
}

}  // namespace qvb
