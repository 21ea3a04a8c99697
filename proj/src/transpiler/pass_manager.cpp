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

#include "qvbench/errors.hpp"
#include "qvbench/transpiler.hpp"

namespace qvb {

namespace {

const DeviceModel &need_device(const PassContext &ctx, std::string_view pass) {
    if (!ctx.device) {
        throw InvalidInput("pass '" + std::string(pass) + "' needs a device");
    }
    return *ctx.device;
}

void record_depth(PassContext &ctx) {
    const std::size_t d = depth(ctx.circuit);
    ctx.properties["depth"] = static_cast<double>(d);
    ctx.depth_history.push_back(d);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void PassManager::append(Pass pass) { passes_.push_back(std::move(pass)); }

void PassManager::append_loop(std::string name, std::vector<Pass> body,
                              std::function<bool(const PassContext &)> done) {
    Pass loop;
    loop.name = std::move(name);
    loop.kind = Pass::Kind::Transformation;
    loop.run = [body = std::move(body), done = std::move(done)](PassContext &ctx) {
        for (int it = 0; it < kMaxOptimizeIterations; ++it) {
            for (const auto &p : body) {
                p.run(ctx);
            }
            ctx.properties["iterations"] = it + 1;
            if (done(ctx)) {
                break;
            }
        }
    };
    passes_.push_back(std::move(loop));
}

std::vector<std::string> PassManager::pass_names() const {
    std::vector<std::string> out;
    for (const auto &p : passes_) {
        out.push_back(p.name);
    }
    return out;
}

Pass PassManager::named_pass(std::string_view name) {
    using K = Pass::Kind;
    if (name == "unroll") {
        return {"unroll", K::Transformation, [](PassContext &c) { c.circuit = unroll(c.circuit); }};
    }
    if (name == "layout") {
        return {"layout", K::Analysis,
                [](PassContext &c) { c.layout = select_layout(c.circuit, need_device(c, "layout")); }};
    }
    if (name == "route") {
        return {"route", K::Transformation, [](PassContext &c) {
                    const DeviceModel &d = need_device(c, "route");
                    if (c.routed) {
                        throw InvalidInput("pipeline routes twice");
                    }
                    const Layout l = c.layout ? *c.layout : Layout::trivial(c.circuit.num_qubits(), d.num_qubits);
                    RoutingResult r = route(c.circuit, d, l);
                    c.circuit = std::move(r.circuit);
                    c.initial_layout = r.initial_layout;
                    c.final_layout = r.final_layout;
                    c.properties["swaps"] = r.swaps;
                    c.routed = true;
                }};
    }
    if (name == "fix_direction") {
        return {"fix_direction", K::Transformation,
                [](PassContext &c) { c.circuit = fix_direction(c.circuit, need_device(c, "fix_direction")); }};
    }
    if (name == "merge_1q") {
        return {"merge_1q", K::Transformation, [](PassContext &c) { c.circuit = merge_1q_runs(c.circuit); }};
    }
    if (name == "cancel_cx") {
        return {"cancel_cx", K::Transformation, [](PassContext &c) { c.circuit = cancel_commuting(c.circuit); }};
    }
    if (name == "depth") {
        return {"depth", K::Analysis, record_depth};
    }
    if (name == "optimize") {
        return {"optimize", K::Transformation, [](PassContext &c) {
                    OptimizeResult r = optimize_to_fixed_point(c.circuit, c.device);
                    c.circuit = std::move(r.circuit);
                    c.depth_history.insert(c.depth_history.end(), r.depth_history.begin(), r.depth_history.end());
                    c.properties["iterations"] = r.iterations;
                    c.properties["depth"] = static_cast<double>(r.depth_history.back());
                }};
    }
    throw InvalidInput("unknown pass '" + std::string(name) + "'");
}

PassManager PassManager::from_names(std::string_view comma_separated) {
    PassManager pm;
    if (trim(comma_separated).empty()) {
        return pm;
    }
    std::size_t start = 0;
    while (start <= comma_separated.size()) {
        const std::size_t end = std::min(comma_separated.find(',', start), comma_separated.size());
        const std::string name = trim(comma_separated.substr(start, end - start));
        if (name.empty()) {
            throw InvalidInput("empty pass name in pipeline '" + std::string(comma_separated) + "'");
        }
        pm.append(named_pass(name));
        start = end + 1;
    }
    return pm;
}

TranspileResult PassManager::run(const Circuit &circuit, const DeviceModel *device) const {
    PassContext ctx;
    ctx.device = device;
    ctx.circuit = circuit;
    for (const auto &p : passes_) {
        p.run(ctx);
    }
    TranspileResult r;
    if (!ctx.routed && ctx.layout) {
        ctx.initial_layout = ctx.final_layout = ctx.layout->completed();
        ctx.circuit = apply_layout(ctx.circuit, *ctx.initial_layout);
    }
    if (ctx.initial_layout) {
        r.initial_layout = *ctx.initial_layout;
        r.final_layout = *ctx.final_layout;
    } else {
        r.initial_layout = r.final_layout = Layout::trivial(ctx.circuit.num_qubits(), ctx.circuit.num_qubits());
    }
    r.circuit = std::move(ctx.circuit);
    r.metrics = circuit_metrics(r.circuit, device);
    r.properties = std::move(ctx.properties);
    r.depth_history = std::move(ctx.depth_history);
    r.passes = pass_names();
    return r;
}

TranspileResult transpile(const Circuit &circuit, const DeviceModel &device, std::string_view pipeline) {
    return PassManager::from_names(pipeline).run(circuit, &device);
}

}  // namespace qvb
