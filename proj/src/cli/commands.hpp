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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace qvb::cli {

/// Flags shared by every subcommand.
struct CommonOptions {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    unsigned threads = 0;
};

struct Output {
    /// Resolved options keyed by long flag name; replayed by --config.
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::string csv;
};

struct Command {
    CLI::App *app = nullptr;
    std::function<Output(std::uint64_t seed)> run;
};

std::vector<Command> make_commands(CLI::App &app, CommonOptions &common);

}  // namespace qvb::cli
