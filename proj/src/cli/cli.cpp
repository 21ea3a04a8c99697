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

#include "qvbench/cli.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "qvbench/errors.hpp"

namespace qvb {

namespace {

using nlohmann::json;

std::string read_text(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string scalar_to_arg(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number()) {
        return v.dump();
    }
    throw InvalidInput("config value " + v.dump() + " is not a scalar");
}

// Turns an embedded report config back into --key=value arguments.
std::vector<std::string> config_to_args(const std::string &path, const std::string &command) {
    json root;
    try {
        root = json::parse(read_text(path));
    } catch (const json::parse_error &e) {
        throw InvalidInput("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!root.is_object()) {
        throw InvalidInput("config '" + path + "' must be a JSON object");
    }
    if (root.contains("command") && root["command"] != command) {
        throw InvalidInput("config '" + path + "' was written by '" + root["command"].get<std::string>() +
                           "', not '" + command + "'");
    }
    const json &cfg = root.contains("config") ? root["config"] : root;
    if (!cfg.is_object()) {
        throw InvalidInput("config '" + path + "' has no config object");
    }
    std::vector<std::string> args;
    for (const auto &[key, value] : cfg.items()) {
        std::string text;
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                text += (i ? "," : "") + scalar_to_arg(value[i]);
            }
        } else if (value.is_null()) {
            continue;
        } else {
            text = scalar_to_arg(value);
        }
        // Separate tokens: CLI11 reads "--key=" as a missing value.
        args.push_back("--" + key);
        args.push_back(text);
    }
    return args;
}

std::uint64_t random_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_output(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f || !(f << text)) {
        throw Error("cannot write '" + path + "'");
    }
}

// Splits "--config path" / "--config=path" out of the argument list.
std::optional<std::string> take_config(std::vector<std::string> &args) {
    std::optional<std::string> path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw CLI::ArgumentMismatch("--config needs a path");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    args = std::move(rest);
    return path;
}

}  // namespace

int run_cli(const std::vector<std::string> &input_args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qvbench: circuits, transpiler, quantum volume, mitigation and variational workloads"};
    app.name(input_args.empty() ? "qvbench" : input_args[0]);
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    cli::CommonOptions common;
    std::vector<cli::Command> commands = cli::make_commands(app, common);

    std::vector<std::string> args(input_args.begin() + (input_args.empty() ? 0 : 1), input_args.end());
    try {
        std::string sub_name;
        for (const auto &a : args) {
            if (app.get_subcommand_no_throw(a)) {
                sub_name = a;
                break;
            }
        }
        const auto config = take_config(args);
        if (config) {
            if (sub_name.empty()) {
                throw CLI::RequiredError("--config needs a subcommand");
            }
            auto from_config = config_to_args(*config, sub_name);
            const auto pos = std::find(args.begin(), args.end(), sub_name) + 1;
            args.insert(pos, from_config.begin(), from_config.end());
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    for (auto &cmd : commands) {
        if (!cmd.app->parsed()) {
            continue;
        }
        try {
            if (common.format != "json" && common.format != "csv") {
                throw InvalidInput("--format must be json or csv");
            }
            const bool seed_given = cmd.app->get_option("--seed")->count() > 0;
            const std::uint64_t seed = seed_given ? common.seed : random_seed();
            cli::Output o = cmd.run(seed);
            o.config["seed"] = seed;
            o.config["format"] = common.format;
            o.config["threads"] = common.threads;
            if (common.format == "csv") {
                write_output(o.csv, common.out, out);
            } else {
                json report;
                report["schema_version"] = kReportSchemaVersion;
                report["tool"] = "qvbench";
                report["version"] = kToolVersion;
                report["command"] = cmd.app->get_name();
                report["config"] = o.config;
                report["seeds"] = {{"seed", seed}, {"source", seed_given ? "user" : "random"}};
                report["results"] = o.results;
                write_output(report.dump(2) + "\n", common.out, out);
            }
            return kExitOk;
        } catch (const InvalidInput &e) {
            err << cmd.app->get_name() << ": error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const CapacityError &e) {
            err << cmd.app->get_name() << ": capacity error: " << e.what() << "\n";
            return kExitRuntime;
        } catch (const std::exception &e) {
            err << cmd.app->get_name() << ": error: " << e.what() << "\n";
            return kExitRuntime;
        }
    }
    return kExitUsage;
}

}  // namespace qvb
