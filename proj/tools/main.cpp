/*
 * Copyright (C) 2026 The sirctl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct Invocation {
    std::string config;
    std::string out;
    bool parallel = false;
};

} // namespace

int main(int argc, char** argv)
{
    using namespace sirctl::cli;

    CLI::App app{"Optimal vaccination/treatment control for an SIR model with defective nodes"};
    app.require_subcommand(1);

    Invocation inv;
    struct Sub {
        const char* name;
        const char* help;
        bool config_required;
    };
    const Sub subs[] = {
        {"solve", "Solve the optimal-control problem by shooting; writes the trajectory CSV", true},
        {"sweep", "Sweep the death rate for both objectives; writes the sweep CSV", true},
        {"oracle-compare", "Compare shooting, forward-backward sweep and brute force", true},
        {"check", "Run the built-in invariant suite", false},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        auto* opt = sub->add_option("--config", inv.config, "Config file (key = value lines)");
        if (s.config_required)
            opt->required()->check(CLI::ExistingFile);
        else
            opt->check(CLI::ExistingFile);
        sub->add_option("--out", inv.out, "Output path (stdout when omitted)");
        sub->add_flag("--parallel", inv.parallel, "Solve independent points on all cores");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    const auto cmd = parse_command(app.get_subcommands().front()->get_name());
    try {
        const Config cfg = inv.config.empty() ? default_config() : load_config(inv.config);
        return run_command(*cmd, cfg, inv.out, inv.parallel, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInvariantViolation;
    }
}
