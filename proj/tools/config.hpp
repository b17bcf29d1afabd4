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
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sirctl/model.hpp"
#include "sirctl/pmp_solver.hpp"

namespace sirctl::cli {

/// Every problem found in a config document, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<FieldViolation> violations);

    const std::vector<FieldViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<FieldViolation> violations_;
};

/// Fully resolved run configuration.
struct Config {
    ModelParams params;
    ShootingOptions shooting;
    SweepOptions sweep_solver;
    double sweep_alpha_min = 0.05;
    double sweep_alpha_max = 0.5;
    int sweep_points = 10;
    int oracle_intervals = 3;
    int oracle_levels = 4;

    RunningCost cost() const { return RunningCost::from(params); }
    std::vector<double> sweep_alphas() const;
};

/// Keys that must appear in every document.
const std::vector<std::string_view>& required_keys();

/// Parses flat `key = value` lines; `#` starts a comment. Throws ConfigError.
Config parse_config(std::string_view text);

Config load_config(const std::filesystem::path& path);

/// The scenario used when no config file is given.
Config default_config();

/// `key = value` lines for every resolved setting, in a fixed order.
std::vector<std::string> describe(const Config& cfg);

/// Shortest round-trip decimal representation, locale independent.
std::string format_number(double v);

} // namespace sirctl::cli
