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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "sirctl/pmp_solver.hpp"
#include "sirctl/sweep.hpp"

namespace sirctl::cli {

enum class Command { Solve, Sweep, OracleCompare, Check };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command cmd);

enum ExitCode : int {
    kExitOk = 0,
    kExitNoConvergence = 1,
    kExitConfigError = 2,
    kExitInvariantViolation = 3,
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The built-in invariant suite: conservation, RK4 order, Hamiltonian
/// constancy and shooting transversality on the given configuration.
std::vector<CheckResult> run_checks(const Config& cfg);

/// Trajectory CSV: t, S, I, R, D, psi1, psi2, u1, u2, z.
void write_trajectory_csv(std::ostream& os, const Config& cfg, const Trajectory& traj);

/// Sweep CSV in the documented column order.
void write_sweep_csv(std::ostream& os, const Config& cfg, const std::vector<SweepRow>& rows);

/// Executes one command. Writes its primary output to `out` (stdout when empty)
/// and progress/summary text to `log`. Returns an ExitCode.
int run_command(Command cmd, const Config& cfg, const std::filesystem::path& out, bool parallel,
                std::ostream& log);

} // namespace sirctl::cli
