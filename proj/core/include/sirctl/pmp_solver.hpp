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

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sirctl/integrate.hpp"
#include "sirctl/model.hpp"

namespace sirctl {

struct ShootingOptions {
    double residual_tol = 1e-10; ///< absolute, on max(|psi1(T)|, |psi2(T)|)
    int max_newton_iters = 50;
    double fd_epsilon = 1e-6;    ///< relative forward-difference step for the Jacobian
    int damping_halvings = 30;
    /// Fallback starting costates, in units of a_i * horizon.
    std::vector<std::array<double, 2>> multistart_grid = default_multistart_grid();

    static std::vector<std::array<double, 2>> default_multistart_grid();

    /// Throws std::invalid_argument on a non-positive tolerance or iteration cap.
    void validate() const;
};

struct SweepOptions {
    double relaxation = 0.5;
    int max_iters = 1000;
    double tol = 1e-10; ///< on max |clamp_law(u) - u| / max |u|

    void validate() const;
};

enum class SolverKind { Shooting, Sweep };

std::string_view to_string(SolverKind kind);

/// Outcome of a solve. Returned on failure too, with `converged` false and the
/// best trajectory found.
struct SolveReport {
    Trajectory trajectory;
    double objective = std::numeric_limits<double>::quiet_NaN();
    double residual_norm = std::numeric_limits<double>::infinity();
    int newton_iters = 0; ///< Newton iterations (shooting) or forward-backward passes (sweep)
    bool converged = false;
    SolverKind solver = SolverKind::Shooting;
    AdjointVec psi0;
    int starts_tried = 0;
    int distinct_extremals = 0;
};

/// (psi1(T), psi2(T)) of the coupled integration started from psi0.
AdjointVec shooting_residual(const AdjointVec& psi0, const RunningCost& cost, const ModelParams& p);

/// Single shooting on psi(0) with a damped Newton iteration. Starts from
/// `initial_guess` (default (0, 0)); if that fails, every multistart point is tried
/// and the converged extremal with the smallest objective is reported.
SolveReport solve_shooting(const RunningCost& cost, const ModelParams& p,
                           const ShootingOptions& opts = {},
                           std::optional<AdjointVec> initial_guess = std::nullopt);

/// Relaxed forward-backward sweep on the node controls (linear hold between nodes).
SolveReport solve_sweep(const RunningCost& cost, const ModelParams& p, const SweepOptions& opts = {});

/// Adjoint gradient of the objective with respect to each interval's (u1, u2)
/// for a piecewise-constant schedule (intervals as in piecewise_schedule).
std::vector<ControlPair> control_gradient(std::span<const ControlPair> per_interval,
                                          const RunningCost& cost, const ModelParams& p);

} // namespace sirctl
