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

#include <span>
#include <vector>

#include "sirctl/model.hpp"
#include "sirctl/pmp_solver.hpp"

namespace sirctl {

/// Both optimal objectives at one death rate.
struct SweepRow {
    double alpha = 0.0;
    double objective_new = 0.0;
    double objective_legacy = 0.0;
    double defective_terminal_new = 0.0;
    bool converged_new = false;
    bool converged_legacy = false;
    double residual_new = 0.0;
    double residual_legacy = 0.0;
    int newton_iters_new = 0;
    int newton_iters_legacy = 0;
};

/// n evenly spaced values from first to last inclusive.
std::vector<double> linspace(double first, double last, int n);

/// Solves the new and legacy problems at every alpha. Serial runs warm-start
/// each solve from the previous point's converged psi(0); parallel runs
/// cold-start every point, then retry failures from a converged neighbour. Rows come back in input order, failed solves included.
/// Throws std::invalid_argument unless alphas are non-negative and strictly increasing.
std::vector<SweepRow> sweep_alpha(const ModelParams& base, std::span<const double> alphas,
                                  const ShootingOptions& opts = {}, bool parallel = false);

} // namespace sirctl
