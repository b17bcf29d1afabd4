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

#include "sirctl/integrate.hpp"
#include "sirctl/model.hpp"

namespace sirctl {

struct ObjectiveParts {
    double control_cost = 0.0; ///< integral of w1*u1^2 + w2*u2^2
    double state_cost = 0.0;   ///< integral of a_i*I
};

/// z(T) from the augmented integration. Throws MissingControlsError when the
/// trajectory has no control samples.
double evaluate_objective(const Trajectory& traj, const RunningCost& cost);

/// Trapezoid rule on the node samples; an independent, second-order estimate
/// of the same integral.
double trapezoid_objective(const Trajectory& traj, const RunningCost& cost);

double defective_terminal(const Trajectory& traj);

ObjectiveParts decompose_objective(const Trajectory& traj, const RunningCost& cost);

} // namespace sirctl
