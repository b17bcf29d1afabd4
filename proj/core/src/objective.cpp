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
#include "sirctl/objective.hpp"

#include <stdexcept>

namespace sirctl {

double evaluate_objective(const Trajectory& traj, const RunningCost&)
{
    if (traj.controls.empty())
        throw MissingControlsError();
    if (traj.control_cost.empty() || traj.state_cost.empty())
        throw std::invalid_argument("trajectory carries no running-cost samples");
    return traj.cost(traj.control_cost.size() - 1);
}

double trapezoid_objective(const Trajectory& traj, const RunningCost& cost)
{
    if (traj.controls.empty())
        throw MissingControlsError();
    const double h = traj.grid.step();
    auto integrand = [&](std::size_t k) {
        const ControlPair& u = traj.controls[k];
        return cost.control_integrand(u.u1, u.u2) + cost.state_integrand(traj.states[k].i);
    };
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
        // Piecewise-constant runs hold u_k over the whole step.
        if (traj.hold == ControlHold::PiecewiseConstant) {
            const ControlPair& u = traj.controls[k];
            sum += h * cost.control_integrand(u.u1, u.u2);
            sum += 0.5 * h * (cost.state_integrand(traj.states[k].i) + cost.state_integrand(traj.states[k + 1].i));
        } else {
            sum += 0.5 * h * (integrand(k) + integrand(k + 1));
        }
    }
    return sum;
}

double defective_terminal(const Trajectory& traj)
{
    if (traj.states.empty())
        throw std::invalid_argument("empty trajectory");
    return traj.states.back().d;
}

ObjectiveParts decompose_objective(const Trajectory& traj, const RunningCost&)
{
    if (traj.control_cost.empty() || traj.state_cost.empty())
        throw std::invalid_argument("trajectory carries no running-cost samples");
    return {traj.control_cost.back(), traj.state_cost.back()};
}

} // namespace sirctl
