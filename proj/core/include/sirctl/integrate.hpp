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
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sirctl/errors.hpp"
#include "sirctl/model.hpp"

namespace sirctl {

/// Uniform grid t_k = k * horizon / n_steps, k = 0..n_steps.
struct TimeGrid {
    double horizon = 0.0;
    int n_steps = 0;

    static TimeGrid of(const ModelParams& p) { return {p.horizon, p.n_steps}; }

    double step() const { return horizon / n_steps; }
    double time(int k) const { return k == n_steps ? horizon : k * step(); }
    std::size_t nodes() const { return static_cast<std::size_t>(n_steps) + 1; }
};

/// How controls are evaluated between grid nodes.
enum class ControlHold {
    Feedback,          ///< recomputed from (x, psi) at every RK4 stage
    PiecewiseConstant, ///< step k uses the control stored at node k
    Linear,            ///< linear between nodes k and k+1
};

/// Node samples of one integration. `adjoints` is empty for state-only runs.
/// Running cost is carried as two cumulative integrals whose sum is z(t).
struct Trajectory {
    TimeGrid grid;
    ControlHold hold = ControlHold::PiecewiseConstant;
    std::vector<StateVec> states;
    std::vector<AdjointVec> adjoints;
    std::vector<ControlPair> controls;
    std::vector<double> control_cost;
    std::vector<double> state_cost;

    bool has_adjoints() const { return !adjoints.empty(); }
    double cost(std::size_t k) const { return control_cost[k] + state_cost[k]; }
};

/// One classical fourth-order Runge-Kutta step for dy/dt = f(t, y).
/// Throws NonFiniteError if the result is not finite.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, double t, const std::array<double, N>& y, double h)
{
    auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
        std::array<double, N> r;
        for (std::size_t j = 0; j < N; ++j)
            r[j] = a[j] + s * b[j];
        return r;
    };
    const std::array<double, N> k1 = f(t, y);
    const std::array<double, N> k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const std::array<double, N> k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const std::array<double, N> k4 = f(t + h, axpy(y, h, k3));

    std::array<double, N> out;
    for (std::size_t j = 0; j < N; ++j) {
        out[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        if (!std::isfinite(out[j]))
            throw NonFiniteError(t + h);
    }
    return out;
}

/// Control applied inside step k at fractional position theta in [0, 1].
ControlPair control_within_step(std::span<const ControlPair> node_controls, ControlHold hold, int k,
                                double theta);

/// Expands per-interval controls to per-node controls. Interval j covers
/// the steps [boundary(j), boundary(j+1)) with boundary(j) = round(j * n_steps / m);
/// the final node repeats the last interval's value.
std::vector<ControlPair> piecewise_schedule(std::span<const ControlPair> per_interval, int n_steps);

/// Node index where interval j of m starts (j == m gives n_steps).
int interval_boundary(int j, int m, int n_steps);

/// Integrates state, costate and running cost forward from psi(0) = psi0 with
/// the clamp law substituted at every stage.
Trajectory integrate_coupled(const AdjointVec& psi0, const RunningCost& cost, const ModelParams& p);

/// State and running cost under a prescribed per-node control schedule.
Trajectory integrate_state_forward(std::span<const ControlPair> schedule, const RunningCost& cost,
                                   const ModelParams& p,
                                   ControlHold hold = ControlHold::PiecewiseConstant);

/// Costates integrated backward from psi(T) = 0 along a stored state trajectory.
/// Half-step states come from cubic Hermite interpolation of the node samples.
std::vector<AdjointVec> integrate_adjoint_backward(const Trajectory& traj, const RunningCost& cost,
                                                   const ModelParams& p);

} // namespace sirctl
