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
#include "sirctl/integrate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sirctl {
namespace {

// Packed layouts used by the integrators.
using CoupledY = std::array<double, 8>; // S I R D psi1 psi2 z_control z_state
using StateY = std::array<double, 6>;   // S I R D z_control z_state
using AdjointY = std::array<double, 2>;

StateVec state_of(const double* y)
{
    return {y[0], y[1], y[2], y[3]};
}

void check_schedule(std::span<const ControlPair> schedule, const ModelParams& p)
{
    if (schedule.size() != static_cast<std::size_t>(p.n_steps) + 1)
        throw std::invalid_argument("control schedule has " + std::to_string(schedule.size())
                                    + " samples, grid has " + std::to_string(p.n_steps + 1));
    for (const auto& u : schedule) {
        if (!(u.u1 >= 0.0 && u.u1 <= p.u1_max && u.u2 >= 0.0 && u.u2 <= p.u2_max))
            throw std::invalid_argument("control schedule leaves the admissible box");
    }
}

} // namespace

ControlPair control_within_step(std::span<const ControlPair> node_controls, ControlHold hold, int k,
                                double theta)
{
    const ControlPair& a = node_controls[k];
    if (hold == ControlHold::PiecewiseConstant)
        return a;
    const ControlPair& b = node_controls[k + 1];
    return {a.u1 + theta * (b.u1 - a.u1), a.u2 + theta * (b.u2 - a.u2)};
}

int interval_boundary(int j, int m, int n_steps)
{
    return static_cast<int>(std::lround(static_cast<double>(j) * n_steps / m));
}

std::vector<ControlPair> piecewise_schedule(std::span<const ControlPair> per_interval, int n_steps)
{
    const int m = static_cast<int>(per_interval.size());
    if (m < 1 || m > n_steps)
        throw std::invalid_argument("piecewise schedule needs 1..n_steps intervals");
    std::vector<ControlPair> nodes(static_cast<std::size_t>(n_steps) + 1);
    for (int j = 0; j < m; ++j) {
        for (int k = interval_boundary(j, m, n_steps); k < interval_boundary(j + 1, m, n_steps); ++k)
            nodes[k] = per_interval[j];
    }
    nodes.back() = per_interval.back();
    return nodes;
}

Trajectory integrate_coupled(const AdjointVec& psi0, const RunningCost& cost, const ModelParams& p)
{
    p.validate();
    if (!std::isfinite(psi0.psi1) || !std::isfinite(psi0.psi2))
        throw NonFiniteError(0.0);

    const TimeGrid grid = TimeGrid::of(p);
    const double h = grid.step();

    auto field = [&](double, const CoupledY& y) {
        const StateVec x = state_of(y.data());
        const AdjointVec psi{y[4], y[5]};
        const ControlPair u = optimal_controls(x, psi, cost, p);
        const StateVec dx = state_rhs(x, u, p);
        const AdjointVec dpsi = adjoint_rhs(psi, x, u, cost, p);
        return CoupledY{dx.s, dx.i, dx.r, dx.d, dpsi.psi1, dpsi.psi2,
                        cost.control_integrand(u.u1, u.u2), cost.state_integrand(x.i)};
    };

    Trajectory traj;
    traj.grid = grid;
    traj.hold = ControlHold::Feedback;
    const std::size_t n = grid.nodes();
    traj.states.reserve(n);
    traj.adjoints.reserve(n);
    traj.controls.reserve(n);
    traj.control_cost.reserve(n);
    traj.state_cost.reserve(n);

    const StateVec x0 = initial_state(p);
    CoupledY y{x0.s, x0.i, x0.r, x0.d, psi0.psi1, psi0.psi2, 0.0, 0.0};
    auto record = [&](const CoupledY& v) {
        const StateVec x = state_of(v.data());
        const AdjointVec psi{v[4], v[5]};
        traj.states.push_back(x);
        traj.adjoints.push_back(psi);
        traj.controls.push_back(optimal_controls(x, psi, cost, p));
        traj.control_cost.push_back(v[6]);
        traj.state_cost.push_back(v[7]);
    };

    record(y);
    for (int k = 0; k < grid.n_steps; ++k) {
        y = rk4_step(field, grid.time(k), y, h);
        record(y);
    }
    return traj;
}

Trajectory integrate_state_forward(std::span<const ControlPair> schedule, const RunningCost& cost,
                                   const ModelParams& p, ControlHold hold)
{
    p.validate();
    check_schedule(schedule, p);
    if (hold == ControlHold::Feedback)
        throw std::invalid_argument("a prescribed schedule cannot use feedback hold");

    const TimeGrid grid = TimeGrid::of(p);
    const double h = grid.step();

    Trajectory traj;
    traj.grid = grid;
    traj.hold = hold;
    traj.controls.assign(schedule.begin(), schedule.end());
    const std::size_t n = grid.nodes();
    traj.states.reserve(n);
    traj.control_cost.reserve(n);
    traj.state_cost.reserve(n);

    const StateVec x0 = initial_state(p);
    StateY y{x0.s, x0.i, x0.r, x0.d, 0.0, 0.0};
    auto record = [&](const StateY& v) {
        traj.states.push_back(state_of(v.data()));
        traj.control_cost.push_back(v[4]);
        traj.state_cost.push_back(v[5]);
    };

    record(y);
    for (int k = 0; k < grid.n_steps; ++k) {
        const double tk = grid.time(k);
        auto field = [&](double t, const StateY& v) {
            const ControlPair u = control_within_step(schedule, hold, k, (t - tk) / h);
            const StateVec x = state_of(v.data());
            const StateVec dx = state_rhs(x, u, p);
            return StateY{dx.s, dx.i, dx.r, dx.d, cost.control_integrand(u.u1, u.u2),
                          cost.state_integrand(x.i)};
        };
        y = rk4_step(field, tk, y, h);
        record(y);
    }
    return traj;
}

std::vector<AdjointVec> integrate_adjoint_backward(const Trajectory& traj, const RunningCost& cost,
                                                   const ModelParams& p)
{
    p.validate();
    const TimeGrid& grid = traj.grid;
    if (traj.states.size() != grid.nodes() || traj.controls.size() != grid.nodes())
        throw std::invalid_argument("adjoint pass needs state and control samples at every node");

    const double h = grid.step();
    const std::span<const ControlPair> controls(traj.controls);
    std::vector<AdjointVec> psi(grid.nodes());
    AdjointY y{0.0, 0.0};
    psi.back() = {0.0, 0.0};

    for (int k = grid.n_steps - 1; k >= 0; --k) {
        const StateVec& xa = traj.states[k];
        const StateVec& xb = traj.states[k + 1];
        const ControlPair ua = control_within_step(controls, traj.hold, k, 0.0);
        const ControlPair ub = control_within_step(controls, traj.hold, k, 1.0);
        const StateVec fa = state_rhs(xa, ua, p);
        const StateVec fb = state_rhs(xb, ub, p);
        // Cubic Hermite midpoint: (xa + xb)/2 + h (fa - fb)/8.
        const StateVec xm{0.5 * (xa.s + xb.s) + 0.125 * h * (fa.s - fb.s),
                          0.5 * (xa.i + xb.i) + 0.125 * h * (fa.i - fb.i),
                          0.5 * (xa.r + xb.r) + 0.125 * h * (fa.r - fb.r),
                          0.5 * (xa.d + xb.d) + 0.125 * h * (fa.d - fb.d)};
        const ControlPair um = control_within_step(controls, traj.hold, k, 0.5);

        const double tb = grid.time(k + 1);
        auto field = [&](double t, const AdjointY& v) {
            // Stages land exactly on tb, tb - h/2 and tb - h.
            const double theta = (t - grid.time(k)) / h;
            const bool at_end = theta > 0.75;
            const bool at_start = theta < 0.25;
            const StateVec& x = at_end ? xb : (at_start ? xa : xm);
            const ControlPair& u = at_end ? ub : (at_start ? ua : um);
            const AdjointVec d = adjoint_rhs({v[0], v[1]}, x, u, cost, p);
            return AdjointY{d.psi1, d.psi2};
        };
        y = rk4_step(field, tb, y, -h);
        psi[k] = {y[0], y[1]};
    }
    return psi;
}

} // namespace sirctl
