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
#include "sirctl/pmp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sirctl/errors.hpp"
#include "sirctl/objective.hpp"

namespace sirctl {
namespace {

double inf_norm(const AdjointVec& v)
{
    return std::max(std::abs(v.psi1), std::abs(v.psi2));
}

struct NewtonAttempt {
    AdjointVec psi0;
    double residual = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool converged = false;
};

std::optional<AdjointVec> try_residual(const AdjointVec& psi0, const RunningCost& cost,
                                       const ModelParams& p)
{
    try {
        AdjointVec r = shooting_residual(psi0, cost, p);
        if (!std::isfinite(r.psi1) || !std::isfinite(r.psi2))
            return std::nullopt;
        return r;
    } catch (const NonFiniteError&) {
        return std::nullopt;
    }
}

NewtonAttempt newton(const AdjointVec& start, const RunningCost& cost, const ModelParams& p,
                     const ShootingOptions& opts)
{
    NewtonAttempt a;
    a.psi0 = start;
    auto r = try_residual(start, cost, p);
    if (!r)
        return a;
    a.residual = inf_norm(*r);

    while (true) {
        if (a.residual <= opts.residual_tol) {
            a.converged = true;
            return a;
        }
        if (a.iters >= opts.max_newton_iters)
            return a;

        // 2x2 forward-difference Jacobian of psi(T) with respect to psi(0).
        const double e1 = opts.fd_epsilon * std::max(std::abs(a.psi0.psi1), 1.0);
        const double e2 = opts.fd_epsilon * std::max(std::abs(a.psi0.psi2), 1.0);
        auto r1 = try_residual({a.psi0.psi1 + e1, a.psi0.psi2}, cost, p);
        auto r2 = try_residual({a.psi0.psi1, a.psi0.psi2 + e2}, cost, p);
        if (!r1 || !r2)
            return a;
        const double j11 = (r1->psi1 - r->psi1) / e1;
        const double j21 = (r1->psi2 - r->psi2) / e1;
        const double j12 = (r2->psi1 - r->psi1) / e2;
        const double j22 = (r2->psi2 - r->psi2) / e2;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || det == 0.0)
            return a;
        const double d1 = -(j22 * r->psi1 - j12 * r->psi2) / det;
        const double d2 = -(-j21 * r->psi1 + j11 * r->psi2) / det;

        ++a.iters;
        bool accepted = false;
        double lambda = 1.0;
        for (int halving = 0; halving <= opts.damping_halvings; ++halving, lambda *= 0.5) {
            const AdjointVec trial{a.psi0.psi1 + lambda * d1, a.psi0.psi2 + lambda * d2};
            auto rt = try_residual(trial, cost, p);
            if (rt && inf_norm(*rt) < a.residual) {
                a.psi0 = trial;
                r = rt;
                a.residual = inf_norm(*rt);
                accepted = true;
                break;
            }
        }
        if (!accepted)
            return a;
    }
}

SolveReport shooting_report(const NewtonAttempt& a, const RunningCost& cost, const ModelParams& p)
{
    SolveReport rep;
    rep.solver = SolverKind::Shooting;
    rep.psi0 = a.psi0;
    rep.newton_iters = a.iters;
    rep.converged = a.converged;
    rep.residual_norm = a.residual;
    try {
        rep.trajectory = integrate_coupled(a.psi0, cost, p);
        rep.objective = evaluate_objective(rep.trajectory, cost);
        rep.residual_norm = inf_norm(rep.trajectory.adjoints.back());
    } catch (const NonFiniteError&) {
        rep.converged = false;
    }
    return rep;
}

bool same_extremal(const AdjointVec& a, const AdjointVec& b)
{
    const double scale = std::max({1.0, inf_norm(a), inf_norm(b)});
    return std::abs(a.psi1 - b.psi1) <= 1e-6 * scale && std::abs(a.psi2 - b.psi2) <= 1e-6 * scale;
}

} // namespace

std::string_view to_string(SolverKind kind)
{
    return kind == SolverKind::Shooting ? "shooting" : "sweep";
}

std::vector<std::array<double, 2>> ShootingOptions::default_multistart_grid()
{
    std::vector<std::array<double, 2>> grid;
    for (double a : {-1.0, 0.0, 1.0}) {
        for (double b : {-1.0, 0.0, 1.0})
            grid.push_back({a, b});
    }
    return grid;
}

void ShootingOptions::validate() const
{
    if (!(residual_tol > 0.0))
        throw std::invalid_argument("residual_tol must be positive");
    if (max_newton_iters < 1)
        throw std::invalid_argument("max_newton_iters must be at least 1");
    if (!(fd_epsilon > 0.0))
        throw std::invalid_argument("fd_epsilon must be positive");
    if (damping_halvings < 0)
        throw std::invalid_argument("damping_halvings must be non-negative");
}

void SweepOptions::validate() const
{
    if (!(relaxation > 0.0 && relaxation <= 1.0))
        throw std::invalid_argument("sweep relaxation must lie in (0, 1]");
    if (max_iters < 1)
        throw std::invalid_argument("sweep max_iters must be at least 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("sweep tol must be positive");
}

AdjointVec shooting_residual(const AdjointVec& psi0, const RunningCost& cost, const ModelParams& p)
{
    return integrate_coupled(psi0, cost, p).adjoints.back();
}

SolveReport solve_shooting(const RunningCost& cost, const ModelParams& p,
                           const ShootingOptions& opts, std::optional<AdjointVec> initial_guess)
{
    p.validate();
    opts.validate();

    const NewtonAttempt first = newton(initial_guess.value_or(AdjointVec{}), cost, p, opts);
    if (first.converged) {
        SolveReport rep = shooting_report(first, cost, p);
        rep.starts_tried = 1;
        rep.distinct_extremals = 1;
        return rep;
    }

    const double scale = cost.a_i() * p.horizon > 0.0 ? cost.a_i() * p.horizon : 1.0;
    std::vector<NewtonAttempt> attempts{first};
    for (const auto& g : opts.multistart_grid)
        attempts.push_back(newton({g[0] * scale, g[1] * scale}, cost, p, opts));

    std::vector<SolveReport> converged;
    std::vector<AdjointVec> extremals;
    for (const auto& a : attempts) {
        if (!a.converged)
            continue;
        SolveReport rep = shooting_report(a, cost, p);
        if (!rep.converged)
            continue;
        if (std::none_of(extremals.begin(), extremals.end(),
                         [&](const AdjointVec& e) { return same_extremal(e, a.psi0); }))
            extremals.push_back(a.psi0);
        converged.push_back(std::move(rep));
    }

    SolveReport best;
    if (!converged.empty()) {
        auto it = std::min_element(converged.begin(), converged.end(),
                                   [](const SolveReport& x, const SolveReport& y) { return x.objective < y.objective; });
        best = std::move(*it);
    } else {
        auto it = std::min_element(attempts.begin(), attempts.end(),
                                   [](const NewtonAttempt& x, const NewtonAttempt& y) { return x.residual < y.residual; });
        best = shooting_report(*it, cost, p);
        best.converged = false;
    }
    best.starts_tried = static_cast<int>(attempts.size());
    best.distinct_extremals = static_cast<int>(extremals.size());
    return best;
}

SolveReport solve_sweep(const RunningCost& cost, const ModelParams& p, const SweepOptions& opts)
{
    p.validate();
    opts.validate();

    std::vector<ControlPair> u(static_cast<std::size_t>(p.n_steps) + 1);
    std::vector<ControlPair> target(u.size());

    // A fixed relaxation can cycle on the box constraints; halve it whenever the
    // distance to the clamp law has not improved for a while.
    constexpr int kStallWindow = 20;
    double relax = opts.relaxation;
    double best_change = std::numeric_limits<double>::infinity();
    int since_best = 0;

    SolveReport rep;
    rep.solver = SolverKind::Sweep;
    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        Trajectory traj = integrate_state_forward(u, cost, p, ControlHold::Linear);
        traj.adjoints = integrate_adjoint_backward(traj, cost, p);

        double change = 0.0;
        double scale = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            target[k] = optimal_controls(traj.states[k], traj.adjoints[k], cost, p);
            change = std::max({change, std::abs(target[k].u1 - u[k].u1), std::abs(target[k].u2 - u[k].u2)});
            scale = std::max({scale, u[k].u1, u[k].u2, target[k].u1, target[k].u2});
        }

        rep.newton_iters = iter;
        rep.objective = evaluate_objective(traj, cost);
        rep.residual_norm = inf_norm(traj.adjoints.back());
        rep.psi0 = traj.adjoints.front();
        rep.trajectory = std::move(traj);
        if (change <= opts.tol * scale) {
            rep.converged = true;
            return rep;
        }
        if (change < best_change) {
            best_change = change;
            since_best = 0;
        } else if (++since_best >= kStallWindow) {
            relax *= 0.5;
            best_change = change;
            since_best = 0;
        }
        for (std::size_t k = 0; k < u.size(); ++k) {
            u[k].u1 += relax * (target[k].u1 - u[k].u1);
            u[k].u2 += relax * (target[k].u2 - u[k].u2);
        }
    }
    return rep;
}

std::vector<ControlPair> control_gradient(std::span<const ControlPair> per_interval,
                                          const RunningCost& cost, const ModelParams& p)
{
    p.validate();
    const std::vector<ControlPair> nodes = piecewise_schedule(per_interval, p.n_steps);
    Trajectory traj = integrate_state_forward(nodes, cost, p, ControlHold::PiecewiseConstant);
    const std::vector<AdjointVec> psi = integrate_adjoint_backward(traj, cost, p);

    const double h = traj.grid.step();
    const int m = static_cast<int>(per_interval.size());
    std::vector<ControlPair> grad(per_interval.size());
    for (int j = 0; j < m; ++j) {
        const ControlPair& u = per_interval[j];
        // dJ/du1 = integral of 2 w1 u1 + psi1 S; dJ/du2 = integral of 2 w2 u2 + psi2 I.
        auto g1 = [&](int k) { return 2.0 * cost.w1() * u.u1 + psi[k].psi1 * traj.states[k].s; };
        auto g2 = [&](int k) { return 2.0 * cost.w2() * u.u2 + psi[k].psi2 * traj.states[k].i; };
        double sum1 = 0.0;
        double sum2 = 0.0;
        for (int k = interval_boundary(j, m, p.n_steps); k < interval_boundary(j + 1, m, p.n_steps); ++k) {
            sum1 += 0.5 * h * (g1(k) + g1(k + 1));
            sum2 += 0.5 * h * (g2(k) + g2(k + 1));
        }
        grad[j] = {sum1, sum2};
    }
    return grad;
}

} // namespace sirctl
