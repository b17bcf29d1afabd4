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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures/frozen_values.hpp"
#include "sirctl/integrate.hpp"
#include "sirctl/objective.hpp"
#include "sirctl/pmp_solver.hpp"
#include "test_support.hpp"

using namespace sirctl;
using sirctl::testing::reference_scenario;
using sirctl::testing::rel_diff;

namespace {

double objective_of(std::span<const ControlPair> per_interval, const RunningCost& cost, const ModelParams& p)
{
    const auto nodes = piecewise_schedule(per_interval, p.n_steps);
    return evaluate_objective(integrate_state_forward(nodes, cost, p), cost);
}

double constant_policy_objective(const ModelParams& p, const RunningCost& cost, ControlPair u)
{
    const std::vector<ControlPair> s(static_cast<std::size_t>(p.n_steps) + 1, u);
    return evaluate_objective(integrate_state_forward(s, cost, p), cost);
}

/// Node controls of a trajectory averaged onto m equal intervals.
std::vector<ControlPair> project(const Trajectory& t, int m)
{
    std::vector<ControlPair> out(m);
    for (int j = 0; j < m; ++j) {
        const int a = interval_boundary(j, m, t.grid.n_steps);
        const int b = interval_boundary(j + 1, m, t.grid.n_steps);
        for (int k = a; k < b; ++k) {
            out[j].u1 += 0.5 * (t.controls[k].u1 + t.controls[k + 1].u1) / (b - a);
            out[j].u2 += 0.5 * (t.controls[k].u2 + t.controls[k + 1].u2) / (b - a);
        }
    }
    return out;
}

} // namespace

TEST(ShootingResidual, HomogeneousFixedPoint)
{
    const ModelParams p = reference_scenario();
    const AdjointVec r = shooting_residual({0.0, 0.0}, RunningCost(0.0, 1.0, 1.0), p);
    EXPECT_EQ(r.psi1, 0.0);
    EXPECT_EQ(r.psi2, 0.0);
}

TEST(ShootingResidual, FirstCostateDecouplesWithoutInfection)
{
    ModelParams p = reference_scenario();
    p.i0 = 0.0;
    const AdjointVec r = shooting_residual({0.0, -3.0}, RunningCost::from(p), p);
    EXPECT_EQ(r.psi1, 0.0);
}

TEST(ShootingResidual, ZeroStartSignsMatchFrozenRun)
{
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    ASSERT_DOUBLE_EQ(cost.a_i(), 1.0);
    const AdjointVec r = shooting_residual({0.0, 0.0}, cost, p);
    EXPECT_LT(r.psi1, 0.0);
    EXPECT_GT(r.psi2, 0.0);
    EXPECT_LE(rel_diff(r.psi1, fixtures::kZeroStartPsi1T), 1e-6);
    EXPECT_LE(rel_diff(r.psi2, fixtures::kZeroStartPsi2T), 1e-6);
}

TEST(SolveShooting, ZeroIsOptimalWithoutStateCost)
{
    ModelParams p = reference_scenario();
    p.alpha = 0.0;
    const SolveReport rep = solve_shooting(RunningCost::from(p), p);
    ASSERT_TRUE(rep.converged);
    EXPECT_LE(rep.newton_iters, 1);
    EXPECT_EQ(rep.objective, 0.0);
    for (const auto& u : rep.trajectory.controls) {
        EXPECT_EQ(u.u1, 0.0);
        EXPECT_EQ(u.u2, 0.0);
    }
}

TEST(SolveShooting, DegenerateControlBox)
{
    ModelParams p = reference_scenario();
    p.u1_max = 0.0;
    p.u2_max = 0.0;
    const RunningCost cost = RunningCost::from(p);
    const SolveReport rep = solve_shooting(cost, p);
    ASSERT_TRUE(rep.converged);
    for (const auto& u : rep.trajectory.controls) {
        EXPECT_EQ(u.u1, 0.0);
        EXPECT_EQ(u.u2, 0.0);
    }
    EXPECT_LE(rel_diff(rep.objective, constant_policy_objective(p, cost, {})), 1e-12);
}

TEST(SolveShooting, ReferenceScenario)
{
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    const SolveReport rep = solve_shooting(cost, p);
    ASSERT_TRUE(rep.converged);
    EXPECT_EQ(rep.solver, SolverKind::Shooting);
    EXPECT_LE(rep.residual_norm, 1e-10);
    EXPECT_LE(rep.newton_iters, 30);
    EXPECT_EQ(rep.objective, evaluate_objective(rep.trajectory, cost));
    // Independent adaptive-step solution of the same boundary-value problem.
    EXPECT_LE(rel_diff(rep.objective, fixtures::kOptimalObjective), 1e-8);
    EXPECT_NEAR(rep.psi0.psi1, fixtures::kOptimalPsi1At0, 1e-6);
    EXPECT_NEAR(rep.psi0.psi2, fixtures::kOptimalPsi2At0, 1e-6);
}

TEST(SolveShooting, ClampLawHoldsExactlyAtNodes)
{
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    const SolveReport rep = solve_shooting(cost, p);
    ASSERT_TRUE(rep.converged);
    const Trajectory& t = rep.trajectory;
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        const ControlPair u = optimal_controls(t.states[k], t.adjoints[k], cost, p);
        ASSERT_EQ(u.u1, t.controls[k].u1);
        ASSERT_EQ(u.u2, t.controls[k].u2);
    }
}

TEST(SolveShooting, BeatsTrivialPolicies)
{
    for (Functional f : {Functional::New, Functional::Legacy}) {
        ModelParams p = reference_scenario();
        p.functional = f;
        const RunningCost cost = RunningCost::from(p);
        const SolveReport rep = solve_shooting(cost, p);
        ASSERT_TRUE(rep.converged) << to_string(f);
        EXPECT_LE(rep.objective, constant_policy_objective(p, cost, {}));
        EXPECT_LE(rep.objective, constant_policy_objective(p, cost, {p.u1_max, p.u2_max}));
    }
}

TEST(SolveShooting, MultistartRecoversFromBadGuess)
{
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    const SolveReport rep = solve_shooting(cost, p, {}, AdjointVec{-1e4, 1e4});
    ASSERT_TRUE(rep.converged);
    EXPECT_GT(rep.starts_tried, 1);
    EXPECT_GE(rep.distinct_extremals, 1);
    EXPECT_LE(rel_diff(rep.objective, fixtures::kOptimalObjective), 1e-8);
}

TEST(SolveShooting, FailureIsReportedHonestly)
{
    const ModelParams p = reference_scenario();
    ShootingOptions opts;
    opts.max_newton_iters = 1;
    opts.multistart_grid.clear();
    const SolveReport rep = solve_shooting(RunningCost::from(p), p, opts);
    EXPECT_FALSE(rep.converged);
    EXPECT_GT(rep.residual_norm, opts.residual_tol);
    EXPECT_FALSE(rep.trajectory.states.empty());
    EXPECT_TRUE(std::isfinite(rep.objective));
}

TEST(SolveShooting, RejectsBadOptions)
{
    const ModelParams p = reference_scenario();
    ShootingOptions opts;
    opts.residual_tol = 0.0;
    EXPECT_THROW(solve_shooting(RunningCost::from(p), p, opts), std::invalid_argument);
    opts = {};
    opts.max_newton_iters = 0;
    EXPECT_THROW(solve_shooting(RunningCost::from(p), p, opts), std::invalid_argument);
}

TEST(SolveSweep, TrivialCases)
{
    ModelParams p = reference_scenario();
    p.alpha = 0.0;
    SolveReport rep = solve_sweep(RunningCost::from(p), p);
    ASSERT_TRUE(rep.converged);
    EXPECT_EQ(rep.newton_iters, 1);
    EXPECT_EQ(rep.objective, 0.0);

    p = reference_scenario();
    p.u1_max = 0.0;
    p.u2_max = 0.0;
    rep = solve_sweep(RunningCost::from(p), p);
    ASSERT_TRUE(rep.converged);
    EXPECT_EQ(rep.newton_iters, 1);
    for (const auto& u : rep.trajectory.controls)
        EXPECT_EQ(u.u1 + u.u2, 0.0);
}

TEST(SolveSweep, AgreesWithShooting)
{
    for (Functional f : {Functional::New, Functional::Legacy}) {
        ModelParams p = reference_scenario();
        p.functional = f;
        const RunningCost cost = RunningCost::from(p);
        const SolveReport shoot = solve_shooting(cost, p);
        const SolveReport sweep = solve_sweep(cost, p);
        ASSERT_TRUE(shoot.converged);
        ASSERT_TRUE(sweep.converged);
        EXPECT_EQ(sweep.solver, SolverKind::Sweep);
        EXPECT_EQ(sweep.residual_norm, 0.0);
        EXPECT_LE(rel_diff(shoot.objective, sweep.objective), 1e-5) << to_string(f);
    }
}

TEST(SolveSweep, ClampLawHoldsWithinTolerance)
{
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    SweepOptions opts;
    const SolveReport rep = solve_sweep(cost, p, opts);
    ASSERT_TRUE(rep.converged);
    const Trajectory& t = rep.trajectory;
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        const ControlPair u = optimal_controls(t.states[k], t.adjoints[k], cost, p);
        ASSERT_NEAR(u.u1, t.controls[k].u1, opts.tol * p.u1_max);
        ASSERT_NEAR(u.u2, t.controls[k].u2, opts.tol * p.u2_max);
    }
}

TEST(SolveSweep, ReportsNonConvergence)
{
    const ModelParams p = reference_scenario();
    SweepOptions opts;
    opts.max_iters = 2;
    const SolveReport rep = solve_sweep(RunningCost::from(p), p, opts);
    EXPECT_FALSE(rep.converged);
    EXPECT_EQ(rep.newton_iters, 2);
    opts.relaxation = 0.0;
    EXPECT_THROW(solve_sweep(RunningCost::from(p), p, opts), std::invalid_argument);
}

TEST(ControlGradient, ZeroWithoutStateCostAtZeroControl)
{
    const ModelParams p = reference_scenario();
    const std::vector<ControlPair> zero(6);
    for (const auto& g : control_gradient(zero, RunningCost(0.0, 1.0, 1.0), p)) {
        EXPECT_EQ(g.u1, 0.0);
        EXPECT_EQ(g.u2, 0.0);
    }
}

TEST(ControlGradient, MatchesCentralDifferences)
{
    std::mt19937_64 rng(2024);
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    const auto schedule = sirctl::testing::random_schedule(rng, 6, 0.1, 0.9, p);
    const auto grad = control_gradient(schedule, cost, p);
    const double step = 1e-4;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        for (int c = 0; c < 2; ++c) {
            auto plus = schedule;
            auto minus = schedule;
            (c == 0 ? plus[j].u1 : plus[j].u2) += step;
            (c == 0 ? minus[j].u1 : minus[j].u2) -= step;
            const double fd = (objective_of(plus, cost, p) - objective_of(minus, cost, p)) / (2 * step);
            const double g = c == 0 ? grad[j].u1 : grad[j].u2;
            EXPECT_LE(std::abs(g - fd) / std::abs(fd), 1e-3) << "interval " << j << " control " << c;
        }
    }
}

TEST(ControlGradient, NearlyStationaryAtTheOptimum)
{
    const ModelParams p = reference_scenario();
    const RunningCost cost = RunningCost::from(p);
    const SolveReport rep = solve_shooting(cost, p);
    ASSERT_TRUE(rep.converged);

    const int m = 200;
    const auto projected = project(rep.trajectory, m);
    const auto g_opt = control_gradient(projected, cost, p);
    const auto g_zero = control_gradient(std::vector<ControlPair>(m), cost, p);

    double scale = 0.0;
    for (const auto& g : g_zero)
        scale = std::max({scale, std::abs(g.u1), std::abs(g.u2)});
    for (int j = 0; j < m; ++j) {
        if (projected[j].u1 > 1e-6 && projected[j].u1 < p.u1_max - 1e-6) {
            EXPECT_LE(std::abs(g_opt[j].u1), 1e-3 * scale) << "interval " << j;
        }
        if (projected[j].u2 > 1e-6 && projected[j].u2 < p.u2_max - 1e-6) {
            EXPECT_LE(std::abs(g_opt[j].u2), 1e-3 * scale) << "interval " << j;
        }
    }

    // A small projected gradient step cannot buy more than first order.
    auto stepped = projected;
    double g_sq = 0.0;
    const double tau = 1e-3;
    for (int j = 0; j < m; ++j) {
        stepped[j].u1 = std::clamp(stepped[j].u1 - tau * g_opt[j].u1, 0.0, p.u1_max);
        stepped[j].u2 = std::clamp(stepped[j].u2 - tau * g_opt[j].u2, 0.0, p.u2_max);
        g_sq += g_opt[j].u1 * g_opt[j].u1 + g_opt[j].u2 * g_opt[j].u2;
    }
    const double before = objective_of(projected, cost, p);
    const double after = objective_of(stepped, cost, p);
    EXPECT_GE(after, before - 2.0 * tau * g_sq - 1e-12 * before);
}
