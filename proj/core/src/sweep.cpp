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
#include "sirctl/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "sirctl/objective.hpp"

namespace sirctl {
namespace {

struct PointResult {
    SweepRow row;
    std::optional<AdjointVec> psi0_new;
    std::optional<AdjointVec> psi0_legacy;
};

ModelParams at_alpha(const ModelParams& base, double alpha)
{
    ModelParams p = base;
    p.alpha = alpha;
    return p;
}

std::optional<AdjointVec> solve_new(SweepRow& row, const ModelParams& p, const ShootingOptions& opts,
                                    std::optional<AdjointVec> guess)
{
    const SolveReport r = solve_shooting(RunningCost::from(p, Functional::New), p, opts, guess);
    row.objective_new = r.objective;
    row.defective_terminal_new = r.trajectory.states.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                             : defective_terminal(r.trajectory);
    row.converged_new = r.converged;
    row.residual_new = r.residual_norm;
    row.newton_iters_new = r.newton_iters;
    return r.converged ? std::optional(r.psi0) : std::nullopt;
}

std::optional<AdjointVec> solve_legacy(SweepRow& row, const ModelParams& p, const ShootingOptions& opts,
                                       std::optional<AdjointVec> guess)
{
    const SolveReport r = solve_shooting(RunningCost::from(p, Functional::Legacy), p, opts, guess);
    row.objective_legacy = r.objective;
    row.converged_legacy = r.converged;
    row.residual_legacy = r.residual_norm;
    row.newton_iters_legacy = r.newton_iters;
    return r.converged ? std::optional(r.psi0) : std::nullopt;
}

PointResult solve_point(const ModelParams& base, double alpha, const ShootingOptions& opts,
                        std::optional<AdjointVec> guess_new, std::optional<AdjointVec> guess_legacy)
{
    const ModelParams p = at_alpha(base, alpha);
    PointResult out;
    out.row.alpha = alpha;
    out.psi0_new = solve_new(out.row, p, opts, guess_new);
    out.psi0_legacy = solve_legacy(out.row, p, opts, guess_legacy);
    return out;
}

/// psi(0) of the closest converged point, lower index first on ties.
std::optional<AdjointVec> nearest(const std::vector<std::optional<AdjointVec>>& psi0, std::size_t k)
{
    for (std::size_t d = 1; d < psi0.size(); ++d) {
        if (k >= d && psi0[k - d])
            return psi0[k - d];
        if (k + d < psi0.size() && psi0[k + d])
            return psi0[k + d];
    }
    return std::nullopt;
}

} // namespace

std::vector<double> linspace(double first, double last, int n)
{
    if (n < 1)
        throw std::invalid_argument("linspace needs at least one point");
    if (n == 1)
        return {first};
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k)
        v[k] = first + (last - first) * k / (n - 1);
    v.back() = last;
    return v;
}

std::vector<SweepRow> sweep_alpha(const ModelParams& base, std::span<const double> alphas,
                                  const ShootingOptions& opts, bool parallel)
{
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        if (!(alphas[k] >= 0.0) || !std::isfinite(alphas[k]))
            throw std::invalid_argument("sweep alphas must be finite and non-negative");
        if (k > 0 && !(alphas[k] > alphas[k - 1]))
            throw std::invalid_argument("sweep alphas must be strictly increasing");
    }
    // Legacy weights need c3 > 0 whatever base.functional says.
    ModelParams check = base;
    check.functional = Functional::Legacy;
    check.validate();
    opts.validate();

    std::vector<SweepRow> rows(alphas.size());
    if (!parallel) {
        std::optional<AdjointVec> guess_new;
        std::optional<AdjointVec> guess_legacy;
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            PointResult r = solve_point(base, alphas[k], opts, guess_new, guess_legacy);
            if (r.psi0_new)
                guess_new = r.psi0_new;
            if (r.psi0_legacy)
                guess_legacy = r.psi0_legacy;
            rows[k] = r.row;
        }
        return rows;
    }

    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(alphas.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::optional<AdjointVec>> psi_new(alphas.size());
    std::vector<std::optional<AdjointVec>> psi_legacy(alphas.size());
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = next++; k < alphas.size(); k = next++) {
                        PointResult r = solve_point(base, alphas[k], opts, std::nullopt, std::nullopt);
                        rows[k] = r.row;
                        psi_new[k] = r.psi0_new;
                        psi_legacy[k] = r.psi0_legacy;
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e)
            std::rethrow_exception(e);
    }

    // Cold starts can stall where a warm start would not. Retry each failure once,
    // serially and in index order, from the nearest converged neighbour.
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const ModelParams p = at_alpha(base, alphas[k]);
        if (!psi_new[k]) {
            if (const auto guess = nearest(psi_new, k))
                psi_new[k] = solve_new(rows[k], p, opts, guess);
        }
        if (!psi_legacy[k]) {
            if (const auto guess = nearest(psi_legacy, k))
                psi_legacy[k] = solve_legacy(rows[k], p, opts, guess);
        }
    }
    return rows;
}

} // namespace sirctl
