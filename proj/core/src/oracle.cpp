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
#include "sirctl/oracle.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "sirctl/errors.hpp"
#include "sirctl/integrate.hpp"
#include "sirctl/objective.hpp"

namespace sirctl {
namespace {

struct Candidate {
    double objective = std::numeric_limits<double>::infinity();
    std::uint64_t index = std::numeric_limits<std::uint64_t>::max();

    bool better_than(const Candidate& o) const
    {
        return objective < o.objective || (objective == o.objective && index < o.index);
    }
};

double level(int j, int levels, double u_max)
{
    if (levels == 1)
        return 0.0;
    if (j == levels - 1)
        return u_max;
    return u_max * j / (levels - 1);
}

// Digit 2*i is interval i's u1 level, digit 2*i+1 its u2 level (least significant first).
std::vector<ControlPair> decode(std::uint64_t index, int n_intervals, int levels, const ModelParams& p)
{
    std::vector<ControlPair> s(n_intervals);
    for (int i = 0; i < n_intervals; ++i) {
        s[i].u1 = level(static_cast<int>(index % levels), levels, p.u1_max);
        index /= levels;
        s[i].u2 = level(static_cast<int>(index % levels), levels, p.u2_max);
        index /= levels;
    }
    return s;
}

Candidate scan(std::uint64_t begin, std::uint64_t end, const RunningCost& cost, const ModelParams& p,
               int n_intervals, int levels)
{
    Candidate best;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        const auto schedule = decode(idx, n_intervals, levels, p);
        const auto nodes = piecewise_schedule(schedule, p.n_steps);
        Candidate c{evaluate_objective(integrate_state_forward(nodes, cost, p), cost), idx};
        if (c.better_than(best))
            best = c;
    }
    return best;
}

} // namespace

BruteForceResult brute_force_best(const RunningCost& cost, const ModelParams& p, int n_intervals,
                                  int levels_per_control, unsigned threads)
{
    p.validate();
    if (n_intervals < 1 || n_intervals > p.n_steps)
        throw std::invalid_argument("n_intervals must lie in [1, n_steps]");
    if (levels_per_control < 1)
        throw std::invalid_argument("levels_per_control must be at least 1");

    std::uint64_t total = 1;
    for (int i = 0; i < 2 * n_intervals; ++i) {
        total *= static_cast<std::uint64_t>(levels_per_control);
        if (total > kMaxBruteForceSchedules)
            throw TooLargeError("brute force would enumerate more than "
                                + std::to_string(kMaxBruteForceSchedules) + " schedules");
    }

    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::uint64_t>(total, 256)));
    std::vector<Candidate> partial(threads);
    if (threads == 1) {
        partial[0] = scan(0, total, cost, p, n_intervals, levels_per_control);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                const std::uint64_t begin = total * t / threads;
                const std::uint64_t end = total * (t + 1) / threads;
                pool.emplace_back([&, t, begin, end] {
                    try {
                        partial[t] = scan(begin, end, cost, p, n_intervals, levels_per_control);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e)
                std::rethrow_exception(e);
        }
    }

    Candidate best;
    for (const auto& c : partial) {
        if (c.better_than(best))
            best = c;
    }
    return {decode(best.index, n_intervals, levels_per_control, p), best.objective, total};
}

} // namespace sirctl
