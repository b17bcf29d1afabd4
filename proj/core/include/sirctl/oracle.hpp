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

#include <cstdint>
#include <vector>

#include "sirctl/model.hpp"

namespace sirctl {

struct BruteForceResult {
    std::vector<ControlPair> best_schedule; ///< one pair per interval
    double best_objective = 0.0;
    std::uint64_t schedules_evaluated = 0;
};

/// Largest enumeration brute_force_best accepts.
inline constexpr std::uint64_t kMaxBruteForceSchedules = 1'000'000;

/// Exhaustive search over schedules holding u1, u2 constant on each of
/// `n_intervals` intervals, each drawn from {0, u_max/(L-1), ..., u_max}
/// (L = levels_per_control; L = 1 means only zero). Ties are broken by
/// enumeration order, so threaded and serial runs return the same schedule.
/// Throws TooLargeError when levels^(2 * n_intervals) exceeds the guard.
BruteForceResult brute_force_best(const RunningCost& cost, const ModelParams& p, int n_intervals,
                                  int levels_per_control, unsigned threads = 1);

} // namespace sirctl
