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
#include "sirctl/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sirctl {

std::string_view to_string(Functional f)
{
    return f == Functional::New ? "new" : "legacy";
}

std::vector<FieldViolation> ModelParams::violations() const
{
    std::vector<FieldViolation> out;
    auto non_negative = [&](const char* name, double v) {
        if (!std::isfinite(v))
            out.push_back({name, "must be finite"});
        else if (v < 0.0)
            out.push_back({name, "must be non-negative"});
    };
    auto positive = [&](const char* name, double v) {
        if (!std::isfinite(v))
            out.push_back({name, "must be finite"});
        else if (v <= 0.0)
            out.push_back({name, "must be positive"});
    };

    non_negative("beta", beta);
    non_negative("alpha", alpha);
    positive("c1", c1);
    positive("c2", c2);
    non_negative("c3", c3);
    non_negative("u1_max", u1_max);
    non_negative("u2_max", u2_max);
    positive("horizon", horizon);
    non_negative("s0", s0);
    non_negative("i0", i0);
    non_negative("r0", r0);
    if (n_steps < 2)
        out.push_back({"n_steps", "must be at least 2"});
    // Legacy puts c3 on u1^2, which the clamp law divides by.
    if (functional == Functional::Legacy && std::isfinite(c3) && c3 <= 0.0)
        out.push_back({"c3", "must be positive for the legacy functional"});
    return out;
}

void ModelParams::validate() const
{
    auto v = violations();
    if (v.empty())
        return;
    std::string msg = "invalid model parameters:";
    for (const auto& e : v)
        msg += " " + e.field + " " + e.reason + ";";
    throw std::invalid_argument(msg);
}

RunningCost::RunningCost(double a_i, double w1, double w2) : a_i_(a_i), w1_(w1), w2_(w2)
{
    if (!(a_i >= 0.0) || !std::isfinite(a_i))
        throw std::invalid_argument("running cost: a_i must be finite and non-negative");
    if (!(w1 > 0.0) || !std::isfinite(w1))
        throw std::invalid_argument("running cost: w1 must be finite and positive");
    if (!(w2 > 0.0) || !std::isfinite(w2))
        throw std::invalid_argument("running cost: w2 must be finite and positive");
}

RunningCost RunningCost::from(const ModelParams& p)
{
    return from(p, p.functional);
}

RunningCost RunningCost::from(const ModelParams& p, Functional f)
{
    if (f == Functional::New)
        return {p.c3 * p.alpha, p.c1, p.c2};
    return {p.c1, p.c3, p.c2};
}

StateVec initial_state(const ModelParams& p)
{
    return {p.s0, p.i0, p.r0, 0.0};
}

StateVec state_rhs(const StateVec& x, const ControlPair& u, const ModelParams& p)
{
    const double infection = p.beta * x.s * x.i;
    const double vaccinated = u.u1 * x.s;
    const double treated = u.u2 * x.i;
    const double died = p.alpha * x.i;
    return {-infection - vaccinated, infection - treated - died, vaccinated + treated, died};
}

AdjointVec adjoint_rhs(const AdjointVec& psi, const StateVec& x, const ControlPair& u,
                       const RunningCost& cost, const ModelParams& p)
{
    const double dpsi1 = psi.psi1 * p.beta * x.i + psi.psi1 * u.u1 - psi.psi2 * p.beta * x.i;
    const double dpsi2 = cost.a_i() + psi.psi1 * p.beta * x.s - psi.psi2 * p.beta * x.s
                         + psi.psi2 * u.u2 + psi.psi2 * p.alpha;
    return {dpsi1, dpsi2};
}

double hamiltonian(const StateVec& x, const AdjointVec& psi, const ControlPair& u,
                   const RunningCost& cost, const ModelParams& p)
{
    const double running = cost.control_integrand(u.u1, u.u2) + cost.state_integrand(x.i);
    const double ds = -p.beta * x.s * x.i - u.u1 * x.s;
    const double di = p.beta * x.s * x.i - u.u2 * x.i - p.alpha * x.i;
    return -running + psi.psi1 * ds + psi.psi2 * di;
}

ControlPair optimal_controls(const StateVec& x, const AdjointVec& psi, const RunningCost& cost,
                             const ModelParams& p)
{
    const double u1 = -psi.psi1 * x.s / (2.0 * cost.w1());
    const double u2 = -psi.psi2 * x.i / (2.0 * cost.w2());
    // Non-positive stationary points map to +0.0 (never -0.0); ties resolve to the bound.
    return {u1 > 0.0 ? std::min(u1, p.u1_max) : 0.0, u2 > 0.0 ? std::min(u2, p.u2_max) : 0.0};
}

} // namespace sirctl
