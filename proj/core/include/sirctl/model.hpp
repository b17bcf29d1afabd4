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

#include <string>
#include <string_view>
#include <vector>

namespace sirctl {

/// Which objective a problem minimizes.
///  - New:    integral of c1*u1^2 + c2*u2^2 + c3*alpha*I (penalizes defective nodes)
///  - Legacy: integral of c1*I + c2*u2^2 + c3*u1^2
enum class Functional { New, Legacy };

std::string_view to_string(Functional f);

struct FieldViolation {
    std::string field;
    std::string reason;

    bool operator==(const FieldViolation&) const = default;
};

/// Scalar constants of the controlled SIR problem.
struct ModelParams {
    double beta = 0.01;  ///< transmission intensity
    double alpha = 0.1;  ///< disease-induced death rate
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 10.0;
    double u1_max = 0.9; ///< vaccination rate bound
    double u2_max = 0.9; ///< treatment rate bound
    double horizon = 10.0;
    double s0 = 95.0;
    double i0 = 5.0;
    double r0 = 0.0;
    int n_steps = 2000;
    Functional functional = Functional::New;

    /// Every violated invariant, in field declaration order. Empty means valid.
    std::vector<FieldViolation> violations() const;

    /// Throws std::invalid_argument listing all violations.
    void validate() const;

    double step() const { return horizon / n_steps; }
    double population() const { return s0 + i0 + r0; }
};

/// Weights of the unified running cost a_i*I + w1*u1^2 + w2*u2^2.
class RunningCost {
public:
    /// Throws std::invalid_argument unless a_i >= 0, w1 > 0, w2 > 0.
    RunningCost(double a_i, double w1, double w2);

    /// Maps params.functional (and c1..c3, alpha) onto the unified weights.
    static RunningCost from(const ModelParams& p);
    static RunningCost from(const ModelParams& p, Functional f);

    double a_i() const { return a_i_; }
    double w1() const { return w1_; }
    double w2() const { return w2_; }

    double control_integrand(double u1, double u2) const { return w1_ * u1 * u1 + w2_ * u2 * u2; }
    double state_integrand(double infected) const { return a_i_ * infected; }

private:
    double a_i_;
    double w1_;
    double w2_;
};

struct StateVec {
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;
    double d = 0.0; ///< cumulative defective nodes

    double total() const { return s + i + r + d; }
};

struct AdjointVec {
    double psi1 = 0.0;
    double psi2 = 0.0;
};

struct ControlPair {
    double u1 = 0.0;
    double u2 = 0.0;
};

StateVec initial_state(const ModelParams& p);

/// Right-hand side of the S, I, R, D system. Components sum to zero.
StateVec state_rhs(const StateVec& x, const ControlPair& u, const ModelParams& p);

/// Costate dynamics d(psi)/dt = -dH/d(S, I) with the normal multiplier fixed to 1.
AdjointVec adjoint_rhs(const AdjointVec& psi, const StateVec& x, const ControlPair& u,
                       const RunningCost& cost, const ModelParams& p);

double hamiltonian(const StateVec& x, const AdjointVec& psi, const ControlPair& u,
                   const RunningCost& cost, const ModelParams& p);

/// Pointwise maximizer of the Hamiltonian over the control box: the stationary
/// point of each (separable, convex) quadratic clamped onto [0, u_max].
ControlPair optimal_controls(const StateVec& x, const AdjointVec& psi, const RunningCost& cost,
                             const ModelParams& p);

} // namespace sirctl
