#!/usr/bin/env python3
# Copyright (C) 2026 The sirctl Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates tests/fixtures/frozen_values.hpp.

Independent of the C++ code path: scipy's adaptive DOP853 at tight tolerances,
plus a fine trapezoid rule (10^6 intervals) for the running-cost integrals.

    python3 tests/fixtures/generate_fixtures.py > tests/fixtures/frozen_values.hpp
"""
import numpy as np
from scipy.integrate import solve_ivp, trapezoid
from scipy.optimize import fsolve

BETA, ALPHA = 0.01, 0.1
S0, I0, R0 = 95.0, 5.0, 0.0
T = 10.0
C1, C2, C3 = 1.0, 1.0, 10.0
U1MAX, U2MAX = 0.9, 0.9
A_I, W1, W2 = C3 * ALPHA, C1, C2  # new objective weights
RTOL, ATOL = 1e-13, 1e-14
FINE = 1_000_000


def sir(t, y, u1, u2):
    s, i = y[0], y[1]
    return [-BETA * s * i - u1 * s, BETA * s * i - u2 * i - ALPHA * i]


def constant_control_objective(u1, u2):
    t = np.linspace(0.0, T, FINE + 1)
    sol = solve_ivp(sir, (0.0, T), [S0, I0], args=(u1, u2), method="DOP853",
                    rtol=RTOL, atol=ATOL, dense_output=True)
    i = sol.sol(t)[1]
    integrand = W1 * u1 ** 2 + W2 * u2 ** 2 + A_I * i
    return trapezoid(integrand, t)


def clamp_law(s, i, p1, p2):
    u1 = min(max(-p1 * s / (2 * W1), 0.0), U1MAX)
    u2 = min(max(-p2 * i / (2 * W2), 0.0), U2MAX)
    return u1, u2


def coupled(t, y):
    s, i, p1, p2, z = y
    u1, u2 = clamp_law(s, i, p1, p2)
    return [-BETA * s * i - u1 * s,
            BETA * s * i - u2 * i - ALPHA * i,
            p1 * BETA * i + p1 * u1 - p2 * BETA * i,
            A_I + p1 * BETA * s - p2 * BETA * s + p2 * u2 + p2 * ALPHA,
            W1 * u1 ** 2 + W2 * u2 ** 2 + A_I * i]


def shoot(psi0):
    sol = solve_ivp(coupled, (0.0, T), [S0, I0, psi0[0], psi0[1], 0.0], method="DOP853",
                    rtol=RTOL, atol=ATOL)
    return sol.y[:, -1]


def main():
    z_const = constant_control_objective(0.1, 0.1)
    r0 = shoot([0.0, 0.0])
    # Continuation from a coarse guess; fsolve polishes on the terminal costates.
    psi0 = fsolve(lambda q: shoot(q)[2:4], [-0.05, -1.8], xtol=1e-14)
    end = shoot(psi0)
    print("// Generated by tests/fixtures/generate_fixtures.py; do not edit by hand.")
    print("#pragma once")
    print()
    print("namespace sirctl::fixtures {")
    print()
    print("// Objective under u1 = u2 = 0.1 on the reference scenario (new weights),")
    print(f"// trapezoid rule with {FINE} intervals on a DOP853 dense solution.")
    print(f"inline constexpr double kConstantControlObjective = {float(z_const)!r};")
    print()
    print("// Terminal costates of the coupled system started from psi(0) = (0, 0).")
    print(f"inline constexpr double kZeroStartPsi1T = {float(r0[2])!r};")
    print(f"inline constexpr double kZeroStartPsi2T = {float(r0[3])!r};")
    print()
    print("// Optimal psi(0) and objective of the reference scenario, adaptive shooting.")
    print(f"inline constexpr double kOptimalPsi1At0 = {float(psi0[0])!r};")
    print(f"inline constexpr double kOptimalPsi2At0 = {float(psi0[1])!r};")
    print(f"inline constexpr double kOptimalObjective = {float(end[4])!r};")
    print(f"inline constexpr double kOptimalResidual = {float(max(abs(end[2]), abs(end[3])))!r};")
    print()
    print("} // namespace sirctl::fixtures")


if __name__ == "__main__":
    main()
