"""Closed-form single-trajectory dynamics of the damped oscillator.

With ``tau = lambda*t`` the mean trajectory is

    x(tau) = exp(-tau) [x0 C + (x0 + p0/(m0 lambda)) S]
    v(tau) = exp(-tau) [(p0/m0) C - (p0/m0 + k0 x0/(m0 lambda)) S]

where ``C = cosh(zeta tau)`` and ``S = sinh(zeta tau)/zeta``; the canonical
momentum is ``p = m0 v exp(2 tau)``.  Kinetic energy and work are contractions
of the coefficient vector returned by :func:`alpha_cl` with the basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernel import CoefficientVector, contract, gamma, hyperbolic_pair
from .scenario import Scenario

#: smallest elastic share for which ``x0`` is a usable length scale
X0_SCALE_MIN_EPSILON = 1e-12


@dataclass(frozen=True)
class ClassicalTrajectoryPoint:
    tau: float
    x_over_scale: float
    v: float
    p: float
    K_over_K0: float


def alpha_cl(scenario: Scenario) -> CoefficientVector:
    """Coefficients of the mean kinetic energy ``K/K0``."""
    eps = scenario.epsilon
    root = math.sqrt(eps - eps * eps)
    norm = 1.0 / (1.0 - eps)
    if scenario.undamped:
        # basis (cos^2, sin cos, -sin^2) in the phase omega*t
        return CoefficientVector(norm * (1.0 - eps), -2.0 * norm * root, -norm * eps,
                                 undamped=True)
    r = scenario.omega_over_lambda
    return CoefficientVector(
        norm * (1.0 - eps),
        -2.0 * norm * (r * root + (1.0 - eps)),
        norm * (r * r * eps + 2.0 * r * root + (1.0 - eps)),
    )


def position_scale(scenario: Scenario) -> str:
    """Name of the length used by :func:`classical_position`.

    ``x0`` when the oscillator starts displaced, otherwise ``x_m = p0/(m0
    lambda)``; the frictionless oscillator started at rest position uses the
    amplitude ``p0/(m0 omega)``.  An initial displacement below
    ``X0_SCALE_MIN_EPSILON`` of the energy is treated as no displacement, since
    dividing by such an ``x0`` overflows.
    """
    if scenario.epsilon >= X0_SCALE_MIN_EPSILON:
        return "x0"
    return "p0/(m0*omega)" if scenario.undamped else "x_m"


def _scale_length(scenario: Scenario) -> float:
    ph, st = scenario.physical, scenario.state
    name = position_scale(scenario)
    if name == "x0":
        return st.x0
    if name == "x_m":
        return st.p0 / (ph.m0 * ph.lam)
    return st.p0 / (ph.m0 * ph.omega)


def classical_position(scenario: Scenario, tau):
    """Position divided by the length named by :func:`position_scale`."""
    eps = scenario.epsilon
    by_x0 = position_scale(scenario) == "x0"
    if scenario.undamped:
        t = np.asarray(tau, dtype=float)
        if by_x0:
            out = np.cos(t) + math.sqrt((1.0 - eps) / eps) * np.sin(t)
        else:
            out = np.sin(t) + math.sqrt(eps / (1.0 - eps)) * np.cos(t)
        return _out(out)
    c, s = hyperbolic_pair(scenario.zeta, tau, decay=-2)
    if by_x0:
        r = scenario.omega_over_lambda
        return _out(c + (1.0 + r * math.sqrt((1.0 - eps) / eps)) * s)
    # below the x0 threshold the displacement term is negligible but kept
    return _out(_x0_over_x_m(scenario) * (c + s) + s)


def _x0_over_x_m(scenario: Scenario) -> float:
    """``x0/x_m = (lambda/omega) sqrt(eps/(1-eps))``; zero without displacement."""
    eps = scenario.epsilon
    if eps == 0.0:
        return 0.0
    return math.sqrt(eps / (1.0 - eps)) / scenario.omega_over_lambda


def classical_state(scenario: Scenario, tau):
    """Physical position, velocity and canonical momentum at ``tau``."""
    ph, st = scenario.physical, scenario.state
    m0, lam, omega, k0 = ph.m0, ph.lam, ph.omega, ph.k0
    if scenario.undamped:
        t = np.asarray(tau, dtype=float)
        cos, sin = np.cos(t), np.sin(t)
        x = st.x0 * cos + st.p0 / (m0 * omega) * sin
        v = st.p0 / m0 * cos - st.x0 * omega * sin
        return _out(x), _out(v), _out(m0 * v)
    c, s = hyperbolic_pair(scenario.zeta, tau, decay=-2)
    x = st.x0 * c + (st.x0 + st.p0 / (m0 * lam)) * s
    v = st.p0 / m0 * c - (st.p0 / m0 + k0 * st.x0 / (m0 * lam)) * s
    p = m0 * v * np.exp(2.0 * np.asarray(tau, dtype=float))
    return _out(x), _out(v), _out(p)


def trajectory_point(scenario: Scenario, tau: float) -> ClassicalTrajectoryPoint:
    x, v, p = classical_state(scenario, tau)
    return ClassicalTrajectoryPoint(float(tau), x / _scale_length(scenario), v, p,
                                    classical_kinetic(scenario, tau))


def classical_kinetic(scenario: Scenario, tau):
    """``K_cl/K0 = exp(-2 tau) alpha_cl . Gamma(tau)``."""
    return contract(alpha_cl(scenario), gamma(scenario.zeta, tau, decay=-2))


def classical_work(scenario: Scenario, tau):
    """``W_cl/K0 = alpha_cl . (exp(-2 tau) Gamma(tau) - Gamma(0))``."""
    a = alpha_cl(scenario)
    return contract(a, gamma(scenario.zeta, tau, decay=-2)) - contract(a, gamma(scenario.zeta, 0.0))


def potential_energy(scenario: Scenario, tau):
    """Mechanical elastic energy ``m0 omega^2 x^2 / 2`` of the mean trajectory, in units of ``K0``."""
    x, _, _ = classical_state(scenario, tau)
    return _out(0.5 * scenario.physical.k0 * np.asarray(x) ** 2 / scenario.K0)


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value
