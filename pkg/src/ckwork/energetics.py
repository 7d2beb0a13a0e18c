"""Work and heat of the damped oscillator in units of ``K0``.

Two bookkeepings are compared:

* mechanical quantum work ``W_q`` -- the change of the kinetic energy
  ``(m0/2)<V^2>`` -- split into a centroid part ``W_c`` carried by the mean
  velocity and a thermal part ``W_th`` carried by the velocity variance;
* the Alicki split of the change of ``H_u = (m0/2) V^2`` into work
  ``W_ak = int <dH_u/dt>`` and heat ``Q_ak = dK - W_ak``.

Since ``dH_u/dt = -2 lambda m0 V^2`` the Alicki work rate is ``-4 lambda K_q``
and its antiderivative is again a contraction with the basis vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import alpha_cl, classical_work
from .errors import DomainError
from .kernel import CoefficientVector, contract, gamma
from .quantum import fluctuation_vector
from .scenario import Scenario


@dataclass(frozen=True)
class EnergySeries:
    tau_grid: np.ndarray
    K_q: np.ndarray
    W_q: np.ndarray
    W_c: np.ndarray
    W_th: np.ndarray
    W_ak: np.ndarray
    Q_ak: np.ndarray
    W_cl: np.ndarray
    asymptotes: dict = field(default_factory=dict)


def kinetic_energy(scenario: Scenario, tau):
    """``K_q/K0 = exp(-2 tau) (alpha_cl + theta beta) . Gamma``."""
    vec = alpha_cl(scenario) + scenario.theta * fluctuation_vector(scenario)
    return contract(vec, gamma(scenario.zeta, tau, decay=-2))


def _work(vec: CoefficientVector, scenario: Scenario, tau):
    zeta = scenario.zeta
    return contract(vec, gamma(zeta, tau, decay=-2)) - contract(vec, gamma(zeta, 0.0))


def quantum_work(scenario: Scenario, tau):
    """``(W_q, W_c, W_th)`` over ``K0``."""
    a = alpha_cl(scenario)
    b = scenario.theta * fluctuation_vector(scenario)
    return _work(a + b, scenario, tau), _work(a, scenario, tau), _work(b, scenario, tau)


def _alicki_map(first: float, cross: float, last: float, zeta2: float) -> CoefficientVector:
    """Antiderivative map for the Alicki work.

    Given a reduced vector ``c`` of the kinetic energy, returns the reduced
    vector ``a`` with ``d/dtau[exp(-2 tau) a.Gamma] = -4 exp(-2 tau) c.Gamma``.
    With ``c = (a5, a6/zeta, a7/zeta^2)`` in textbook form the result reads

        -[(zeta a6 + a5 + a7)/(zeta^2-1) - a5 + a7,
          2(zeta(a5+a7) + a6)/(zeta^2-1),
          (zeta a6 + a5 + a7)/(zeta^2-1) + a5 - a7];

    below it is multiplied out so that only ``zeta^2`` appears.
    """
    den = zeta2 - 1.0
    r1 = -(cross + first * (2.0 - zeta2) + last) / den
    r2 = -2.0 * (zeta2 * first + last + cross) / den
    r3 = -((zeta2 * cross + zeta2 * first + last) / den + zeta2 * first - last)
    return CoefficientVector(r1, r2, r3)


def alicki_vectors(scenario: Scenario):
    """``(alpha_a, beta_a)`` such that ``W_ak/K0 = [exp(-2 tau)(alpha_a + theta beta_a) - (alpha_a + theta beta_a)|_0] . Gamma``."""
    if scenario.undamped:
        raise DomainError("no Alicki work without friction")
    if not scenario.has_restoring_force:
        raise DomainError("zeta^2 - 1 vanishes without a restoring force; use the drag branch")
    eps, epd = scenario.epsilon, scenario.epsilon_delta
    r = scenario.omega_over_lambda
    zeta2 = scenario.zeta.squared
    a1 = 1.0 / (1.0 - eps)
    root = math.sqrt(eps - eps * eps)
    # reduced constants: a6' = zeta a6, a7' = zeta^2 a7, a4' = zeta a4, a2' = zeta^2 a2
    a5 = 1.0 - eps
    a6 = -(2.0 * r * root + 2.0 * (1.0 - eps))
    a7 = r * r * eps + 2.0 * r * root + (1.0 - eps)
    a3 = 1.0 - epd
    a4 = -2.0 * (1.0 - epd)
    a2 = r * r * epd + (1.0 - epd)
    return a1 * _alicki_map(a5, a6, a7, zeta2), a1 * _alicki_map(a3, a4, a2, zeta2)


def alicki_work_heat(scenario: Scenario, tau, method: str = "closed-form", tol: float = 1e-10):
    """``(W_ak/K0, Q_ak/K0)``.

    ``method="quadrature"`` integrates ``-4 K_q`` with the adaptive rule of
    :mod:`ckwork.oracles.quadrature` at absolute tolerance ``tol`` (units of
    ``K0``) per interval between successive requested times.
    """
    t = np.asarray(tau, dtype=float)
    dK = kinetic_energy(scenario, t) - kinetic_energy(scenario, 0.0)
    if method == "closed-form":
        w = _alicki_closed(scenario, t)
    elif method == "quadrature":
        w = _alicki_quadrature(scenario, t, tol)
    else:
        raise DomainError(f"unknown method {method!r}")
    return _out(w), _out(np.asarray(dK) - w)


def _alicki_closed(scenario: Scenario, t: np.ndarray):
    if scenario.undamped:
        return np.zeros_like(t)
    if not scenario.has_restoring_force:
        # drag: every change of kinetic energy is Alicki work
        k_init = 1.0 + scenario.theta * (1.0 - scenario.epsilon_delta) / (1.0 - scenario.epsilon)
        return k_init * np.expm1(-4.0 * t)
    a, b = alicki_vectors(scenario)
    return np.asarray(_work(a + scenario.theta * b, scenario, t))


def _alicki_quadrature(scenario: Scenario, t: np.ndarray, tol: float):
    from .oracles.quadrature import adaptive_quadrature

    if scenario.undamped:
        return np.zeros_like(t)
    flat = t.ravel()
    order = np.argsort(flat, kind="stable")
    out = np.empty_like(flat)
    acc, prev = 0.0, 0.0
    for i in order:
        acc += adaptive_quadrature(lambda s: -4.0 * kinetic_energy(scenario, s), prev, flat[i], tol)
        prev = flat[i]
        out[i] = acc
    return out.reshape(t.shape)


def asymptotes(scenario: Scenario) -> dict:
    """Long-time limits of the energy series (requires friction)."""
    if scenario.undamped:
        raise DomainError("no asymptote without friction: the motion is periodic")
    g0 = gamma(scenario.zeta, 0.0)
    a = alpha_cl(scenario)
    b = scenario.theta * fluctuation_vector(scenario)
    k_init = contract(a + b, g0)
    out = {
        "K_q": 0.0,
        "W_cl": -contract(a, g0),
        "W_q": -k_init,
        "W_c": -contract(a, g0),
        "W_th": -contract(b, g0),
    }
    if scenario.has_restoring_force:
        aa, ba = alicki_vectors(scenario)
        out["W_ak"] = -contract(aa + scenario.theta * ba, g0)
    else:
        out["W_ak"] = -k_init
    out["Q_ak"] = -k_init - out["W_ak"]
    return out


def energy_series(scenario: Scenario, tau_grid) -> EnergySeries:
    t = np.asarray(tau_grid, dtype=float)
    K = np.asarray(kinetic_energy(scenario, t))
    Wq, Wc, Wth = (np.asarray(v) for v in quantum_work(scenario, t))
    Wak, Qak = (np.asarray(v) for v in alicki_work_heat(scenario, t))
    Wcl = np.asarray(classical_work(scenario, t))
    asym = {} if scenario.undamped else asymptotes(scenario)
    return EnergySeries(t, K, Wq, Wc, Wth, Wak, Qak, Wcl, asym)


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


__all__ = [
    "EnergySeries", "kinetic_energy", "quantum_work", "alicki_vectors", "alicki_work_heat",
    "asymptotes", "energy_series",
]
