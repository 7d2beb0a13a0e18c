"""Fixed-step fourth-order Runge-Kutta for the damped equation of motion.

Independent of the closed forms: it integrates ``x' = v``,
``v' = -2 lambda v - omega^2 x`` in physical time and only reads the
physical parameters of the scenario.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import RejectedParams, StepRejected
from ..scenario import Scenario


def _rhs(x, v, lam, omega2):
    return v, -2.0 * lam * v - omega2 * x


def rk4_classical(scenario: Scenario, x0, v0, tau_end: float, dt: float, record_every: int = 1):
    """Integrate from ``tau = 0`` to ``tau_end`` with engine-clock step ``dt``.

    ``x0``/``v0`` may be arrays (one trajectory per element).  Returns
    ``(tau, x, v)`` sampled every ``record_every`` steps, with time along the
    first axis.
    """
    if not (dt > 0.0 and math.isfinite(dt)):
        raise RejectedParams(f"dt must be finite and > 0, got {dt}")
    if tau_end < 0.0:
        raise RejectedParams(f"tau_end must be >= 0, got {tau_end}")
    ph = scenario.physical
    unit = scenario.time_unit
    lam, omega2 = ph.lam, ph.omega**2
    n = max(1, int(math.ceil(tau_end / dt - 1e-12)))
    h = tau_end / n * unit
    x = np.array(x0, dtype=float, copy=True)
    v = np.array(v0, dtype=float, copy=True)
    taus, xs, vs = [0.0], [x.copy()], [v.copy()]
    for i in range(1, n + 1):
        k1x, k1v = _rhs(x, v, lam, omega2)
        k2x, k2v = _rhs(x + 0.5 * h * k1x, v + 0.5 * h * k1v, lam, omega2)
        k3x, k3v = _rhs(x + 0.5 * h * k2x, v + 0.5 * h * k2v, lam, omega2)
        k4x, k4v = _rhs(x + h * k3x, v + h * k3v, lam, omega2)
        x = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise StepRejected(f"non-finite state at step {i} (tau = {i * h / unit:.6g})")
        if i % record_every == 0 or i == n:
            taus.append(i * h / unit)
            xs.append(x.copy())
            vs.append(v.copy())
    return np.asarray(taus), np.asarray(xs), np.asarray(vs)


def rk4_kinetic(scenario: Scenario, tau_end: float, dt: float, record_every: int = 1):
    """Kinetic energy of the mean trajectory over ``K0`` on the recorded grid."""
    st = scenario.state
    tau, _, v = rk4_classical(scenario, st.x0, st.p0 / scenario.physical.m0, tau_end, dt,
                              record_every)
    return tau, 0.5 * scenario.physical.m0 * v * v / scenario.K0
