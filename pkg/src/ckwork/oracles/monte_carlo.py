"""Monte Carlo sampling of a Gaussian Liouville ensemble.

The equation of motion is linear, so every member is a combination of two
reference trajectories (unit position and unit velocity at rest), both
integrated with :func:`ckwork.oracles.rk4.rk4_classical`.  Samples come from
a counter-based Philox stream and are reproducible for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import RejectedParams
from ..scenario import Scenario
from .rk4 import rk4_classical


@dataclass(frozen=True)
class MonteCarloResult:
    tau: np.ndarray
    mean_v: np.ndarray
    mean_v2: np.ndarray
    var_v: np.ndarray
    se_mean_v: np.ndarray
    se_mean_v2: np.ndarray
    samples: int
    seed: int


def sample_initial(center_x, center_p, sigma_x, sigma_p, m0, n, seed, mixed=False):
    """Draw ``n`` initial ``(x, v)`` pairs."""
    if n < 2:
        raise RejectedParams(f"need at least 2 samples, got {n}")
    rng = np.random.Generator(np.random.Philox(seed))
    x = rng.normal(center_x, sigma_x, n)
    p = rng.normal(center_p, sigma_p, n)
    if mixed:
        sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        x = sign * center_x + (x - center_x)
        p = sign * center_p + (p - center_p)
    return x, p / m0


def monte_carlo_liouville(scenario: Scenario, center_x, center_p, sigma_x, sigma_p,
                          tau_end: float, dt: float = 1e-3, n: int = 1_000_000,
                          seed: int = 0, mixed: bool = False, record_every: int = 10,
                          chunk: int = 200_000) -> MonteCarloResult:
    """Velocity moments of the ensemble with their standard errors."""
    m0 = scenario.physical.m0
    tau, xs, vs = rk4_classical(scenario, np.array([1.0, 0.0]), np.array([0.0, 1.0]),
                                tau_end, dt, record_every)
    # v(t) = v_from_x(t) * x0 + v_from_v(t) * v0
    vx, vv = vs[:, 0], vs[:, 1]
    x, v = sample_initial(center_x, center_p, sigma_x, sigma_p, m0, n, seed, mixed)
    s1 = np.zeros_like(tau)
    s2 = np.zeros_like(tau)
    s3 = np.zeros_like(tau)
    for lo in range(0, n, chunk):
        vt = np.outer(vx, x[lo:lo + chunk]) + np.outer(vv, v[lo:lo + chunk])
        sq = vt * vt
        s1 += vt.sum(axis=1)
        s2 += sq.sum(axis=1)
        s3 += (sq * sq).sum(axis=1)
    mean_v = s1 / n
    mean_v2 = s2 / n
    var_v = (mean_v2 - mean_v**2) * n / (n - 1)
    se_v = np.sqrt(var_v / n)
    se_v2 = np.sqrt(np.maximum(s3 / n - mean_v2**2, 0.0) / n)
    return MonteCarloResult(tau, mean_v, mean_v2, var_v, se_v, se_v2, n, seed)
