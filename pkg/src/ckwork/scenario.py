"""Parameterization of one damped-oscillator experiment.

An experiment is specified by four dimensionless numbers

* ``omega_over_lambda`` -- natural frequency over damping rate (``inf`` for a
  frictionless oscillator, ``0`` for pure drag),
* ``epsilon`` -- elastic (potential) share of the mean initial energy ``E0``,
* ``epsilon_delta`` -- elastic share of the fluctuation energy ``e0``,
* ``theta`` -- fluctuation-to-mean energy ratio ``e0/E0``,

and materialized in natural units ``m0 = lambda = E0 = 1`` (``omega = 1`` when
there is no friction).  The quantum of action is not fixed: it is derived from
``theta`` so that the prescribed fluctuation energy belongs to a
minimum-uncertainty Gaussian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import RejectedParams
from .kernel import Regime, Zeta, make_zeta


@dataclass(frozen=True)
class DimensionlessParams:
    omega_over_lambda: float
    epsilon: float
    epsilon_delta: float
    theta: float
    E0: float = 1.0

    def __post_init__(self):
        r, eps, epd, th, e0 = (self.omega_over_lambda, self.epsilon,
                               self.epsilon_delta, self.theta, self.E0)
        for name, value in (("omega_over_lambda", r), ("epsilon", eps),
                            ("epsilon_delta", epd), ("theta", th), ("E0", e0)):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise RejectedParams(f"{name}: expected a number, got {value!r}")
            if math.isnan(value):
                raise RejectedParams(f"{name}: NaN is not allowed")
        if r < 0.0:
            raise RejectedParams(f"omega_over_lambda: must be >= 0, got {r}")
        if not 0.0 <= eps < 1.0:
            raise RejectedParams(f"epsilon: must lie in [0, 1), got {eps}")
        if not 0.0 < epd < 1.0:
            raise RejectedParams(f"epsilon_delta: must lie in (0, 1), got {epd}")
        if not (0.0 <= th < math.inf):
            raise RejectedParams(f"theta: must be finite and >= 0, got {th}")
        if not (0.0 < e0 < math.inf):
            raise RejectedParams(f"E0: must be finite and > 0, got {e0}")
        if r == 0.0 and eps > 0.0:
            raise RejectedParams("epsilon: must be 0 without a restoring force (omega = 0)")


@dataclass(frozen=True)
class PhysicalParams:
    m0: float
    lam: float
    omega: float
    k0: float
    hbar_eff: float | None = None


@dataclass(frozen=True)
class InitialState:
    x0: float
    p0: float
    delta_x0: float | None = None
    delta_p0: float | None = None

    @property
    def is_quantum(self) -> bool:
        return self.delta_x0 is not None


def materialize(dimless: DimensionlessParams, m0: float = 1.0, lam: float = 1.0,
                omega_undamped: float = 1.0, quantum: bool | None = None):
    """Physical parameters and initial state for ``dimless``.

    ``quantum=None`` builds the Gaussian widths whenever they exist
    (``theta > 0`` and ``omega > 0``); ``quantum=True`` demands them.
    """
    if not (m0 > 0.0 and math.isfinite(m0)):
        raise RejectedParams(f"m0: must be finite and > 0, got {m0}")
    r = dimless.omega_over_lambda
    if math.isinf(r):
        if not omega_undamped > 0.0:
            raise RejectedParams("omega: must be > 0 for the frictionless oscillator")
        lam_, omega = 0.0, float(omega_undamped)
    else:
        if not (lam > 0.0 and math.isfinite(lam)):
            raise RejectedParams(f"lambda: must be finite and > 0, got {lam}")
        lam_, omega = float(lam), r * lam
    k0 = m0 * omega * omega
    eps, epd, th, E0 = dimless.epsilon, dimless.epsilon_delta, dimless.theta, dimless.E0

    x0 = math.sqrt(2.0 * eps * E0 / k0) if eps > 0.0 else 0.0
    p0 = math.sqrt(2.0 * m0 * (1.0 - eps) * E0)

    can_quantize = th > 0.0 and omega > 0.0
    if quantum and not can_quantize:
        why = "theta = 0 (classical limit)" if th == 0.0 else "omega = 0 (no Gaussian width scale)"
        raise RejectedParams(f"quantum state requested but {why}")
    if quantum is False or not can_quantize:
        return PhysicalParams(m0, lam_, omega, k0, None), InitialState(x0, p0)

    e0 = th * E0
    delta_x0 = math.sqrt(2.0 * epd * e0 / k0)
    delta_p0 = math.sqrt(2.0 * m0 * (1.0 - epd) * e0)
    hbar = 4.0 * e0 * math.sqrt(epd * (1.0 - epd)) / omega
    return (PhysicalParams(m0, lam_, omega, k0, hbar),
            InitialState(x0, p0, delta_x0, delta_p0))


def dimensionless_from_physical(physical: PhysicalParams, state: InitialState) -> DimensionlessParams:
    """Recover the dimensionless description from physical quantities."""
    m0, k0 = physical.m0, physical.k0
    elastic = 0.5 * k0 * state.x0**2
    E0 = elastic + state.p0**2 / (2.0 * m0)
    ratio = math.inf if physical.lam == 0.0 else physical.omega / physical.lam
    if state.is_quantum:
        el_fl = 0.5 * k0 * state.delta_x0**2
        e0 = el_fl + state.delta_p0**2 / (2.0 * m0)
        return DimensionlessParams(ratio, elastic / E0, el_fl / e0, e0 / E0, E0)
    return DimensionlessParams(ratio, elastic / E0, 0.5, 0.0, E0)


def theta_prime(dimless: DimensionlessParams) -> float:
    """Coherence parameter ``theta * eD (1 - eD) / (eD + e - 2 eD e)``."""
    eps, epd = dimless.epsilon, dimless.epsilon_delta
    den = epd + eps - 2.0 * epd * eps
    if not den > 0.0:
        raise RejectedParams(f"theta_prime denominator must be > 0, got {den}")
    return dimless.theta * epd * (1.0 - epd) / den


@dataclass(frozen=True)
class Scenario:
    """Immutable bundle of the dimensionless and physical description."""

    dimless: DimensionlessParams
    physical: PhysicalParams
    state: InitialState
    zeta: Zeta = field(repr=False)
    name: str = "custom"

    @property
    def epsilon(self) -> float:
        return self.dimless.epsilon

    @property
    def epsilon_delta(self) -> float:
        return self.dimless.epsilon_delta

    @property
    def theta(self) -> float:
        return self.dimless.theta

    @property
    def omega_over_lambda(self) -> float:
        return self.dimless.omega_over_lambda

    @property
    def K0(self) -> float:
        """Initial kinetic energy of the mean motion, the unit of every energy series."""
        return (1.0 - self.dimless.epsilon) * self.dimless.E0

    @property
    def undamped(self) -> bool:
        return self.zeta.regime is Regime.UNDAMPED

    @property
    def has_restoring_force(self) -> bool:
        return self.physical.omega > 0.0

    @property
    def is_quantum(self) -> bool:
        return self.state.is_quantum

    def require_quantum(self) -> None:
        if not self.is_quantum:
            raise RejectedParams("this operation needs a quantum state (theta > 0 and omega > 0)")

    @property
    def time_unit(self) -> float:
        """Physical time per unit of the engine clock (``1/lambda``, or ``1/omega`` undamped)."""
        return 1.0 / (self.physical.omega if self.undamped else self.physical.lam)

    def tau_from_omega_t(self, omega_t):
        """Convert the figure abscissa ``omega*t`` into the engine clock.

        Without a restoring force there is no ``omega``; the abscissa is then
        read as ``lambda*t`` directly.
        """
        r = self.omega_over_lambda
        if math.isinf(r) or r == 0.0:
            return omega_t
        return omega_t / r

    def omega_t_from_tau(self, tau):
        r = self.omega_over_lambda
        if math.isinf(r) or r == 0.0:
            return tau
        return tau * r

    def with_params(self, **changes) -> "Scenario":
        """New scenario with some dimensionless parameters replaced."""
        return build_scenario(**{**_dimless_kwargs(self.dimless), **changes},
                              m0=self.physical.m0, name=self.name)


def _dimless_kwargs(d: DimensionlessParams) -> dict:
    return dict(omega_over_lambda=d.omega_over_lambda, epsilon=d.epsilon,
                epsilon_delta=d.epsilon_delta, theta=d.theta, E0=d.E0)


def build_scenario(omega_over_lambda: float, epsilon: float = 0.0,
                   epsilon_delta: float = 0.5, theta: float = 0.1, E0: float = 1.0,
                   m0: float = 1.0, lam: float = 1.0, name: str = "custom",
                   quantum: bool | None = None) -> Scenario:
    dimless = DimensionlessParams(float(omega_over_lambda), float(epsilon),
                                  float(epsilon_delta), float(theta), float(E0))
    physical, state = materialize(dimless, m0=m0, lam=lam, quantum=quantum)
    return Scenario(dimless, physical, state, make_zeta(dimless.omega_over_lambda), name)


PRESETS = {
    "UO": dict(omega_over_lambda=10.0, epsilon=0.0, epsilon_delta=0.5, theta=0.1),
    "OO": dict(omega_over_lambda=0.1, epsilon=0.0, epsilon_delta=0.5, theta=0.1),
    "harmonic": dict(omega_over_lambda=math.inf, epsilon=0.0, epsilon_delta=0.5, theta=0.1),
    "drag": dict(omega_over_lambda=0.0, epsilon=0.0, epsilon_delta=0.5, theta=0.1),
}


def preset(name: str, **overrides) -> Scenario:
    """Named parameter set, optionally with some values overridden."""
    if name not in PRESETS:
        raise RejectedParams(f"preset: unknown name {name!r}; choose from {sorted(PRESETS)}")
    params = {**PRESETS[name], **{k: v for k, v in overrides.items() if v is not None}}
    return build_scenario(**params, name=name)


__all__ = [
    "DimensionlessParams", "PhysicalParams", "InitialState", "Scenario", "PRESETS",
    "materialize", "dimensionless_from_physical", "theta_prime", "build_scenario",
    "preset",
]
