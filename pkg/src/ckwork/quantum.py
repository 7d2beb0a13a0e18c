"""Analytic evolution of a Gaussian wave packet under the damped-oscillator Hamiltonian

    H(t) = exp(-2 lambda t) P^2 / (2 m0) + k0 exp(2 lambda t) X^2 / 2.

The evolution operator factorizes as
``exp(i c_plus X^2/2hbar) exp(c_zero (XP+PX) i/4hbar) exp(i c_minus P^2/2hbar)``
with coefficients built from ``u(tau) = exp(-tau)(C + S)``, ``C = cosh(zeta tau)``
and ``S = sinh(zeta tau)/zeta``.  Expectation values are assembled from the
explicit hyperbolic displays (constants ``k1`` ... ``k6``).

Sign and prefactor conventions that are easy to get wrong:

* ``c_zero = -ln u^2``, so that ``exp(-c_zero) = u^2`` and the position
  variance starts at the initial width and follows the classical spreading.
* The cross term of ``<P^2>`` is ``k2 = 2 k0 x0 p0/(lambda zeta) + 2 p0^2/zeta
  + hbar^2/(2 Delta^2 zeta)``, the value implied by ``<P>^2 + <(dP)^2>``.
* ``<P>`` keeps its sign; it is not the square root of ``<P>^2``.

In the underdamped regime ``u`` has zeros.  The factorized coefficients have
poles there, while every expectation value stays regular; the products
``u``, ``u c_minus``, ``u c_plus`` and ``(1/u - u c_plus c_minus)`` returned by
:func:`heisenberg_matrix` carry the regular content.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import alpha_cl, position_scale
from .errors import DomainError
from .kernel import CoefficientVector, contract, gamma, hyperbolic_pair, real_part
from .scenario import Scenario


@dataclass(frozen=True)
class PropagatorCoefficients:
    c_plus: float
    c_minus: float
    c_zero: float
    u: float


@dataclass(frozen=True)
class EvolvedGaussian:
    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    mean_x2: float
    mean_p2: float
    phase_theta: float


def fluctuation_vector(scenario: Scenario) -> CoefficientVector:
    """Coefficients ``beta`` of the velocity variance: ``(m0/2)<(dV)^2>/K0 = theta exp(-2 tau) beta . Gamma``."""
    epd, eps = scenario.epsilon_delta, scenario.epsilon
    norm = 1.0 / (1.0 - eps)
    if scenario.undamped:
        return CoefficientVector(norm * (1.0 - epd), 0.0, -norm * epd, undamped=True)
    r = scenario.omega_over_lambda
    return CoefficientVector(norm * (1.0 - epd), -2.0 * norm * (1.0 - epd),
                             norm * (r * r * epd + (1.0 - epd)))


def _require_damped(scenario: Scenario) -> None:
    if scenario.undamped:
        raise DomainError("the factorized propagator needs lambda > 0")


def propagator_coefficients(scenario: Scenario, tau) -> PropagatorCoefficients:
    """``c_plus``, ``c_minus``, ``c_zero`` and ``u`` at ``tau``.

    Raises :class:`DomainError` where ``u`` vanishes or changes sign (possible
    only for underdamped motion), since the factorization is singular there.
    """
    _require_damped(scenario)
    ph = scenario.physical
    t = np.asarray(tau, dtype=float)
    c, s = hyperbolic_pair(scenario.zeta, t)
    d = c + s
    if np.any(d <= 0.0):
        raise DomainError("cosh(zeta tau) + sinh(zeta tau)/zeta <= 0: factorization singular")
    ratio = s / d  # 1/(zeta coth(zeta tau) + 1), regular at tau = 0
    c_plus = -(ph.k0 / ph.lam) * np.exp(2.0 * t) * ratio
    c_minus = -ratio / (ph.lam * ph.m0)
    c_zero = 2.0 * (t - np.log(d))
    u = np.exp(-t) * d
    return PropagatorCoefficients(_out(c_plus), _out(c_minus), _out(c_zero), _out(u))


def heisenberg_matrix(scenario: Scenario, tau):
    """Entries of ``X(t) = a X + b P`` and ``P(t) = c X + d P`` (Heisenberg picture).

    Returns ``(a, b, c, d)``; ``a d - b c = 1``.  In terms of the factorized
    coefficients ``a = u``, ``b = -u c_minus``, ``c = u c_plus`` and
    ``d = 1/u - u c_plus c_minus``.
    """
    ph = scenario.physical
    t = np.asarray(tau, dtype=float)
    if scenario.undamped:
        cos, sin = np.cos(t), np.sin(t)
        mw = ph.m0 * ph.omega
        return _out(cos), _out(sin / mw), _out(-mw * sin), _out(cos)
    c, s = hyperbolic_pair(scenario.zeta, t)
    em, ep = np.exp(-t), np.exp(t)
    a = em * (c + s)
    b = em * s / (ph.lam * ph.m0)
    cc = -(ph.k0 / ph.lam) * ep * s
    d = ep * (c - s)
    return _out(a), _out(b), _out(cc), _out(d)


def momentum_constants(scenario: Scenario):
    """``(k1, k2, k3)`` of ``<P^2> = exp(2 tau)[k1 cosh^2 - k2 sinh cosh + k3 sinh^2]``.

    Returned in reduced form ``(k1, zeta*k2, zeta^2*k3)``.
    """
    _require_damped(scenario)
    ph, st = scenario.physical, scenario.state
    x0, p0, dx, hbar = st.x0, st.p0, st.delta_x0, ph.hbar_eff
    k0, lam = ph.k0, ph.lam
    dp2 = hbar * hbar / (4.0 * dx * dx)
    k1 = p0 * p0 + dp2
    k2 = 2.0 * k0 * x0 * p0 / lam + 2.0 * p0 * p0 + hbar * hbar / (2.0 * dx * dx)
    k3 = (k0 * x0 / lam + p0) ** 2 + dx * dx * k0 * k0 / (lam * lam) + dp2
    return k1, k2, k3


def position_constants(scenario: Scenario):
    """``(k4, k5, k6)`` of ``<X^2> = exp(-2 tau)[k4 cosh^2 + k5 sinh cosh + k6 sinh^2]``, reduced."""
    _require_damped(scenario)
    ph, st = scenario.physical, scenario.state
    x0, p0, dx, hbar = st.x0, st.p0, st.delta_x0, ph.hbar_eff
    lm = ph.lam * ph.m0
    k4 = x0 * x0 + dx * dx
    k5 = 2.0 * x0 * x0 + 2.0 * x0 * p0 / lm + 2.0 * dx * dx
    k6 = (p0 + lm * x0) ** 2 / (lm * lm) + dx * dx + hbar * hbar / (4.0 * lm * lm * dx * dx)
    return k4, k5, k6


def evolved_gaussian(scenario: Scenario, tau) -> EvolvedGaussian:
    """All first and second moments of the evolved Gaussian at ``tau``."""
    scenario.require_quantum()
    ph, st = scenario.physical, scenario.state
    x0, p0, dx, hbar = st.x0, st.p0, st.delta_x0, ph.hbar_eff
    dp2 = hbar * hbar / (4.0 * dx * dx)
    if scenario.undamped:
        a, b, c, d = (np.asarray(v) for v in heisenberg_matrix(scenario, tau))
        mean_x, mean_p = a * x0 + b * p0, c * x0 + d * p0
        var_x, var_p = a * a * dx * dx + b * b * dp2, c * c * dx * dx + d * d * dp2
        theta = 0.5 * np.arctan(hbar * b / (2.0 * dx * dx * np.where(a == 0.0, np.nan, a)))
        return EvolvedGaussian(_out(mean_x), _out(mean_p), _out(var_x), _out(var_p),
                               _out(var_x + mean_x**2), _out(var_p + mean_p**2), _out(theta))

    zeta = scenario.zeta
    lam, m0, k0 = ph.lam, ph.m0, ph.k0
    lm = lam * m0
    t = np.asarray(tau, dtype=float)
    down = gamma(zeta, t, decay=-2)
    up = gamma(zeta, t, decay=2)
    c, s = hyperbolic_pair(zeta, t)

    mean_x = np.exp(-t) * ((c + s) * x0 + p0 * s / lm)
    mean_x2 = contract(CoefficientVector(*position_constants(scenario)), down)
    var_x = contract(CoefficientVector(dx * dx, 2.0 * dx * dx, dx * dx + dp2 / (lm * lm)), down)

    mean_p = np.exp(t) * (p0 * c - (p0 + k0 * x0 / lam) * s)
    k1, k2, k3 = momentum_constants(scenario)
    mean_p2 = contract(CoefficientVector(k1, -k2, k3), up)
    var_p = contract(CoefficientVector(dp2, -2.0 * dp2, dp2 + dx * dx * k0 * k0 / (lam * lam)), up)

    with np.errstate(divide="ignore", invalid="ignore"):
        theta = 0.5 * np.arctan(hbar * s / (2.0 * lm * dx * dx * (c + s)))
    return EvolvedGaussian(_out(mean_x), _out(mean_p), _out(var_x), _out(var_p),
                           _out(mean_x2), _out(mean_p2), _out(theta))


def evolved_wavefunction(scenario: Scenario, tau: float, x):
    """Wave function at ``tau`` on the points ``x`` from the factorized propagator.

    Only available where the factorization is regular (``u > 0``).
    """
    scenario.require_quantum()
    ph, st = scenario.physical, scenario.state
    hbar, dx, x0, p0 = ph.hbar_eff, st.delta_x0, st.x0, st.p0
    pc = propagator_coefficients(scenario, float(tau))
    x = np.asarray(x, dtype=float)
    shrink = math.exp(-pc.c_zero)
    centre = math.exp(-0.5 * pc.c_zero) * (x0 - pc.c_minus * p0)
    width = shrink * (4.0 * dx * dx - 2j * hbar * pc.c_minus)
    var_t = shrink * dx * dx * (1.0 + hbar**2 * pc.c_minus**2 / (4.0 * dx**4))
    theta = 0.5 * math.atan(-hbar * pc.c_minus / (2.0 * dx * dx))
    exponent = (-(x - centre) ** 2 / width
                + 1j * pc.c_minus * p0 * p0 / (2.0 * hbar)
                + 1j * math.exp(0.5 * pc.c_zero) * p0 * x / hbar
                - 1j * theta
                + 1j * pc.c_plus * x * x / (2.0 * hbar))
    return (2.0 * math.pi * var_t) ** -0.25 * np.exp(exponent)


def scaled_expectations(scenario: Scenario, tau) -> dict:
    """Moments divided by their natural scales, built from dimensionless parameters only.

    Positions are divided by ``x0`` (or ``x_m = p0/(m0 lambda)`` when
    ``epsilon = 0``), momenta by ``p0``.  Keys: ``mean_x``, ``mean_x2``,
    ``var_x``, ``mean_p``, ``mean_p2``, ``var_p``, ``position_scale``.
    """
    _require_damped(scenario)
    if not scenario.has_restoring_force:
        raise DomainError("scaled position moments need omega > 0")
    eps, epd, th = scenario.epsilon, scenario.epsilon_delta, scenario.theta
    r = scenario.omega_over_lambda
    zeta = scenario.zeta
    t = np.asarray(tau, dtype=float)
    c, s = hyperbolic_pair(zeta, t)
    down = gamma(zeta, t, decay=-2)
    up = gamma(zeta, t, decay=2)

    if position_scale(scenario) == "x0":
        mean_x = np.exp(-t) * (c + (1.0 + r * math.sqrt((1.0 - eps) / eps)) * s)
        k = th / eps
        var_vec = CoefficientVector(k * epd, 2.0 * k * epd, k * (epd + r * r * (1.0 - epd)))
    else:
        shift = math.sqrt(eps / (1.0 - eps)) / r
        mean_x = np.exp(-t) * (shift * (c + s) + s)
        k = th / (1.0 - eps)
        var_vec = CoefficientVector(k * epd / (r * r), 2.0 * k * epd / (r * r),
                                    k * (epd / (r * r) + (1.0 - epd)))
    var_x = contract(var_vec, down)

    q = r * math.sqrt(eps / (1.0 - eps))
    mean_p = np.exp(t) * (c - (1.0 + q) * s)
    a, b = alpha_cl(scenario), fluctuation_vector(scenario)
    var_p = contract(th * b, up)
    mean_p2 = contract(a + th * b, up)
    return {
        "mean_x": _out(mean_x), "var_x": _out(var_x), "mean_x2": _out(var_x + mean_x**2),
        "mean_p": _out(mean_p), "var_p": _out(var_p), "mean_p2": _out(mean_p2),
        "position_scale": position_scale(scenario),
    }


def velocity_second_moment(scenario: Scenario, tau):
    """``(m0/2)<V^2>/K0`` from the physical moments, ``V = P exp(-2 lambda t)/m0``."""
    g = evolved_gaussian(scenario, tau)
    t = np.asarray(tau, dtype=float)
    damp = 1.0 if scenario.undamped else np.exp(-4.0 * t)
    m0 = scenario.physical.m0
    return _out(0.5 * damp * np.asarray(g.mean_p2) / m0 / scenario.K0)


def _out(value):
    value = real_part(np.asarray(value))
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value
