"""Damping parameter, hyperbolic time basis and coefficient contraction.

Every closed form of the model is a quadratic form in ``cosh(zeta*tau)`` and
``sinh(zeta*tau)`` multiplied by ``exp(-2*tau)`` (velocities) or
``exp(+2*tau)`` (canonical momenta).  The basis vector is

    Gamma(tau) = (cosh^2, sinh*cosh, sinh^2)

and each physical quantity is the dot product of a coefficient vector with it.
``zeta`` is real for overdamped motion and purely imaginary for underdamped
motion, so the dot product is evaluated in complex arithmetic and its
imaginary part is asserted to vanish.

Coefficient vectors are stored in *reduced* form ``(r1, r2, r3)`` with

    c1 = r1,  c2 = r2 / zeta,  c3 = r3 / zeta**2

because every coefficient of the model carries exactly those powers of
``1/zeta``.  The reduced numbers are finite and real for all damping ratios,
which is what makes the critical limit ``zeta -> 0`` well defined: there the
basis ``(cosh^2, cosh*sinh/zeta, (sinh/zeta)^2)`` tends to ``(1, tau, tau^2)``.

Undamped motion (no friction) has no dimensionless time ``lambda*t``; its
basis is written in the oscillator phase ``omega*t`` as
``(cos^2, sin*cos, -sin^2)`` with plain (non-reduced) coefficients.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexLeak, DomainError

#: overdamped ``zeta`` above which contractions use the exponential basis;
#: ``C = cosh`` and ``S = sinh/zeta`` then cancel badly when the result decays
EXP_BASIS_MIN_ZETA = 0.25

#: ``|zeta|^2`` below this value selects the critical-damping limit.
CRITICAL_THRESHOLD = 1e-12
#: Relative tolerance on imaginary residues of contractions.
IMAG_TOL = 1e-10
#: Largest time accepted for quantities that grow like ``exp(+2*tau)``.
TAU_MAX_GROWTH = 150.0


class Regime(str, enum.Enum):
    OVERDAMPED = "overdamped"
    UNDERDAMPED = "underdamped"
    CRITICAL = "critical"
    UNDAMPED = "undamped"


@dataclass(frozen=True)
class Zeta:
    """``sqrt(1 - (omega/lambda)^2)`` together with its damping regime."""

    value: complex
    regime: Regime
    omega_over_lambda: float

    @property
    def squared(self) -> float:
        """``zeta^2 = 1 - (omega/lambda)^2`` as a real number."""
        return 1.0 - self.omega_over_lambda**2

    @property
    def damped(self) -> bool:
        return self.regime is not Regime.UNDAMPED


def make_zeta(omega_over_lambda: float) -> Zeta:
    """Classify the damping ratio and build ``zeta``.

    ``omega_over_lambda = inf`` encodes the frictionless oscillator.
    """
    ratio = float(omega_over_lambda)
    if math.isnan(ratio) or ratio < 0.0:
        raise DomainError(f"omega/lambda must be >= 0, got {omega_over_lambda!r}")
    if math.isinf(ratio):
        return Zeta(complex("nan"), Regime.UNDAMPED, ratio)
    z2 = 1.0 - ratio * ratio
    if abs(z2) < CRITICAL_THRESHOLD:
        return Zeta(0j, Regime.CRITICAL, ratio)
    if z2 > 0.0:
        return Zeta(complex(math.sqrt(z2), 0.0), Regime.OVERDAMPED, ratio)
    return Zeta(complex(0.0, math.sqrt(-z2)), Regime.UNDERDAMPED, ratio)


@dataclass(frozen=True)
class GammaVector:
    """Basis vector at one or many times, optionally multiplied by ``exp(decay*tau)``.

    ``g1, g2, g3`` follow the textbook layout (complex when underdamped).
    ``h1, h2, h3`` are the reduced basis ``(C^2, C*S, S^2)`` with
    ``C = cosh(zeta*tau)`` and ``S = sinh(zeta*tau)/zeta``, both real, carrying
    the same decay factor.  Well inside the overdamped regime ``exp_terms``
    holds ``(P^2, P*M, M^2)`` with ``P, M = exp((decay/2 +- zeta) tau)``.
    """

    zeta: Zeta
    decay: int
    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    h3: np.ndarray
    exp_terms: tuple | None = None


def hyperbolic_pair(zeta: Zeta, tau, decay: int = 0):
    """Return ``(C, S)`` = ``exp(decay*tau/2) * (cosh(zeta*tau), sinh(zeta*tau)/zeta)``.

    Both are real.  Exponentials are combined before evaluation so that large
    ``tau`` does not overflow when the decay factor compensates the growth.
    """
    t = np.asarray(tau, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < 0.0):
        raise DomainError("tau must be finite and non-negative")
    half = 0.5 * decay
    if zeta.regime is Regime.OVERDAMPED:
        z = zeta.value.real
        growth = np.exp((half + z) * t)
        c = 0.5 * growth * (1.0 + np.exp(-2.0 * z * t))
        s = -0.5 * growth * np.expm1(-2.0 * z * t) / z
    elif zeta.regime is Regime.UNDERDAMPED:
        w = zeta.value.imag
        env = np.exp(half * t)
        c = env * np.cos(w * t)
        s = env * np.sin(w * t) / w
    elif zeta.regime is Regime.CRITICAL:
        env = np.exp(half * t)
        c = env
        s = env * t
    else:
        raise DomainError("undamped motion has no hyperbolic pair; use omega*t phases")
    return c, s


def gamma(zeta: Zeta, tau, decay: int = 0) -> GammaVector:
    """Basis vector ``exp(decay*tau) * Gamma(tau)``.

    ``decay`` is -2 for velocity quantities, +2 for canonical momenta and 0
    for the bare vector.  For undamped motion ``tau`` is the phase
    ``omega*t`` and ``decay`` is irrelevant (``lambda = 0``).
    """
    if decay not in (-2, 0, 2):
        raise DomainError(f"decay must be -2, 0 or 2, got {decay}")
    t = np.asarray(tau, dtype=float)
    if zeta.regime is Regime.UNDAMPED:
        if np.any(~np.isfinite(t)) or np.any(t < 0.0):
            raise DomainError("omega*t must be finite and non-negative")
        cos, sin = np.cos(t), np.sin(t)
        g1, g2, g3 = cos * cos, sin * cos, -(sin * sin)
        return GammaVector(zeta, decay, g1, g2, g3, g1, g2, g3)
    if decay > 0 and np.any(t > TAU_MAX_GROWTH):
        raise DomainError(f"tau > {TAU_MAX_GROWTH} overflows exp(+2 tau) quantities")
    c, s = hyperbolic_pair(zeta, t, decay)
    h1, h2, h3 = c * c, c * s, s * s
    if zeta.regime is Regime.CRITICAL:
        zero = np.zeros_like(h1)
        return GammaVector(zeta, decay, h1.astype(complex), zero.astype(complex),
                           zero.astype(complex), h1, h2, h3)
    z = zeta.value
    sh = s * z
    exp_terms = None
    if zeta.regime is Regime.OVERDAMPED and z.real >= EXP_BASIS_MIN_ZETA:
        half = 0.5 * decay
        plus, minus = np.exp((half + z.real) * t), np.exp((half - z.real) * t)
        exp_terms = (plus * plus, plus * minus, minus * minus)
    return GammaVector(zeta, decay, c * c + 0j, c * sh, sh * sh, h1, h2, h3, exp_terms)


@dataclass(frozen=True)
class CoefficientVector:
    """Three coefficients in reduced form (see module docstring).

    ``undamped`` vectors are plain coefficients for the ``omega*t`` basis.
    """

    r1: float
    r2: float
    r3: float
    undamped: bool = False

    def components(self, zeta: Zeta) -> tuple[complex, complex, complex]:
        """Textbook coefficients ``(c1, c2, c3)`` for a non-critical ``zeta``."""
        if self.undamped or zeta.regime is Regime.UNDAMPED:
            return complex(self.r1), complex(self.r2), complex(self.r3)
        if zeta.regime is Regime.CRITICAL:
            raise DomainError("textbook coefficients diverge at critical damping")
        z = zeta.value
        return complex(self.r1), self.r2 / z, self.r3 / (z * z)

    def __add__(self, other: "CoefficientVector") -> "CoefficientVector":
        if not isinstance(other, CoefficientVector):
            return NotImplemented
        if self.undamped != other.undamped:
            raise DomainError("cannot add damped and undamped coefficient vectors")
        return CoefficientVector(self.r1 + other.r1, self.r2 + other.r2,
                                 self.r3 + other.r3, self.undamped)

    def __sub__(self, other: "CoefficientVector") -> "CoefficientVector":
        return self + (-1.0) * other

    def __mul__(self, k: float) -> "CoefficientVector":
        k = float(k)
        return CoefficientVector(k * self.r1, k * self.r2, k * self.r3, self.undamped)

    __rmul__ = __mul__


def contract(coeffs: CoefficientVector, basis: GammaVector):
    """Real dot product ``coeffs . basis``; raises :class:`ComplexLeak` on residue."""
    zeta = basis.zeta
    if coeffs.undamped != (zeta.regime is Regime.UNDAMPED):
        raise DomainError("coefficient vector and basis belong to different regimes")
    if zeta.regime is Regime.UNDAMPED:
        value = coeffs.r1 * basis.g1 + coeffs.r2 * basis.g2 + coeffs.r3 * basis.g3
        return _as_output(value)
    if zeta.regime is Regime.CRITICAL:
        value = coeffs.r1 * basis.h1 + coeffs.r2 * basis.h2 + coeffs.r3 * basis.h3
        return _as_output(value)
    if basis.exp_terms is not None:
        # r1 C^2 + r2 C S + r3 S^2 regrouped by exp(+-2 zeta tau)
        z = zeta.value.real
        q2, q3 = coeffs.r2 / z, coeffs.r3 / (z * z)
        pp, pm, mm = basis.exp_terms
        value = (0.25 * (coeffs.r1 + q2 + q3) * pp + 0.5 * (coeffs.r1 - q3) * pm
                 + 0.25 * (coeffs.r1 - q2 + q3) * mm)
        return _as_output(value)
    c1, c2, c3 = coeffs.components(zeta)
    value = c1 * basis.g1 + c2 * basis.g2 + c3 * basis.g3
    return _as_output(real_part(value))


def real_part(value):
    """Real part of ``value`` after checking ``|Im| <= IMAG_TOL * max(1, |Re|)``."""
    value = np.asarray(value)
    if np.iscomplexobj(value):
        re, im = value.real, value.imag
        bound = IMAG_TOL * np.maximum(1.0, np.abs(re))
        if np.any(np.abs(im) > bound):
            worst = float(np.max(np.abs(im) - bound))
            raise ComplexLeak(f"imaginary residue exceeds tolerance by {worst:.3e}")
        value = re
    return value


def _as_output(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value
