"""Crank-Nicolson propagation of the Schroedinger equation on a uniform grid.

The Hamiltonian ``p^2/(2 M(t)) + K(t) x^2/2`` with ``M = m0 exp(2 lambda t)``
and ``K = k0 exp(2 lambda t)`` is discretized with eighth-order central
differences and stepped with coefficients frozen at the midpoint of each
step.  Momentum observables use spectral differentiation.

Two gauges are available.

``"none"``
    the wavefunction itself is propagated.
``"riccati"``
    ``psi = exp(i a x^2/(2 hbar)) phi`` with ``a = M g`` and
    ``g' = -2 lambda g - omega^2 - g^2``, ``g(0) = 0``.  The quadratic
    potential then cancels and ``phi`` obeys
    ``H_phi = p^2/(2M) + g (x p + p x)/2``, which keeps ``phi`` smooth while
    the canonical momentum of ``psi`` grows like ``exp(2 lambda t)``.  ``g``
    stays finite only if the classical motion never crosses zero, i.e. for
    overdamped and critical damping.

Nothing here reads the closed-form engines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from ..errors import GridTooSmall, RejectedParams, StepRejected
from ..scenario import Scenario
from .rk4 import rk4_classical

# eighth-order central stencils, offsets -4..4
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
_W = 4
LEAK_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid; ``dt`` is physical time, ``boundary`` the monitored edge width."""

    x_min: float
    x_max: float
    n_points: int
    dt: float
    boundary: float = 0.0

    def __post_init__(self):
        if self.n_points < 2**10:
            raise RejectedParams(f"n_points must be >= 1024, got {self.n_points}")
        if not self.x_max > self.x_min:
            raise RejectedParams("x_max must exceed x_min")
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise RejectedParams(f"dt must be finite and > 0, got {self.dt}")
        if not 0.0 <= 2.0 * self.boundary < self.x_max - self.x_min:
            raise RejectedParams("boundary padding must leave an interior")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)


@dataclass(frozen=True)
class CNResult:
    tau: np.ndarray
    mean_x: np.ndarray
    mean_p: np.ndarray
    var_x: np.ndarray
    var_p: np.ndarray
    mean_x2: np.ndarray
    mean_p2: np.ndarray
    norm: np.ndarray
    x: np.ndarray
    psi: np.ndarray
    gauge: str

    @property
    def norm_drift(self) -> float:
        return float(np.max(np.abs(self.norm - self.norm[0])))


def gaussian_packet(x, center_x, center_p, width, hbar):
    """Minimum-uncertainty packet with position spread ``width``."""
    x = np.asarray(x, dtype=float)
    amp = (2.0 * math.pi * width * width) ** -0.25
    return amp * np.exp(-((x - center_x) ** 2) / (4.0 * width * width) + 1j * center_p * x / hbar)


def initial_wavefunction(scenario: Scenario, x, parity_partner: bool = False):
    """Gaussian initial state of the scenario, or its superposition with the parity image."""
    scenario.require_quantum()
    st, hbar = scenario.state, scenario.physical.hbar_eff
    psi = gaussian_packet(x, st.x0, st.p0, st.delta_x0, hbar)
    if parity_partner:
        psi = psi + gaussian_packet(x, -st.x0, -st.p0, st.delta_x0, hbar)
    return psi


def grid_norm(psi, dx: float) -> float:
    """Trapezoid-free grid norm (the packet vanishes at the edges)."""
    return float(np.sum(np.abs(psi) ** 2) * dx)


def width_envelope(scenario: Scenario, tau_end: float, dt: float = 1e-3):
    """Largest ``|<x>|`` and position spread over ``[0, tau_end]``.

    Uses the linear classical map from two unit trajectories, which is exact
    for quadratic Hamiltonians.
    """
    ph, st = scenario.physical, scenario.state
    _, xs, _ = rk4_classical(scenario, np.array([1.0, 0.0]), np.array([0.0, 1.0 / ph.m0]),
                             tau_end, dt)
    from_x, from_p = xs[:, 0], xs[:, 1]
    centre = from_x * st.x0 + from_p * st.p0
    spread = np.sqrt((from_x * st.delta_x0) ** 2 + (from_p * st.delta_p0) ** 2)
    return float(np.max(np.abs(centre))), float(np.max(spread))


def auto_grid(scenario: Scenario, tau_end: float, n_points: int = 4096, dt: float | None = None,
              sigmas: float = 10.0, superposition: bool = False) -> GridSpec:
    """Grid covering the packet by ``sigmas`` spreads plus its excursion."""
    scenario.require_quantum()
    centre, spread = width_envelope(scenario, tau_end)
    if superposition:
        centre = max(centre, abs(scenario.state.x0))
    half = centre + sigmas * spread
    if dt is None:
        dt = 1e-3 * scenario.time_unit if scenario.undamped else 1e-3 * min(
            1.0 / scenario.physical.lam, 1.0 / scenario.physical.omega)
    return GridSpec(-half, half, n_points, dt, boundary=0.1 * half)


class _BandedParts:
    """Unit-coefficient bands of the grid Hamiltonian in ``solve_banded`` layout.

    ``H = kinetic_scale * second + quad * x^2/2 + drift * dilation`` where
    ``kinetic_scale = -hbar^2/(2 M)`` and ``dilation`` is the symmetrized
    ``(x p + p x)/2``.
    """

    def __init__(self, x, dx, hbar):
        n = x.size
        self.second = np.zeros((2 * _W + 1, n))
        self.dilation = np.zeros((2 * _W + 1, n), dtype=complex)
        for idx, off in enumerate(range(-_W, _W + 1)):
            # entry (i, i+off) lives at band[_W - off, i+off]
            i = np.arange(0, n - off) if off >= 0 else np.arange(-off, n)
            j = i + off
            self.second[_W - off, j] = _D2[idx] / (dx * dx)
            if off != 0:
                self.dilation[_W - off, j] = -1j * hbar * _D1[idx] * (x[i] + x[j]) / (2.0 * dx)
        self.half_x2 = 0.5 * x * x

    def assemble(self, kinetic_scale, quad, drift):
        ab = kinetic_scale * self.second.astype(complex)
        if drift != 0.0:
            ab += drift * self.dilation
        if quad != 0.0:
            ab[_W] += quad * self.half_x2
        return ab


def _apply_banded(ab, psi):
    n = psi.size
    out = ab[_W] * psi
    for off in range(1, _W + 1):
        out[:n - off] += ab[_W - off, off:] * psi[off:]
        out[off:] += ab[_W + off, :n - off] * psi[:n - off]
    return out


def _riccati_rhs(g, lam, omega2):
    return -2.0 * lam * g - omega2 - g * g


def _advance_g(g, h, lam, omega2):
    k1 = _riccati_rhs(g, lam, omega2)
    k2 = _riccati_rhs(g + 0.5 * h * k1, lam, omega2)
    k3 = _riccati_rhs(g + 0.5 * h * k2, lam, omega2)
    k4 = _riccati_rhs(g + h * k3, lam, omega2)
    return g + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _observables(phi, x, dx, k, hbar, chirp):
    """Moments of ``psi = exp(i chirp x^2/(2 hbar)) phi``."""
    dens = np.abs(phi) ** 2
    norm = float(np.sum(dens) * dx)
    mean_x = float(np.sum(x * dens) * dx / norm)
    mean_x2 = float(np.sum(x * x * dens) * dx / norm)
    var_x = float(np.sum((x - mean_x) ** 2 * dens) * dx / norm)
    p_phi = np.fft.ifft(hbar * k * np.fft.fft(phi))
    p_psi = p_phi + chirp * x * phi
    mean_p = float(np.real(np.sum(np.conj(phi) * p_psi)) * dx / norm)
    shifted = p_psi - mean_p * phi
    var_p = float(np.sum(np.abs(shifted) ** 2) * dx / norm)
    mean_p2 = float(np.sum(np.abs(p_psi) ** 2) * dx / norm)
    return norm, mean_x, mean_p, var_x, var_p, mean_x2, mean_p2


def crank_nicolson(scenario: Scenario, grid: GridSpec, tau_samples, gauge: str = "none",
                   superposition: bool = False, check_leak: bool = True) -> CNResult:
    """Propagate the initial state and record moments at ``tau_samples``.

    ``superposition=True`` starts from the normalized sum of the Gaussian and
    its parity image.  Raises :class:`GridTooSmall` when more than ``1e-12``
    of the probability sits in the boundary strips.
    """
    scenario.require_quantum()
    if gauge not in ("none", "riccati"):
        raise RejectedParams(f"unknown gauge {gauge!r}")
    if gauge == "riccati" and scenario.undamped:
        raise RejectedParams("the Riccati gauge needs friction")
    samples = np.asarray(tau_samples, dtype=float)
    if samples.ndim != 1 or samples.size == 0 or np.any(np.diff(samples) < 0) or samples[0] < 0:
        raise RejectedParams("tau_samples must be a non-empty, sorted, non-negative sequence")

    ph = scenario.physical
    hbar, m0, k0, lam = ph.hbar_eff, ph.m0, ph.k0, ph.lam
    omega2 = ph.omega**2
    unit = scenario.time_unit
    x, dx = grid.x, grid.dx
    k = 2.0 * math.pi * np.fft.fftfreq(x.size, d=dx)
    edge = (x < grid.x_min + grid.boundary) | (x > grid.x_max - grid.boundary)

    parts = _BandedParts(x, dx, hbar)
    phi = initial_wavefunction(scenario, x, superposition).astype(complex)
    phi /= math.sqrt(grid_norm(phi, dx))
    t, g = 0.0, 0.0
    riccati = gauge == "riccati"
    records = []

    def record():
        chirp = m0 * math.exp(2.0 * lam * t) * g if riccati else 0.0
        if check_leak and grid.boundary > 0.0:
            leak = float(np.sum(np.abs(phi[edge]) ** 2) * dx)
            if leak > LEAK_TOL:
                raise GridTooSmall(f"probability {leak:.3e} in the boundary strips at "
                                   f"tau = {t / unit:.6g}")
        records.append(_observables(phi, x, dx, k, hbar, chirp))

    for target in samples:
        span = target * unit - t
        n = int(math.ceil(span / grid.dt - 1e-9)) if span > 0 else 0
        h = span / n if n else 0.0
        for _ in range(n):
            tm = t + 0.5 * h
            mass = m0 * math.exp(2.0 * lam * tm)
            if riccati:
                g_mid = _advance_g(g, 0.5 * h, lam, omega2)
                quad, drift = 0.0, g_mid
            else:
                quad, drift = k0 * math.exp(2.0 * lam * tm), 0.0
            ab = parts.assemble(-hbar * hbar / (2.0 * mass), quad, drift)
            factor = 0.5j * h / hbar
            rhs = phi - factor * _apply_banded(ab, phi)
            lhs = factor * ab
            lhs[_W] += 1.0
            phi = solve_banded((_W, _W), lhs, rhs, check_finite=False)
            if riccati:
                g = _advance_g(g_mid, 0.5 * h, lam, omega2)
                if not math.isfinite(g):
                    raise StepRejected("Riccati gauge diverged (classical motion crosses zero)")
            t += h
        t = target * unit
        record()

    cols = np.array(records).T
    chirp = m0 * math.exp(2.0 * lam * t) * g if riccati else 0.0
    psi = phi * np.exp(1j * chirp * x * x / (2.0 * hbar))
    return CNResult(samples, cols[1], cols[2], cols[3], cols[4], cols[5], cols[6], cols[0],
                    x, psi, gauge)


MOMENT_FIELDS = ("mean_x", "var_x", "mean_x2", "mean_p", "var_p", "mean_p2")


@dataclass(frozen=True)
class ConvergedMoments:
    """Richardson-extrapolated moments with their self-convergence measure."""

    tau: np.ndarray
    moments: dict
    self_convergence: float
    norm_drift: float
    runs: tuple

    def scale(self, field: str) -> np.ndarray:
        """Per-sample magnitude used for relative comparisons.

        Means are measured against the root second moment so that zero
        crossings do not inflate relative errors.
        """
        m = self.moments
        if field == "mean_x":
            return np.sqrt(m["mean_x2"])
        if field == "mean_p":
            return np.sqrt(m["mean_p2"])
        return np.abs(m[field])


def converged_moments(scenario: Scenario, tau_samples, gauge: str = "none",
                      n_points: int = 1024, dt: float | None = None, levels: int = 3,
                      sigmas: float = 10.0, superposition: bool = False) -> ConvergedMoments:
    """Run ``levels`` step sizes ``dt, dt/2, ...`` and extrapolate.

    With midpoint-frozen coefficients the scheme is time symmetric, so the
    step error expands in even powers of ``dt`` and ``(4 R(dt/2) - R(dt))/3``
    removes the leading term.  ``self_convergence`` is the largest relative
    change between the last two extrapolations.
    """
    if levels < 3:
        raise RejectedParams("need at least 3 levels to measure self-convergence")
    samples = np.asarray(tau_samples, dtype=float)
    base = auto_grid(scenario, float(samples[-1]), n_points, dt, sigmas, superposition)
    runs = []
    for level in range(levels):
        grid = GridSpec(base.x_min, base.x_max, base.n_points, base.dt / 2**level, base.boundary)
        runs.append(crank_nicolson(scenario, grid, samples, gauge=gauge,
                                   superposition=superposition))
    extrap = []
    for coarse, fine in zip(runs[:-1], runs[1:]):
        extrap.append({f: (4.0 * getattr(fine, f) - getattr(coarse, f)) / 3.0
                       for f in MOMENT_FIELDS})
    best = extrap[-1]
    probe = ConvergedMoments(samples, best, 0.0, 0.0, ())
    change = max(float(np.max(np.abs(best[f] - extrap[-2][f]) / probe.scale(f)))
                 for f in MOMENT_FIELDS)
    drift = max(r.norm_drift for r in runs)
    return ConvergedMoments(samples, best, change, drift, tuple(runs))
