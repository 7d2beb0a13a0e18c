"""Classical-statistical ensembles and the superposition/mixture family.

Liouville ensembles
    A Gaussian cloud of initial conditions centred at ``(x*, p*)`` with
    widths ``(sigma_x, sigma_p)``, or the symmetric mixture of the clouds at
    ``+(x*, p*)`` and ``-(x*, p*)``.  Each member follows the classical
    trajectory, so velocity moments are again basis contractions.

mu-states
    ``rho_mu ~ |psi><psi| + |psi-><psi-| + exp(-mu)(|psi><psi-| + |psi-><psi|)``
    where ``psi-`` is the parity image of the Gaussian ``psi`` (centre
    ``-(x0, p0)``).  ``mu = 0`` is the coherent superposition and ``mu -> inf``
    the incoherent mixture.  With ``S = x0^2/Delta_x^2 + p0^2/Delta_p^2`` the
    overlap is ``<psi-|psi> = exp(-S/2)`` and the normalization is
    ``N_mu = 2 (1 + exp(-mu - S/2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import alpha_cl
from .energetics import kinetic_energy
from .errors import CorrespondenceViolation, DomainError, RejectedParams
from .kernel import CoefficientVector, contract, gamma, hyperbolic_pair
from .quantum import evolved_gaussian, fluctuation_vector, heisenberg_matrix
from .scenario import InitialState, Scenario, build_scenario, theta_prime


@dataclass(frozen=True)
class LiouvilleGaussian:
    center_x: float
    center_p: float
    sigma_x0: float
    sigma_p0: float
    mixed: bool = False

    def __post_init__(self):
        if not (self.sigma_x0 > 0.0 and self.sigma_p0 > 0.0):
            raise RejectedParams("sigma_x0 and sigma_p0 must be > 0")

    @classmethod
    def matching(cls, scenario: Scenario, mixed: bool = False) -> "LiouvilleGaussian":
        """Ensemble with the same centre and widths as the quantum Gaussian."""
        scenario.require_quantum()
        st = scenario.state
        return cls(st.x0, st.p0, st.delta_x0, st.delta_p0, mixed)


def liouville_vectors(ensemble: LiouvilleGaussian, scenario: Scenario):
    """``(alpha_star, beta_star)``: ``<v>^2 = exp(-2tau) alpha*.Gamma``, ``sigma_v^2 = exp(-2tau) beta*.Gamma``."""
    ph = scenario.physical
    m2 = ph.m0 * ph.m0
    xs, ps = ensemble.center_x, ensemble.center_p
    sx2, sp2 = ensemble.sigma_x0**2, ensemble.sigma_p0**2
    if scenario.undamped:
        f = ph.k0 / ph.omega
        return (CoefficientVector(ps * ps / m2, -2.0 * ps * f * xs / m2, -(f * xs) ** 2 / m2,
                                  undamped=True),
                CoefficientVector(sp2 / m2, 0.0, -f * f * sx2 / m2, undamped=True))
    g = ph.k0 / ph.lam
    alpha = CoefficientVector(ps * ps / m2, -2.0 * (ps * ps + g * ps * xs) / m2,
                              (ps * ps + 2.0 * ps * g * xs + g * g * xs * xs) / m2)
    beta = CoefficientVector(sp2 / m2, -2.0 * sp2 / m2, (sp2 + g * g * sx2) / m2)
    return alpha, beta


def liouville_moments(ensemble: LiouvilleGaussian, scenario: Scenario, tau):
    """``(<v>, <v>^2, <v^2>, sigma_v^2)`` in physical units."""
    ph = scenario.physical
    t = np.asarray(tau, dtype=float)
    alpha, beta = liouville_vectors(ensemble, scenario)
    basis = gamma(scenario.zeta, t, decay=-2)
    v2 = np.asarray(contract(alpha + beta, basis))
    if ensemble.mixed:
        zero = np.zeros_like(v2)
        return _out(zero), _out(zero), _out(v2), _out(v2)
    xs, ps = ensemble.center_x, ensemble.center_p
    if scenario.undamped:
        mean_v = ps / ph.m0 * np.cos(t) - xs * ph.omega * np.sin(t)
    else:
        c, s = hyperbolic_pair(scenario.zeta, t, decay=-2)
        mean_v = ps / ph.m0 * c - (ps / ph.m0 + ph.k0 * xs / (ph.m0 * ph.lam)) * s
    return (_out(mean_v), _out(contract(alpha, basis)), _out(v2), _out(contract(beta, basis)))


def starred_scenario(ensemble: LiouvilleGaussian, scenario: Scenario) -> Scenario:
    """Dimensionless description ``(eps*, eps_delta*, theta*)`` of an ensemble."""
    ph = scenario.physical
    if not scenario.has_restoring_force:
        raise DomainError("starred parameters need omega > 0")
    elastic = 0.5 * ph.k0 * ensemble.center_x**2
    E0 = elastic + ensemble.center_p**2 / (2.0 * ph.m0)
    el_fl = 0.5 * ph.k0 * ensemble.sigma_x0**2
    e0 = el_fl + ensemble.sigma_p0**2 / (2.0 * ph.m0)
    return build_scenario(scenario.omega_over_lambda, elastic / E0, el_fl / e0, e0 / E0,
                          E0=E0, m0=ph.m0, lam=ph.lam if ph.lam > 0 else 1.0, quantum=False)


def gcl_vectors(ensemble: LiouvilleGaussian, scenario: Scenario):
    """Dimensionless ``(alpha_gcl, theta* beta_gcl)`` of the ensemble kinetic energy."""
    star = starred_scenario(ensemble, scenario)
    return alpha_cl(star), star.theta * fluctuation_vector(star)


def liouville_scaled(ensemble: LiouvilleGaussian, scenario: Scenario, tau) -> dict:
    """``(m0/2)`` times the velocity moments over ``K0* = p*^2/(2 m0)``."""
    k_star = ensemble.center_p**2 / (2.0 * scenario.physical.m0)
    _, mean_sq, v2, var = liouville_moments(ensemble, scenario, tau)
    half_m = 0.5 * scenario.physical.m0
    return {"kinetic": _out(half_m * np.asarray(v2) / k_star),
            "centroid": _out(half_m * np.asarray(mean_sq) / k_star),
            "thermal": _out(half_m * np.asarray(var) / k_star)}


def liouville_work(ensemble: LiouvilleGaussian, scenario: Scenario, tau):
    """``(W_gcl, W_c_gcl, W_th_gcl)`` over ``K0*``."""
    now = liouville_scaled(ensemble, scenario, tau)
    start = liouville_scaled(ensemble, scenario, 0.0)
    return tuple(_out(np.asarray(now[k]) - start[k]) for k in ("kinetic", "centroid", "thermal"))


@dataclass(frozen=True)
class CorrespondenceReport:
    tau: np.ndarray
    deviations: dict
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def correspondence_check(scenario: Scenario, tau, tol: float = 1e-10,
                         raise_on_failure: bool = True) -> CorrespondenceReport:
    """Compare quantum and Liouville velocity moments of matching Gaussians.

    Deviations are measured relative to the instantaneous total kinetic
    energy, the natural scale of all three moments.
    """
    scenario.require_quantum()
    t = np.atleast_1d(np.asarray(tau, dtype=float))
    ens = LiouvilleGaussian.matching(scenario)
    m0, K0 = scenario.physical.m0, scenario.K0
    g = evolved_gaussian(scenario, t)
    damp = np.ones_like(t) if scenario.undamped else np.exp(-4.0 * t)
    quantum = {
        "kinetic": 0.5 * damp * np.asarray(g.mean_p2) / m0 / K0,
        "centroid": 0.5 * damp * np.asarray(g.mean_p) ** 2 / m0 / K0,
        "thermal": 0.5 * damp * np.asarray(g.var_p) / m0 / K0,
    }
    classical = liouville_scaled(ens, scenario, t)
    scale = np.maximum(np.abs(quantum["kinetic"]), np.finfo(float).tiny)
    deviations = {k: float(np.max(np.abs(np.asarray(classical[k]) - quantum[k]) / scale))
                  for k in quantum}
    if scenario.has_restoring_force:
        a_g, b_g = gcl_vectors(ens, scenario)
        basis = gamma(scenario.zeta, t, decay=-2)
        dimless = {"kinetic": contract(a_g + b_g, basis), "centroid": contract(a_g, basis),
                   "thermal": contract(b_g, basis)}
        for k in quantum:
            deviations[f"{k}_dimensionless"] = float(
                np.max(np.abs(np.asarray(dimless[k]) - quantum[k]) / scale))
    report = CorrespondenceReport(t, deviations, tol)
    if raise_on_failure and not report.passed:
        worst = max(deviations, key=deviations.get)
        raise CorrespondenceViolation(
            f"quantum/Liouville moments differ: {worst} deviates by {deviations[worst]:.3e}",
            deviations)
    return report


@dataclass(frozen=True)
class MuState:
    mu: float
    norm: float
    base: InitialState
    hbar: float

    @property
    def separation(self) -> float:
        """``S = x0^2/Delta_x^2 + p0^2/Delta_p^2`` (squared phase-space distance in widths)."""
        return separation(self.base)


def separation(state: InitialState) -> float:
    dx, dp = state.delta_x0, state.delta_p0
    return (state.x0 / dx) ** 2 + (state.p0 / dp) ** 2


def mu_state(scenario: Scenario, mu: float) -> MuState:
    scenario.require_quantum()
    if not (mu >= 0.0):
        raise RejectedParams(f"mu must be >= 0, got {mu}")
    st, hbar = scenario.state, scenario.physical.hbar_eff
    exponent = mu + st.x0**2 / (2.0 * st.delta_x0**2) + 2.0 * st.p0**2 * st.delta_x0**2 / hbar**2
    return MuState(float(mu), 2.0 * (1.0 + math.exp(-exponent)), st, hbar)


def mu_state_moments(state: MuState, scenario: Scenario, tau):
    """``(<X>, <X^2>, <P>, <P^2>)`` of ``rho_mu`` assembled from the four traces.

    ``<psi-|A|psi>`` for ``A = X^2, P^2`` is ``exp(-S/2)`` times the Gaussian
    variance minus the square of the parity-odd combination of the centre,
    propagated with the Heisenberg matrix.
    """
    st = state.base
    dx, dp = st.delta_x0, st.delta_p0
    a, b, c, d = (np.asarray(v) for v in heisenberg_matrix(scenario, tau))
    g = evolved_gaussian(scenario, tau)
    overlap = math.exp(-0.5 * state.separation)
    w_x = a * dx * (st.p0 / dp) - b * dp * (st.x0 / dx)
    w_p = d * dp * (st.x0 / dx) - c * dx * (st.p0 / dp)
    diag_x2 = np.asarray(g.mean_x2)
    diag_p2 = np.asarray(g.mean_p2)
    cross_x2 = overlap * (np.asarray(g.var_x) - w_x * w_x)
    cross_p2 = overlap * (np.asarray(g.var_p) - w_p * w_p)
    x2 = (2.0 * diag_x2 + 2.0 * math.exp(-state.mu) * cross_x2) / state.norm
    p2 = (2.0 * diag_p2 + 2.0 * math.exp(-state.mu) * cross_p2) / state.norm
    zero = np.zeros_like(x2)
    return _out(zero), _out(x2), _out(zero), _out(p2)


def mu_momentum_compact(state: MuState, scenario: Scenario, tau):
    """``<P^2>_mu = <P^2> - S <(dP)^2> / (1 + exp(mu + S/2))``."""
    g = evolved_gaussian(scenario, tau)
    S = state.separation
    return _out(np.asarray(g.mean_p2) - S * np.asarray(g.var_p) * _fermi(state.mu + 0.5 * S))


def mu_position_compact(state: MuState, scenario: Scenario, tau):
    """``<X^2>_mu = <X^2> - S <(dX)^2> / (1 + exp(mu + S/2))``."""
    g = evolved_gaussian(scenario, tau)
    S = state.separation
    return _out(np.asarray(g.mean_x2) - S * np.asarray(g.var_x) * _fermi(state.mu + 0.5 * S))


def _fermi(z: float) -> float:
    """``1/(1 + exp(z))`` without overflow."""
    if z >= 0.0:
        e = math.exp(-z)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(z))


def mu_kinetic_energy(scenario: Scenario, mu: float, tau):
    """``(m0/2)<V^2>_mu / K0`` from dimensionless parameters.

    ``K_q - (1/theta') K_th / (1 + exp(mu + 1/(2 theta')))`` where ``K_th`` is
    the thermal (variance) part of the Gaussian kinetic energy.
    """
    if mu < 0.0:
        raise RejectedParams(f"mu must be >= 0, got {mu}")
    k = np.asarray(kinetic_energy(scenario, tau))
    tp = theta_prime(scenario.dimless)
    if tp == 0.0:
        return _out(k)
    thermal = contract(scenario.theta * fluctuation_vector(scenario),
                       gamma(scenario.zeta, tau, decay=-2))
    return _out(k - np.asarray(thermal) / tp * _fermi(mu + 0.5 / tp))


def mu_work(state_or_mu, scenario: Scenario, tau):
    """``(W_q^mu, W_c^mu, W_th^mu)`` over ``K0``; the centroid part vanishes."""
    mu = state_or_mu.mu if isinstance(state_or_mu, MuState) else float(state_or_mu)
    w = np.asarray(mu_kinetic_energy(scenario, mu, tau)) - mu_kinetic_energy(scenario, mu, 0.0)
    return _out(w), _out(np.zeros_like(w)), _out(w)


def mu_work_from_traces(state: MuState, scenario: Scenario, tau):
    """``W_q^mu / K0`` from the physical ``<P^2>_mu`` traces."""
    t = np.asarray(tau, dtype=float)
    m0 = scenario.physical.m0
    damp = np.ones_like(t) if scenario.undamped else np.exp(-4.0 * t)
    p2 = np.asarray(mu_state_moments(state, scenario, t)[3])
    p2_0 = mu_state_moments(state, scenario, 0.0)[3]
    return _out(0.5 * (damp * p2 - p2_0) / m0 / scenario.K0)


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value
