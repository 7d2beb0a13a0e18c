import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckwork.classical import alpha_cl, classical_kinetic, classical_position, classical_state
from ckwork.errors import DomainError
from ckwork.kernel import contract, gamma
from ckwork.quantum import (evolved_gaussian, evolved_wavefunction, heisenberg_matrix,
                            momentum_constants, position_constants, propagator_coefficients,
                            scaled_expectations, velocity_second_moment)
from ckwork.energetics import kinetic_energy
from ckwork.scenario import build_scenario, preset

from . import reference_values as ref
from .helpers import damped_ratio, epsilon, epsilon_delta, rel

positive_theta = st.floats(0.01, 3.0)
short_tau = st.floats(0.0, 6.0)


def test_propagator_boundary_conditions():
    for name in ("UO", "OO"):
        pc = propagator_coefficients(preset(name), 0.0)
        assert (pc.c_plus, pc.c_minus, pc.c_zero, pc.u) == (0.0, 0.0, 0.0, 1.0)


def test_c_zero_sign_and_drag():
    sc = preset("OO")
    pc = propagator_coefficients(sc, 1.0)
    # exp(-c_zero) = u^2: the packet follows the classical contraction
    assert math.exp(-pc.c_zero) == pytest.approx(pc.u**2, rel=1e-14)
    g = evolved_gaussian(sc, 1.0)
    assert g.var_x == pytest.approx(ref.OO_CN_VAR_X_TAU1, rel=1e-8)


def test_factorization_singular_where_u_vanishes():
    sc = preset("UO")
    with pytest.raises(DomainError):
        propagator_coefficients(sc, 0.2)
    with pytest.raises(DomainError):
        propagator_coefficients(preset("harmonic"), 0.2)


@given(damped_ratio, short_tau)
def test_heisenberg_matrix_is_symplectic(ratio, tau):
    sc = build_scenario(ratio, 0.2, 0.5, 0.3)
    a, b, c, d = heisenberg_matrix(sc, tau)
    assert a * d - b * c == pytest.approx(1.0, abs=1e-9 * max(1.0, abs(a * d)))


@pytest.mark.parametrize("ratio", [0.1, 0.7, 1.0])
def test_wavefunction_regular_where_u_positive(ratio):
    sc = build_scenario(ratio, 0.2, 0.4, 0.5)
    g = evolved_gaussian(sc, 0.8)
    x = np.linspace(g.mean_x - 12 * math.sqrt(g.var_x), g.mean_x + 12 * math.sqrt(g.var_x), 4001)
    psi = evolved_wavefunction(sc, 0.8, x)
    dx = x[1] - x[0]
    dens = np.abs(psi) ** 2
    assert np.sum(dens) * dx == pytest.approx(1.0, rel=1e-10)
    assert np.sum(x * dens) * dx == pytest.approx(g.mean_x, rel=1e-9, abs=1e-12)
    assert np.sum((x - g.mean_x) ** 2 * dens) * dx == pytest.approx(g.var_x, rel=1e-9)


def test_initial_moments():
    sc = preset("UO")
    g = evolved_gaussian(sc, 0.0)
    st, hbar = sc.state, sc.physical.hbar_eff
    assert g.mean_x == st.x0
    assert g.mean_p == pytest.approx(st.p0)
    assert g.var_x == pytest.approx(st.delta_x0**2)
    assert g.var_p == pytest.approx(hbar**2 / (4 * st.delta_x0**2))


@pytest.mark.parametrize("i", range(4))
def test_against_crank_nicolson_reference(i):
    g = evolved_gaussian(preset("UO"), ref.UO_CN_TAU[i])
    scale_x, scale_p = math.sqrt(ref.UO_CN_MEAN_X2[i]), math.sqrt(ref.UO_CN_MEAN_P2[i])
    assert abs(g.mean_x - ref.UO_CN_MEAN_X[i]) <= 1e-4 * scale_x
    assert abs(g.mean_p - ref.UO_CN_MEAN_P[i]) <= 1e-4 * scale_p
    assert g.var_x == pytest.approx(ref.UO_CN_VAR_X[i], rel=1e-4)
    assert g.var_p == pytest.approx(ref.UO_CN_VAR_P[i], rel=1e-4)
    assert g.mean_x2 == pytest.approx(ref.UO_CN_MEAN_X2[i], rel=1e-4)
    assert g.mean_p2 == pytest.approx(ref.UO_CN_MEAN_P2[i], rel=1e-4)


def test_overdamped_momentum_against_crank_nicolson_reference():
    g = evolved_gaussian(preset("OO"), 1.0)
    assert g.mean_p2 == pytest.approx(ref.OO_CN_MEAN_P2_TAU1, rel=1e-8)


def _condition(coeffs, basis, value):
    """Sum of the magnitudes of the contracted terms over the result."""
    terms = abs(coeffs[0] * basis.h1) + abs(coeffs[1] * basis.h2) + abs(coeffs[2] * basis.h3)
    return max(1.0, float(terms / abs(value)))


@pytest.mark.parametrize("name", ["UO", "OO"])
def test_moment_consistency_presets(name):
    sc = preset(name)
    g = evolved_gaussian(sc, np.linspace(0.0, 20.0, 401))
    # independent displays: k-constants vs variance display plus mean
    assert rel(g.mean_x2, g.var_x + g.mean_x**2) <= 1e-10
    assert rel(g.mean_p2, g.var_p + g.mean_p**2) <= 1e-10


@given(damped_ratio, epsilon, epsilon_delta, positive_theta, short_tau)
def test_moment_consistency(ratio, eps, epd, th, tau):
    sc = build_scenario(ratio, eps, epd, th)
    g = evolved_gaussian(sc, tau)
    # strongly overdamped long runs cancel large hyperbolic terms; scale by that loss
    cond_x = _condition(position_constants(sc), gamma(sc.zeta, tau, decay=-2), g.mean_x2)
    k1, k2, k3 = momentum_constants(sc)
    cond_p = _condition((k1, k2, k3), gamma(sc.zeta, tau, decay=2), g.mean_p2)
    assert rel(g.mean_x2, g.var_x + g.mean_x**2) <= 1e-10 * cond_x
    assert rel(g.mean_p2, g.var_p + g.mean_p**2) <= 1e-10 * cond_p


@given(damped_ratio, epsilon, epsilon_delta, positive_theta, short_tau)
def test_uncertainty_floor(ratio, eps, epd, th, tau):
    sc = build_scenario(ratio, eps, epd, th)
    g = evolved_gaussian(sc, tau)
    assert g.var_x > 0 and g.var_p > 0
    assert math.sqrt(g.var_x * g.var_p) >= 0.5 * sc.physical.hbar_eff * (1 - 1e-10)


@given(damped_ratio, epsilon, epsilon_delta, positive_theta, short_tau)
def test_ehrenfest_mean(ratio, eps, epd, th, tau):
    sc = build_scenario(ratio, eps, epd, th)
    x, _, p = classical_state(sc, tau)
    g = evolved_gaussian(sc, tau)
    assert abs(g.mean_x - x) <= 1e-12 * max(abs(x), math.sqrt(g.mean_x2))
    assert abs(g.mean_p - p) <= 1e-12 * max(abs(p), math.sqrt(g.mean_p2))


@given(damped_ratio, epsilon, epsilon_delta, positive_theta, short_tau)
def test_scaled_equals_unscaled(ratio, eps, epd, th, tau):
    sc = build_scenario(ratio, eps, epd, th)
    g = evolved_gaussian(sc, tau)
    s = scaled_expectations(sc, tau)
    st, m0, lam = sc.state, sc.physical.m0, sc.physical.lam
    by_x0 = eps >= 1e-12
    length = st.x0 if by_x0 else st.p0 / (m0 * lam)
    assert s["position_scale"] == ("x0" if by_x0 else "x_m")
    assert rel(s["var_x"], g.var_x / length**2) <= 1e-10
    assert rel(s["mean_x2"], g.mean_x2 / length**2) <= 1e-10
    assert abs(s["mean_x"] - g.mean_x / length) <= 1e-10 * math.sqrt(s["mean_x2"])
    assert rel(s["var_p"], g.var_p / st.p0**2) <= 1e-10
    assert rel(s["mean_p2"], g.mean_p2 / st.p0**2) <= 1e-10
    assert abs(s["mean_p"] - g.mean_p / st.p0) <= 1e-10 * math.sqrt(s["mean_p2"])
    assert s["mean_x"] == pytest.approx(classical_position(sc, tau), rel=1e-10, abs=1e-14)


def test_scaled_initial_momentum():
    assert scaled_expectations(preset("UO"), 0.0)["mean_p2"] == pytest.approx(1.05)


@pytest.mark.parametrize("name", ["UO", "OO"])
def test_classical_limit_of_scaled_momentum(name):
    sc = preset(name, theta=0.0)
    tau = np.linspace(0, 5, 11)
    bracket = contract(alpha_cl(sc), gamma(sc.zeta, tau, decay=2))
    np.testing.assert_allclose(scaled_expectations(sc, tau)["mean_p2"], bracket, rtol=1e-14)
    np.testing.assert_allclose(np.exp(-4 * tau) * bracket, classical_kinetic(sc, tau),
                               rtol=1e-12, atol=1e-15)


@given(damped_ratio, epsilon, epsilon_delta, short_tau)
def test_variances_vanish_with_theta(ratio, eps, epd, tau):
    small = scaled_expectations(build_scenario(ratio, eps, epd, 1e-8), tau)
    big = scaled_expectations(build_scenario(ratio, eps, epd, 1.0), tau)
    assert small["var_x"] == pytest.approx(1e-8 * big["var_x"], rel=1e-6)
    assert small["var_p"] == pytest.approx(1e-8 * big["var_p"], rel=1e-6)


@given(damped_ratio, epsilon, epsilon_delta, positive_theta, short_tau)
def test_velocity_map(ratio, eps, epd, th, tau):
    sc = build_scenario(ratio, eps, epd, th)
    assert rel(velocity_second_moment(sc, tau), kinetic_energy(sc, tau)) <= 1e-10


def test_undamped_moments():
    sc = preset("harmonic", epsilon=0.3)
    t = np.linspace(0, 10, 101)
    g = evolved_gaussian(sc, t)
    assert rel(velocity_second_moment(sc, t), kinetic_energy(sc, t), 1e-3) <= 1e-12
    np.testing.assert_allclose(g.var_x * g.var_p >= (0.5 * sc.physical.hbar_eff) ** 2 * (1 - 1e-12),
                               True)
