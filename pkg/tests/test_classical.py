import math

import numpy as np
import pytest
from hypothesis import given

from ckwork.classical import (classical_kinetic, classical_position, classical_state,
                              classical_work, position_scale, potential_energy,
                              trajectory_point)
from ckwork.oracles.rk4 import rk4_classical
from ckwork.scenario import build_scenario, preset

from . import reference_values as ref
from .helpers import damped_ratio, epsilon, rel, tau_value


def test_starts_at_equilibrium():
    assert classical_position(preset("OO"), 0.0) == 0.0
    assert position_scale(preset("OO")) == "x_m"
    assert position_scale(build_scenario(2.0, 0.3)) == "x0"


def test_overdamped_position_against_rk4_reference():
    assert classical_position(preset("OO"), 1.0) == pytest.approx(ref.OO_POSITION_TAU1, rel=1e-10)


def test_drag_kinetic():
    sc = preset("drag")
    assert classical_kinetic(sc, 0.25) == pytest.approx(math.exp(-1.0), rel=1e-14)
    tau = np.linspace(0, 3, 31)
    np.testing.assert_allclose(classical_work(sc, tau), np.expm1(-4 * tau), atol=1e-15)


def test_undamped_kinetic_is_cos_squared():
    t = np.linspace(0.0, 10.0, 201)
    np.testing.assert_allclose(classical_kinetic(preset("harmonic"), t), np.cos(t) ** 2,
                               atol=1e-15)
    assert classical_kinetic(preset("harmonic"), math.pi) == pytest.approx(1.0)


@given(damped_ratio, epsilon, tau_value)
def test_work_energy_identity(ratio, eps, tau):
    sc = build_scenario(ratio, eps, quantum=False)
    w = classical_work(sc, tau)
    k = classical_kinetic(sc, tau) - classical_kinetic(sc, 0.0)
    assert abs(w - k) <= 1e-14 * max(1.0, abs(w))


@given(damped_ratio, epsilon, tau_value)
def test_kinetic_non_negative_and_normalized(ratio, eps, tau):
    sc = build_scenario(ratio, eps, quantum=False)
    assert classical_kinetic(sc, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert classical_kinetic(sc, tau) >= -1e-14


@given(damped_ratio, epsilon, tau_value)
def test_canonical_momentum_relation(ratio, eps, tau):
    sc = build_scenario(ratio, eps, quantum=False)
    _, v, p = classical_state(sc, tau)
    assert p == pytest.approx(sc.physical.m0 * v * math.exp(2 * tau), rel=1e-12, abs=1e-300)
    pt = trajectory_point(sc, tau)
    assert pt.K_over_K0 >= -1e-14


@pytest.mark.parametrize("ratio", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("eps", [0.0, 0.4])
def test_rk4_oracle_equivalence(ratio, eps):
    sc = build_scenario(ratio, eps, quantum=False)
    st = sc.state
    tau, xs, vs = rk4_classical(sc, st.x0, st.p0 / sc.physical.m0, 10.0, 5e-4, record_every=20)
    x, v, _ = classical_state(sc, tau)
    # the motion decays like exp(-tau(1 - zeta)); compare against that envelope
    env = np.exp(-tau * (1.0 - math.sqrt(max(0.0, 1.0 - ratio**2))))
    length = max(st.x0, st.p0 / (sc.physical.m0 * sc.physical.lam))
    assert rel(xs, x, length * env) <= 1e-8
    k = 0.5 * vs**2 / sc.K0
    assert rel(k, classical_kinetic(sc, tau), env**2) <= 1e-8


@pytest.mark.parametrize("eps", [0.0, 0.3, 0.8])
def test_undamped_energy_conservation(eps):
    sc = build_scenario(math.inf, eps, quantum=False)
    t = np.linspace(0.0, 20.0, 401)
    total = classical_kinetic(sc, t) + potential_energy(sc, t)
    np.testing.assert_allclose(total, 1.0 / (1.0 - eps), rtol=1e-12)


@pytest.mark.parametrize("name", ["UO", "OO"])
def test_work_asymptote(name):
    sc = preset(name)
    assert classical_work(sc, 5000.0) == pytest.approx(-1.0, abs=1e-12)
