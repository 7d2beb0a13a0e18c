import math

import pytest
from hypothesis import given

from ckwork.errors import RejectedParams
from ckwork.scenario import (DimensionlessParams, build_scenario, dimensionless_from_physical,
                             materialize, preset, theta_prime)

from .helpers import damped_ratio, epsilon, epsilon_delta, theta


@pytest.mark.parametrize("kwargs", [
    dict(omega_over_lambda=-1.0, epsilon=0.0, epsilon_delta=0.5, theta=0.1),
    dict(omega_over_lambda=1.0, epsilon=1.0, epsilon_delta=0.5, theta=0.1),
    dict(omega_over_lambda=1.0, epsilon=0.0, epsilon_delta=0.0, theta=0.1),
    dict(omega_over_lambda=1.0, epsilon=0.0, epsilon_delta=1.0, theta=0.1),
    dict(omega_over_lambda=1.0, epsilon=0.0, epsilon_delta=0.5, theta=-0.1),
    dict(omega_over_lambda=1.0, epsilon=0.0, epsilon_delta=0.5, theta=math.inf),
    dict(omega_over_lambda=float("nan"), epsilon=0.0, epsilon_delta=0.5, theta=0.1),
    dict(omega_over_lambda=0.0, epsilon=0.2, epsilon_delta=0.5, theta=0.1),
    dict(omega_over_lambda="1", epsilon=0.0, epsilon_delta=0.5, theta=0.1),
])
def test_rejected(kwargs):
    with pytest.raises(RejectedParams):
        DimensionlessParams(**kwargs)


def test_presets():
    uo = preset("UO")
    assert (uo.omega_over_lambda, uo.epsilon, uo.epsilon_delta, uo.theta) == (10.0, 0.0, 0.5, 0.1)
    assert preset("OO").omega_over_lambda == 0.1
    assert preset("harmonic").undamped
    assert not preset("drag").has_restoring_force
    assert not preset("drag").is_quantum
    assert preset("UO", theta=1.0).theta == 1.0
    with pytest.raises(RejectedParams):
        preset("nope")


def test_uo_materialization():
    sc = preset("UO")
    ph, st = sc.physical, sc.state
    assert (ph.m0, ph.lam, ph.omega, ph.k0) == (1.0, 1.0, 10.0, 100.0)
    assert st.x0 == 0.0
    assert st.p0 == pytest.approx(math.sqrt(2.0))
    assert st.delta_x0 == pytest.approx(math.sqrt(1e-3))
    assert ph.hbar_eff == pytest.approx(0.02)


def test_quantum_request_without_width_scale():
    with pytest.raises(RejectedParams):
        build_scenario(0.0, quantum=True)
    with pytest.raises(RejectedParams):
        build_scenario(2.0, theta=0.0, quantum=True)
    assert not build_scenario(2.0, quantum=False).is_quantum
    with pytest.raises(RejectedParams):
        build_scenario(2.0, theta=0.0).require_quantum()


@given(damped_ratio, epsilon, epsilon_delta, theta.filter(lambda t: t > 1e-6))
def test_round_trip(ratio, eps, epd, th):
    sc = build_scenario(ratio, eps, epd, th)
    back = dimensionless_from_physical(sc.physical, sc.state)
    assert back.omega_over_lambda == pytest.approx(ratio)
    assert back.epsilon == pytest.approx(eps, abs=1e-12)
    assert back.epsilon_delta == pytest.approx(epd, abs=1e-12)
    assert back.theta == pytest.approx(th, rel=1e-12)


@given(damped_ratio, epsilon, epsilon_delta, theta.filter(lambda t: t > 1e-6))
def test_minimum_uncertainty(ratio, eps, epd, th):
    sc = build_scenario(ratio, eps, epd, th)
    st = sc.state
    assert st.delta_x0 * st.delta_p0 == pytest.approx(0.5 * sc.physical.hbar_eff, rel=1e-12)


def test_theta_prime():
    assert theta_prime(preset("UO", theta=1.0).dimless) == pytest.approx(0.5)
    d = DimensionlessParams(2.0, 0.3, 0.2, 0.5)
    assert theta_prime(d) == pytest.approx(0.5 * 0.2 * 0.8 / (0.2 + 0.3 - 2 * 0.2 * 0.3))


def test_clock_conversion():
    assert preset("UO").tau_from_omega_t(10.0) == 1.0
    assert preset("OO").tau_from_omega_t(10.0) == pytest.approx(100.0)
    assert preset("harmonic").tau_from_omega_t(3.0) == 3.0
    assert preset("drag").tau_from_omega_t(3.0) == 3.0
    assert preset("UO").omega_t_from_tau(0.5) == 5.0


def test_with_params_and_materialize_options():
    sc = preset("UO").with_params(theta=0.0)
    assert sc.theta == 0.0 and not sc.is_quantum
    ph, _ = materialize(DimensionlessParams(math.inf, 0.0, 0.5, 0.1), omega_undamped=2.0)
    assert ph.lam == 0.0 and ph.omega == 2.0
    with pytest.raises(RejectedParams):
        materialize(DimensionlessParams(1.0, 0.0, 0.5, 0.1), m0=-1.0)
