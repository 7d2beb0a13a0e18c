import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckwork.errors import ComplexLeak, DomainError
from ckwork.kernel import (CoefficientVector, Regime, contract, gamma, hyperbolic_pair,
                           make_zeta, real_part)

from .helpers import damped_ratio, tau_value


@pytest.mark.parametrize("ratio, regime", [
    (0.1, Regime.OVERDAMPED), (10.0, Regime.UNDERDAMPED), (1.0, Regime.CRITICAL),
    (math.inf, Regime.UNDAMPED), (0.0, Regime.OVERDAMPED),
])
def test_regime_classification(ratio, regime):
    assert make_zeta(ratio).regime is regime


def test_zeta_values():
    assert make_zeta(0.1).value == pytest.approx(math.sqrt(0.99))
    assert make_zeta(10.0).value == pytest.approx(1j * math.sqrt(99.0))
    assert make_zeta(1.0 + 1e-14).regime is Regime.CRITICAL


@pytest.mark.parametrize("bad", [-1.0, float("nan")])
def test_zeta_rejects(bad):
    with pytest.raises(DomainError):
        make_zeta(bad)


def test_gamma_at_zero_is_unit_first_component():
    for ratio in (0.1, 1.0, 10.0):
        g = gamma(make_zeta(ratio), 0.0)
        assert (g.h1, g.h2, g.h3) == (1.0, 0.0, 0.0)


@given(damped_ratio, tau_value)
def test_reduced_basis_matches_textbook(ratio, tau):
    zeta = make_zeta(ratio)
    g = gamma(zeta, tau)
    z = zeta.value
    ch, sh = np.cosh(z * tau), np.sinh(z * tau)
    scale = max(1.0, abs(ch) ** 2)
    assert abs(g.h1 - (ch * ch).real) <= 1e-10 * scale
    assert abs(g.h2 - (ch * sh / z).real) <= 1e-10 * scale * max(1.0, tau)
    assert abs(g.h3 - (sh * sh / (z * z)).real) <= 1e-10 * scale * max(1.0, tau) ** 2


def test_critical_limit_is_polynomial():
    tau = np.linspace(0.0, 3.0, 7)
    g = gamma(make_zeta(1.0), tau)
    np.testing.assert_allclose(g.h2, tau)
    np.testing.assert_allclose(g.h3, tau**2)


@given(st.floats(1e-5, 1e-3), st.floats(0.0, 5.0))
def test_near_critical_is_continuous(delta, tau):
    vec = CoefficientVector(1.0, -2.0, 3.0)
    at_critical = contract(vec, gamma(make_zeta(1.0), tau, decay=-2))
    for ratio in (1.0 - delta, 1.0 + delta):
        near = contract(vec, gamma(make_zeta(ratio), tau, decay=-2))
        assert abs(near - at_critical) <= 50.0 * delta * (1.0 + tau) ** 3


def test_decay_factor_avoids_overflow():
    c, s = hyperbolic_pair(make_zeta(0.1), 400.0, decay=-2)
    assert np.isfinite(c) and np.isfinite(s)
    assert 0.0 < c < 1.0


def test_growth_cap():
    with pytest.raises(DomainError):
        gamma(make_zeta(0.1), 151.0, decay=2)
    gamma(make_zeta(0.1), 151.0, decay=-2)


@pytest.mark.parametrize("tau", [-1.0, float("nan"), float("inf")])
def test_bad_tau(tau):
    with pytest.raises(DomainError):
        hyperbolic_pair(make_zeta(0.5), tau)


def test_undamped_basis():
    g = gamma(make_zeta(math.inf), math.pi / 3)
    assert g.g1 == pytest.approx(0.25)
    assert g.g2 == pytest.approx(math.sqrt(3) / 4)
    assert g.g3 == pytest.approx(-0.75)
    with pytest.raises(DomainError):
        hyperbolic_pair(make_zeta(math.inf), 1.0)


def test_complex_leak_detected():
    with pytest.raises(ComplexLeak):
        real_part(np.array([1.0 + 1e-6j]))
    assert real_part(np.array([2.0 + 1e-12j]))[0] == 2.0


def test_mixed_regimes_rejected():
    with pytest.raises(DomainError):
        contract(CoefficientVector(1.0, 0.0, 0.0, undamped=True), gamma(make_zeta(0.5), 1.0))
    with pytest.raises(DomainError):
        CoefficientVector(1, 0, 0) + CoefficientVector(1, 0, 0, undamped=True)


@given(damped_ratio, tau_value, st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_contraction_is_linear(ratio, tau, a, b, k):
    basis = gamma(make_zeta(ratio), tau, decay=-2)
    u, v = CoefficientVector(a, b, k), CoefficientVector(k, a, b)
    lhs = contract(u + 2.0 * v, basis)
    rhs = contract(u, basis) + 2.0 * contract(v, basis)
    assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(lhs)) * (1.0 + tau) ** 2
