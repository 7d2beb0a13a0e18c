"""Regenerate the oracle reference values frozen in ``tests/reference_values.py``.

Every number printed here comes from a numerical oracle (RK4, Crank-Nicolson,
Monte Carlo, adaptive quadrature); none is evaluated from a closed form.
"""

import math

import numpy as np

from ckwork.oracles.crank_nicolson import converged_moments
from ckwork.oracles.monte_carlo import monte_carlo_liouville
from ckwork.oracles.quadrature import adaptive_quadrature
from ckwork.oracles.rk4 import rk4_classical
from ckwork.scenario import preset


def main():
    oo = preset("OO")
    x_m = oo.state.p0 / (oo.physical.m0 * oo.physical.lam)
    _, xs, _ = rk4_classical(oo, 0.0, oo.state.p0, 1.0, 1e-4)
    print(f"OO_POSITION_TAU1 = {float(xs[-1] / x_m)!r}")

    print(f"QUAD_EXP4 = {adaptive_quadrature(lambda t: np.exp(-4.0 * t), 0.0, 1.0, 1e-14)!r}")

    uo = preset("UO")
    taus = [0.0, 0.05, 0.1, 0.5]
    cn = converged_moments(uo, taus, gauge="none", dt=1e-4)
    print(f"UO_CN_TAU = {taus!r}")
    for f in ("mean_x", "mean_p", "var_x", "var_p", "mean_x2", "mean_p2"):
        print(f"UO_CN_{f.upper()} = {[float(v) for v in cn.moments[f]]!r}")
    print(f"# self-convergence {cn.self_convergence:.2e}")

    cn_oo = converged_moments(oo, [0.0, 1.0], gauge="riccati", dt=1e-3)
    print(f"OO_CN_VAR_X_TAU1 = {float(cn_oo.moments['var_x'][1])!r}")
    print(f"OO_CN_MEAN_P2_TAU1 = {float(cn_oo.moments['mean_p2'][1])!r}")
    print(f"# self-convergence {cn_oo.self_convergence:.2e}")

    uo1 = preset("UO", theta=1.0)
    sup_taus = [0.0, 0.5, 1.0]
    sup = converged_moments(uo1, sup_taus, gauge="none", dt=1e-4, superposition=True)
    print(f"SUP_TAU = {sup_taus!r}")
    print(f"SUP_CN_MEAN_P2 = {[float(v) for v in sup.moments['mean_p2']]!r}")
    print(f"SUP_CN_MEAN_X2 = {[float(v) for v in sup.moments['mean_x2']]!r}")
    print(f"SUP_CN_MEAN_P = {[float(v) for v in sup.moments['mean_p']]!r}")
    print(f"# self-convergence {sup.self_convergence:.2e}")

    st = uo.state
    mc = monte_carlo_liouville(uo, st.x0, st.p0, st.delta_x0, st.delta_p0, 1.0, dt=1e-3,
                               n=1_000_000, seed=2024, record_every=1000)
    print(f"MC_UO_TAU1_MEAN_V2 = {float(mc.mean_v2[-1])!r}")
    print(f"MC_UO_TAU1_SE_V2 = {float(mc.se_mean_v2[-1])!r}")


if __name__ == "__main__":
    main()
