"""Reference numbers produced by the numerical oracles, frozen.

Regenerate with ``python scripts/freeze_reference.py``.  None of these values
was evaluated from a closed form of the package.
"""

# RK4 (dt = 1e-4): overdamped (omega/lambda = 0.1), epsilon = 0, x(tau = 1)/x_m
OO_POSITION_TAU1 = 0.4316560109697411

# adaptive Gauss-Kronrod, int_0^1 exp(-4 tau) dtau
QUAD_EXP4 = 0.24542109027781647

# Crank-Nicolson (Richardson-extrapolated, self-converged to 9e-9), UO preset
UO_CN_TAU = [0.0, 0.05, 0.1, 0.5]
UO_CN_MEAN_X = [0.0, 0.06452165049981061, 0.10787022537524804, -0.0832542989526862]
UO_CN_MEAN_P = [1.4142135623730951, 1.2351960200569703, 0.7192930176663733, 0.8314688302246575]
UO_CN_VAR_X = [0.0009999999999999996, 0.0009852762292599376, 0.0009055282888021421,
               0.0003562761488806673]
UO_CN_VAR_P = [0.09999999999999999, 0.10170922375198645, 0.11266337518194158,
               0.29064504133334557]
UO_CN_MEAN_X2 = [0.0009999999999999996, 0.005148319612474782, 0.012541513811302885,
                 0.007287554442959744]
UO_CN_MEAN_P2 = [2.0999999999999996, 1.6274184317163887, 0.6300458204434171,
                 0.9819854567777928]

# Crank-Nicolson, Riccati gauge, OO preset, tau = 1
OO_CN_VAR_X_TAU1 = 9.961986776958181
OO_CN_MEAN_P2_TAU1 = 2.0643826622216035

# Crank-Nicolson from the coherent superposition (mu = 0), UO preset with theta = 1
SUP_TAU = [0.0, 0.5, 1.0]
SUP_CN_MEAN_P2 = [2.4621171572600113, 2.034461019305331, 12.94765302551209]
SUP_CN_MEAN_X2 = [0.0046211715726001, 0.008577691504250298, 0.0013701718426946984]

# Monte Carlo, 1e6 samples, Philox seed 2024, UO preset, tau = 1
MC_UO_TAU1_MEAN_V2 = 0.19215859008135353
MC_UO_TAU1_SE_V2 = 9.612513559949498e-05
