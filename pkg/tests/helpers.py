import numpy as np
from hypothesis import strategies as st

# damping ratios away from the critical point; the critical limit has its own tests
damped_ratio = st.one_of(st.floats(0.02, 0.95), st.floats(1.05, 30.0))
epsilon = st.floats(0.0, 0.9)
epsilon_delta = st.floats(0.05, 0.95)
theta = st.floats(0.0, 3.0)
tau_value = st.floats(0.0, 8.0)


def rel(a, b, scale=None):
    """Largest relative deviation with an optional floor on the denominator."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    den = np.abs(b) if scale is None else np.maximum(np.abs(b), scale)
    return float(np.max(np.abs(a - b) / den))
