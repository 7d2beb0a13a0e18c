"""Run configuration, series assembly, CSV/metadata emission and the oracle suite.

Every series is tabulated against the figure abscissa ``omega*t`` (``lambda*t``
when there is no restoring force) and every energy column is in units of
``K0``.  CSV files use 17 significant digits and LF line endings; the JSON
sidecar carries no timestamps, so identical configurations produce identical
bytes.
"""

from __future__ import annotations

import json
import math
import platform
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CKError, RejectedParams
from .scenario import PRESETS, Scenario, build_scenario, preset

ENGINES = ("classical", "quantum", "alicki", "proposed", "liouville", "mu_state")
MIXTURE_MU = 50.0


@dataclass(frozen=True)
class GridRange:
    start: float = 0.0
    end: float = 10.0
    count: int = 1001

    @classmethod
    def parse(cls, text: str) -> "GridRange":
        parts = text.split(":")
        if len(parts) != 3:
            raise RejectedParams(f"grid: expected start:end:count, got {text!r}")
        try:
            start, end, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise RejectedParams(f"grid: {exc}") from None
        if not (math.isfinite(start) and math.isfinite(end)) or start < 0.0 or end < start:
            raise RejectedParams(f"grid: need 0 <= start <= end, got {text!r}")
        if count < 1:
            raise RejectedParams(f"grid: count must be >= 1, got {count}")
        return cls(start, end, count)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.end, self.count)

    def __str__(self) -> str:
        return f"{self.start:g}:{self.end:g}:{self.count}"


@dataclass(frozen=True)
class RunConfig:
    preset: str = "UO"
    omega_over_lambda: float | None = None
    epsilon: float | None = None
    epsilon_delta: float | None = None
    theta: float | None = None
    mu: float | None = None
    grid: GridRange = field(default_factory=GridRange)
    engines: tuple = ()
    oracle: bool = False
    seed: int = 0
    samples: int = 1_000_000
    out: str | None = None

    def scenario(self) -> Scenario:
        overrides = dict(omega_over_lambda=self.omega_over_lambda, epsilon=self.epsilon,
                         epsilon_delta=self.epsilon_delta, theta=self.theta)
        if self.preset == "custom":
            missing = [k for k, v in overrides.items() if v is None and k == "omega_over_lambda"]
            if missing:
                raise RejectedParams("omega_over_lambda: required for the custom preset")
            params = {k: v for k, v in overrides.items() if v is not None}
            return build_scenario(**params, name="custom")
        return preset(self.preset, **overrides)


_CONFIG_KEYS = {
    "preset": str, "omega_over_lambda": float, "epsilon": float, "epsilon_delta": float,
    "theta": float, "mu": float, "grid": GridRange.parse, "seed": int, "samples": int,
    "out": str, "oracle": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
    "engines": lambda s: tuple(e.strip() for e in s.split(",") if e.strip()),
}


def read_config(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment, dashes equal underscores."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise RejectedParams(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise RejectedParams(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise RejectedParams(f"{path}:{lineno}: {key}: {exc}") from None
    return values


def make_config(file_values: dict | None = None, **flags) -> RunConfig:
    """Merge config-file values with flags; flags that are not ``None`` win."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in flags.items() if v is not None})
    if "preset" in merged and merged["preset"] not in (*PRESETS, "custom"):
        raise RejectedParams(f"preset: unknown name {merged['preset']!r}; "
                             f"choose from {sorted((*PRESETS, 'custom'))}")
    for engine in merged.get("engines", ()):
        if engine not in ENGINES:
            raise RejectedParams(f"engines: unknown engine {engine!r}; choose from {ENGINES}")
    if merged.get("mu") is not None and merged["mu"] < 0.0:
        raise RejectedParams(f"mu: must be >= 0, got {merged['mu']}")
    return RunConfig(**merged)


# ---------------------------------------------------------------- columns

def _classical(name):
    def fn(sc, tau, cfg):
        from . import classical
        if name == "x_scaled":
            return classical.classical_position(sc, tau)
        if name == "K_cl":
            return classical.classical_kinetic(sc, tau)
        return classical.classical_work(sc, tau)
    return fn


def _proposed(index):
    def fn(sc, tau, cfg):
        from .energetics import kinetic_energy, quantum_work
        if index is None:
            return kinetic_energy(sc, tau)
        return quantum_work(sc, tau)[index]
    return fn


def _alicki(index):
    def fn(sc, tau, cfg):
        from .energetics import alicki_work_heat
        return alicki_work_heat(sc, tau)[index]
    return fn


def _liouville(index):
    def fn(sc, tau, cfg):
        from .ensembles import LiouvilleGaussian, liouville_work
        return liouville_work(LiouvilleGaussian.matching(sc), sc, tau)[index]
    return fn


def _mu(mu_value, index=0):
    def fn(sc, tau, cfg):
        from .ensembles import mu_work
        mu = cfg.mu if mu_value is None else mu_value
        if mu is None:
            raise RejectedParams("mu: required for the mu_state engine")
        return mu_work(mu, sc, tau)[index]
    return fn


COLUMNS = {
    "x_scaled": _classical("x_scaled"),
    "K_cl": _classical("K_cl"),
    "W_cl": _classical("W_cl"),
    "K_q": _proposed(None),
    "W_q": _proposed(0),
    "W_c": _proposed(1),
    "W_th": _proposed(2),
    "W_ak": _alicki(0),
    "Q_ak": _alicki(1),
    "W_gcl": _liouville(0),
    "W_c_gcl": _liouville(1),
    "W_th_gcl": _liouville(2),
    "W_q_mu": _mu(None),
    "W_q_mixture": _mu(MIXTURE_MU),
    "W_q_superposition": _mu(0.0),
    "W_th_superposition": _mu(0.0, 2),
    "W_q_gaussian": _proposed(0),
    "W_c_gaussian": _proposed(1),
    "W_th_gaussian": _proposed(2),
}

ENGINE_COLUMNS = {
    "classical": ("x_scaled", "K_cl", "W_cl"),
    "quantum": ("K_q",),
    "proposed": ("W_q", "W_c", "W_th"),
    "alicki": ("W_ak", "Q_ak"),
    "liouville": ("W_gcl", "W_c_gcl", "W_th_gcl"),
    "mu_state": ("W_q_mu",),
}


@dataclass(frozen=True)
class FigureSpec:
    columns: tuple
    title: str
    preset: str | None = None
    fixed: dict = field(default_factory=dict)
    defaults: dict = field(default_factory=dict)


FIGURES = {
    "4.2": FigureSpec(("x_scaled", "W_cl"), "classical position and work, underdamped", "UO"),
    "4.3": FigureSpec(("x_scaled", "W_cl"), "classical position and work, overdamped", "OO"),
    "4.4": FigureSpec(("Q_ak", "W_ak", "W_cl"), "Alicki heat and work vs classical work"),
    "4.5": FigureSpec(("W_c", "W_th", "W_q", "W_cl"), "centroid, thermal and quantum work"),
    "4.6": FigureSpec(("Q_ak", "W_ak", "W_cl"), "Alicki heat and work at theta = 0", "UO",
                      fixed={"theta": 0.0}),
    "4.7": FigureSpec(("W_gcl", "W_c_gcl", "W_th_gcl"), "classical-statistical Gaussian works"),
    "4.8": FigureSpec(("W_q_mixture", "W_q_superposition"),
                      "Gaussian mixture vs coherent superposition", "UO",
                      defaults={"theta": 1.0}),
    "4.9": FigureSpec(("W_q_gaussian", "W_q_superposition", "W_c_gaussian", "W_th_gaussian",
                       "W_th_superposition"),
                      "Gaussian state vs coherent superposition", "UO",
                      defaults={"theta": 1.0}),
}


def figure_config(figure_id: str, cfg: RunConfig, explicit_preset: bool) -> RunConfig:
    if figure_id not in FIGURES:
        raise RejectedParams(f"figure: unknown id {figure_id!r}; choose from {sorted(FIGURES)}")
    fig = FIGURES[figure_id]
    changes = {}
    if fig.preset is not None and not explicit_preset:
        changes["preset"] = fig.preset
    for key, value in fig.defaults.items():
        if getattr(cfg, key) is None:
            changes[key] = value
    for key, value in fig.fixed.items():
        changes[key] = value
    return replace(cfg, **changes)


@dataclass(frozen=True)
class Series:
    omega_t: np.ndarray
    columns: dict
    metadata: dict


def asymptote(name: str, sc: Scenario, cfg: RunConfig):
    """Long-time limit of a column, or ``None`` when the motion is undamped."""
    if sc.undamped:
        return None
    if name == "x_scaled":
        return 0.0
    if name.startswith("K_"):
        return 0.0
    if name in ("W_q_mu", "W_q_mixture", "W_q_superposition", "W_th_superposition"):
        from .ensembles import mu_kinetic_energy
        mu = {"W_q_mixture": MIXTURE_MU, "W_q_mu": cfg.mu}.get(name, 0.0)
        return -float(mu_kinetic_energy(sc, mu, 0.0))
    if name.endswith("_gcl"):
        from .ensembles import LiouvilleGaussian, liouville_scaled
        start = liouville_scaled(LiouvilleGaussian.matching(sc), sc, 0.0)
        key = {"W_gcl": "kinetic", "W_c_gcl": "centroid", "W_th_gcl": "thermal"}[name]
        return -float(start[key])
    from .energetics import asymptotes
    base = name.replace("_gaussian", "")
    return float(asymptotes(sc)[base])


def build_series(sc: Scenario, cfg: RunConfig, columns, kind: str, extra: dict | None = None):
    omega_t = cfg.grid.values()
    tau = np.asarray(sc.tau_from_omega_t(omega_t), dtype=float)
    data = {}
    for name in columns:
        if name not in COLUMNS:
            raise RejectedParams(f"unknown column {name!r}")
        data[name] = np.broadcast_to(np.asarray(COLUMNS[name](sc, tau, cfg), dtype=float),
                                     omega_t.shape).copy()
    meta = {
        "kind": kind,
        "preset": sc.name,
        "parameters": {
            "omega_over_lambda": _json_number(sc.omega_over_lambda),
            "epsilon": sc.epsilon,
            "epsilon_delta": sc.epsilon_delta,
            "theta": sc.theta,
            "E0": sc.dimless.E0,
        },
        "mu": cfg.mu,
        "grid": {"omega_t": str(cfg.grid),
                 "abscissa": "lambda*t" if sc.omega_over_lambda == 0.0 else "omega*t"},
        "columns": ["omega_t", *columns],
        "energy_unit": "K0",
        "position_scale": _position_scale(sc) if "x_scaled" in columns else None,
        "asymptotes": {name: asymptote(name, sc, cfg) for name in columns},
        "seed": cfg.seed,
        "versions": {"ckwork": __version__, "numpy": np.__version__,
                     "python": platform.python_version()},
    }
    if extra:
        meta.update(extra)
    return Series(omega_t, data, meta)


def _position_scale(sc: Scenario) -> str:
    from .classical import position_scale
    return position_scale(sc)


def _json_number(value: float):
    return value if math.isfinite(value) else ("inf" if value > 0 else "-inf")


def simulate_columns(sc: Scenario, cfg: RunConfig) -> tuple:
    engines = cfg.engines or _default_engines(sc, cfg)
    cols = []
    for engine in engines:
        if engine == "liouville" and not sc.is_quantum:
            raise RejectedParams("liouville: needs theta > 0 and omega > 0 for matching widths")
        if engine == "mu_state" and cfg.mu is None:
            raise RejectedParams("mu: required for the mu_state engine")
        for c in ENGINE_COLUMNS[engine]:
            if c not in cols:
                cols.append(c)
    return tuple(cols)


def _default_engines(sc: Scenario, cfg: RunConfig):
    engines = ["classical", "quantum", "proposed", "alicki"]
    if sc.is_quantum:
        engines.append("liouville")
    if cfg.mu is not None:
        engines.append("mu_state")
    return engines


def format_csv(series: Series) -> str:
    names = list(series.columns)
    lines = [",".join(["omega_t", *names])]
    cols = [series.omega_t, *(series.columns[n] for n in names)]
    for i in range(series.omega_t.size):
        lines.append(",".join(_fmt(c[i]) for c in cols))
    return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    value = float(value)
    if value == 0.0:
        value = 0.0  # drop the sign of negative zero
    return format(value, ".17g")


def format_metadata(meta: dict) -> str:
    return json.dumps(meta, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_outputs(path, csv_text: str, meta: dict | None = None) -> list:
    """Write the CSV (and ``<stem>.meta.json``) with LF endings; returns the paths."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(csv_text)
    written = [path]
    if meta is not None:
        meta_path = path.with_suffix(".meta.json")
        with open(meta_path, "w", newline="\n") as fh:
            fh.write(format_metadata(meta))
        written.append(meta_path)
    return written


SWEEP_PARAMS = ("omega_over_lambda", "epsilon", "epsilon_delta", "theta", "mu")


def sweep_series(cfg: RunConfig, param: str, values, quantity: str) -> Series:
    """One column per parameter value for a single quantity."""
    if param not in SWEEP_PARAMS:
        raise RejectedParams(f"sweep: unknown parameter {param!r}; choose from {SWEEP_PARAMS}")
    if quantity not in COLUMNS:
        raise RejectedParams(f"sweep: unknown quantity {quantity!r}")
    omega_t = cfg.grid.values()
    data, asym = {}, {}
    for v in values:
        run = replace(cfg, **{param: float(v)})
        sc = run.scenario()
        tau = np.asarray(sc.tau_from_omega_t(omega_t), dtype=float)
        key = f"{quantity}@{param}={float(v):g}"
        data[key] = np.broadcast_to(np.asarray(COLUMNS[quantity](sc, tau, run), dtype=float),
                                    omega_t.shape).copy()
        asym[key] = asymptote(quantity, sc, run)
    meta = {"kind": "sweep", "parameter": param, "values": [float(v) for v in values],
            "quantity": quantity, "preset": cfg.preset, "grid": {"omega_t": str(cfg.grid)},
            "energy_unit": "K0", "asymptotes": asym, "seed": cfg.seed,
            "columns": ["omega_t", *data],
            "versions": {"ckwork": __version__, "numpy": np.__version__,
                         "python": platform.python_version()}}
    return Series(omega_t, data, meta)


# ---------------------------------------------------------------- oracle suite

@dataclass
class CheckResult:
    name: str
    deviation: float | None
    tolerance: float | None
    passed: bool
    skipped: bool = False
    note: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "deviation": self.deviation, "tolerance": self.tolerance,
                "passed": self.passed, "skipped": self.skipped, "note": self.note}


def _check(name, deviation, tolerance, note=""):
    return CheckResult(name, float(deviation), tolerance, bool(deviation <= tolerance), note=note)


def _skip(name, why):
    return CheckResult(name, None, None, True, skipped=True, note=why)


def _guard(name, fn):
    try:
        return fn()
    except CKError as exc:
        return CheckResult(name, None, None, False, note=f"{type(exc).__name__}: {exc}")


def oracle_suite(cfg: RunConfig, cn_levels: int = 3, n_points: int = 1024,
                 include_monte_carlo: bool = True) -> dict:
    """Run every applicable equivalence check; returns a JSON-ready report."""
    sc = cfg.scenario()
    omega_t = cfg.grid.values()
    tau = np.asarray(sc.tau_from_omega_t(omega_t), dtype=float)
    tau_end = float(tau[-1])
    checks = [
        _guard("rk4_vs_classical_kinetic", lambda: _rk4_check(sc, tau_end)),
        _guard("alicki_quadrature_vs_closed_form", lambda: _alicki_check(sc, tau)),
        _guard("work_energy_identity", lambda: _identity_check(sc, tau)),
    ]
    if sc.is_quantum:
        checks.append(_guard("crank_nicolson_vs_gaussian_moments",
                             lambda: _cn_check(sc, tau_end, cn_levels, n_points)))
        checks.append(_guard("quantum_liouville_correspondence",
                             lambda: _correspondence(sc, tau)))
        checks.append(_guard("uncertainty_floor", lambda: _uncertainty(sc, tau)))
        if include_monte_carlo:
            checks.append(_guard("monte_carlo_vs_liouville",
                                 lambda: _mc_check(sc, cfg.seed, cfg.samples)))
        else:
            checks.append(_skip("monte_carlo_vs_liouville", "disabled"))
    else:
        why = "no quantum state (theta = 0 or omega = 0)"
        for name in ("crank_nicolson_vs_gaussian_moments", "quantum_liouville_correspondence",
                     "uncertainty_floor", "monte_carlo_vs_liouville"):
            checks.append(_skip(name, why))
    return {
        "preset": sc.name,
        "parameters": {"omega_over_lambda": _json_number(sc.omega_over_lambda),
                       "epsilon": sc.epsilon, "epsilon_delta": sc.epsilon_delta,
                       "theta": sc.theta},
        "grid": str(cfg.grid),
        "seed": cfg.seed,
        "checks": [c.as_dict() for c in checks],
        "passed": all(c.passed for c in checks),
    }


def _rk4_check(sc, tau_end):
    from .classical import classical_kinetic
    from .oracles.rk4 import rk4_kinetic
    tau, k = rk4_kinetic(sc, tau_end, 1e-3 if not sc.undamped else 1e-3, record_every=10)
    exact = np.asarray(classical_kinetic(sc, tau))
    dev = np.max(np.abs(k - exact) / np.maximum(np.abs(exact), np.exp(-2.0 * tau) if not
                                                sc.undamped else 1.0))
    return _check("rk4_vs_classical_kinetic", dev, 1e-8,
                  "relative to max(K, exp(-2 tau)) so slow decay zeros do not dominate")


def _alicki_check(sc, tau):
    from .energetics import alicki_work_heat
    if sc.undamped:
        return _skip("alicki_quadrature_vs_closed_form", "no friction")
    probe = tau[:: max(1, tau.size // 50)]
    closed = np.asarray(alicki_work_heat(sc, probe)[0])
    quad = np.asarray(alicki_work_heat(sc, probe, method="quadrature")[0])
    return _check("alicki_quadrature_vs_closed_form", np.max(np.abs(closed - quad)), 1e-10)


def _identity_check(sc, tau):
    from .energetics import kinetic_energy, quantum_work
    wq, wc, wth = (np.asarray(v) for v in quantum_work(sc, tau))
    dk = np.asarray(kinetic_energy(sc, tau)) - kinetic_energy(sc, 0.0)
    return _check("work_energy_identity",
                  max(np.max(np.abs(wq - wc - wth)), np.max(np.abs(wq - dk))), 1e-12)


def cn_gauge(sc: Scenario) -> str:
    """Riccati gauge whenever the classical motion never crosses zero."""
    if sc.undamped:
        return "none"
    return "riccati" if sc.omega_over_lambda <= 1.0 else "none"


def _cn_check(sc, tau_end, levels, n_points):
    from .oracles.crank_nicolson import MOMENT_FIELDS, converged_moments
    from .quantum import evolved_gaussian
    samples = np.linspace(0.0, tau_end, 21)
    gauge = cn_gauge(sc)
    dt = None if gauge == "riccati" or sc.undamped else 1e-4 * sc.time_unit
    conv = converged_moments(sc, samples, gauge=gauge, n_points=n_points, dt=dt, levels=levels)
    if conv.self_convergence > 1e-6:
        return CheckResult("crank_nicolson_vs_gaussian_moments", conv.self_convergence, 1e-6,
                           False, note="oracle not self-converged")
    g = evolved_gaussian(sc, samples)
    dev = max(float(np.max(np.abs(conv.moments[f] - np.asarray(getattr(g, f))) / conv.scale(f)))
              for f in MOMENT_FIELDS)
    return _check("crank_nicolson_vs_gaussian_moments", dev, 1e-4,
                  f"gauge={gauge}, self-convergence={conv.self_convergence:.2e}")


def _correspondence(sc, tau):
    from .ensembles import correspondence_check
    rep = correspondence_check(sc, tau, raise_on_failure=False)
    return _check("quantum_liouville_correspondence", rep.max_deviation, 1e-10)


def _uncertainty(sc, tau):
    from .quantum import evolved_gaussian
    g = evolved_gaussian(sc, tau)
    floor = 0.5 * sc.physical.hbar_eff
    prod = np.sqrt(np.asarray(g.var_x) * np.asarray(g.var_p))
    return _check("uncertainty_floor", max(0.0, float(np.max(1.0 - prod / floor))), 1e-10)


def _mc_check(sc, seed, samples):
    from .ensembles import LiouvilleGaussian, liouville_moments
    from .oracles.monte_carlo import monte_carlo_liouville
    st = sc.state
    probe = [0.5, 1.0, 2.0]
    res = monte_carlo_liouville(sc, st.x0, st.p0, st.delta_x0, st.delta_p0, max(probe),
                                dt=1e-3, n=samples, seed=seed, record_every=500)
    idx = [int(np.argmin(np.abs(res.tau - p))) for p in probe]
    mean_v, _, v2, _ = liouville_moments(LiouvilleGaussian.matching(sc), sc, res.tau[idx])
    z = max(float(np.max(np.abs(res.mean_v[idx] - mean_v) / res.se_mean_v[idx])),
            float(np.max(np.abs(res.mean_v2[idx] - v2) / res.se_mean_v2[idx])))
    return _check("monte_carlo_vs_liouville", z, 5.0, "deviation in standard errors")
