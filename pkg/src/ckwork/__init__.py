"""Energetics of the Caldirola-Kanai damped oscillator.

Classical, quantum and classical-statistical kinetic energy, mechanical work
with its centroid/thermal split, and the Alicki work/heat split, all as
closed forms cross-checked by independent numerical oracles.
"""

from .errors import (ComplexLeak, CorrespondenceViolation, DomainError, GridTooSmall,
                     QuadratureFailure, RejectedParams, StepRejected)
from .scenario import PRESETS, Scenario, build_scenario, preset, theta_prime

__version__ = "0.1.0"

__all__ = [
    "ComplexLeak", "CorrespondenceViolation", "DomainError", "GridTooSmall",
    "QuadratureFailure", "RejectedParams", "StepRejected",
    "PRESETS", "Scenario", "build_scenario", "preset", "theta_prime", "__version__",
]
