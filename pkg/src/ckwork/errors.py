"""Exception hierarchy shared by the engines, oracles and the command line."""


class CKError(Exception):
    """Base class for every error raised by this package."""


class RejectedParams(CKError, ValueError):
    """Parameters outside the admissible domain of the model."""


class ComplexLeak(CKError, ArithmeticError):
    """A contraction that must be real left an imaginary residue."""


class DomainError(CKError, ValueError):
    """Evaluation requested outside the range where a formula is regular."""


class QuadratureFailure(CKError, RuntimeError):
    """Adaptive integration could not reach the requested tolerance."""


class StepRejected(CKError, FloatingPointError):
    """A time integrator produced a non-finite state."""


class GridTooSmall(CKError, RuntimeError):
    """The wave packet leaked into the padding of the spatial grid."""


class CorrespondenceViolation(CKError, AssertionError):
    """Quantum and classical-statistical moments disagree beyond tolerance."""

    def __init__(self, message, deviations=None):
        super().__init__(message)
        self.deviations = dict(deviations or {})
