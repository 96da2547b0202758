"""Exception types raised across the package."""


class PruferDiracError(Exception):
    """Base class for all package errors."""


class ParameterError(PruferDiracError, ValueError):
    """A physical or numerical parameter violates its invariant."""


class ExistenceError(ParameterError):
    """Singular points of the phase equation do not exist (|Z alpha / kappa| >= 1)."""


class DomainError(PruferDiracError, ValueError):
    """An argument lies outside the domain of a function."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically too close to) a pole."""


class PrecisionLossError(PruferDiracError, ArithmeticError):
    """The internal error estimate exceeds the acceptable bound."""


class FitError(PruferDiracError, ValueError):
    """A least-squares fit is degenerate or its residual is too large."""


class ToleranceError(PruferDiracError):
    """A computed result fails its stated accuracy check."""


class IntegrationError(PruferDiracError, RuntimeError):
    """The adaptive integrator stopped before reaching the end of the span."""

    def __init__(self, message, location=None, status=None):
        super().__init__(message)
        self.location = location
        self.status = status
