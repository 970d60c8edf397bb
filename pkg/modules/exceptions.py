"""Custom exceptions for the biphoton modules.

This module contains the exception hierarchy shared by every package in
``modules`` and by the command-line front end.
"""


class BiphotonError(Exception):
    """Base exception for biphoton operations."""
    pass


# Parameter Exceptions
class DomainError(BiphotonError, ValueError):
    """Raised when an input lies outside its physical domain."""

    def __init__(self, field: str, value, reason: str = "must be strictly positive") -> None:
        self.field = field
        self.value = value
        super().__init__(f"{field} {reason} (got {value!r})")


class ConfigParseError(BiphotonError):
    """Raised when a configuration file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


# Propagation Exceptions
class SingularConfigurationError(BiphotonError):
    """Raised when an optical configuration hits a pole or a zero denominator."""
    pass


# Entanglement Exceptions
class NumericalInconsistencyError(BiphotonError):
    """Raised when two evaluations of the same quantity disagree."""
    pass


# Oracle Exceptions
class QuadratureError(BiphotonError):
    """Raised when a direct quadrature fails to converge."""
    pass


# Fit Exceptions
class FitError(BiphotonError):
    """Base exception for fit operations."""
    pass


class FitPreconditionError(FitError):
    """Raised when the data set cannot determine the fit parameters."""
    pass


class DataFileError(FitError):
    """Raised when a data file is missing or malformed."""
    pass


# Figure Exceptions
class FigureError(BiphotonError):
    """Raised when a figure request cannot be served."""
    pass
