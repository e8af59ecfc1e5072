"""Exception types raised across the solver pipeline."""

from __future__ import annotations


class LoveWaveError(Exception):
    """Base class for all package-specific errors."""


class MaterialFileError(LoveWaveError):
    """Base class for material-file parsing failures."""


class MissingKeyError(MaterialFileError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"missing required key: {name}")


class NonFiniteValueError(MaterialFileError):
    def __init__(self, name: str, raw: str):
        self.name = name
        self.raw = raw
        super().__init__(f"value for {name!r} is not a finite number: {raw!r}")


class DuplicateKeyError(MaterialFileError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate key: {name}")


class UnknownKeyError(MaterialFileError):
    def __init__(self, names: list[str]):
        self.names = list(names)
        super().__init__(f"unknown keys: {', '.join(self.names)}")


class MaterialFileSyntaxError(MaterialFileError):
    def __init__(self, lineno: int, line: str):
        self.lineno = lineno
        super().__init__(f"line {lineno} is not a 'key = value' assignment: {line!r}")


class InvalidMaterialError(LoveWaveError):
    """Material fails the wave-admissibility inequalities."""


class NonUnitDirectionError(LoveWaveError):
    """Propagation direction is not a unit vector in the x1-x2 plane."""


class NonPositiveEigenvalueError(LoveWaveError):
    """A direction-rotated stiffness matrix has a non-positive eigenvalue.

    Signals a wave-admissibility violation upstream.
    """


class DegenerateGridError(LoveWaveError):
    """Too few angular samples to bracket the limiting-speed minimum."""


class LinearizationSingularError(LoveWaveError):
    """Leading matrix of the characteristic polynomial is numerically singular."""


class SpeedOutOfRangeError(LoveWaveError):
    """Requested speed is outside the subsonic range [0, v_hat)."""


class QuadratureNotConvergedError(LoveWaveError):
    """Angular quadrature failed to meet tolerance after maximal refinement."""

    def __init__(self, message: str, error_estimate: float | None = None):
        self.error_estimate = error_estimate
        super().__init__(message)


class NotStabilizingError(LoveWaveError):
    """Decay matrix has an eigenvalue with non-positive real part."""


class NoSignChangeError(LoveWaveError):
    """Secular function does not change sign on the searchable range."""

    def __init__(self, message: str, closest_sample: tuple[float, float] | None = None):
        self.closest_sample = closest_sample
        super().__init__(message)


class NotSingularError(LoveWaveError):
    """Impedance matrix is not singular at the requested speed."""


class DomainViolationError(LoveWaveError):
    """Speed violates the admissibility bounds of the reduced rotational block."""
