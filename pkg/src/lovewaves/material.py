"""Constitutive parameters of an isotropic Cosserat half-space.

Inputs are treated as plain numbers in a fixed unit convention (moduli in
MPa, curvature moduli as stress*length^2 products, rotational inertia as
length^2, density as mass/length^3); no unit conversion is performed, so
wave speeds come out in whatever speed scale the inputs fix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DuplicateKeyError,
    MaterialFileSyntaxError,
    MissingKeyError,
    NonFiniteValueError,
    UnknownKeyError,
)

#: Keys that must be present in a material file.  ``lambda_e`` is accepted
#: but optional: it does not enter the transverse-wave pipeline and defaults
#: to zero.
REQUIRED_KEYS = ("mu_e", "mu_c", "a1", "a2", "a3", "J", "rho")
OPTIONAL_KEYS = ("lambda_e",)
ALL_KEYS = REQUIRED_KEYS + OPTIONAL_KEYS


@dataclass(frozen=True)
class MaterialParams:
    """Constitutive and inertial constants of the half-space.

    Attributes
    ----------
    mu_e : float
        Shear-type modulus (stress units).
    mu_c : float
        Couple modulus coupling displacement and micro-rotation (stress units).
    lambda_e : float
        Lame-type modulus; carried for completeness, unused by the
        transverse-wave pipeline.
    a1, a2, a3 : float
        Curvature moduli, given directly as stress*length^2 products.
    J : float
        Rotational inertia density scale (length^2 units); multiplies rho in
        the micro-rotation inertia.
    rho : float
        Mass density.
    """

    mu_e: float
    mu_c: float
    lambda_e: float
    a1: float
    a2: float
    a3: float
    J: float
    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if not self.J > 0:
            raise ValueError(f"J must be positive, got {self.J}")


@dataclass(frozen=True)
class WaveContext:
    """A material together with the wave number of the sought surface wave."""

    k: float
    params: MaterialParams

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"wave number k must be positive, got {self.k}")


@dataclass(frozen=True)
class ConditionCheck:
    """One strict inequality with its evaluated margin."""

    name: str
    margin: float
    passed: bool


@dataclass(frozen=True)
class ConditionReport:
    """Pass/fail report for a set of strict inequalities.

    A check passes when its margin exceeds ``tolerance`` (default 0, i.e.
    strict positivity); the report never raises, failures are data.
    """

    checks: tuple[ConditionCheck, ...]
    tolerance: float = 0.0

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_names(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            out.append(f"{c.name}: margin={c.margin!r} [{status}]")
        return out


def parse_material(text: str) -> MaterialParams:
    """Parse a flat ``key = value`` document into MaterialParams.

    ``#`` starts a comment; blank lines are ignored; decimal and scientific
    notation are accepted.  Unknown keys, duplicates, missing required keys
    and non-finite values are rejected with a specific error.
    """
    values: dict[str, float] = {}
    unknown: list[str] = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if not sep or not key or not raw_value:
            raise MaterialFileSyntaxError(lineno, raw_line)
        if key not in ALL_KEYS:
            unknown.append(key)
            continue
        if key in values:
            raise DuplicateKeyError(key)
        try:
            value = float(raw_value)
        except ValueError:
            raise NonFiniteValueError(key, raw_value) from None
        if not math.isfinite(value):
            raise NonFiniteValueError(key, raw_value)
        values[key] = value
    if unknown:
        raise UnknownKeyError(unknown)
    for key in REQUIRED_KEYS:
        if key not in values:
            raise MissingKeyError(key)
    values.setdefault("lambda_e", 0.0)
    return MaterialParams(**values)


def serialize_material(p: MaterialParams) -> str:
    """Render MaterialParams as a parseable ``key = value`` document."""
    lines = [f"{key} = {getattr(p, key)!r}" for key in ALL_KEYS]
    return "\n".join(lines) + "\n"


def validate_wave_conditions(p: MaterialParams, tol: float = 0.0) -> ConditionReport:
    """Check the four inequalities required for real plane transverse waves.

    These gate the whole pipeline: the reduced operator matrices are
    positive definite exactly when all four hold strictly.
    """
    checks = (
        _check("mu_e > 0", p.mu_e, tol),
        _check("mu_c > 0", p.mu_c, tol),
        _check("a1 + a2 > 0", p.a1 + p.a2, tol),
        _check("2*a1 + a3 > 0", 2.0 * p.a1 + p.a3, tol),
    )
    return ConditionReport(checks, tol)


def check_positive_definiteness(p: MaterialParams, tol: float = 0.0) -> ConditionReport:
    """Check strict positive definiteness of the stored elastic energy.

    Informational only: the pipeline requires just the weaker plane-wave
    conditions of :func:`validate_wave_conditions`.  The curvature-weight
    conditions are evaluated on the a-products, which share a common
    positive stress*length^2 factor with the dimensionless weights.
    """
    checks = (
        _check("mu_e > 0", p.mu_e, tol),
        _check("mu_c > 0", p.mu_c, tol),
        _check("2*mu_e + 3*lambda_e > 0", 2.0 * p.mu_e + 3.0 * p.lambda_e, tol),
        _check("a1 > 0", p.a1, tol),
        _check("a2 > 0", p.a2, tol),
        _check("2*a1 + 3*a3 > 0", 2.0 * p.a1 + 3.0 * p.a3, tol),
    )
    return ConditionReport(checks, tol)


def _check(name: str, margin: float, tol: float) -> ConditionCheck:
    return ConditionCheck(name, margin, margin > tol)
