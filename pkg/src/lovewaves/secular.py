"""Secular equation det M_v = 0 and its classical decoupling limit.

The determinant of the Hermitian impedance matrix is real, strictly
decreasing from a positive value at rest, and has exactly one zero on the
subsonic range; that zero is the surface-wave speed.  The solver brackets
the sign change on a coarse grid densified geometrically toward the
limiting speed (the root can sit arbitrarily close to it) and polishes the
bracket with Brent's method.

The classical block functions evaluate the closed forms of the decoupled
2x2 micro-rotation problem that remains when the displacement/rotation
coupling modulus vanishes; they are parameterized by dimensionless
curvature weights ``alpha = (alpha1, alpha2, alpha3)`` and a micro-inertia
speed scale ``c`` with ``alpha_i * c^2 = a_i / (rho*J)``, at unit wave
number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DomainViolationError,
    NoSignChangeError,
    QuadratureNotConvergedError,
    SpeedOutOfRangeError,
)
from .operators import OperatorTriple, custom_triple
from .riccati import QuadratureConfig, _rotation_integrals, impedance_matrix


@dataclass(frozen=True, eq=False)
class SecularSolveResult:
    """Root of the secular equation with bracketing diagnostics."""

    v0: float
    det_at_v0: float
    bracket: tuple[float, float]
    iterations: int
    det_samples: np.ndarray  # rows (v, det M_v), in ascending v
    truncated_at: float | None = None


def secular_function(
    t: OperatorTriple,
    v: float,
    quad: QuadratureConfig | None = None,
    v_hat: float | None = None,
) -> float:
    """Real determinant of the impedance matrix at one speed."""
    res = impedance_matrix(t, v, quad, v_hat)
    det = np.linalg.det(res.M)
    if abs(det.imag) > 1e-9 * (1.0 + abs(det.real)):
        raise QuadratureNotConvergedError(
            f"determinant has spurious imaginary part {det.imag:.3e} at v={v}"
        )
    return float(det.real)


def solve_secular(
    t: OperatorTriple,
    v_hat: float,
    tol_v: float = 1e-12,
    tol_det: float | None = None,
    quad: QuadratureConfig | None = None,
) -> SecularSolveResult:
    """Find the unique subsonic zero of the secular function.

    100 coarse samples cover [0, 0.9 v_hat]; geometric densification covers
    the remaining sliver up to (1 - 1e-9) v_hat.  The first sign change is
    refined by Brent's method to ``tol_v`` relative.  When no sign change
    is found the closest-to-zero sample is reported in the error rather
    than silently clamped.
    """
    delta = 1e-9
    coarse = np.linspace(0.0, 0.9 * v_hat, 100)
    dense = v_hat * (1.0 - np.geomspace(0.1, delta, 65)[1:])
    grid = np.concatenate([coarse, dense])

    def f(v: float) -> float:
        return secular_function(t, v, quad, v_hat)

    samples: list[tuple[float, float]] = []
    bracket = None
    truncated_at = None
    for v in grid:
        try:
            fv = f(v)
        except (QuadratureNotConvergedError, SpeedOutOfRangeError):
            truncated_at = float(v)
            break
        samples.append((float(v), fv))
        if len(samples) >= 2:
            v_prev, f_prev = samples[-2]
            if f_prev == 0.0:
                bracket = (v_prev, v_prev)
                break
            if f_prev * fv < 0.0:
                bracket = (v_prev, float(v))
                break
    det_samples = np.array(samples)
    if bracket is None:
        closest = min(samples, key=lambda s: abs(s[1])) if samples else None
        raise NoSignChangeError(
            "secular function does not change sign on the searchable range"
            + (f" (truncated at v={truncated_at})" if truncated_at else ""),
            closest_sample=closest,
        )
    if bracket[0] == bracket[1]:
        v0, iterations = bracket[0], 0
    else:
        v0, info = brentq(
            f, bracket[0], bracket[1],
            xtol=tol_v * max(v_hat, 1.0),
            rtol=max(tol_v, 4.0 * np.finfo(float).eps),
            full_output=True,
        )
        iterations = info.iterations
    det_at_v0 = f(v0)
    if tol_det is not None and abs(det_at_v0) > tol_det:
        raise NoSignChangeError(
            f"root refinement left |det|={abs(det_at_v0):.3e} above tol_det={tol_det:.3e}",
            closest_sample=(v0, det_at_v0),
        )
    return SecularSolveResult(
        v0=float(v0),
        det_at_v0=det_at_v0,
        bracket=bracket,
        iterations=iterations,
        det_samples=det_samples,
        truncated_at=truncated_at,
    )


# ----------------------------------------------------------------------
# classical decoupling limit (2x2 micro-rotation block, unit wave number)
# ----------------------------------------------------------------------

def _classical_sums(alpha: tuple[float, float, float]) -> tuple[float, float]:
    a1, a2, a3 = alpha
    return a1 + a2, 2.0 * a1 + a3


def _require_classical_domain(alpha, c: float, v: float) -> tuple[float, float]:
    p, q = _classical_sums(alpha)
    if p <= 0.0 or q <= 0.0 or c <= 0.0:
        raise DomainViolationError(
            f"need alpha1+alpha2 > 0, 2*alpha1+alpha3 > 0 and c > 0, "
            f"got p={p}, q={q}, c={c}"
        )
    if not (q * c**2 - v**2 > 0.0 and p * c**2 - v**2 > 0.0):
        raise DomainViolationError(
            f"speed v={v} violates the admissibility bounds "
            f"(2*alpha1+alpha3)*c^2 - v^2 > 0 and (alpha1+alpha2)*c^2 - v^2 > 0"
        )
    return p, q


def classical_micro_block_triple(
    alpha: tuple[float, float, float], c: float
) -> OperatorTriple:
    """Unit-wave-number 2x2 triple of the decoupled micro-rotation problem."""
    a1, a2, a3 = alpha
    c2 = c * c
    Xm = np.diag([c2 * (a1 + a2), c2 * (2.0 * a1 + a3)])
    Ym = np.array([[0.0, c2 * a3], [c2 * (a1 - a2), 0.0]])
    Zm = np.diag([c2 * (2.0 * a1 + a3), c2 * (a1 + a2)])
    return custom_triple(Xm, Ym, Zm, 1.0)


def classical_block_integral(
    alpha: tuple[float, float, float],
    c: float,
    v: float,
    quad: QuadratureConfig | None = None,
) -> np.ndarray:
    """Angular integral of the inverse rotated micro block, by quadrature.

    The result is diagonal up to quadrature error: the off-diagonal of the
    inverse is odd about the midpoint of the angular range.
    """
    _require_classical_domain(alpha, c, v)
    t = classical_micro_block_triple(alpha, c)
    I1, _, _, _ = _rotation_integrals(t, v, quad or QuadratureConfig())
    return I1


def classical_block_integral_closed_form(
    alpha: tuple[float, float, float],
    c: float,
    v: float,
) -> np.ndarray:
    """Closed form of the angular integral of the inverse micro block.

    The printed entries are 0/0 at v = 0; for very small speeds a series
    expansion in (v/c)^2 replaces the cancellation-prone direct evaluation.
    """
    p, q = _require_classical_domain(alpha, c, v)
    if v**2 <= 1e-6 * c**2 * min(p, q):
        lead = (1.0 / q + 1.0 / p) / (2.0 * c**2)
        d11 = math.pi * (lead + v**2 * (3.0 / q**2 + 1.0 / p**2) / (8.0 * c**4))
        d22 = math.pi * (lead + v**2 * (3.0 / p**2 + 1.0 / q**2) / (8.0 * c**4))
        return np.diag([d11, d22])
    d11 = math.pi * (
        c**2 * math.sqrt(q / (q * c**2 - v**2)) - math.sqrt(c**2 - v**2 / p)
    ) / (c * v**2)
    d22 = math.pi * (
        c**2 * math.sqrt(p / (p * c**2 - v**2)) - math.sqrt(c**2 - v**2 / q)
    ) / (c * v**2)
    return np.diag([d11, d22])


def classical_secular_function(
    alpha: tuple[float, float, float],
    c: float,
    v: float,
) -> float:
    """Closed-form secular function of the decoupled micro-rotation block.

    Equals the determinant of the 2x2 micro impedance matrix at unit wave
    number.  The expression is singular (0/0) at v = 0 and loses accuracy
    for speeds asymptotically small next to ``c``; evaluate at v > 0.
    """
    if v <= 0.0:
        raise DomainViolationError(
            f"the closed form requires v > 0 (0/0 at v = 0), got v={v}"
        )
    p, q = _require_classical_domain(alpha, c, v)
    a1 = alpha[0]
    sp = math.sqrt(p / (p * c**2 - v**2))
    sq = math.sqrt(q / (q * c**2 - v**2))
    rp = math.sqrt(c**2 - v**2 / p)
    rq = math.sqrt(c**2 - v**2 / q)
    pref = 1.0 / ((c**2 * sp - rq) * (rp - c**2 * sq))
    t1 = c**2 * v**4 * (c**2 * sp * sq - 1.0)
    t2 = v**2 * (
        sp * (math.sqrt((p * c**2 - v**2) * (q * c**2 - v**2) / (p * q)) - 2.0 * c**2)
        + rq
    )
    t3 = -2.0 * a1 * (c**2 * sp - rq) * (
        math.sqrt((p * c**2 - v**2) * (c**2 - v**2 / q) / p) - c**2
    )
    return pref * (t1 + 2.0 * a1 * c**4 * (t2 + t3) * sq)
