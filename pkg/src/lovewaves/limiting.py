"""Limiting speed of the subsonic range.

For each in-plane angle the rotated stiffness matrix

    Ztheta = sin^2 X + sin cos (Y + Y^T) + cos^2 Z

is positive definite, and its eigenvalues define three branch speeds
``v = sqrt(lambda / (k^2 cos^2 theta))``.  The limiting speed is the
infimum of the branch speeds over all angles: below it the degree-six
characteristic polynomial of the depth ansatz has no real roots and
exponentially decaying solutions exist.

The eigenvalue formulation is the primary method; the direct scan of the
characteristic polynomial (:func:`has_real_characteristic_root`) is kept as
an independent cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateGridError,
    LinearizationSingularError,
    NonPositiveEigenvalueError,
)
from .operators import OperatorTriple

#: Angular clip at the open interval ends, where cos^(-2) diverges.
_THETA_EPS = 1e-6
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LimitingSpeedResult:
    """Limiting speed with the minimizing angle and refinement diagnostics."""

    v_hat: float
    argmin_theta: float
    branch_speeds_at_argmin: np.ndarray
    grid_resolution: int
    refine_iterations: int
    bracket_width: float


def _ztheta_batch(t: OperatorTriple, thetas: np.ndarray) -> np.ndarray:
    s, c = np.sin(thetas), np.cos(thetas)
    S = t.scaleY + t.scaleY.T
    return (
        np.multiply.outer(s * s, t.scaleX)
        + np.multiply.outer(s * c, S)
        + np.multiply.outer(c * c, t.scaleZ)
    )


def branch_speeds(t: OperatorTriple, theta: float) -> np.ndarray:
    """Three branch speeds at one angle, ascending.

    Raises NonPositiveEigenvalueError when the rotated stiffness fails to be
    positive definite, which signals an admissibility violation upstream.
    """
    lam = np.linalg.eigvalsh(_ztheta_batch(t, np.array([theta]))[0])
    if lam[0] <= 0.0:
        raise NonPositiveEigenvalueError(
            f"rotated stiffness has eigenvalue {lam[0]} <= 0 at theta={theta}"
        )
    return np.sqrt(lam / (t.k**2 * np.cos(theta) ** 2))


def limiting_speed(
    t: OperatorTriple,
    grid: int = 2048,
    refine_tol: float = 1e-10,
) -> LimitingSpeedResult:
    """Minimize the smallest branch speed over the open angular interval.

    A uniform grid locates the minimizer; golden-section refinement around
    the best grid point polishes the speed to ``refine_tol``.
    """
    if grid < 3:
        raise DegenerateGridError(f"need at least 3 theta samples, got {grid}")
    thetas = np.linspace(-np.pi / 2 + _THETA_EPS, np.pi / 2 - _THETA_EPS, grid)
    lam = np.linalg.eigvalsh(_ztheta_batch(t, thetas))
    if lam[:, 0].min() <= 0.0:
        bad = thetas[int(np.argmin(lam[:, 0]))]
        raise NonPositiveEigenvalueError(
            f"rotated stiffness not positive definite at theta={bad}"
        )
    speeds = np.sqrt(lam[:, 0] / (t.k**2 * np.cos(thetas) ** 2))
    i = int(np.argmin(speeds))

    def f(theta: float) -> float:
        return branch_speeds(t, theta)[0]

    a = thetas[max(i - 1, 0)]
    b = thetas[min(i + 1, grid - 1)]
    theta_star, v_star, iters, width = _golden_section(f, a, b, refine_tol)
    if speeds[i] < v_star:
        theta_star, v_star = thetas[i], speeds[i]
    return LimitingSpeedResult(
        v_hat=v_star,
        argmin_theta=theta_star,
        branch_speeds_at_argmin=branch_speeds(t, theta_star),
        grid_resolution=grid,
        refine_iterations=iters,
        bracket_width=width,
    )


def _golden_section(f, a: float, b: float, ftol: float, max_iter: int = 200):
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    iters = 0
    for iters in range(1, max_iter + 1):
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        if abs(f1 - f2) <= ftol * (1.0 + min(f1, f2)) and (b - a) < 1e-8:
            break
    if f1 < f2:
        return x1, f1, iters, b - a
    return x2, f2, iters, b - a


def has_real_characteristic_root(
    t: OperatorTriple,
    v: float,
    real_tol: float = 1e-8,
) -> bool:
    """Whether the degree-2n characteristic polynomial has a real root.

    The polynomial det[r^2 X + r (Y+Y^T) + Z - k^2 v^2 I] is linearized as a
    companion eigenproblem; a root counts as real when
    ``|Im r| <= real_tol * (1 + |Re r|)``.
    """
    X, Y, Z = t.scaleX, t.scaleY, t.scaleZ
    n = t.n
    S = Y + Y.T
    Ztilde = Z - t.k**2 * v**2 * np.eye(n)
    cond = np.linalg.cond(X)
    if not np.isfinite(cond) or cond > 1e14:
        raise LinearizationSingularError(
            f"leading matrix is numerically singular (condition {cond:.3e})"
        )
    top = np.hstack([np.zeros((n, n)), np.eye(n)])
    bottom = np.hstack([
        -np.linalg.solve(X, Ztilde),
        -np.linalg.solve(X, S),
    ])
    roots = np.linalg.eigvals(np.vstack([top, bottom]))
    return bool(np.any(np.abs(roots.imag) <= real_tol * (1.0 + np.abs(roots.real))))
