"""Surface impedance matrix via the rotation-integral representation.

For subsonic speeds the unique stabilizing Hermitian solution of the
algebraic Riccati equation

    (M - iY) X^-1 (M + iY^T) - Z + k^2 v^2 I = 0

is computed directly from two real matrix integrals over the rotation
angle,

    M = (int_0^pi Xtheta^-1 dtheta)^-1 (pi I - i int_0^pi Xtheta^-1 Ytheta^T dtheta),

with no eigenvector sorting of any companion matrix.  The integrand is
smooth strictly below the limiting speed (Xtheta stays positive definite
for all angles), so composite Gauss-Legendre panels with dyadic refinement
converge rapidly; the refinement stops when doubling the panel count no
longer moves the integrals.

The decay matrix ``E = X^-1 (M + i Y^T)`` propagates the surface amplitude
into the depth as ``y(x2) = expm(-k x2 E) y(0)``; its spectrum has strictly
positive real part for subsonic speeds, which is the exponential decay of
the mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import (
    NotStabilizingError,
    QuadratureNotConvergedError,
    SpeedOutOfRangeError,
)
from .operators import OperatorTriple


@dataclass(frozen=True)
class QuadratureConfig:
    """Composite Gauss-Legendre settings for the angular integrals."""

    nodes_per_panel: int = 64
    initial_panels: int = 4
    max_refinements: int = 8
    tol: float = 1e-12
    condition_limit: float = 1e12


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True, eq=False)
class ImpedanceResult:
    """Hermitian surface impedance matrix at one subsonic speed.

    ``herm_deviation`` records how far the raw quadrature result was from
    Hermitian before symmetrization; ``riccati_residual`` is the Frobenius
    norm of the defining equation evaluated at the returned matrix.
    """

    M: np.ndarray
    v: float
    k: float
    quad_error_estimate: float
    riccati_residual: float
    herm_deviation: float
    panels_used: int
    nodes_used: int


@dataclass(frozen=True, eq=False)
class DecayMatrix:
    """Depth-decay generator with its spectrum."""

    E: np.ndarray
    eigenvalues: np.ndarray
    min_real_part: float


def _rotation_integrals(
    t: OperatorTriple,
    v: float,
    cfg: QuadratureConfig,
) -> tuple[np.ndarray, np.ndarray, float, int]:
    """Integrals of Xtheta^-1 and Xtheta^-1 Ytheta^T over [0, pi].

    Returns (I1, I2, error_estimate, panels).  Raises SpeedOutOfRangeError
    when Xtheta loses positive definiteness at a node (the speed is at or
    above the limiting speed), and QuadratureNotConvergedError when panel
    doubling stalls above tolerance or the integrand becomes too ill
    conditioned.
    """
    X, Y, Z = t.scaleX, t.scaleY, t.scaleZ
    n = t.n
    S = Y + Y.T
    D = X - (Z - t.k**2 * v**2 * np.eye(n))  # X - Ztilde
    nodes, weights = leggauss(cfg.nodes_per_panel)

    def evaluate(panels: int) -> tuple[np.ndarray, np.ndarray, float]:
        edges = np.linspace(0.0, np.pi, panels + 1)
        mids = 0.5 * (edges[:-1] + edges[1:])
        halfs = 0.5 * np.diff(edges)
        theta = (mids[:, None] + halfs[:, None] * nodes[None, :]).ravel()
        w = (halfs[:, None] * weights[None, :]).ravel()
        c, s = np.cos(theta), np.sin(theta)
        cc, sc, ss = c * c, s * c, s * s
        Xth = (
            np.multiply.outer(cc, X)
            - np.multiply.outer(sc, S)
            + np.multiply.outer(ss, Z - t.k**2 * v**2 * np.eye(n))
        )
        try:
            np.linalg.cholesky(Xth)
        except np.linalg.LinAlgError:
            raise SpeedOutOfRangeError(
                f"rotated stiffness not positive definite at v={v}: "
                "speed is at or above the limiting speed"
            ) from None
        cond = float(np.linalg.cond(Xth).max())
        Yth = (
            np.multiply.outer(cc, Y)
            + np.multiply.outer(sc, D)
            - np.multiply.outer(ss, Y.T)
        )
        Xinv = np.linalg.inv(Xth)
        I1 = np.einsum("n,nij->ij", w, Xinv)
        I2 = np.einsum("n,nij->ij", w, Xinv @ np.transpose(Yth, (0, 2, 1)))
        return I1, I2, cond

    panels = cfg.initial_panels
    I1, I2, cond = evaluate(panels)
    err = np.inf
    for _ in range(cfg.max_refinements):
        panels2 = 2 * panels
        J1, J2, cond = evaluate(panels2)
        scale = 1.0 + max(np.abs(J1).max(), np.abs(J2).max())
        err = max(np.abs(J1 - I1).max(), np.abs(J2 - I2).max()) / scale
        I1, I2, panels = J1, J2, panels2
        if err <= cfg.tol:
            break
    if cond > cfg.condition_limit:
        raise QuadratureNotConvergedError(
            f"integrand condition {cond:.3e} exceeds {cfg.condition_limit:.1e} "
            f"at v={v} (speed too close to the limiting speed)",
            error_estimate=err,
        )
    if err > cfg.tol:
        raise QuadratureNotConvergedError(
            f"quadrature error estimate {err:.3e} above tolerance {cfg.tol:.1e} "
            f"after {panels} panels at v={v}",
            error_estimate=err,
        )
    return I1, I2, err, panels


def impedance_matrix(
    t: OperatorTriple,
    v: float,
    quad: QuadratureConfig | None = None,
    v_hat: float | None = None,
) -> ImpedanceResult:
    """Surface impedance matrix at a subsonic speed.

    When ``v_hat`` is supplied the subsonic precondition is checked up
    front; otherwise a violation surfaces as SpeedOutOfRangeError from the
    positive-definiteness monitor inside the quadrature.
    """
    if v < 0:
        raise SpeedOutOfRangeError(f"speed must be non-negative, got {v}")
    if v_hat is not None and v >= v_hat:
        raise SpeedOutOfRangeError(f"speed {v} is not below the limiting speed {v_hat}")
    cfg = quad or DEFAULT_QUADRATURE
    I1, I2, err, panels = _rotation_integrals(t, v, cfg)
    raw = np.linalg.solve(I1, np.pi * np.eye(t.n) - 1j * I2)
    herm_dev = float(
        np.linalg.norm(raw - raw.conj().T, "fro")
        / (1.0 + np.linalg.norm(raw, "fro"))
    )
    M = 0.5 * (raw + raw.conj().T)
    res = riccati_residual(M, t, v)
    return ImpedanceResult(
        M=M, v=v, k=t.k,
        quad_error_estimate=err,
        riccati_residual=res,
        herm_deviation=herm_dev,
        panels_used=panels,
        nodes_used=panels * cfg.nodes_per_panel,
    )


def riccati_residual(M: np.ndarray, t: OperatorTriple, v: float) -> float:
    """Frobenius norm of the Riccati equation evaluated at ``M``."""
    X, Y, Z = t.scaleX, t.scaleY, t.scaleZ
    lhs = (M - 1j * Y) @ np.linalg.solve(X, M + 1j * Y.T)
    lhs = lhs - Z + t.k**2 * v**2 * np.eye(t.n)
    return float(np.linalg.norm(lhs, "fro"))


def decay_matrix(res: ImpedanceResult, t: OperatorTriple) -> DecayMatrix:
    """Depth-decay generator ``E = X^-1 (M + i Y^T)`` with its spectrum.

    Raises NotStabilizingError when an eigenvalue has non-positive real
    part, which indicates either quadrature failure or a speed outside the
    subsonic range.
    """
    E = np.linalg.solve(t.scaleX, res.M + 1j * t.scaleY.T)
    eig = np.linalg.eigvals(E)
    min_re = float(eig.real.min())
    if min_re <= 0.0:
        raise NotStabilizingError(
            f"decay matrix has min real part {min_re} <= 0 at v={res.v}"
        )
    return DecayMatrix(E=E, eigenvalues=eig, min_real_part=min_re)


def impedance_derivative(
    t: OperatorTriple,
    v: float,
    h: float,
    quad: QuadratureConfig | None = None,
    v_hat: float | None = None,
) -> np.ndarray:
    """Central finite difference of the impedance matrix in the speed.

    The result is Hermitian-symmetrized; its eigenvalues are negative for
    subsonic speeds (the impedance decreases monotonically in the speed).
    """
    if not h > 0:
        raise ValueError(f"step h must be positive, got {h}")
    if v - h < 0:
        raise SpeedOutOfRangeError(f"v - h = {v - h} is below 0")
    if v_hat is not None and v + h >= v_hat:
        raise SpeedOutOfRangeError(f"v + h = {v + h} is not below v_hat = {v_hat}")
    plus = impedance_matrix(t, v + h, quad, v_hat)
    minus = impedance_matrix(t, v - h, quad, v_hat)
    D = (plus.M - minus.M) / (2.0 * h)
    return 0.5 * (D + D.conj().T)
