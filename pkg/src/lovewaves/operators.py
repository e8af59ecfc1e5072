"""Matrices of the reduced transverse-wave ODE system and their rotations.

The displacement/micro-rotation ansatz reduces the equations of motion to a
second-order ODE system in the depth coordinate,

    (1/k^2) X z'' + (i/k) (Y + Y^T) z' - Z z + k^2 v^2 Ihat z = 0,

with real 3x3 coefficient matrices ``X``, ``Y``, ``Z`` and the diagonal
inertia matrix ``Ihat = diag(rho, rho*J, rho*J)``.  Normalizing by
``Ihat^(-1/2)`` on both sides gives the mass-normalized triple
(``scaleX``, ``scaleY``, ``scaleZ``) on which the whole solver operates.

Entry convention
----------------
The first-derivative coupling matrix uses a single power of the wave number
on the curvature couplings,

    Y[1,0] = -2*mu_c*k,   Y[1,2] = k*a3,   Y[2,1] = k*(a1 - a2),

which is the convention under which the reference wave-speed tables and the
reference impedance matrix of the shipped foam data set were generated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidMaterialError, NonUnitDirectionError
from .material import MaterialParams, WaveContext, validate_wave_conditions


@dataclass(frozen=True, eq=False)
class OperatorTriple:
    """Raw and mass-normalized coefficient matrices of the reduced system.

    ``X``/``Z`` and their normalized forms are symmetric; under the
    wave-admissibility inequalities the normalized forms are positive
    definite.  The solver consumes only ``scaleX``, ``scaleY``, ``scaleZ``,
    ``Ihat`` and ``k``; the raw matrices are kept for inspection.
    """

    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    scaleX: np.ndarray
    scaleY: np.ndarray
    scaleZ: np.ndarray
    Ihat: np.ndarray
    k: float

    @property
    def n(self) -> int:
        return self.scaleX.shape[0]


@dataclass(frozen=True, eq=False)
class RotatedTriple:
    """Speed-shifted triple rotated by an in-plane angle.

    With ``Ztilde = scaleZ - k^2 v^2 I``:

        Xtheta = cos^2 X - sin cos (Y + Y^T) + sin^2 Ztilde
        Ytheta = cos^2 Y + sin cos (X - Ztilde) - sin^2 Y^T
        Ztheta = cos^2 Ztilde + sin cos (Y + Y^T) + sin^2 X

    ``Xtheta`` evaluated at ``theta + pi/2`` equals ``Ztheta`` at ``theta``,
    and ``Xtheta`` stays positive definite for every angle whenever the
    speed is below the limiting speed.
    """

    Xtheta: np.ndarray
    Ytheta: np.ndarray
    Ztheta: np.ndarray
    theta: float
    v: float
    Ztilde: np.ndarray


@dataclass(frozen=True, eq=False)
class ClassicalLimitBlocks:
    """Block decomposition of the rotated matrices in the zero-coupling limit.

    When ``mu_c -> 0`` the rotated system decouples into a 1x1 macro block
    (entries ``macro_x`` of Xtheta and ``macro_y`` of Ytheta) and 2x2 micro
    blocks ``Atheta`` (of Xtheta) and ``Btheta`` (of Ytheta).
    """

    macro_x: float
    macro_y: float
    Atheta: np.ndarray
    Btheta: np.ndarray


def _require_admissible(params: MaterialParams) -> None:
    report = validate_wave_conditions(params)
    if not report.overall:
        raise InvalidMaterialError(
            "material violates wave-admissibility conditions: "
            + ", ".join(report.failed_names())
        )


def _raw_matrices(ctx: WaveContext) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    p, k = ctx.params, ctx.k
    X = k**2 * np.diag([p.mu_e + p.mu_c, p.a1 + p.a2, 2.0 * p.a1 + p.a3])
    Y = np.zeros((3, 3))
    Y[1, 0] = -2.0 * p.mu_c * k
    Y[1, 2] = k * p.a3
    Y[2, 1] = k * (p.a1 - p.a2)
    Z = np.array([
        [k**2 * (p.mu_e + p.mu_c), 0.0, 2.0 * k * p.mu_c],
        [0.0, k**2 * (2.0 * p.a1 + p.a3) + 4.0 * p.mu_c, 0.0],
        [2.0 * k * p.mu_c, 0.0, k**2 * (p.a1 + p.a2) + 4.0 * p.mu_c],
    ])
    return X, Y, Z


def build_raw_triple(ctx: WaveContext) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the raw (X, Y, Z) coefficient matrices.

    Raises InvalidMaterialError when the material fails the admissibility
    inequalities.
    """
    _require_admissible(ctx.params)
    return _raw_matrices(ctx)


def build_scaled_triple(ctx: WaveContext) -> OperatorTriple:
    """Build the full operator triple, including mass-normalized forms."""
    _require_admissible(ctx.params)
    X, Y, Z = _raw_matrices(ctx)
    p = ctx.params
    Ihat = np.diag([p.rho, p.rho * p.J, p.rho * p.J])
    s = 1.0 / np.sqrt(np.diag(Ihat))
    scale = np.outer(s, s)
    return OperatorTriple(
        X=X, Y=Y, Z=Z,
        scaleX=X * scale, scaleY=Y * scale, scaleZ=Z * scale,
        Ihat=Ihat, k=ctx.k,
    )


def custom_triple(
    scaleX: np.ndarray,
    scaleY: np.ndarray,
    scaleZ: np.ndarray,
    k: float,
    Ihat: np.ndarray | None = None,
) -> OperatorTriple:
    """Wrap user-supplied normalized matrices as an OperatorTriple.

    This is the entry point for plugging a different wave family (or a
    reduced block system) into the generic limiting-speed / impedance /
    secular machinery.  ``scaleX`` and ``scaleZ`` must be symmetric; the
    matrices may have any square size.
    """
    scaleX = np.asarray(scaleX, dtype=float)
    scaleY = np.asarray(scaleY, dtype=float)
    scaleZ = np.asarray(scaleZ, dtype=float)
    n = scaleX.shape[0]
    for name, m in (("scaleX", scaleX), ("scaleY", scaleY), ("scaleZ", scaleZ)):
        if m.shape != (n, n):
            raise ValueError(f"{name} must be {n}x{n}, got {m.shape}")
    for name, m in (("scaleX", scaleX), ("scaleZ", scaleZ)):
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * (1.0 + np.abs(m).max())):
            raise ValueError(f"{name} must be symmetric")
    if not k > 0:
        raise ValueError(f"wave number k must be positive, got {k}")
    if Ihat is None:
        Ihat = np.eye(n)
    else:
        Ihat = np.asarray(Ihat, dtype=float)
    s = np.sqrt(np.diag(Ihat))
    scale = np.outer(s, s)
    return OperatorTriple(
        X=scaleX * scale, Y=scaleY * scale, Z=scaleZ * scale,
        scaleX=scaleX, scaleY=scaleY, scaleZ=scaleZ,
        Ihat=Ihat, k=k,
    )


def rotate_triple(t: OperatorTriple, v: float, theta: float) -> RotatedTriple:
    """Rotate the speed-shifted triple by an in-plane angle."""
    c, s = np.cos(theta), np.sin(theta)
    X, Y, Z = t.scaleX, t.scaleY, t.scaleZ
    S = Y + Y.T
    Ztilde = Z - t.k**2 * v**2 * np.eye(t.n)
    Xtheta = c * c * X - s * c * S + s * s * Ztilde
    Ytheta = c * c * Y + s * c * (X - Ztilde) - s * s * Y.T
    Ztheta = c * c * Ztilde + s * c * S + s * s * X
    return RotatedTriple(Xtheta, Ytheta, Ztheta, theta, v, Ztilde)


def acoustic_tensor(ctx: WaveContext, xi: np.ndarray) -> np.ndarray:
    """Mass-normalized propagation-condition matrix for a plane bulk wave.

    For a unit direction ``xi = (xi1, xi2, 0)`` the eigenvalues of the
    returned symmetric matrix are the squared angular frequencies of plane
    waves with wave number ``ctx.k`` traveling along ``xi``.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3,):
        raise NonUnitDirectionError(f"direction must be a 3-vector, got shape {xi.shape}")
    if abs(xi[2]) > 1e-14:
        raise NonUnitDirectionError(f"direction must lie in the x1-x2 plane, got xi3={xi[2]}")
    if abs(np.linalg.norm(xi) - 1.0) > 1e-12:
        raise NonUnitDirectionError(f"direction must have unit norm, got {np.linalg.norm(xi)}")
    p, k = ctx.params, ctx.k
    x1, x2 = xi[0], xi[1]
    coupling = k**2 * (p.a1 - p.a2 + p.a3) * x1 * x2
    Q2 = np.array([
        [k**2 * (p.mu_e + p.mu_c), -2.0 * p.mu_c * k * x2, 2.0 * p.mu_c * k * x1],
        [-2.0 * p.mu_c * k * x2,
         k**2 * ((2.0 * p.a1 + p.a3) * x1**2 + (p.a1 + p.a2) * x2**2) + 4.0 * p.mu_c,
         coupling],
        [2.0 * p.mu_c * k * x1,
         coupling,
         k**2 * ((p.a1 + p.a2) * x1**2 + (2.0 * p.a1 + p.a3) * x2**2) + 4.0 * p.mu_c],
    ])
    s = 1.0 / np.sqrt(np.array([p.rho, p.rho * p.J, p.rho * p.J]))
    return Q2 * np.outer(s, s)


def classical_limit_triple(ctx: WaveContext, v: float, theta: float) -> ClassicalLimitBlocks:
    """Closed-form blocks of the rotated triple in the ``mu_c -> 0`` limit.

    The micro blocks consume the curvature moduli only through the
    normalized products ``a_i / (rho*J)``, so no separate knowledge of the
    dimensionless curvature weights is needed.
    """
    p, k = ctx.params, ctx.k
    c, s = np.cos(theta), np.sin(theta)
    macro_x = k**2 * (p.mu_e - p.rho * v**2 * s * s) / p.rho
    macro_y = k**2 * v**2 * s * c
    # normalized curvature products: q1 = a1/(rho J) etc.
    rj = p.rho * p.J
    q1, q2, q3 = p.a1 / rj, p.a2 / rj, p.a3 / rj
    pp = q1 + q2          # (alpha1+alpha2) c^2
    qq = 2.0 * q1 + q3    # (2 alpha1+alpha3) c^2
    mm = q1 - q2 + q3     # (alpha1-alpha2+alpha3) c^2
    Atheta = np.array([
        [k**2 * (pp * c * c + (qq - v**2) * s * s), -k * mm * s * c],
        [-k * mm * s * c, k**2 * (qq * c * c + (pp - v**2) * s * s)],
    ])
    Btheta = np.array([
        [k**2 * s * c * (v**2 - mm), k * (q3 * c * c + (q2 - q1) * s * s)],
        [k * ((q1 - q2) * c * c - q3 * s * s), k**2 * s * c * (v**2 + mm)],
    ])
    return ClassicalLimitBlocks(macro_x, macro_y, Atheta, Btheta)


def classical_micro_triple(ctx: WaveContext) -> OperatorTriple:
    """2x2 micro-rotation block of the ``mu_c -> 0`` normalized triple.

    Feeding this into the generic impedance/secular machinery gives the
    reduced rotational-wave problem that survives the decoupling limit.
    """
    p, k = ctx.params, ctx.k
    rj = p.rho * p.J
    q1, q2, q3 = p.a1 / rj, p.a2 / rj, p.a3 / rj
    Xm = k**2 * np.diag([q1 + q2, 2.0 * q1 + q3])
    Ym = np.array([[0.0, k * q3], [k * (q1 - q2), 0.0]])
    Zm = k**2 * np.diag([2.0 * q1 + q3, q1 + q2])
    return custom_triple(Xm, Ym, Zm, k)
