"""Translations, fibre translations and the isometry validator.

Matrices act on row vectors of homogeneous coordinates, ``P' = P @ M``,
and are stored without normalization; every point they produce is
rescaled so that ``x0 > 0``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, SingularMapError
from .model_core import EPS, ProjectivePoint, _coords, quadratic_form

ISOMETRY_TOL = 1e-9


def _interior_coords(X) -> np.ndarray:
    x = _coords(X)
    if quadratic_form(x) >= 0:
        raise DomainError(f"{X} is not an interior point")
    if x[0] < 0:
        x = -x
    return x


def translation_to(X) -> np.ndarray:
    """The translation sending the origin ``E0`` to ``X``."""
    x0, x1, x2, x3 = _interior_coords(X)
    return np.array(
        [
            [x0, x1, x2, x3],
            [-x1, x0, x3, -x2],
            [x2, x3, x0, x1],
            [x3, -x2, -x1, x0],
        ]
    )


def translation_inverse(X) -> np.ndarray:
    """Explicit inverse of :func:`translation_to`, up to positive scale."""
    x0, x1, x2, x3 = _interior_coords(X)
    return np.array(
        [
            [x0, -x1, -x2, -x3],
            [x1, x0, -x3, x2],
            [-x2, -x3, x0, -x1],
            [-x3, x2, x1, x0],
        ]
    )


def fibre_translate(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array(
        [
            [c, s, 0.0, 0.0],
            [-s, c, 0.0, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, s, c],
        ]
    )


def apply(T: np.ndarray, P) -> ProjectivePoint:
    """Image of ``P`` under ``T``, rescaled to ``x0 = 1`` when ``x0 != 0``."""
    v = _coords(P) @ np.asarray(T, dtype=float)
    if not np.any(v):
        raise SingularMapError("image is the zero vector")
    if v[0] != 0:
        v = v / v[0]
    return ProjectivePoint.from_array(v)


def relative_position(X, Y) -> ProjectivePoint:
    """``Y`` seen from ``X``: the image of ``Y`` under the translation taking ``X`` to ``E0``."""
    return apply(translation_inverse(X), Y)


def isometry_branch(M, tol: float = ISOMETRY_TOL) -> str | None:
    """Which sign branch of the isometry pattern ``M`` matches.

    Returns ``"upper"`` or ``"lower"``, or ``None`` when ``M`` is not of
    isometry shape. Rows 1 and 3 must be determined by rows 0 and 2 via the
    sign pattern, and after rescaling so that row 0 has form value ``-1`` the
    four quadratic constraints must hold.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (4, 4) or not np.all(np.isfinite(M)):
        return None
    q0 = quadratic_form(M[0])
    if q0 >= 0:
        return None
    A = M / math.sqrt(-q0)
    a0, a2 = A[0], A[2]
    constraints = [
        quadratic_form(a0) + 1.0,
        quadratic_form(a2) - 1.0,
        -a0[0] * a2[0] - a0[1] * a2[1] + a0[2] * a2[2] + a0[3] * a2[3],
        -a0[0] * a2[1] + a0[1] * a2[0] - a0[2] * a2[3] + a0[3] * a2[2],
    ]
    if max(abs(c) for c in constraints) > tol:
        return None
    for name, sgn in (("upper", 1.0), ("lower", -1.0)):
        row1 = sgn * np.array([-a0[1], a0[0], a0[3], -a0[2]])
        row3 = sgn * np.array([a2[1], -a2[0], -a2[3], a2[2]])
        if np.max(np.abs(A[1] - row1)) <= tol and np.max(np.abs(A[3] - row3)) <= tol:
            return name
    return None


def is_isometry(M, tol: float = ISOMETRY_TOL) -> bool:
    return isometry_branch(M, tol) is not None


def is_proportional_to_identity(M, tol: float = EPS) -> bool:
    M = np.asarray(M, dtype=float)
    k = M[0, 0]
    return k != 0 and bool(np.max(np.abs(M / k - np.eye(4))) <= tol)
