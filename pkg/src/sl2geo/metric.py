"""Metric tensors in polar and inhomogeneous coordinates, and angles."""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import DomainError, NearBoundaryWarning
from .model_core import (
    EPS,
    HyperboloidCoords,
    ModelPoint,
    as_model,
    hyperboloid_to_inhomogeneous,
    inhomogeneous_to_hyperboloid,
    quadratic_form,
)


def metric_polar(r: float) -> np.ndarray:
    """Metric in ``(r, theta, phi)``.

    Coefficients of ``dr^2 + cosh^2 r sinh^2 r dtheta^2 + (dphi + sinh^2 r dtheta)^2``.
    Degenerate at ``r = 0`` where the polar chart is singular.
    """
    if r < 0:
        raise DomainError("r must be nonnegative")
    s2 = math.sinh(r) ** 2
    c2 = math.cosh(r) ** 2
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, s2 * (s2 + c2), s2],
            [0.0, s2, 1.0],
        ]
    )


def metric_inhomogeneous(m, eps: float = EPS) -> np.ndarray:
    """Metric in chart coordinates ``(x, y, z)``.

    The ``(y, z)`` entry is ``-y z / D^2``; the sign is fixed by agreement
    with the polar metric pulled back through the chart map.
    """
    x, y, z = as_model(m).as_array()
    D = -1.0 - x * x + y * y + z * z
    if D >= 0:
        raise DomainError(f"({x}, {y}, {z}) is not an interior point")
    if D > -eps:
        warnings.warn(f"({x}, {y}, {z}) is within {eps} of the boundary", NearBoundaryWarning)
    D2 = D * D
    gxy = (-x * y - 2 * z) / D2
    gxz = (-x * z + 2 * y) / D2
    gyz = -y * z / D2
    return np.array(
        [
            [(1 + y * y + z * z) / D2, gxy, gxz],
            [gxy, (1 + x * x + z * z) / D2, gyz],
            [gxz, gyz, (1 + x * x + y * y) / D2],
        ]
    )


def is_positive_definite(g: np.ndarray) -> bool:
    """Leading principal minors test."""
    return bool(
        g[0, 0] > 0
        and np.linalg.det(g[:2, :2]) > 0
        and np.linalg.det(g) > 0
    )


def chart_jacobian(h: HyperboloidCoords, step: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of ``(r, theta, phi) -> (x, y, z)``."""
    base = np.array([h.r, h.theta, h.phi])
    J = np.empty((3, 3))
    for k in range(3):
        dp = base.copy()
        dm = base.copy()
        dp[k] += step
        dm[k] -= step
        fp = hyperboloid_to_inhomogeneous(HyperboloidCoords(*dp)).as_array()
        fm = hyperboloid_to_inhomogeneous(HyperboloidCoords(*dm)).as_array()
        J[:, k] = (fp - fm) / (2 * step)
    return J


def pullback_polar_metric(m, step: float = 1e-6) -> np.ndarray:
    """Polar metric transported to chart coordinates.

    Independent of :func:`metric_inhomogeneous`: uses ``g_chart = J^-T g_polar J^-1``
    with a finite-difference Jacobian. Needs ``r`` well away from 0.
    """
    h = inhomogeneous_to_hyperboloid(as_model(m))
    Jinv = np.linalg.inv(chart_jacobian(h, step))
    return Jinv.T @ metric_polar(h.r) @ Jinv


def inner(u, v, g=None) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(u @ v) if g is None else float(u @ g @ v)


def angle_between(u, v, at=None) -> float:
    """Angle in ``[0, pi]`` between tangent vectors at a chart point.

    ``at=None`` means the origin, where the metric is the identity.
    """
    g = None if at is None else metric_inhomogeneous(at)
    uu, vv, uv = inner(u, u, g), inner(v, v, g), inner(u, v, g)
    if uu <= 0 or vv <= 0:
        raise DomainError("zero tangent vector")
    if g is None:
        # atan2 form keeps accuracy for nearly (anti)parallel vectors
        cross = np.linalg.norm(np.cross(np.asarray(u, float), np.asarray(v, float)))
        return math.atan2(cross, uv)
    c = uv / math.sqrt(uu * vv)
    return math.acos(min(1.0, max(-1.0, c)))


def squared_speed(m: ModelPoint, u) -> float:
    return inner(u, u, metric_inhomogeneous(m))
