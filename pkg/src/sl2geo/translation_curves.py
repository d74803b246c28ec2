"""Translation curves and translation distance.

Translation curves from the origin are Euclidean rays in the chart: the
point at translation arc length ``s`` in direction ``(lambda, alpha)`` is
``R(s) * (sin a, cos a cos l, cos a sin l)`` with radial profile

* ``tanh(s q) / q``, ``q = sqrt(cos 2a)``, for H2-like directions,
* ``s`` on the light cone,
* ``tan(s q) / q``, ``q = sqrt(-cos 2a)``, for fibre-like directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartError, DomainError
from .geodesics import LIGHTLIKE_BAND, Direction, relative_chart_point
from .isometries import apply, translation_to
from .model_core import ModelPoint, as_model, is_interior


@dataclass(frozen=True)
class TranslationArc:
    direction: Direction
    s: float


def _radius(s: float, c: float) -> float:
    if abs(c) < LIGHTLIKE_BAND:
        return s
    if c > 0:
        q = math.sqrt(c)
        return math.tanh(s * q) / q
    q = math.sqrt(-c)
    if s * q >= math.pi / 2:
        raise ChartError("translation curve leaves the principal chart")
    return math.tan(s * q) / q


def _arc_length(radius: float, c: float) -> float:
    if abs(c) < LIGHTLIKE_BAND:
        return radius
    if c > 0:
        q = math.sqrt(c)
        if radius * q >= 1:
            raise DomainError("point is not interior")
        return math.atanh(radius * q) / q
    q = math.sqrt(-c)
    return math.atan(radius * q) / q


def translation_curve_point(s: float, direction: Direction) -> ModelPoint:
    if s < 0:
        raise DomainError("arc length must be nonnegative")
    rho = _radius(s, math.cos(2 * direction.alpha))
    return ModelPoint.from_array(rho * direction.unit_vector())


def translation_arc_to(target) -> TranslationArc:
    """Invert the translation-curve parametrization for a chart point."""
    m = as_model(target)
    if not is_interior(m):
        raise DomainError(f"{m} is not an interior point")
    x, y, z = m.as_array()
    rho = math.hypot(x, y, z)
    if rho == 0:
        return TranslationArc(Direction(0.0, 0.0), 0.0)
    base = math.hypot(y, z)
    alpha = math.atan2(x, base)
    lam = math.atan2(z, y) if base > 0 else 0.0
    # cos 2a from the coordinates directly; avoids cancellation near the light cone
    c = ((base - abs(x)) / rho) * ((base + abs(x)) / rho)
    return TranslationArc(Direction(lam, alpha), _arc_length(rho, c))


def translation_distance(P, Q) -> float:
    return translation_arc_to(relative_chart_point(P, Q)).s


def translation_chord(P, Q, samples: int = 16) -> np.ndarray:
    """Chart points along the translation curve from ``P`` to ``Q``."""
    arc = translation_arc_to(relative_chart_point(P, Q))
    T = translation_to(as_model(P).lift())
    pts = []
    for t in np.linspace(0.0, arc.s, samples):
        local = translation_curve_point(float(t), arc.direction)
        pts.append(apply(T, local.lift()).to_model().as_array())
    return np.array(pts)


def are_collinear(points, tol: float = 1e-10) -> bool:
    """All points within ``tol`` of the line through the first and last."""
    pts = np.asarray(points, dtype=float)
    a, b = pts[0], pts[-1]
    d = b - a
    n = np.linalg.norm(d)
    if n == 0:
        return bool(np.max(np.linalg.norm(pts - a, axis=1)) <= tol)
    d = d / n
    rel = pts - a
    off = rel - np.outer(rel @ d, d)
    return bool(np.max(np.linalg.norm(off, axis=1)) <= tol)


def is_straight_chord(P, Q, samples: int = 16, tol: float = 1e-10) -> bool:
    return are_collinear(translation_chord(P, Q, samples), tol)
