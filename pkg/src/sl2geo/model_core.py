"""Points of the hyperboloid model and conversions between their charts.

Three coordinate systems are used throughout the package:

* homogeneous coordinates ``(x0:x1:x2:x3)`` up to positive scale
  (:class:`ProjectivePoint`),
* inhomogeneous chart coordinates ``(x, y, z) = (x1/x0, x2/x0, x3/x0)``
  (:class:`ModelPoint`), valid on the sheet ``x0 > 0``,
* hyperboloid coordinates ``(r, theta, phi)`` where ``(r, theta)`` are polar
  coordinates of the hyperbolic base plane and ``phi`` is the unbounded fibre
  coordinate (:class:`HyperboloidCoords`).

Interior points satisfy ``-x0^2 - x1^2 + x2^2 + x3^2 < 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartError, DomainError

#: Default tolerance for exactness predicates.
EPS = 1e-10


@dataclass(frozen=True)
class ProjectivePoint:
    x0: float
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if self.x0 == 0 and self.x1 == 0 and self.x2 == 0 and self.x3 == 0:
            raise DomainError("all homogeneous coordinates are zero")

    @classmethod
    def from_array(cls, v) -> ProjectivePoint:
        a, b, c, d = (float(t) for t in v)
        return cls(a, b, c, d)

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3], dtype=float)

    def normalized(self) -> ProjectivePoint:
        """Scale by the absolute value of the first nonzero coordinate."""
        v = self.as_array()
        lead = v[np.flatnonzero(v)[0]]
        return ProjectivePoint.from_array(v / abs(lead))

    def scaled(self, c: float) -> ProjectivePoint:
        return ProjectivePoint.from_array(c * self.as_array())

    def to_model(self) -> ModelPoint:
        return projective_to_inhomogeneous(self)


@dataclass(frozen=True)
class ModelPoint:
    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, v) -> ModelPoint:
        a, b, c = (float(t) for t in v)
        return cls(a, b, c)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def lift(self) -> ProjectivePoint:
        return ProjectivePoint(1.0, self.x, self.y, self.z)


@dataclass(frozen=True)
class HyperboloidCoords:
    r: float
    theta: float
    phi: float


@dataclass(frozen=True)
class Sl2Matrix:
    """The matrix ``[[d, b], [c, a]]`` with unit determinant ``ad - bc``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.det - 1.0) > EPS:
            raise DomainError(f"determinant {self.det!r} is not 1")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c


E0 = ProjectivePoint(1.0, 0.0, 0.0, 0.0)
ORIGIN = ModelPoint(0.0, 0.0, 0.0)


def _coords(P) -> np.ndarray:
    if isinstance(P, ProjectivePoint):
        return P.as_array()
    if isinstance(P, ModelPoint):
        return P.lift().as_array()
    v = np.asarray(P, dtype=float)
    if v.shape == (3,):
        return np.concatenate([[1.0], v])
    return v


def quadratic_form(P) -> float:
    """``-x0^2 - x1^2 + x2^2 + x3^2``."""
    x0, x1, x2, x3 = _coords(P)
    return -x0 * x0 - x1 * x1 + x2 * x2 + x3 * x3


def bilinear_form(P, Q) -> float:
    p, q = _coords(P), _coords(Q)
    return -p[0] * q[0] - p[1] * q[1] + p[2] * q[2] + p[3] * q[3]


def is_interior(P) -> bool:
    return bool(quadratic_form(P) < 0)


def eq_projective(P, Q, tol: float = EPS) -> bool:
    """Equality up to a positive scale factor."""
    p = ProjectivePoint.from_array(_coords(P)).as_array()
    q = ProjectivePoint.from_array(_coords(Q)).as_array()
    # the max-norm is a positive scale that never amplifies tiny entries
    p, q = p / np.max(np.abs(p)), q / np.max(np.abs(q))
    return bool(np.max(np.abs(p - q)) <= tol)


def sl2_entries(P) -> tuple[float, float, float, float]:
    """Raw ``(a, b, c, d)`` of a homogeneous point, without rescaling."""
    x0, x1, x2, x3 = _coords(P)
    return x0 + x3, x1 + x2, -x1 + x2, x0 - x3


def projective_to_sl2(P) -> Sl2Matrix:
    """Matrix representative of ``P`` rescaled to unit determinant."""
    a, b, c, d = sl2_entries(P)
    det = a * d - b * c
    if det <= 0:
        raise DomainError(f"ad - bc = {det!r} must be positive")
    k = 1.0 / math.sqrt(det)
    return Sl2Matrix(a * k, b * k, c * k, d * k)


def sl2_to_projective(M: Sl2Matrix) -> ProjectivePoint:
    return ProjectivePoint(
        (M.a + M.d) / 2, (M.b - M.c) / 2, (M.b + M.c) / 2, (M.a - M.d) / 2
    )


def hyperboloid_to_projective(h: HyperboloidCoords) -> ProjectivePoint:
    if h.r < 0:
        raise DomainError("r must be nonnegative")
    ch, sh = math.cosh(h.r), math.sinh(h.r)
    w = h.theta - h.phi
    return ProjectivePoint(
        ch * math.cos(h.phi), ch * math.sin(h.phi), sh * math.cos(w), sh * math.sin(w)
    )


def projective_to_inhomogeneous(P) -> ModelPoint:
    x0, x1, x2, x3 = _coords(P)
    if x0 == 0:
        raise ChartError("x0 = 0: point is not in the inhomogeneous chart")
    return ModelPoint(x1 / x0, x2 / x0, x3 / x0)


def inhomogeneous_to_hyperboloid(m: ModelPoint) -> HyperboloidCoords:
    """Principal-branch inverse of the chart map.

    Returns ``phi`` in ``(-pi/2, pi/2)``, ``r >= 0`` and ``theta`` in
    ``(-pi, pi]`` with ``theta - phi = atan2(z, y)`` modulo ``2 pi``.
    """
    if not is_interior(m):
        raise DomainError(f"{m} is not an interior point")
    phi = math.atan(m.x)
    rho = math.cos(phi) * math.hypot(m.y, m.z)
    r = math.atanh(rho)
    w = math.atan2(m.z, m.y) if rho > 0 else 0.0
    return HyperboloidCoords(r, wrap_angle(w + phi), phi)


def hyperboloid_to_inhomogeneous(h: HyperboloidCoords) -> ModelPoint:
    if math.cos(h.phi) <= 0:
        raise ChartError(f"phi = {h.phi!r} leaves the principal chart")
    return projective_to_inhomogeneous(hyperboloid_to_projective(h))


def wrap_angle(t: float) -> float:
    """Reduce an angle to ``(-pi, pi]``."""
    t = math.remainder(t, 2 * math.pi)
    return math.pi if t == -math.pi else t


def as_model(P) -> ModelPoint:
    """Coerce a projective point, model point or 3-sequence to a ModelPoint."""
    if isinstance(P, ModelPoint):
        return P
    if isinstance(P, ProjectivePoint):
        return projective_to_inhomogeneous(P)
    v = np.asarray(P, dtype=float)
    if v.shape == (4,):
        return projective_to_inhomogeneous(v)
    return ModelPoint.from_array(v)
