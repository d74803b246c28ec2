"""Geodesic and translation triangles, their angles and angle sums.

Every interior angle is measured at the origin: the triangle is moved by
the translation taking the vertex to ``E0``, where the metric is Euclidean,
and the angle is taken between tangents pointing away from the vertex.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChartError,
    DegenerateTriangleError,
    DomainError,
    PreconditionError,
    SolverError,
)
from .geodesics import Direction, relative_chart_point, solve_geodesic_to
from .metric import angle_between
from .model_core import (
    EPS,
    ModelPoint,
    ProjectivePoint,
    as_model,
    eq_projective,
    is_interior,
)
from .translation_curves import translation_arc_to

LIGHTLIKE_TOL = 1e-9


class TriangleKind(enum.Enum):
    GEODESIC = "Geodesic"
    TRANSLATION = "Translation"


class Classification(enum.Enum):
    FIBRE_LIKE = "FibreLike"
    HYPERBOLIC_LIKE = "HyperbolicLike"
    GENERAL = "General"


def _projective(P) -> ProjectivePoint:
    if isinstance(P, ProjectivePoint):
        return P
    return as_model(P).lift()


@dataclass(frozen=True)
class Triangle:
    A1: ProjectivePoint
    A2: ProjectivePoint
    A3: ProjectivePoint

    def __post_init__(self):
        for name in ("A1", "A2", "A3"):
            P = _projective(getattr(self, name))
            object.__setattr__(self, name, P)
            if not is_interior(P):
                raise DomainError(f"vertex {name} = {P} is not interior")
        A = self.vertices
        for i in range(3):
            for j in range(i + 1, 3):
                if eq_projective(A[i], A[j]):
                    raise DegenerateTriangleError(f"vertices A{i + 1} and A{j + 1} coincide")

    @classmethod
    def from_chart(cls, a1, a2, a3) -> Triangle:
        return cls(*(as_model(p).lift() for p in (a1, a2, a3)))

    @property
    def vertices(self) -> tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint]:
        return self.A1, self.A2, self.A3

    def at_origin(self) -> Triangle:
        """Congruent copy with ``A1`` moved to the origin."""
        if eq_projective(self.A1, (1.0, 0.0, 0.0, 0.0)):
            return self
        return Triangle.from_chart(
            (0.0, 0.0, 0.0),
            relative_chart_point(self.A1, self.A2),
            relative_chart_point(self.A1, self.A3),
        )

    def chart_points(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(as_model(P).as_array() for P in self.vertices)


@dataclass(frozen=True)
class TriangleReport:
    omega1: float
    omega2: float
    omega3: float
    side_lengths: tuple[float, float, float]
    kind: TriangleKind
    classification: Classification | None = None
    #: ``(j, i)`` -> direction from the origin to the image of ``A_j`` under the
    #: translation taking ``A_i`` to the origin (geodesic triangles only).
    directions: dict = field(default_factory=dict, compare=False)

    @property
    def angles(self) -> tuple[float, float, float]:
        return self.omega1, self.omega2, self.omega3

    @property
    def angle_sum(self) -> float:
        return self.omega1 + self.omega2 + self.omega3


def _translated_image(a, b) -> np.ndarray:
    """Chart coordinates of ``b`` seen from ``a``, both given relative to ``E0``."""
    x2, y2, z2 = a
    x3, y3, z3 = b
    den = -x2 * x3 + y2 * y3 + z2 * z3 - 1
    return np.array([
        x2 - x3 - y2 * z3 + y3 * z2,
        -x2 * z3 + x3 * z2 + y2 - y3,
        x2 * y3 - x3 * y2 + z2 - z3,
    ]) / den


def translated_vertices(T: Triangle, i: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Images of ``A1, A2, A3`` under the translation taking ``A_i`` to the origin.

    Closed form, with ``A1`` first moved to the origin. The vertex ``A_i``
    itself goes to ``(0, 0, 0)``.
    """
    if i not in (1, 2, 3):
        raise ValueError("vertex index must be 1, 2 or 3")
    _, a2, a3 = T.at_origin().chart_points()
    zero = np.zeros(3)
    if i == 1:
        return zero, a2, a3
    if i == 2:
        return -a2, zero, _translated_image(a2, a3)
    return -a3, _translated_image(a3, a2), zero


def antipodal_check(P, Q, tol: float = EPS) -> bool:
    p = as_model(P).as_array()
    q = as_model(Q).as_array()
    return bool(np.max(np.abs(p + q)) <= tol)


def _others(i):
    return [j for j in (1, 2, 3) if j != i]


def geodesic_triangle_report(T: Triangle) -> TriangleReport:
    t = T.at_origin()
    arcs = {}
    for i in (1, 2, 3):
        images = translated_vertices(t, i)
        for j in _others(i):
            try:
                arcs[j, i] = solve_geodesic_to(ModelPoint.from_array(images[j - 1]))
            except SolverError as e:
                raise SolverError(f"vertex A{i}: {e}", e.residual) from e
            except ChartError as e:
                raise ChartError(f"vertex A{i}: {e}") from e
    omega = []
    for i in (1, 2, 3):
        j, k = _others(i)
        u = arcs[j, i].direction.unit_vector()
        v = arcs[k, i].direction.unit_vector()
        omega.append(angle_between(u, v))
    sides = (arcs[3, 2].s, arcs[3, 1].s, arcs[2, 1].s)
    return TriangleReport(
        *omega,
        side_lengths=sides,
        kind=TriangleKind.GEODESIC,
        classification=classify(t),
        directions={key: arc.direction for key, arc in arcs.items()},
    )


def plane_normal(T: Triangle) -> np.ndarray:
    """Euclidean normal of the plane through the (origin-based) triangle."""
    _, a2, a3 = T.at_origin().chart_points()
    v = np.cross(a2, a3)
    if np.linalg.norm(v) <= EPS * np.linalg.norm(a2) * np.linalg.norm(a3):
        raise DegenerateTriangleError("vertices are collinear")
    return v


def lightlike_defect(v) -> float:
    """``(-v1^2 + v2^2 + v3^2) / |v|^2``."""
    v = np.asarray(v, dtype=float)
    return float((-v[0] ** 2 + v[1] ** 2 + v[2] ** 2) / (v @ v))


def is_lightlike(v, tol: float = LIGHTLIKE_TOL) -> bool:
    return abs(lightlike_defect(v)) <= tol


def translation_triangle_report(T: Triangle) -> TriangleReport:
    t = T.at_origin()
    plane_normal(t)
    omega = []
    for i in (1, 2, 3):
        images = translated_vertices(t, i)
        j, k = _others(i)
        omega.append(angle_between(images[j - 1], images[k - 1]))
    _, a2, a3 = t.chart_points()
    sides = (
        translation_arc_to(_translated_image(a2, a3)).s,
        translation_arc_to(a3).s,
        translation_arc_to(a2).s,
    )
    return TriangleReport(
        *omega, side_lengths=sides, kind=TriangleKind.TRANSLATION, classification=classify(t)
    )


@dataclass(frozen=True)
class SphericalArcs:
    arcs: tuple[float, float, float]
    start: np.ndarray
    end: np.ndarray

    @property
    def total(self) -> float:
        return sum(self.arcs)


def _unit(v):
    return np.asarray(v, dtype=float) / np.linalg.norm(v)


def spherical_projection_arcs(T: Triangle) -> SphericalArcs:
    """Central projection of the translated vertices onto the unit sphere.

    The three consecutive arcs run from the image of ``A3`` seen from
    ``A2``, through ``-A2`` and ``-A3``, to the image of ``A2`` seen from
    ``A3``; their lengths are the angles at ``A2``, ``A1`` and ``A3``.
    """
    t = T.at_origin()
    plane_normal(t)
    a12, _, a32 = translated_vertices(t, 2)
    a13, a23, _ = translated_vertices(t, 3)
    pts = [_unit(p) for p in (a32, a12, a13, a23)]
    arcs = tuple(angle_between(pts[k], pts[k + 1]) for k in range(3))
    return SphericalArcs(arcs, pts[0], pts[-1])


def classify(T: Triangle, tol: float = EPS) -> Classification:
    t = T.at_origin()
    pts = t.chart_points()
    edges = [(0, 1), (0, 2), (1, 2)]
    for a, b in edges:
        rel = relative_chart_point(t.vertices[a], t.vertices[b]).as_array()
        if abs(rel[1]) <= tol and abs(rel[2]) <= tol:
            return Classification.FIBRE_LIKE
    if all(abs(p[0]) <= tol for p in pts):
        return Classification.HYPERBOLIC_LIKE
    return Classification.GENERAL


def find_pi_sum_triangle(A2, A3_h, A3_f, tol: float = 1e-10,
                         max_iter: int = 200) -> tuple[float, Triangle]:
    """Bisect along the Euclidean segment ``A3_h -> A3_f`` for angle sum ``pi``.

    ``A1`` is the origin. The geodesic angle sums at the two ends must lie on
    opposite sides of ``pi``.
    """
    a2 = as_model(A2).as_array()
    h = as_model(A3_h).as_array()
    f = as_model(A3_f).as_array()

    def triangle(t):
        return Triangle.from_chart((0.0, 0.0, 0.0), a2, (1 - t) * h + t * f)

    def excess(t):
        return geodesic_triangle_report(triangle(t)).angle_sum - math.pi

    lo, hi = 0.0, 1.0
    e_lo, e_hi = excess(lo), excess(hi)
    if abs(e_lo) <= tol:
        return lo, triangle(lo)
    if abs(e_hi) <= tol:
        return hi, triangle(hi)
    if e_lo * e_hi > 0:
        raise PreconditionError(
            f"angle sums at the endpoints do not straddle pi (excesses {e_lo:.3g}, {e_hi:.3g})"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        e_mid = excess(mid)
        if abs(e_mid) <= tol:
            return mid, triangle(mid)
        if (e_mid < 0) == (e_lo < 0):
            lo, e_lo = mid, e_mid
        else:
            hi = mid
    raise SolverError(f"bisection did not reach |sum - pi| <= {tol}", abs(e_mid))
