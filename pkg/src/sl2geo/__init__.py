"""Geodesic and translation triangles in the hyperboloid model of the universal cover of SL(2, R)."""

__version__ = "0.1.0"

from .errors import (
    ChartError,
    DegenerateTriangleError,
    DomainError,
    GeometryError,
    NearBoundaryWarning,
    PreconditionError,
    SeedingError,
    SingularMapError,
    SolverError,
)
from .geodesics import (
    Direction,
    GeodesicArc,
    Regime,
    geodesic_distance,
    geodesic_point,
    geodesic_polar,
    geodesic_tangent_at_origin,
    integrate_geodesic,
    solve_geodesic_to,
)
from .isometries import (
    apply,
    fibre_translate,
    is_isometry,
    translation_inverse,
    translation_to,
)
from .metric import angle_between, metric_inhomogeneous, metric_polar
from .model_core import (
    E0,
    HyperboloidCoords,
    ModelPoint,
    ProjectivePoint,
    Sl2Matrix,
    hyperboloid_to_projective,
    inhomogeneous_to_hyperboloid,
    is_interior,
    projective_to_inhomogeneous,
    projective_to_sl2,
    quadratic_form,
    sl2_to_projective,
)
from .translation_curves import (
    TranslationArc,
    is_straight_chord,
    translation_curve_point,
    translation_distance,
)
from .triangles import (
    Classification,
    Triangle,
    TriangleKind,
    TriangleReport,
    antipodal_check,
    classify,
    find_pi_sum_triangle,
    geodesic_triangle_report,
    is_lightlike,
    plane_normal,
    spherical_projection_arcs,
    translated_vertices,
    translation_triangle_report,
)
