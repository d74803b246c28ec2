"""Exception and warning types shared across the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DomainError(GeometryError):
    """A point or matrix lies outside the domain of an operation."""


class ChartError(GeometryError):
    """A point cannot be represented in the principal inhomogeneous chart."""


class DegenerateTriangleError(GeometryError):
    """Coincident or collinear vertices."""


class PreconditionError(GeometryError):
    """Inputs do not satisfy a documented precondition."""


class SingularMapError(GeometryError):
    """A 4x4 map sent a point to the zero vector."""


class SolverError(RuntimeError):
    """The boundary-value solver did not converge.

    ``residual`` carries the best chart-space residual reached, or ``inf``
    when no candidate was found at all.
    """

    def __init__(self, message, residual=float("inf")):
        super().__init__(message)
        self.residual = residual


class NearBoundaryWarning(UserWarning):
    """Issued when a point is within tolerance of the hyperboloid boundary."""


class SeedingError(PreconditionError):
    """The geodesic integrator cannot be started from the requested state."""
