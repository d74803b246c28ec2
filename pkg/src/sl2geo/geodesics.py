"""Geodesics from the origin: closed forms, ODE integration and the inverse problem.

A geodesic leaving ``E0`` is fixed by its geographic direction
``(lambda, alpha)`` (longitude, altitude); its unit tangent at the origin is
``(sin a, cos a cos l, cos a sin l)`` in chart order ``(x, y, z)``. The sign of
``cos 2 alpha`` selects the regime: H2-like (> 0), light-like (= 0) or
fibre-like (< 0).

All three regimes share one closed form once written in terms of the
profile functions ``S(s) = sinh(q s)/q`` and ``C(s) = cosh(q s)`` with
``q^2 = cos 2 alpha`` (trigonometric for negative ``q^2``, ``S = s, C = 1`` on
the light cone)::

    r     = arsinh(cos a * S)
    theta = -arg(C + i sin a * S)        (continuous lift)
    phi   = 2 s sin a + theta
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ChartError, DomainError, SeedingError, SolverError
from .isometries import translation_inverse
from .model_core import (
    ModelPoint,
    _coords,
    as_model,
    inhomogeneous_to_hyperboloid,
    wrap_angle,
)

#: ``|cos 2 alpha|`` below this is treated as exactly light-like.
LIGHTLIKE_BAND = 1e-12
#: Largest accepted chart residual for a boundary-value solution.
SOLVER_TOL = 1e-8

_QUARTER = math.pi / 4
_HALF = math.pi / 2


class Regime(enum.Enum):
    H2_LIKE = "H2Like"
    LIGHT_LIKE = "LightLike"
    FIBRE_LIKE = "FibreLike"


def regime_of(alpha: float, band: float = LIGHTLIKE_BAND) -> Regime:
    c = math.cos(2 * alpha)
    if abs(c) < band:
        return Regime.LIGHT_LIKE
    return Regime.H2_LIKE if c > 0 else Regime.FIBRE_LIKE


@dataclass(frozen=True)
class Direction:
    lam: float
    alpha: float

    def __post_init__(self):
        if not -_HALF - 1e-12 <= self.alpha <= _HALF + 1e-12:
            raise DomainError(f"altitude {self.alpha!r} outside [-pi/2, pi/2]")

    @property
    def regime(self) -> Regime:
        return regime_of(self.alpha)

    def unit_vector(self) -> np.ndarray:
        ca = math.cos(self.alpha)
        return np.array(
            [math.sin(self.alpha), ca * math.cos(self.lam), ca * math.sin(self.lam)]
        )


@dataclass(frozen=True)
class GeodesicArc:
    direction: Direction
    s: float
    residual: float = 0.0


def _profile(s, c):
    """``S``, ``C`` and the number of completed half-turns for the lift of ``theta``."""
    s = np.asarray(s, dtype=float)
    c = np.asarray(c, dtype=float)
    pos = c > LIGHTLIKE_BAND
    neg = c < -LIGHTLIKE_BAND
    q = np.sqrt(np.where(pos | neg, np.abs(c), 1.0))
    u = q * s
    with np.errstate(over="ignore", invalid="ignore"):
        S = np.where(pos, np.sinh(u) / q, np.where(neg, np.sin(u) / q, s))
        C = np.where(pos, np.cosh(u), np.where(neg, np.cos(u), 1.0))
    turns = np.where(neg, np.floor((u + np.pi) / (2 * np.pi)), 0.0)
    return S, C, turns


def _scalar(*arrays):
    if all(np.ndim(a) == 0 for a in arrays):
        return tuple(float(a) for a in arrays)
    return arrays


def geodesic_polar(s, alpha):
    """``(r, theta, phi)`` after arc length ``s`` along altitude ``alpha``.

    Broadcasts over array arguments.
    """
    alpha = np.asarray(alpha, dtype=float)
    S, C, turns = _profile(s, np.cos(2 * alpha))
    ca, sa = np.cos(alpha), np.sin(alpha)
    r = np.arcsinh(ca * S)
    theta = -(np.arctan2(sa * S, C) + np.sign(sa) * 2 * np.pi * turns)
    phi = 2 * np.asarray(s, dtype=float) * sa + theta
    return _scalar(r, theta, phi)


def geodesic_velocity(s, alpha):
    """Exact ``(dr/ds, dtheta/ds, dphi/ds)`` of the closed form."""
    alpha = np.asarray(alpha, dtype=float)
    S, C, _ = _profile(s, np.cos(2 * alpha))
    ca, sa = np.cos(alpha), np.sin(alpha)
    dr = ca * C / np.sqrt(1 + (ca * S) ** 2)
    dtheta = -sa / (C * C + (sa * S) ** 2)
    return _scalar(dr, dtheta, 2 * sa + dtheta)


def _chart_point(r, theta, phi, lam) -> ModelPoint:
    cp = math.cos(phi)
    if cp <= 0:
        raise ChartError(f"phi = {phi!r} leaves the principal chart")
    rho = math.tanh(r) / cp
    w = theta - phi + lam
    return ModelPoint(math.tan(phi), rho * math.cos(w), rho * math.sin(w))


def geodesic_point(s: float, direction: Direction) -> ModelPoint:
    if s < 0:
        raise DomainError("arc length must be nonnegative")
    r, theta, phi = geodesic_polar(s, direction.alpha)
    return _chart_point(r, theta, phi, direction.lam)


def geodesic_tangent_at_origin(direction: Direction) -> np.ndarray:
    return direction.unit_vector()


# -- ODE ---------------------------------------------------------------------


def geodesic_rhs(y: np.ndarray) -> np.ndarray:
    """Geodesic equations for the state ``(r, theta, phi, r', theta', phi')``.

    Columns of ``y`` are integrated independently.
    """
    r, _, _, dr, dt, dp = y
    sh2 = np.sinh(2 * r)
    ddr = sh2 * dt * dp + 0.5 * (np.sinh(4 * r) - sh2) * dt * dt
    ddt = -2 * dr / sh2 * ((3 * np.cosh(2 * r) - 1) * dt + 2 * dp)
    ddp = 2 * dr * np.tanh(r) * (2 * np.sinh(r) ** 2 * dt + dp)
    return np.array([dr, dt, dp, ddr, ddt, ddp])


@dataclass(frozen=True)
class GeodesicPath:
    s: np.ndarray
    r: np.ndarray
    theta: np.ndarray
    phi: np.ndarray


def integrate_geodesics(alphas, s_end: float, h: float = 1e-4, s0: float = 1e-4,
                        sample_every: int = 100):
    """Classical RK4 integration of several geodesics at once.

    The equations are singular at ``r = 0``, so each solution is seeded at
    ``s0`` from the closed-form state. Returns the sample abscissae and an
    array of shape ``(n_samples, 3, len(alphas))`` holding ``(r, theta, phi)``.
    """
    if h <= 0 or s_end <= s0:
        raise SeedingError(f"need h > 0 and s_end > s0 = {s0}")
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    n = int(math.ceil((s_end - s0) / h - 1e-9))
    h = (s_end - s0) / n
    y = np.array([*geodesic_polar(s0, alphas), *geodesic_velocity(s0, alphas)])
    y = np.broadcast_to(y, (6, alphas.size)).astype(float)
    if np.any(np.sinh(2 * y[0]) == 0):
        raise SeedingError("seed lies on the fibre axis, equations are singular there")
    out_s, out_y = [s0], [y[:3].copy()]
    for i in range(1, n + 1):
        k1 = geodesic_rhs(y)
        k2 = geodesic_rhs(y + 0.5 * h * k1)
        k3 = geodesic_rhs(y + 0.5 * h * k2)
        k4 = geodesic_rhs(y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if i % sample_every == 0 or i == n:
            out_s.append(s0 + i * h)
            out_y.append(y[:3].copy())
    out = np.array(out_y)
    if not np.all(np.isfinite(out)):
        raise SeedingError("integration produced non-finite values")
    return np.array(out_s), out


def integrate_geodesic(direction, s_end: float, h: float = 1e-4, s0: float = 1e-4,
                       sample_every: int = 100) -> GeodesicPath:
    alpha = direction.alpha if isinstance(direction, Direction) else float(direction)
    s, y = integrate_geodesics([alpha], s_end, h, s0, sample_every)
    return GeodesicPath(s, y[:, 0, 0], y[:, 1, 0], y[:, 2, 0])


# -- boundary-value problem ----------------------------------------------------


def _arc_length_for_radius(r_t: float, alpha, branch: int):
    """Arc length at which the geodesic of altitude ``alpha`` reaches radius ``r_t``.

    ``branch`` 0 is the first arrival; branch 1 is the return half of the
    first lobe of a fibre-like geodesic (NaN elsewhere).
    """
    alpha = np.asarray(alpha, dtype=float)
    c = np.cos(2 * alpha)
    ca = np.cos(alpha)
    sh = math.sinh(r_t)
    pos = c > LIGHTLIKE_BAND
    neg = c < -LIGHTLIKE_BAND
    q = np.sqrt(np.where(pos | neg, np.abs(c), 1.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        v = sh * q / ca
        up = np.where(v <= 1 + 1e-9, np.arcsin(np.minimum(v, 1.0)), np.nan)
        if branch == 0:
            s = np.where(pos, np.arcsinh(v) / q, np.where(neg, up / q, sh / ca))
        else:
            s = np.where(neg, (np.pi - up) / q, np.nan)
    return s


def _fibre_limit(r_t: float) -> float:
    """Largest altitude whose geodesic still reaches radius ``r_t``."""
    return math.atan2(math.cosh(r_t), math.sinh(r_t))


def _phi_mismatch(r_t, phi_t, branch):
    def F(alpha):
        s = _arc_length_for_radius(r_t, alpha, branch)
        return geodesic_polar(s, alpha)[2] - phi_t
    return F


def _bracket_roots(F, grid):
    vals = np.asarray(F(grid))
    ok = np.isfinite(vals)
    brackets = []
    for i in range(len(grid) - 1):
        if ok[i] and ok[i + 1]:
            if vals[i] == 0:
                brackets.append((grid[i], grid[i]))
            elif vals[i] * vals[i + 1] < 0:
                brackets.append((grid[i], grid[i + 1]))
    if ok[-1] and vals[-1] == 0:
        brackets.append((grid[-1], grid[-1]))
    return brackets


def solve_geodesic_to(target, n_scan: int = 2001) -> GeodesicArc:
    """Shortest geodesic from ``E0`` to a chart point.

    Works in hyperboloid coordinates: the target radius fixes the arc length
    as a function of altitude, leaving a scalar equation for the fibre
    coordinate in ``alpha``. Roots are bracketed on a scan over every regime
    (and both halves of the first fibre-like lobe) and refined by Brent's
    method; the longitude then follows from the base-plane angle.
    """
    m = as_model(target)
    h = inhomogeneous_to_hyperboloid(m)
    r_t, phi_t = h.r, h.phi
    psi_t = math.atan2(m.z, m.y) if r_t > 0 else 0.0
    if r_t == 0 and phi_t == 0:
        raise DomainError("target is the origin")
    if r_t < 1e-15:
        alpha = math.copysign(_HALF, phi_t)
        d = Direction(0.0, alpha)
        return GeodesicArc(d, abs(phi_t), _residual(m, abs(phi_t), d))

    a_star = _fibre_limit(r_t)
    k = max(n_scan // 4, 16)
    lobe = np.linspace(_QUARTER, a_star, k)
    segments = [
        (0, np.unique(np.concatenate([-lobe[::-1], np.linspace(-_QUARTER, _QUARTER, n_scan), lobe]))),
        (1, -lobe[:0:-1]),
        (1, lobe[1:]),
    ]
    candidates = []
    best_residual = math.inf
    for branch, grid in segments:
        F = _phi_mismatch(r_t, phi_t, branch)
        for lo, hi in _bracket_roots(F, grid):
            alpha = lo if lo == hi else brentq(F, lo, hi, xtol=1e-16, rtol=9e-16, maxiter=200)
            s = float(_arc_length_for_radius(r_t, alpha, branch))
            r, theta, phi = geodesic_polar(s, alpha)
            d = Direction(wrap_angle(psi_t - (theta - phi)), float(alpha))
            try:
                res = _residual(m, s, d)
            except ChartError:
                continue
            best_residual = min(best_residual, res)
            if res <= SOLVER_TOL:
                candidates.append(GeodesicArc(d, s, res))
    if not candidates:
        raise SolverError(f"no geodesic from the origin to {m} found", best_residual)
    return min(candidates, key=lambda arc: arc.s)


def _residual(m: ModelPoint, s: float, d: Direction) -> float:
    return float(np.linalg.norm(geodesic_point(s, d).as_array() - m.as_array()))


def relative_chart_point(P, Q) -> ModelPoint:
    """Chart coordinates of ``Q`` after translating ``P`` to the origin."""
    v = _coords(Q) @ translation_inverse(P)
    if v[0] <= 0:
        raise ChartError("translated point leaves the principal chart")
    return ModelPoint.from_array(v[1:] / v[0])


def geodesic_distance(P, Q) -> float:
    q = relative_chart_point(P, Q)
    if not np.any(q.as_array()):
        return 0.0
    return solve_geodesic_to(q).s


def closed_vs_integrated(alphas, s_min: float = 0.05, s_max: float = 2.0,
                         h: float = 1e-4) -> np.ndarray:
    """Largest componentwise gap in ``(r, theta, phi)`` between the closed form and RK4.

    One value per altitude, taken over the sampled arc lengths in ``[s_min, s_max]``.
    """
    s, y = integrate_geodesics(alphas, s_max, h=h)
    keep = s >= s_min - 1e-12
    s = s[keep]
    closed = np.array(geodesic_polar(s[:, None], np.asarray(alphas, dtype=float)[None, :]))
    closed = np.moveaxis(closed, 0, 1)
    return np.max(np.abs(closed - y[keep]), axis=(0, 1))
