"""Seeded generators of random points and triangles for property sweeps."""

from __future__ import annotations

import math

import numpy as np

from .geodesics import Direction

#: Coordinates drawn from this cube are interior and every pairwise
#: translation keeps them inside the principal chart.
CUBE = 0.5


def random_chart_point(rng: np.random.Generator, half_width: float = CUBE) -> np.ndarray:
    return rng.uniform(-half_width, half_width, 3)


def random_triangle_vertices(rng, min_sine: float = 1e-3):
    """Two chart points forming a non-degenerate triangle with the origin."""
    while True:
        a2, a3 = random_chart_point(rng), random_chart_point(rng)
        n2, n3 = np.linalg.norm(a2), np.linalg.norm(a3)
        if min(n2, n3) < 1e-2:
            continue
        if np.linalg.norm(np.cross(a2, a3)) >= min_sine * n2 * n3:
            return a2, a3


def random_lightlike_triangle_vertices(rng):
    """Two chart points spanning, with the origin, a plane whose normal is light-like."""
    t = rng.uniform(-math.pi, math.pi)
    normal = np.array([1.0, math.cos(t), math.sin(t)])
    e1 = np.array([0.0, -math.sin(t), math.cos(t)])
    e2 = np.cross(normal, e1)
    e2 /= np.linalg.norm(e2)
    while True:
        c2, c3 = rng.uniform(-0.3, 0.3, 2), rng.uniform(-0.3, 0.3, 2)
        a2 = c2[0] * e1 + c2[1] * e2
        a3 = c3[0] * e1 + c3[1] * e2
        n2, n3 = np.linalg.norm(a2), np.linalg.norm(a3)
        if min(n2, n3) > 1e-2 and np.linalg.norm(np.cross(a2, a3)) >= 1e-2 * n2 * n3:
            return a2, a3


def random_direction(rng) -> Direction:
    return Direction(rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi / 2, math.pi / 2))


def open_grid(n: int) -> np.ndarray:
    """``n`` equally spaced points strictly inside ``(0, 1)``."""
    return np.arange(1, n + 1) / (n + 1)
