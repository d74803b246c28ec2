import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from sl2geo.errors import ChartError, DomainError
from sl2geo.geodesics import Direction
from sl2geo.isometries import apply, translation_to
from sl2geo.model_core import E0, ModelPoint
from sl2geo.translation_curves import (
    are_collinear,
    is_straight_chord,
    translation_arc_to,
    translation_chord,
    translation_curve_point,
    translation_distance,
)

from conftest import interior_points


def test_light_like_example():
    d = Direction(0.0, math.pi / 4)
    p = translation_curve_point(0.6 / math.sqrt(2), d)
    assert p.as_array() == pytest.approx([0.3, 0.3, 0.0], abs=1e-15)
    assert translation_distance(E0, ModelPoint(0.3, 0.3, 0.0)) == pytest.approx(0.3 * math.sqrt(2), abs=1e-15)


def test_axis_and_base_plane():
    assert translation_curve_point(0.5, Direction(0, 0)).as_array() == pytest.approx([0, math.tanh(0.5), 0])
    assert translation_curve_point(0.5, Direction(0, math.pi / 2)).as_array() == pytest.approx([math.tan(0.5), 0, 0])
    with pytest.raises(ChartError):
        translation_curve_point(2.0, Direction(0, math.pi / 2))
    with pytest.raises(DomainError):
        translation_curve_point(-1.0, Direction(0, 0))


def _tangent_field_oracle(direction, s_end):
    """Integrate gamma' = d(T_gamma)(u): the origin tangent carried by translations."""
    u = direction.unit_vector()

    def rhs(_, g):
        T = translation_to(ModelPoint.from_array(g).lift())
        h = 1e-7
        plus = apply(T, ModelPoint.from_array(h * u).lift()).to_model().as_array()
        minus = apply(T, ModelPoint.from_array(-h * u).lift()).to_model().as_array()
        return (plus - minus) / (2 * h)

    sol = solve_ivp(rhs, (0, s_end), np.zeros(3), method="DOP853", rtol=1e-11, atol=1e-12)
    return sol.y[:, -1]


@pytest.mark.parametrize("alpha", [0.0, 0.3, math.pi / 4, -math.pi / 4, 1.1, -1.3])
def test_closed_form_matches_translated_tangent_field(alpha):
    d = Direction(0.7, alpha)
    s = 0.6
    assert translation_curve_point(s, d).as_array() == pytest.approx(_tangent_field_oracle(d, s), abs=1e-7)


@given(st.floats(-math.pi, math.pi), st.floats(-1.5, 1.5), st.floats(0.0, 0.9))
def test_inverse_round_trip(lam, alpha, s):
    d = Direction(lam, alpha)
    try:
        p = translation_curve_point(s, d)
    except ChartError:
        return
    arc = translation_arc_to(p)
    assert arc.s == pytest.approx(s, abs=1e-9)
    if s > 1e-6:
        assert translation_curve_point(arc.s, arc.direction).as_array() == pytest.approx(p.as_array(), abs=1e-10)


def test_exterior_target_rejected():
    with pytest.raises(DomainError):
        translation_arc_to((0.0, 1.2, 0.0))


def test_chords_are_straight(rng):
    for _ in range(30):
        P, Q = interior_points(rng, 2, 0.4)
        assert is_straight_chord(P, Q)
        pts = translation_chord(P, Q)
        assert pts[0] == pytest.approx(P, abs=1e-12) and pts[-1] == pytest.approx(Q, abs=1e-10)


def test_are_collinear():
    assert are_collinear([[0, 0, 0], [1, 1, 1], [2, 2, 2]])
    assert not are_collinear([[0, 0, 0], [1, 0.1, 0], [2, 0, 0]])


def test_distance_invariant_under_translation(rng):
    for _ in range(20):
        P, Q, X = (ModelPoint.from_array(p).lift() for p in interior_points(rng, 3, 0.3))
        T = translation_to(X)
        assert translation_distance(apply(T, P), apply(T, Q)) == pytest.approx(translation_distance(P, Q), abs=1e-9)
