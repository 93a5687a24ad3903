"""Unit tests for planar primitives: ellipse, lines, polygon measures,
inversions. Frozen numeric oracles were computed by hand or with exact
arithmetic and are asserted to tight tolerances."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from billiardlab.geometry import (
    DegenerateGeometryError,
    Ellipse,
    Line,
    area_centroid,
    curvature,
    ellipse_frame,
    foot_of_perpendicular,
    internal_angles,
    invert_in_circle,
    invert_in_ellipse,
    perimeter,
    side_lengths,
    signed_area,
    steiner_curvature_centroid,
    vertex_centroid,
)

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
RIGHT_TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
angles = st.floats(min_value=0.0, max_value=2.0 * np.pi, allow_nan=False)


# ---------------------------------------------------------------------------
# Ellipse
# ---------------------------------------------------------------------------

class TestEllipse:
    def test_focal_distance_and_foci(self):
        E = Ellipse(2.0, 1.0)
        assert E.focal_distance == pytest.approx(np.sqrt(3.0), abs=1e-15)
        f1, f2 = E.foci
        # f1 on the positive major axis, f2 its mirror
        assert f1 == pytest.approx([np.sqrt(3.0), 0.0], abs=1e-15)
        assert f2 == pytest.approx([-np.sqrt(3.0), 0.0], abs=1e-15)

    def test_circle_has_coincident_foci(self):
        E = Ellipse(1.0, 1.0)
        assert E.focal_distance == 0.0

    def test_invalid_axes_rejected(self):
        with pytest.raises(ValueError):
            Ellipse(1.0, 2.0)
        with pytest.raises(ValueError):
            Ellipse(1.0, 0.0)

    def test_point_and_implicit(self):
        E = Ellipse(2.0, 1.0)
        p = E.point(np.pi / 4)
        assert p == pytest.approx([np.sqrt(2.0), np.sqrt(2.0) / 2.0], abs=1e-15)
        assert abs(E.implicit(p)) < 1e-15
        assert E.contains_on_boundary(p)
        assert not E.contains_on_boundary(np.array([0.0, 0.0]))

    @given(t=angles)
    def test_parametric_points_on_boundary(self, t):
        E = Ellipse(3.0, 1.5)
        assert abs(E.implicit(E.point(t))) < 1e-12


# ---------------------------------------------------------------------------
# Line
# ---------------------------------------------------------------------------

class TestLine:
    def test_from_points_and_contains(self):
        L = Line.from_points([2.0, 0.0], [0.0, 1.0])
        assert L.contains(np.array([1.0, 0.5]))
        assert not L.contains(np.array([0.0, 0.0]))

    def test_uv_round_trip(self):
        # x/2 + y = 1 through (2,0) and (0,1)
        L = Line.from_points([2.0, 0.0], [0.0, 1.0])
        u, v = L.uv()
        assert (u, v) == pytest.approx((0.5, 1.0), abs=1e-14)
        L2 = Line.from_uv(u, v)
        assert L2.contains(np.array([2.0, 0.0])) and L2.contains(np.array([0.0, 1.0]))

    def test_line_through_origin_has_no_uv(self):
        L = Line.from_points([-1.0, -1.0], [2.0, 2.0])
        assert L.uv() is None

    def test_degenerate_inputs(self):
        with pytest.raises(DegenerateGeometryError):
            Line.from_points([1.0, 1.0], [1.0, 1.0])
        with pytest.raises(DegenerateGeometryError):
            Line.from_uv(0.0, 0.0)


def test_ellipse_frame_quarter_turn():
    E = Ellipse(2.0, 1.0)
    fr = ellipse_frame(E, np.pi / 2)
    assert fr["point"] == pytest.approx([0.0, 1.0], abs=1e-15)
    assert fr["unit_normal"] == pytest.approx([0.0, 1.0], abs=1e-15)
    assert fr["unit_tangent"] == pytest.approx([-1.0, 0.0], abs=1e-15)
    # tangent line at (0, 1) is y = 1
    assert fr["tangent_line"].uv() == pytest.approx((0.0, 1.0), abs=1e-14)


@given(t=angles)
@settings(max_examples=50)
def test_frame_normal_tangent_orthogonal(t):
    fr = ellipse_frame(Ellipse(2.0, 1.0), t)
    assert abs(fr["unit_normal"] @ fr["unit_tangent"]) < 1e-12


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

class TestCurvature:
    def test_vertex_values(self):
        E = Ellipse(2.0, 1.0)
        # kappa = a/b^2 at the major vertex, b/a^2 at the minor vertex
        assert curvature(E, np.array([2.0, 0.0])) == pytest.approx(2.0, rel=1e-14)
        assert curvature(E, np.array([0.0, 1.0])) == pytest.approx(0.25, rel=1e-14)

    def test_circle_is_constant(self):
        E = Ellipse(3.0, 3.0)
        for t in np.linspace(0, 2 * np.pi, 7):
            assert curvature(E, E.point(t)) == pytest.approx(1.0 / 3.0, rel=1e-13)

    def test_off_boundary_point_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            curvature(Ellipse(2.0, 1.0), np.array([0.0, 0.0]))

    @given(t=angles)
    @settings(max_examples=50)
    def test_parametric_form_agreement(self, t):
        # kappa(t) = a b / (a^2 sin^2 t + b^2 cos^2 t)^(3/2)
        E = Ellipse(2.0, 1.0)
        expected = E.a * E.b / (E.a**2 * np.sin(t) ** 2 + E.b**2 * np.cos(t) ** 2) ** 1.5
        assert curvature(E, E.point(t)) == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# polygon measures
# ---------------------------------------------------------------------------

class TestPolygonMeasures:
    def test_square(self):
        assert signed_area(SQUARE) == pytest.approx(1.0, abs=1e-15)
        assert signed_area(SQUARE[::-1]) == pytest.approx(-1.0, abs=1e-15)
        assert perimeter(SQUARE) == pytest.approx(4.0, abs=1e-15)
        assert side_lengths(SQUARE) == pytest.approx(np.ones(4), abs=1e-15)
        assert area_centroid(SQUARE) == pytest.approx([0.5, 0.5], abs=1e-15)
        assert vertex_centroid(SQUARE) == pytest.approx([0.5, 0.5], abs=1e-15)
        assert internal_angles(SQUARE) == pytest.approx(np.full(4, np.pi / 2), abs=1e-12)

    def test_right_triangle(self):
        assert signed_area(RIGHT_TRIANGLE) == pytest.approx(0.5, abs=1e-15)
        ang = internal_angles(RIGHT_TRIANGLE)
        assert ang[0] == pytest.approx(np.pi / 2, abs=1e-12)
        assert ang[1] == pytest.approx(np.pi / 4, abs=1e-12)
        assert np.sum(ang) == pytest.approx(np.pi, abs=1e-12)

    def test_area_centroid_rejects_flat_polygon(self):
        flat = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        with pytest.raises(DegenerateGeometryError):
            area_centroid(flat)

    @given(dx=finite, dy=finite)
    @settings(max_examples=50)
    def test_translation_equivariance(self, dx, dy):
        shift = np.array([dx, dy])
        assert signed_area(SQUARE + shift) == pytest.approx(1.0, abs=1e-12)
        assert area_centroid(SQUARE + shift) == pytest.approx(
            np.array([0.5, 0.5]) + shift, abs=1e-10)

    @given(s=st.floats(min_value=0.1, max_value=10.0))
    @settings(max_examples=50)
    def test_area_scales_quadratically(self, s):
        assert signed_area(s * RIGHT_TRIANGLE) == pytest.approx(0.5 * s * s, rel=1e-12)


class TestSteinerPoint:
    def test_triangle_gives_circumcenter(self):
        # circumcenter of the right triangle is the hypotenuse midpoint
        assert steiner_curvature_centroid(RIGHT_TRIANGLE) == pytest.approx(
            [0.5, 0.5], abs=1e-12)

    @given(t1=angles, t2=angles, t3=angles)
    @settings(max_examples=50)
    def test_random_triangle_equidistant(self, t1, t2, t3):
        ts = np.array([t1, t2, t3])
        if np.min(np.abs(np.subtract.outer(ts, ts))[np.triu_indices(3, 1)]) < 0.2:
            return  # nearly coincident vertices: not a meaningful triangle
        P = np.column_stack([np.cos(ts), np.sin(ts)])  # inscribed in unit circle
        try:
            S = steiner_curvature_centroid(P)
        except DegenerateGeometryError:
            return
        d = np.linalg.norm(P - S, axis=1)
        assert np.max(d) - np.min(d) < 1e-8


# ---------------------------------------------------------------------------
# inversions
# ---------------------------------------------------------------------------

class TestCircleInversion:
    def test_known_values(self):
        c = np.array([0.0, 0.0])
        assert invert_in_circle(np.array([2.0, 0.0]), c) == pytest.approx(
            [0.5, 0.0], abs=1e-15)
        assert invert_in_circle(np.array([2.0, 0.0]), c, radius=2.0) == pytest.approx(
            [2.0, 0.0], abs=1e-15)

    def test_center_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            invert_in_circle(np.array([1.0, 1.0]), np.array([1.0, 1.0]))

    @given(x=finite, y=finite, cx=finite, cy=finite)
    @settings(max_examples=100)
    def test_involution(self, x, y, cx, cy):
        p = np.array([x, y])
        c = np.array([cx, cy])
        if np.linalg.norm(p - c) < 1e-3:
            return
        q = invert_in_circle(invert_in_circle(p, c), c)
        assert q == pytest.approx(p, abs=1e-9)

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(0)
        pts = rng.normal(size=(8, 2)) + 3.0
        c = np.array([0.5, -0.25])
        batch = invert_in_circle(pts, c)
        for p, q in zip(pts, batch):
            assert invert_in_circle(p, c) == pytest.approx(q, abs=1e-14)


class TestEllipseInversion:
    def test_axis_points(self):
        E = Ellipse(2.0, 1.0)
        assert invert_in_ellipse(np.array([4.0, 0.0]), E) == pytest.approx(
            [1.0, 0.0], abs=1e-12)
        assert invert_in_ellipse(np.array([0.0, 3.0]), E) == pytest.approx(
            [0.0, 1.0 / 3.0], abs=1e-12)

    def test_boundary_points_fixed(self):
        E = Ellipse(2.0, 1.0)
        for t in np.linspace(0.1, 2 * np.pi, 7):
            p = E.point(t)
            assert invert_in_ellipse(p, E) == pytest.approx(p, abs=1e-9)

    def test_interior_point_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            invert_in_ellipse(np.array([0.1, 0.1]), Ellipse(2.0, 1.0))

    def test_circle_special_case_matches_circle_inversion(self):
        E = Ellipse(1.5, 1.5)
        p = np.array([3.0, 1.0])
        expected = invert_in_circle(p, np.zeros(2), radius=1.5)
        assert invert_in_ellipse(p, E) == pytest.approx(expected, abs=1e-12)


def test_foot_of_perpendicular_oracle():
    # m = (sqrt(3), 0) onto the line through (2,0) and (0,1)
    L = Line.from_points([2.0, 0.0], [0.0, 1.0])
    foot = foot_of_perpendicular(np.array([np.sqrt(3.0), 0.0]), L)
    expected = np.array([(4.0 * np.sqrt(3.0) + 2.0) / 5.0, (4.0 - 2.0 * np.sqrt(3.0)) / 5.0])
    assert foot == pytest.approx(expected, abs=1e-14)
    assert L.contains(foot)


@given(mx=finite, my=finite)
@settings(max_examples=50)
def test_foot_is_on_line_and_perpendicular(mx, my):
    L = Line.from_points([2.0, 0.0], [0.0, 1.0])
    m = np.array([mx, my])
    foot = foot_of_perpendicular(m, L)
    assert L.contains(foot, tol=1e-8)
    assert abs((m - foot) @ L.direction) < 1e-8
