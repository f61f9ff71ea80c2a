import math

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from opaque import (
    DuplicateVertex,
    NotStrictlyConvex,
    Point2,
    Segment,
    TooFewVertices,
    WrongOrientation,
    min_perimeter_rectangle,
    min_width,
    perimeter,
    project,
    validate_polygon,
    width_in_direction,
)
from opaque.geometry import PolygonError, polyline_length

from conftest import regular_ngon

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class TestValidation:
    def test_square_ok(self):
        poly = validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert len(poly) == 4
        assert poly.vertices[2] == Point2(1.0, 1.0)

    def test_too_few(self):
        with pytest.raises(TooFewVertices):
            validate_polygon([(0, 0), (1, 1)])

    def test_collinear(self):
        with pytest.raises(NotStrictlyConvex):
            validate_polygon([(0, 0), (1, 0), (2, 0)])

    def test_reflex(self):
        with pytest.raises(NotStrictlyConvex):
            validate_polygon([(0, 0), (2, 0), (1, 0.1), (2, 2), (0, 2)])

    def test_collinear_triple_on_boundary(self):
        with pytest.raises(NotStrictlyConvex):
            validate_polygon([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])

    def test_clockwise_rejected(self):
        with pytest.raises(WrongOrientation):
            validate_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_consecutive_duplicate(self):
        with pytest.raises(DuplicateVertex) as exc:
            validate_polygon([(0, 0), (0, 0), (1, 0), (1, 1)])
        assert "0" in str(exc.value)

    def test_nonconsecutive_duplicate(self):
        with pytest.raises(DuplicateVertex):
            validate_polygon([(0, 0), (1, 0), (1, 1), (0, 0.5), (1, 0)])

    def test_nonfinite(self):
        with pytest.raises(PolygonError):
            validate_polygon([(0, 0), (1, 0), (math.nan, 1)])

    def test_input_order_preserved(self):
        pts = [(1, 0), (1, 1), (0, 1), (0, 0)]
        poly = validate_polygon(pts)
        assert [tuple(v) for v in poly.vertices] == [(1.0, 0.0), (1.0, 1.0),
                                                     (0.0, 1.0), (0.0, 0.0)]


class TestBasics:
    def test_perimeter_square(self, square):
        assert perimeter(square) == pytest.approx(4.0, abs=1e-12)

    def test_diameter_matches_brute_force(self, medium_polys):
        for poly in medium_polys:
            assert poly.diameter == pytest.approx(
                float(pdist(poly.coords).max()), rel=1e-12)

    def test_polyline_length(self):
        assert polyline_length([(0, 0), (1, 0), (1, 1)]) == pytest.approx(2.0)

    def test_width_square_axis(self, square):
        assert width_in_direction(square, 0.0) == pytest.approx(1.0)
        assert width_in_direction(square, math.pi / 4) == pytest.approx(SQRT2)

    def test_width_equals_projection_extent(self, medium_polys):
        rng = np.random.default_rng(5)
        for poly in medium_polys[:10]:
            for alpha in rng.uniform(0, math.pi, 8):
                u = np.array([math.cos(alpha), math.sin(alpha)])
                proj = poly.coords @ u
                assert width_in_direction(poly, alpha) == pytest.approx(
                    float(proj.max() - proj.min()), abs=1e-12)

    def test_projection_identity(self, medium_polys):
        # projecting onto the normal axis of theta equals the width at
        # direction theta + pi/2
        poly = medium_polys[0]
        for theta in (0.0, 0.3, 1.1, 2.8):
            iv = project(poly, theta)
            assert iv.length == pytest.approx(
                width_in_direction(poly, theta + math.pi / 2), abs=1e-12)

    def test_project_segment(self):
        seg = Segment(Point2(0, 0), Point2(2, 0))
        iv = project(seg, math.pi / 2)  # vertical line direction, x-axis offsets
        assert (iv.lo, iv.hi) == pytest.approx((-2.0, 0.0))


class TestMinWidth:
    def test_square(self, square):
        alpha, w, strip = min_width(square)
        assert w == pytest.approx(1.0, abs=1e-12)
        assert alpha == pytest.approx(0.0, abs=1e-12)  # smallest-angle tie
        assert strip.width == pytest.approx(1.0, abs=1e-12)

    def test_thin_rectangle(self):
        poly = validate_polygon([(0, 0), (5, 0), (5, 1), (0, 1)])
        alpha, w, strip = min_width(poly)
        assert w == pytest.approx(1.0, abs=1e-12)
        assert alpha == pytest.approx(math.pi / 2, abs=1e-12)

    def test_equilateral_height(self):
        poly = validate_polygon([(0, 0), (1, 0), (0.5, SQRT3 / 2)])
        _, w, _ = min_width(poly)
        assert w == pytest.approx(SQRT3 / 2, abs=1e-12)

    def test_dense_grid_oracle(self, medium_polys):
        alphas = np.linspace(0, math.pi, 4001, endpoint=False)
        for poly in medium_polys[:15]:
            _, w, _ = min_width(poly)
            u = np.column_stack([np.cos(alphas), np.sin(alphas)])
            proj = poly.coords @ u.T
            grid_min = float((proj.max(axis=0) - proj.min(axis=0)).min())
            # grid minimum can only overestimate the true minimum, and by at
            # most one angular step times the Lipschitz constant (the diameter)
            assert w <= grid_min + 1e-12
            assert grid_min <= w + poly.diameter * (math.pi / 4001)


class TestMinPerimeterRectangle:
    def test_square(self, square):
        rect = min_perimeter_rectangle(square)
        assert rect.perimeter == pytest.approx(4.0, abs=1e-12)
        assert sorted((rect.side_x, rect.side_y)) == pytest.approx([1.0, 1.0])

    def test_hexagon(self):
        # flush with one pair of opposite edges: sides sqrt(3) and 2
        rect = min_perimeter_rectangle(regular_ngon(6))
        assert rect.perimeter == pytest.approx(2 * (2 + SQRT3), abs=1e-9)

    def test_contains_polygon(self, medium_polys):
        for poly in medium_polys:
            rect = min_perimeter_rectangle(poly)
            c = np.array(rect.corners)
            u = c[1] - c[0]
            v = c[3] - c[0]
            rel = poly.coords - c[0]
            s = rel @ u / (u @ u)
            t = rel @ v / (v @ v)
            assert s.min() >= -1e-9 and s.max() <= 1 + 1e-9
            assert t.min() >= -1e-9 and t.max() <= 1 + 1e-9

    def test_dense_grid_oracle(self, medium_polys):
        alphas = np.linspace(0, math.pi / 2, 2001, endpoint=False)
        u = np.column_stack([np.cos(alphas), np.sin(alphas)])
        n = np.column_stack([-np.sin(alphas), np.cos(alphas)])
        for poly in medium_polys[:15]:
            rect = min_perimeter_rectangle(poly)
            s = poly.coords @ u.T
            t = poly.coords @ n.T
            pers = (s.max(axis=0) - s.min(axis=0)) + (t.max(axis=0) - t.min(axis=0))
            grid_min = 2 * float(pers.min())
            assert rect.perimeter <= grid_min + 1e-12
            assert grid_min <= rect.perimeter + 4 * poly.diameter * (math.pi / 2 / 2001)


def test_cauchy_width_integral(medium_polys):
    """Mean width over all directions times pi equals the perimeter."""
    alphas = np.linspace(0, math.pi, 20001)
    for poly in medium_polys[:10]:
        u = np.column_stack([np.cos(alphas), np.sin(alphas)])
        proj = poly.coords @ u.T
        widths = proj.max(axis=0) - proj.min(axis=0)
        integral = float(np.trapezoid(widths, alphas))
        assert integral == pytest.approx(poly.perimeter, rel=1e-6)
