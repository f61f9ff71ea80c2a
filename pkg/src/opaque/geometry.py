"""Planar primitives and convex-polygon computations.

Everything downstream (barrier construction, verification) consumes the
operations here: polygon validation, widths, rotating-calipers style
enumerations, projections.

Conventions:
  * polygons are counterclockwise vertex cycles, strictly convex;
  * undirected line directions live in [0, pi), oriented directions in
    [0, 2*pi);
  * the projection axis for direction theta is the unit normal
    n(theta) = (-sin theta, cos theta).

Tolerances scale with the polygon diameter so behavior is size invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# Relative tolerance factors (scaled by diameter, or diameter**2 for areas).
TOL_GEOM_REL = 1e-9
TOL_TOUCH_REL = 1e-7
TOL_AREA_REL = 1e-12
TOL_ANG = 1e-12


class PolygonError(ValueError):
    """Base class for polygon validation failures."""


class TooFewVertices(PolygonError):
    pass


class NotStrictlyConvex(PolygonError):
    pass


class WrongOrientation(PolygonError):
    pass


class DuplicateVertex(PolygonError):
    pass


class InconsistentIncircle(PolygonError):
    """Numerical-tolerance failure in the incircle touching-edge analysis."""


class Point2(NamedTuple):
    x: float
    y: float


def canon_line_angle(theta: float) -> float:
    """Normalize an undirected line direction into [0, pi)."""
    t = math.fmod(theta, math.pi)
    if t < 0.0:
        t += math.pi
    if t >= math.pi - 1e-15:
        t = 0.0
    return t


def canon_oriented_angle(theta: float) -> float:
    """Normalize an oriented direction into [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI - 1e-15:
        t = 0.0
    return t


def cross2(a, b):
    """z component of the cross product of planar vectors (broadcasts)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def unit_vector(theta: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta)])


def unit_normal(theta: float) -> np.ndarray:
    """Projection axis for direction theta: n(theta) = (-sin, cos)."""
    return np.array([-math.sin(theta), math.cos(theta)])


@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Strip:
    """Parallel strip: bounding lines of direction ``direction`` at signed
    offsets ``lo`` and ``hi`` along the lines' unit normal."""

    direction: float
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class OrientedRectangle:
    corners: tuple[Point2, Point2, Point2, Point2]  # counterclockwise
    side_x: float
    side_y: float

    @property
    def perimeter(self) -> float:
        return 2.0 * (self.side_x + self.side_y)


class ConvexPolygon:
    """Validated counterclockwise strictly convex vertex cycle.

    Construct through :func:`validate_polygon`; the constructor runs the
    same checks.
    """

    def __init__(self, vertices: Sequence[tuple[float, float]]):
        pts = [Point2(float(p[0]), float(p[1])) for p in vertices]
        _check_polygon(pts)
        self.vertices: tuple[Point2, ...] = tuple(pts)
        self._coords = np.array(pts, dtype=float)
        self._perimeter: float | None = None
        self._diameter: float | None = None
        self._cum: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"ConvexPolygon({len(self.vertices)} vertices)"

    @property
    def coords(self) -> np.ndarray:
        """(n, 2) float array of vertices, counterclockwise."""
        return self._coords

    @property
    def edge_lengths(self) -> np.ndarray:
        d = np.roll(self._coords, -1, axis=0) - self._coords
        return np.hypot(d[:, 0], d[:, 1])

    @property
    def cumulative_lengths(self) -> np.ndarray:
        """cum[i] = boundary length from vertex 0 to vertex i, counterclockwise."""
        if self._cum is None:
            self._cum = np.concatenate(([0.0], np.cumsum(self.edge_lengths)[:-1]))
        return self._cum

    @property
    def perimeter(self) -> float:
        if self._perimeter is None:
            self._perimeter = float(self.edge_lengths.sum())
        return self._perimeter

    @property
    def diameter(self) -> float:
        """Largest vertex-to-vertex distance (antipodal two-pointer sweep)."""
        if self._diameter is None:
            self._diameter = _convex_diameter(self._coords)
        return self._diameter

    @property
    def tol_geom(self) -> float:
        return TOL_GEOM_REL * self.diameter

    @property
    def tol_touch(self) -> float:
        return TOL_TOUCH_REL * self.diameter

    @property
    def tol_area(self) -> float:
        return TOL_AREA_REL * self.diameter ** 2

    def edge_normals_offsets(self) -> tuple[np.ndarray, np.ndarray]:
        """Inward unit normals m_i and offsets o_i with interior
        {q : m_i . q >= o_i for all i}."""
        v = self._coords
        e = np.roll(v, -1, axis=0) - v
        lengths = np.hypot(e[:, 0], e[:, 1])
        m = np.column_stack([-e[:, 1], e[:, 0]]) / lengths[:, None]
        o = np.einsum("ij,ij->i", m, v)
        return m, o


def _convex_diameter(coords: np.ndarray) -> float:
    n = len(coords)
    if n == 3:
        d = np.roll(coords, -1, axis=0) - coords
        return float(np.hypot(d[:, 0], d[:, 1]).max())
    best = 0.0
    j = 1
    nxt = np.roll(coords, -1, axis=0)
    edges = nxt - coords
    for i in range(n):
        # advance j while the next vertex is farther from edge i
        while True:
            jn = (j + 1) % n
            cur = float(cross2(edges[i], coords[j] - coords[i]))
            nxtv = float(cross2(edges[i], coords[jn] - coords[i]))
            if nxtv > cur:
                j = jn
            else:
                break
        for k in (i, (i + 1) % n):
            d = float(np.hypot(*(coords[j] - coords[k])))
            if d > best:
                best = d
    return best


def _check_polygon(pts: list[Point2]) -> None:
    n = len(pts)
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")
    arr = np.array(pts, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise PolygonError("non-finite vertex coordinate")
    span = float(np.hypot(*(arr.max(axis=0) - arr.min(axis=0))))
    if span <= 0.0:
        raise DuplicateVertex("all vertices coincide")
    tol_dup = TOL_GEOM_REL * span
    d = np.roll(arr, -1, axis=0) - arr
    close = np.hypot(d[:, 0], d[:, 1]) <= tol_dup
    if np.any(close):
        i = int(np.nonzero(close)[0][0])
        raise DuplicateVertex(f"vertices {i} and {(i + 1) % n} coincide")
    # non-consecutive duplicates would also break strict convexity, but give
    # the sharper diagnostic
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    s = arr[order]
    same = np.hypot(*(s[1:] - s[:-1]).T) <= tol_dup
    if np.any(same):
        k = int(np.nonzero(same)[0][0])
        i, j = sorted((int(order[k]), int(order[k + 1])))
        raise DuplicateVertex(f"vertices {i} and {j} coincide")
    cross = cross2(d, np.roll(d, -1, axis=0))
    area2 = float(cross2(arr, np.roll(arr, -1, axis=0)).sum())
    tol_area = TOL_AREA_REL * span ** 2
    if area2 < -tol_area:
        raise WrongOrientation("vertices are clockwise (pass counterclockwise, "
                               "or use --auto-orient in the CLI)")
    if np.any(cross <= tol_area):
        i = int(np.argmin(cross))
        raise NotStrictlyConvex(
            f"collinear or reflex turn at vertex {(i + 1) % n}")


def validate_polygon(points: Sequence[tuple[float, float]]) -> ConvexPolygon:
    """Validate a counterclockwise strictly convex vertex cycle.

    Raises TooFewVertices, NotStrictlyConvex, WrongOrientation or
    DuplicateVertex; input order is preserved.
    """
    return ConvexPolygon(points)


def perimeter(poly: ConvexPolygon) -> float:
    return poly.perimeter


def width_in_direction(poly: ConvexPolygon, alpha: float) -> float:
    """Extent of the polygon along direction alpha: the minimum width of an
    enclosing strip whose bounding lines are orthogonal to alpha."""
    u = unit_vector(alpha)
    proj = poly.coords @ u
    return float(proj.max() - proj.min())


def min_width(poly: ConvexPolygon) -> tuple[float, float, Strip]:
    """Minimum width over all directions, by edge-flush enumeration.

    Returns (alpha_star, w, strip): the minimizing direction in [0, pi),
    the width, and the enclosing strip whose lines are orthogonal to
    alpha_star and flush against an edge.  Ties resolve to the smallest
    canonical angle.
    """
    m, o = poly.edge_normals_offsets()
    proj = poly.coords @ m.T          # (n_vertices, n_edges)
    widths = proj.max(axis=0) - o     # distance of farthest vertex to edge line
    wmin = float(widths.min())
    tol = TOL_AREA_REL * poly.diameter
    candidates = np.nonzero(widths <= wmin + tol)[0]
    # alpha = direction of the inward normal, canonicalized
    alphas = [canon_line_angle(math.atan2(m[i, 1], m[i, 0])) for i in candidates]
    k = int(candidates[int(np.argmin(alphas))])
    alpha_star = canon_line_angle(math.atan2(m[k, 1], m[k, 0]))
    line_dir = canon_line_angle(alpha_star + math.pi / 2.0)
    nrm = unit_normal(line_dir)
    offs = poly.coords @ nrm
    return alpha_star, float(widths[k]), Strip(line_dir, float(offs.min()), float(offs.max()))


def min_perimeter_rectangle(poly: ConvexPolygon) -> OrientedRectangle:
    """Minimum-perimeter enclosing rectangle (edge-flush enumeration).

    One side is flush with a polygon edge; ties resolve to the smallest
    canonical orientation angle (mod pi/2).
    """
    v = poly.coords
    e = np.roll(v, -1, axis=0) - v
    lens = np.hypot(e[:, 0], e[:, 1])
    u = e / lens[:, None]
    best = None
    tol = TOL_GEOM_REL * poly.diameter
    for i in range(len(v)):
        ux, uy = u[i]
        s = v @ (ux, uy)
        t = v @ (-uy, ux)
        dx = float(s.max() - s.min())
        dy = float(t.max() - t.min())
        per = dx + dy
        ang = math.fmod(math.atan2(uy, ux), math.pi / 2.0)
        if ang < 0.0:
            ang += math.pi / 2.0
        key = (per, ang)
        if best is None or per < best[0][0] - tol or (per < best[0][0] + tol and ang < best[0][1]):
            best = (key, i, float(s.min()), float(s.max()), float(t.min()), float(t.max()))
    _, i, s0, s1, t0, t1 = best
    ux, uy = u[i]
    uvec = np.array([ux, uy])
    nvec = np.array([-uy, ux])
    corners = tuple(
        Point2(*(s * uvec + t * nvec))
        for s, t in ((s0, t0), (s1, t0), (s1, t1), (s0, t1))
    )
    return OrientedRectangle(corners, s1 - s0, t1 - t0)


def project(obj, theta: float) -> Interval:
    """Interval of dot products with n(theta) = (-sin, cos).

    Accepts a ConvexPolygon, a Segment, or a sequence of points (polyline).
    """
    nrm = unit_normal(theta)
    if isinstance(obj, ConvexPolygon):
        proj = obj.coords @ nrm
    elif isinstance(obj, Segment):
        proj = np.array([obj.a, obj.b]) @ nrm
    else:
        proj = np.asarray(obj, dtype=float) @ nrm
    return Interval(float(proj.min()), float(proj.max()))


def polyline_length(points: Sequence[tuple[float, float]]) -> float:
    arr = np.asarray(points, dtype=float)
    d = np.diff(arr, axis=0)
    return float(np.hypot(d[:, 0], d[:, 1]).sum())
