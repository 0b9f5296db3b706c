"""
Coordinate frames and polygon primitives.

Feeder powers p = (p1, p2, p3) with p1 + p2 + p3 = 0 live on a plane in R^3.
Two 2-D charts of that plane are used throughout:

- nominal coordinates (p1, p2), with p3 implied; convenient but not isometric,
- plane coordinates (x, y) along the orthonormal in-plane basis

      e_x = (1, 0, -1) / sqrt(2),   e_y = (-1, 2, -1) / sqrt(6).

The map (p1, p2) -> (x, y) has Jacobian determinant sqrt(3), so areas in the
plane frame are sqrt(3) times larger than nominal areas.

Polygons are small (tens of vertices) and convex wherever clipping is
involved, so plain floating point with fixed tolerances is enough.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidInputError

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)

E_X = np.array([1.0, 0.0, -1.0]) / SQRT2
E_Y = np.array([-1.0, 2.0, -1.0]) / SQRT6
NORMAL = np.array([1.0, 1.0, 1.0]) / SQRT3

BALANCE_TOL = 1e-12
MERGE_TOL = 1e-12  # vertices closer than this are merged
AREA_TOL = 1e-12  # |signed area| at or below this is degenerate
CONVEX_TOL = 1e-9  # sine of turning angle
CROSS_TOL = 1e-14  # orientation determinants below this count as collinear

Point = tuple[float, float]


class PlanePoint(NamedTuple):
    x: float
    y: float


def check_balanced(p: Sequence[float], tol: float = BALANCE_TOL) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise InvalidInputError(f"power transfer must have 3 entries, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("power transfer must be finite")
    if abs(math.fsum(p)) > tol:
        raise InvalidInputError(f"power transfer not balanced: sum(p) = {math.fsum(p):.3e}")
    return p


def nominal_to_plane(p: Sequence[float]) -> PlanePoint:
    """Project a balanced feeder-power vector onto the orthonormal in-plane frame."""
    p = check_balanced(p)
    return PlanePoint(float(p @ E_X), float(p @ E_Y))


def plane_to_nominal(q: Sequence[float]) -> tuple[float, float, float]:
    x, y = q
    p = x * E_X + y * E_Y
    return (float(p[0]), float(p[1]), float(p[2]))


def nominal_xy_to_plane(p1, p2):
    """(p1, p2) -> (x, y) with p3 = -p1 - p2 implied. Works on scalars or arrays."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    x = (2.0 * p1 + p2) / SQRT2
    y = 3.0 * p2 / SQRT6
    return x, y


def plane_to_nominal_xy(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p2 = y * SQRT6 / 3.0
    p1 = (x * SQRT2 - p2) / 2.0
    return p1, p2


def signed_area(vertices: Sequence[Point]) -> float:
    n = len(vertices)
    if n < 3:
        return 0.0
    s = math.fsum(
        vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1]
        for i in range(n)
    )
    return 0.5 * s


def _merge_close(vertices: Sequence[Point], tol: float = MERGE_TOL) -> list[Point]:
    out: list[Point] = []
    for v in vertices:
        v = (float(v[0]), float(v[1]))
        if out and math.dist(out[-1], v) < tol:
            continue
        out.append(v)
    while len(out) > 1 and math.dist(out[0], out[-1]) < tol:
        out.pop()
    return out


@dataclass(frozen=True)
class ChartPolygon:
    """Boundary of a (possibly degenerate) region, counter-clockwise.

    Near-coincident consecutive vertices are merged on construction and
    clockwise input is reversed. The closing vertex is never repeated.
    """

    vertices: tuple[Point, ...] = ()

    def __post_init__(self):
        verts = _merge_close(self.vertices)
        if signed_area(verts) < 0:
            verts.reverse()
        object.__setattr__(self, "vertices", tuple(verts))

    def __len__(self):
        return len(self.vertices)

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3 or signed_area(self.vertices) <= AREA_TOL

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float).reshape(-1, 2)

    def map(self, fn) -> "ChartPolygon":
        """Apply ``fn(xs, ys) -> (xs', ys')`` vertex-wise."""
        a = self.as_array()
        if len(a) == 0:
            return ChartPolygon(())
        xs, ys = fn(a[:, 0], a[:, 1])
        return ChartPolygon(tuple(zip(np.atleast_1d(xs).tolist(), np.atleast_1d(ys).tolist())))


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    # proper crossings only; touching and collinear overlap (up to rounding) are ignored
    tol = CROSS_TOL
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    return (
        min(abs(d1), abs(d2), abs(d3), abs(d4)) > tol
        and (d1 > 0) != (d2 > 0)
        and (d3 > 0) != (d4 > 0)
    )


def is_self_intersecting(vertices: Sequence[Point]) -> bool:
    """Detect proper crossings between non-adjacent edges.

    Touching vertices and collinear overlaps are not reported; the polygons
    produced in this package never contain them except as degenerate slivers.
    """
    n = len(vertices)
    if n < 4:
        return False
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            c, d = vertices[j], vertices[(j + 1) % n]
            if _segments_cross(a, b, c, d):
                return True
    return False


def polygon_area(poly: ChartPolygon) -> float:
    """Shoelace area, zero for degenerate polygons."""
    if is_self_intersecting(poly.vertices):
        raise InvalidInputError("polygon is self-intersecting")
    if poly.is_degenerate:
        return 0.0
    return abs(signed_area(poly.vertices))


def turn_sines(vertices: Sequence[Point]) -> list[float]:
    """Sine of the turning angle at each vertex (positive = left turn)."""
    n = len(vertices)
    out = []
    for i in range(n):
        a, b, c = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        e1 = (b[0] - a[0], b[1] - a[1])
        e2 = (c[0] - b[0], c[1] - b[1])
        l1, l2 = math.hypot(*e1), math.hypot(*e2)
        if l1 == 0.0 or l2 == 0.0:
            out.append(0.0)
            continue
        out.append((e1[0] * e2[1] - e1[1] * e2[0]) / (l1 * l2))
    return out


def is_convex(poly: ChartPolygon, tol: float = CONVEX_TOL) -> bool:
    if poly.is_degenerate:
        return True
    verts = drop_collinear(poly.vertices)
    return all(s >= -tol for s in turn_sines(verts)) and not is_self_intersecting(verts)


def drop_collinear(vertices: Sequence[Point], tol: float = MERGE_TOL) -> list[Point]:
    """Remove vertices lying within ``tol`` of the chord joining their neighbours."""
    verts = list(vertices)
    i = 0
    while len(verts) > 3 and i < len(verts):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % len(verts)]
        chord = math.dist(a, c)
        forward = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) > 0
        if chord > 0 and forward and abs(_cross(a, b, c)) / chord <= tol:
            del verts[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return verts


def clip_halfplanes(vertices: Sequence[Point], edges: Sequence[tuple[Point, Point]]) -> list[Point]:
    """Sutherland-Hodgman: keep the part of ``vertices`` left of every directed edge.

    The subject may be non-convex; the result can then contain zero-width
    bridges, which do not change its shoelace area.
    """
    out = list(vertices)
    for c1, c2 in edges:
        if not out:
            break
        src, out = out, []
        dx, dy = c2[0] - c1[0], c2[1] - c1[1]

        def side(p):
            return dx * (p[1] - c1[1]) - dy * (p[0] - c1[0])

        s = src[-1]
        fs = side(s)
        for e in src:
            fe = side(e)
            if fe >= 0:
                if fs < 0:
                    t = fs / (fs - fe)
                    out.append((s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])))
                out.append(e)
            elif fs >= 0:
                if fs > 0:
                    t = fs / (fs - fe)
                    out.append((s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])))
            s, fs = e, fe
    return out


def edges_of(poly: ChartPolygon) -> list[tuple[Point, Point]]:
    v = poly.vertices
    return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


def clip_convex(subject: ChartPolygon, clip: ChartPolygon) -> ChartPolygon:
    """Intersection of two convex polygons (empty polygon if they do not overlap)."""
    for name, poly in (("subject", subject), ("clip", clip)):
        if not is_convex(poly):
            raise InvalidInputError(f"{name} polygon is not convex")
    if subject.is_degenerate or clip.is_degenerate:
        return ChartPolygon(())
    out = ChartPolygon(tuple(clip_halfplanes(subject.vertices, edges_of(clip))))
    if out.is_degenerate:
        return ChartPolygon(())
    return out


def point_in_polygon(poly: ChartPolygon, q: Point, tol: float = 1e-9) -> bool:
    """Even-odd test; points within ``tol`` of the boundary count as inside."""
    v = poly.vertices
    n = len(v)
    if n == 0:
        return False
    for a, b in edges_of(poly) if n > 1 else [(v[0], v[0])]:
        if _dist_to_segment(q, a, b) <= tol:
            return True
    if n < 3:
        return False
    inside = False
    x, y = q
    for i in range(n):
        (x1, y1), (x2, y2) = v[i], v[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


def _dist_to_segment(q: Point, a: Point, b: Point) -> float:
    ax, ay = b[0] - a[0], b[1] - a[1]
    L2 = ax * ax + ay * ay
    if L2 == 0.0:
        return math.dist(q, a)
    t = ((q[0] - a[0]) * ax + (q[1] - a[1]) * ay) / L2
    t = min(1.0, max(0.0, t))
    return math.hypot(q[0] - (a[0] + t * ax), q[1] - (a[1] + t * ay))


def segment_intersection(a: Point, b: Point, c: Point, d: Point, tol: float = 1e-12) -> Point | None:
    """Intersection point of segments ab and cd, or None (parallel segments -> None)."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    if abs(den) < 1e-300:
        return None
    qp = (c[0] - a[0], c[1] - a[1])
    t = (qp[0] * s[1] - qp[1] * s[0]) / den
    u = (qp[0] * r[1] - qp[1] * r[0]) / den
    if -tol <= t <= 1 + tol and -tol <= u <= 1 + tol:
        return (a[0] + t * r[0], a[1] + t * r[1])
    return None
