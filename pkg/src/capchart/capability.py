"""
Capability charts of a three-terminal multiplexed AC-DC-AC converter.

Each of the three AC-DC converters (ratings alpha, per unit, summing to 1)
is switched onto exactly one feeder. For a configuration B the feeders see
capacities B @ alpha and the achievable transfers are

    {p : |p| <= B @ alpha elementwise, sum(p) = 0}.

The capability chart is the union of these sets over all 27 configurations.
Two routes to its area are provided: the piecewise-quadratic closed form
(``cca_closed_form``) and an exact union of convex polygons
(``cca_from_chart``), which do not share code.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import geometry as geo
from .errors import InvalidInputError, UnsupportedInputError
from .geometry import ChartPolygon

SUM_TOL = 1e-9
FEASIBLE_TOL = 1e-12
N_HALF_ARMS = 12


@dataclass(frozen=True)
class ConverterSizing:
    """Converter ratings in descending order, summing to one."""

    alpha: tuple[float, float, float]

    def __post_init__(self):
        a = tuple(float(x) for x in self.alpha)
        if len(a) != 3:
            raise InvalidInputError("alpha must have 3 entries")
        if not (a[0] >= a[1] >= a[2] >= 0.0):
            raise InvalidInputError(f"alpha must be non-negative and descending, got {a}")
        if abs(math.fsum(a) - 1.0) > SUM_TOL:
            raise InvalidInputError(f"alpha must sum to 1 (got {math.fsum(a)!r})")
        object.__setattr__(self, "alpha", a)

    @property
    def feasible(self) -> bool:
        """True inside the characterised triangle, alpha[1] <= 1/2."""
        return self.alpha[0] <= 0.5 + FEASIBLE_TOL

    def __iter__(self):
        return iter(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]


def canonicalize(raw: Sequence[float]) -> ConverterSizing:
    a = [float(x) for x in raw]
    if len(a) != 3:
        raise InvalidInputError(f"alpha must have 3 entries, got {len(a)}")
    if any(not math.isfinite(x) for x in a):
        raise InvalidInputError("alpha entries must be finite")
    if any(x < 0 for x in a):
        raise InvalidInputError(f"alpha entries must be non-negative, got {a}")
    total = math.fsum(a)
    if abs(total - 1.0) > SUM_TOL:
        raise InvalidInputError(f"alpha must sum to 1 within {SUM_TOL:g} (sum = {total!r})")
    a = sorted((x / total for x in a), reverse=True)
    return ConverterSizing(tuple(a))


def as_sizing(s) -> ConverterSizing:
    return s if isinstance(s, ConverterSizing) else canonicalize(s)


def require_feasible(s) -> ConverterSizing:
    s = as_sizing(s)
    if not s.feasible:
        raise UnsupportedInputError(
            f"alpha[1] = {s.alpha[0]!r} violates alpha[1] <= 1/2; "
            "the chart is only characterised on the feasible triangle"
        )
    return s


@dataclass(frozen=True)
class MuxConfiguration:
    """Multiplexer states; column i of ``B`` selects the feeder for converter i."""

    B: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        B = np.asarray(self.B)
        if B.shape != (3, 3) or not np.isin(B, (0, 1)).all():
            raise InvalidInputError("B must be a 3x3 binary matrix")
        if not (B.sum(axis=0) == 1).all():
            raise InvalidInputError("each converter must connect to exactly one feeder")
        object.__setattr__(self, "B", tuple(tuple(int(v) for v in row) for row in B))

    @classmethod
    def from_assignment(cls, feeders: Sequence[int]) -> "MuxConfiguration":
        """``feeders[i]`` is the (0-based) feeder converter i is switched onto."""
        B = np.zeros((3, 3), dtype=int)
        for conv, feeder in enumerate(feeders):
            B[feeder, conv] = 1
        return cls(tuple(map(tuple, B)))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.B, dtype=float)

    @property
    def assignment(self) -> tuple[int, int, int]:
        B = np.array(self.B)
        return tuple(int(np.argmax(B[:, i])) for i in range(3))

    @property
    def is_permutation(self) -> bool:
        return len(set(self.assignment)) == 3


@lru_cache(maxsize=None)
def _all_configurations() -> tuple[MuxConfiguration, ...]:
    # converter 1's feeder varies slowest, feeders ascending
    return tuple(
        MuxConfiguration.from_assignment(f) for f in itertools.product(range(3), repeat=3)
    )


def enumerate_configurations() -> list[MuxConfiguration]:
    return list(_all_configurations())


def permutation_configurations() -> list[MuxConfiguration]:
    return [B for B in _all_configurations() if B.is_permutation]


def feeder_capacity(B: MuxConfiguration, s) -> np.ndarray:
    s = as_sizing(s)
    return B.matrix @ np.array(s.alpha)


def balanced_box(caps: Sequence[float]) -> ChartPolygon:
    """{p : |p_i| <= caps_i, sum p = 0} as a polygon in plane coordinates."""
    c1, c2, c3 = (float(c) for c in caps)
    square = [(-c1, -c2), (c1, -c2), (c1, c2), (-c1, c2)]
    # strip |p1 + p2| <= c3 as two directed lines, inside on the left
    strip = [((1.0, c3 - 1.0), (-1.0, c3 + 1.0)), ((-1.0, -c3 + 1.0), (1.0, -c3 - 1.0))]
    nominal = geo.clip_halfplanes(square, strip)
    if not nominal:
        return ChartPolygon(())
    p1 = [v[0] for v in nominal]
    p2 = [v[1] for v in nominal]
    xs, ys = geo.nominal_xy_to_plane(p1, p2)
    return ChartPolygon(tuple(zip(xs.tolist(), ys.tolist())))


def configuration_polygon(B: MuxConfiguration, s) -> ChartPolygon:
    return balanced_box(feeder_capacity(B, s))


def perfect_boundary() -> ChartPolygon:
    """Envelope |p_i| <= 1/2 of every physical design."""
    return balanced_box((0.5, 0.5, 0.5))


def _margins(points: np.ndarray, poly: ChartPolygon) -> np.ndarray:
    """Signed distance to the nearest edge line of a convex polygon (>0 inside)."""
    v = poly.as_array()
    a = v
    b = np.roll(v, -1, axis=0)
    e = b - a
    L = np.hypot(e[:, 0], e[:, 1])
    d = points[:, None, :] - a[None, :, :]
    cross = e[None, :, 0] * d[:, :, 1] - e[None, :, 1] * d[:, :, 0]
    return (cross / L[None, :]).min(axis=1)


def _segment_distance(points: np.ndarray, a, b) -> np.ndarray:
    a = np.asarray(a)
    ab = np.asarray(b) - a
    L2 = float(ab @ ab)
    if L2 == 0.0:
        return np.hypot(*(points - a).T)
    t = np.clip(((points - a) @ ab) / L2, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.hypot(*(points - proj).T)


def union_boundary(polys: Sequence[ChartPolygon], eps: float = geo.MERGE_TOL) -> ChartPolygon:
    """Boundary of a union of convex polygons that all contain the origin.

    Such a union is star-shaped about the origin, so its boundary vertices
    (polygon vertices and edge crossings not interior to any member) can be
    ordered by angle. Degenerate members (segments through the origin) that
    reach beyond the 2-D part are kept as zero-width spokes: the boundary
    walks out to the segment tip and back, which leaves the area unchanged.
    """
    solid = [P for P in polys if not P.is_degenerate]
    thin = [P for P in polys if P.is_degenerate and len(P) > 0]
    if not solid:
        return _star(thin, eps)

    cands = [v for P in solid for v in P.vertices]
    edge_lists = [geo.edges_of(P) for P in solid]
    for i, j in itertools.combinations(range(len(edge_lists)), 2):
        for a, b in edge_lists[i]:
            for c, d in edge_lists[j]:
                q = geo.segment_intersection(a, b, c, d)
                if q is not None:
                    cands.append(q)
    pts = np.array(cands, dtype=float)
    margins = np.stack([_margins(pts, P) for P in solid], axis=1)
    keep = (margins >= -eps).any(axis=1) & ~(margins > eps).any(axis=1)
    pts = pts[keep]

    ang = np.arctan2(pts[:, 1], pts[:, 0])
    order = np.lexsort((np.hypot(pts[:, 0], pts[:, 1]), ang))
    verts = geo._merge_close([tuple(p) for p in pts[order]], eps)
    verts = geo.drop_collinear(verts)

    tips = [v for P in thin for v in P.vertices]
    if tips:
        arr = np.array(tips)
        outside = np.stack([_margins(arr, P) for P in solid], axis=1).max(axis=1) < -eps
        unique: list = []
        for tip in map(tuple, arr[outside]):
            if all(math.dist(tip, u) >= eps for u in unique):
                unique.append(tip)
        for tip in sorted(unique, key=lambda t: math.atan2(t[1], t[0])):
            verts = _insert_spoke(verts, tip, eps)
    return ChartPolygon(tuple(verts))


def _star(thin: Sequence[ChartPolygon], eps: float) -> ChartPolygon:
    """Zero-area walk origin -> tip -> origin -> ... over segment endpoints."""
    tips: list = []
    for v in (v for P in thin for v in P.vertices):
        if math.hypot(*v) >= eps and all(math.dist(v, u) >= eps for u in tips):
            tips.append(v)
    if not tips:
        return ChartPolygon(())
    walk = []
    for tip in sorted(tips, key=lambda t: math.atan2(t[1], t[0])):
        walk += [(0.0, 0.0), tip]
    return ChartPolygon(tuple(walk))


def _insert_spoke(verts: list, tip, eps: float) -> list:
    """Insert base -> tip -> base where the ray towards ``tip`` leaves the polygon."""
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        q = geo.segment_intersection(a, b, (0.0, 0.0), (2 * tip[0], 2 * tip[1]))
        if q is None or geo._cross((0.0, 0.0), a, b) <= 0:
            continue
        if math.dist(q, a) < 1e-9:
            return verts[: i + 1] + [tip, a] + verts[i + 1:]
        if math.dist(q, b) < 1e-9:
            j = (i + 1) % n
            return verts[: j + 1] + [tip, b] + verts[j + 1:]
        return verts[: i + 1] + [q, tip, q] + verts[i + 1:]
    raise RuntimeError(f"no boundary crossing towards spoke tip {tip}")


def chart(s, all_configurations: bool = False) -> ChartPolygon:
    """Capability chart boundary (plane coordinates) for a feasible sizing.

    By default only the 6 one-to-one configurations are united, giving the
    area-bearing region. Every other configuration parallels two converters,
    empties a feeder and yields a segment; with ``all_configurations=True``
    those segments are added and any part sticking out of the region shows up
    as a zero-width spoke (it does whenever alpha[1] > alpha[2]).
    """
    s = require_feasible(s)
    configs = enumerate_configurations() if all_configurations else permutation_configurations()
    polys = [configuration_polygon(B, s) for B in configs]
    C = union_boundary(polys)
    if not C.is_degenerate:
        for P in polys:
            for v in P.vertices:
                if not geo.point_in_polygon(C, v, tol=1e-9):
                    raise RuntimeError(f"chart does not contain configuration vertex {v}")
    return C


def contains(s, p: Sequence[float]) -> MuxConfiguration | None:
    """First configuration (in enumeration order) able to realise transfer p."""
    s = as_sizing(s)
    p = np.abs(geo.check_balanced(p))
    for B in _all_configurations():
        if np.all(p <= feeder_capacity(B, s) + 1e-12):
            return B
    return None


@dataclass(frozen=True)
class RegionDecomposition:
    beta1: float
    beta2: float
    delta_beta: float
    r1: float
    r2: float
    r3: float

    @property
    def half_arm_area(self) -> float:
        """Nominal-frame area of one half-arm."""
        return self.r1 + self.r2 + self.r3


def region_decomposition(s) -> RegionDecomposition:
    """Split one half-arm (p1 >= p2 >= 0) into a triangle, rectangle and trapezoid."""
    a1, a2, a3 = require_feasible(s).alpha
    beta1 = min(a3, a1 / 2)
    beta2 = max(a1 - a3, a1 / 2)
    delta_beta = a2 - beta2
    r1 = beta1**2 / 2
    r2 = beta1 * (beta2 - beta1)
    r3 = delta_beta * (beta1 - delta_beta / 2)
    return RegionDecomposition(beta1, beta2, delta_beta, r1, r2, r3)


def cca_closed_form(s) -> float:
    r = region_decomposition(s)
    return N_HALF_ARMS * geo.SQRT3 * (r.r1 + r.r2 + r.r3)


def cca_closed_form_array(a1, a2, a3):
    """Vectorised ``cca_closed_form`` for canonical feasible sizings (no validation)."""
    a1, a2, a3 = (np.asarray(v, dtype=float) for v in (a1, a2, a3))
    beta1 = np.minimum(a3, a1 / 2)
    beta2 = np.maximum(a1 - a3, a1 / 2)
    db = a2 - beta2
    total = beta1**2 / 2 + beta1 * (beta2 - beta1) + db * (beta1 - db / 2)
    return N_HALF_ARMS * geo.SQRT3 * total


def union_area(polys: Sequence[ChartPolygon]) -> float:
    """Area of a union of convex polygons by full inclusion-exclusion."""
    polys = [P for P in polys if not P.is_degenerate]
    total = 0.0
    # depth-first over subsets so each intersection is clipped once
    def walk(start, current, depth):
        nonlocal total
        for k in range(start, len(polys)):
            inter = polys[k] if current is None else geo.clip_convex(current, polys[k])
            if inter.is_degenerate:
                continue
            sign = 1.0 if depth % 2 == 0 else -1.0
            total += sign * abs(geo.signed_area(inter.vertices))
            walk(k + 1, inter, depth + 1)

    walk(0, None, 0)
    return total


def cca_from_chart(s, all_configurations: bool = False) -> float:
    s = require_feasible(s)
    configs = enumerate_configurations() if all_configurations else permutation_configurations()
    return union_area([configuration_polygon(B, s) for B in configs])


def max_power_transfer(s) -> float:
    a1, a2, a3 = as_sizing(s).alpha
    return min(a1, a2 + a3)


def is_convex_chart(s) -> bool:
    """Convexity of the chart; zero-area charts count as not convex."""
    C = chart(s)
    if C.is_degenerate:
        return False
    return geo.is_convex(C)


@lru_cache(maxsize=None)
def symmetry_group() -> tuple[np.ndarray, ...]:
    """The 12 signed feeder permutations mapping every chart onto itself."""
    mats = []
    for perm in itertools.permutations(range(3)):
        P = np.eye(3)[list(perm)]
        for sign in (1.0, -1.0):
            mats.append(sign * P)
    return tuple(mats)


def transform_polygon(poly: ChartPolygon, M: np.ndarray) -> ChartPolygon:
    """Apply a linear map of feeder-power space to a plane-coordinate polygon."""
    a = poly.as_array()
    if len(a) == 0:
        return poly
    p = a[:, :1] * geo.E_X + a[:, 1:] * geo.E_Y
    q = p @ M.T
    return ChartPolygon(tuple(zip((q @ geo.E_X).tolist(), (q @ geo.E_Y).tolist())))


def half_arm_wedges() -> list[ChartPolygon]:
    """12 triangles (plane coordinates) images of the wedge p1 >= p2 >= 0."""
    base = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, -1.0], [1.0, 1.0, -2.0]])
    out = []
    for M in symmetry_group():
        q = base @ M.T
        out.append(ChartPolygon(tuple(zip((q @ geo.E_X).tolist(), (q @ geo.E_Y).tolist()))))
    return out


def half_arm_areas(s) -> list[float]:
    """Plane-frame area of the chart inside each of the 12 half-arm wedges."""
    C = chart(s)
    if C.is_degenerate:
        return [0.0] * N_HALF_ARMS
    return [
        abs(geo.signed_area(geo.clip_halfplanes(C.vertices, geo.edges_of(W))))
        for W in half_arm_wedges()
    ]


def random_feasible_sizings(n: int, seed: int = 0) -> list[ConverterSizing]:
    """Uniform samples from the feasible triangle, by rejection from its bounding box."""
    rng = np.random.default_rng(seed)
    out: list[ConverterSizing] = []
    while len(out) < n:
        a1 = rng.uniform(1 / 3, 0.5, size=2 * n)
        a2 = rng.uniform(0.25, 0.5, size=2 * n)
        ok = (a2 <= a1) & (a1 + 2 * a2 >= 1)
        for x, y in zip(a1[ok], a2[ok]):
            out.append(canonicalize((x, y, 1.0 - x - y)))
            if len(out) == n:
                break
    return out
