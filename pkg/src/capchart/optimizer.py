"""Sizing search over the feasible triangle: grid evaluation plus local refinement."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .capability import (
    ConverterSizing,
    canonicalize,
    cca_closed_form,
    cca_closed_form_array,
    is_convex_chart,
)
from .errors import InvalidInputError

DEFAULT_STEP = 0.002
HALVINGS = 12
CONVEX_SCAN_STEP = 1e-3
BISECT_WIDTH = 1e-10
_TOL = 1e-9


class Constraint(str, Enum):
    UNCONSTRAINED = "unconstrained"
    MPT = "mpt"
    CONVEX = "convex"


@dataclass(frozen=True)
class OptimizationResult:
    alpha: ConverterSizing
    cca: float
    constraint: Constraint
    grid_step: float


@dataclass(frozen=True)
class HeatmapGrid:
    step: float
    alpha1: np.ndarray
    alpha2: np.ndarray
    cca: np.ndarray

    @property
    def cells(self) -> list[tuple[float, float, float]]:
        return list(zip(self.alpha1.tolist(), self.alpha2.tolist(), self.cca.tolist()))

    def __len__(self):
        return len(self.cca)


def _check_step(step: float, upper: float) -> float:
    step = float(step)
    if not (0.0 < step <= upper) or not math.isfinite(step):
        raise InvalidInputError(f"step must lie in (0, {upper}], got {step!r}")
    return step


def in_triangle(a1, a2, tol: float = _TOL):
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    return (a1 <= 0.5 + tol) & (a2 <= a1 + tol) & (a1 + 2 * a2 >= 1 - tol)


def _cca(a1, a2):
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    return cca_closed_form_array(a1, a2, 1.0 - a1 - a2)


def heatmap(step: float) -> HeatmapGrid:
    """Closed-form CCA on the lattice (i*step, j*step) inside the feasible triangle.

    Cells are in lexicographic (alpha1, alpha2) order.
    """
    step = _check_step(step, 0.02)
    i = np.arange(math.floor(1 / 3 / step), math.ceil(0.5 / step) + 1)
    j = np.arange(math.floor(0.25 / step), math.ceil(0.5 / step) + 1)
    I, J = np.meshgrid(i, j, indexing="ij")
    a1 = (I * step).ravel()
    a2 = (J * step).ravel()
    keep = in_triangle(a1, a2, tol=_TOL * step)
    a1, a2 = a1[keep], a2[keep]
    return HeatmapGrid(step, a1, a2, _cca(a1, a2))


def _argmax_first(values: np.ndarray) -> int:
    # candidates are already in lexicographic order, so the first max wins ties
    return int(np.argmax(values))


def grid_search(step: float) -> tuple[float, float, float]:
    """Best lattice cell before refinement: (alpha1, alpha2, cca)."""
    grid = heatmap(step)
    k = _argmax_first(grid.cca)
    return float(grid.alpha1[k]), float(grid.alpha2[k]), float(grid.cca[k])


def _refine_2d(a1, a2, best, h, halvings=HALVINGS, radius=2):
    offs = np.arange(-radius, radius + 1)
    for _ in range(halvings):
        h /= 2
        d1, d2 = np.meshgrid(offs * h, offs * h, indexing="ij")
        c1 = (a1 + d1).ravel()
        c2 = (a2 + d2).ravel()
        ok = in_triangle(c1, c2, tol=0.0)
        c1, c2 = c1[ok], c2[ok]
        vals = _cca(c1, c2)
        k = _argmax_first(vals)
        if vals[k] > best:
            a1, a2, best = float(c1[k]), float(c2[k]), float(vals[k])
    return a1, a2, best


def optimize_unconstrained(step: float = DEFAULT_STEP) -> OptimizationResult:
    step = _check_step(step, 0.01)
    a1, a2, best = grid_search(step)
    a1, a2, best = _refine_2d(a1, a2, best, step)
    s = canonicalize((a1, a2, 1.0 - a1 - a2))
    return OptimizationResult(s, cca_closed_form(s), Constraint.UNCONSTRAINED, step)


def optimize_mpt(step: float = DEFAULT_STEP) -> OptimizationResult:
    """Best sizing with the largest converter at 1/2 pu (full transfer capability)."""
    step = _check_step(step, 0.01)
    a2 = np.arange(math.ceil(0.25 / step - _TOL), math.floor(0.5 / step + _TOL) + 1) * step
    a2 = a2[(a2 >= 0.25 - _TOL) & (a2 <= 0.5 + _TOL)]
    vals = _cca(np.full_like(a2, 0.5), a2)
    k = _argmax_first(vals)
    x, best = float(a2[k]), float(vals[k])
    h = step
    offs = np.arange(-2, 3)
    for _ in range(HALVINGS):
        h /= 2
        c = x + offs * h
        c = c[(c >= 0.25) & (c <= 0.5)]
        v = _cca(np.full_like(c, 0.5), c)
        k = _argmax_first(v)
        if v[k] > best:
            x, best = float(c[k]), float(v[k])
    s = canonicalize((0.5, x, 0.5 - x))
    return OptimizationResult(s, cca_closed_form(s), Constraint.MPT, step)


def _diagonal(t: float) -> ConverterSizing:
    return canonicalize((t, t, 1.0 - 2.0 * t))


def convexity_scan(step: float = CONVEX_SCAN_STEP) -> tuple[np.ndarray, np.ndarray]:
    """Convexity of the chart along alpha = (t, t, 1 - 2t), t in [1/3, 1/2]."""
    n = int(round((0.5 - 1 / 3) / step))
    ts = np.linspace(1 / 3, 0.5, n + 1)
    flags = np.array([is_convex_chart(_diagonal(t)) for t in ts])
    return ts, flags


def optimize_convex(tol: float = 1e-4) -> OptimizationResult:
    """Largest t with a convex chart along the diagonal alpha[1] = alpha[2].

    A coarse scan checks the predicate switches from convex to non-convex
    exactly once; bisection then narrows the bracket well below ``tol``.
    If the scan finds several switches the best scanned point is returned.
    """
    tol = float(tol)
    if not (0.0 < tol <= 1e-3):
        raise InvalidInputError(f"tol must lie in (0, 1e-3], got {tol!r}")
    ts, flags = convexity_scan()
    switches = np.flatnonzero(flags[1:] != flags[:-1])
    if not flags[0] or len(switches) != 1:
        t = float(ts[flags][-1]) if flags.any() else 1 / 3
    else:
        lo, hi = float(ts[switches[0]]), float(ts[switches[0] + 1])
        while hi - lo > min(tol, BISECT_WIDTH):
            mid = 0.5 * (lo + hi)
            if is_convex_chart(_diagonal(mid)):
                lo = mid
            else:
                hi = mid
        t = lo
    s = _diagonal(t)
    return OptimizationResult(s, cca_closed_form(s), Constraint.CONVEX, tol)
