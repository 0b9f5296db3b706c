import math
from fractions import Fraction

import numpy as np
import pytest

from capchart import cca_closed_form, max_power_transfer
from capchart.capability import cca_closed_form_array
from capchart.errors import InvalidInputError
from capchart.oracle import cca_montecarlo
from capchart.optimizer import (
    Constraint,
    convexity_scan,
    grid_search,
    heatmap,
    in_triangle,
    optimize_convex,
    optimize_mpt,
    optimize_unconstrained,
)

CONVENTIONAL = math.sqrt(3) / 3


@pytest.fixture(scope="module")
def best():
    return optimize_unconstrained(0.002)


def brute_force_max(step=1e-4):
    # exhaustive fine lattice, no refinement
    a1 = np.arange(1 / 3, 0.5 + step / 2, step)
    a2 = np.arange(0.25, 0.5 + step / 2, step)
    A1, A2 = np.meshgrid(a1, a2, indexing="ij")
    ok = (A2 <= A1) & (A1 + 2 * A2 >= 1)
    vals = cca_closed_form_array(A1[ok], A2[ok], 1 - A1[ok] - A2[ok])
    k = np.argmax(vals)
    return vals[k], A1[ok][k], A2[ok][k]


def test_unconstrained_matches_reported(best):
    assert best.alpha.alpha == pytest.approx((0.454, 0.364, 0.182), abs=1e-3)
    assert best.cca == pytest.approx(0.945, abs=1e-3)
    assert best.constraint is Constraint.UNCONSTRAINED and best.grid_step == 0.002
    assert best.cca == pytest.approx(cca_closed_form(best.alpha), abs=1e-12)


def test_unconstrained_beats_conventional(best):
    assert best.cca >= CONVENTIONAL
    assert best.cca / CONVENTIONAL >= 1.63


def test_unconstrained_against_brute_force(best):
    val, a1, a2 = brute_force_max()
    assert abs(best.cca - val) <= 2e-4
    assert best.cca >= val - 1e-12
    assert (a1, a2) == pytest.approx(best.alpha.alpha[:2], abs=2e-4)


def test_rational_candidate_is_consistent(best):
    # observation, not an assumption: the refined optimum sits next to (5, 4, 2)/11
    assert best.alpha.alpha == pytest.approx((5 / 11, 4 / 11, 2 / 11), abs=1e-5)
    assert best.cca <= cca_closed_form((5 / 11, 4 / 11, 2 / 11)) + 1e-12


def test_refinement_never_worse_than_grid(best):
    assert best.cca >= grid_search(0.002)[2]


def test_deterministic(best):
    assert optimize_unconstrained(0.002) == best


@pytest.mark.parametrize("step", [0, -0.001, 0.02, float("nan")])
def test_invalid_step(step):
    with pytest.raises(InvalidInputError):
        optimize_unconstrained(step)
    with pytest.raises(InvalidInputError):
        optimize_mpt(step)


def test_mpt(best):
    r = optimize_mpt(0.002)
    assert r.alpha.alpha == pytest.approx((0.5, 1 / 3, 1 / 6), abs=1e-3)
    assert r.cca == pytest.approx(0.866, abs=1e-3)
    assert max_power_transfer(r.alpha) == 0.5
    drop = 1 - r.cca / best.cca
    assert drop == pytest.approx(0.08, abs=0.005)


def test_convex():
    r = optimize_convex(1e-4)
    assert r.alpha.alpha == pytest.approx((0.4, 0.4, 0.2), abs=1e-4)
    assert r.cca == pytest.approx(0.831, abs=1e-3)
    assert r.constraint is Constraint.CONVEX


def test_convex_invalid_tol():
    with pytest.raises(InvalidInputError):
        optimize_convex(0.01)


def test_convexity_single_crossing():
    ts, flags = convexity_scan()
    assert flags[0] and not flags[-1]
    switches = np.flatnonzero(flags[1:] != flags[:-1])
    assert len(switches) == 1
    assert ts[switches[0]] <= 0.4 < ts[switches[0] + 1]


def test_heatmap_cells_in_triangle():
    grid = heatmap(0.01)
    assert in_triangle(grid.alpha1, grid.alpha2, tol=1e-9).all()
    keys = list(zip(grid.alpha1, grid.alpha2))
    assert keys == sorted(keys)
    for a1, a2, c in grid.cells[::50]:
        assert c == pytest.approx(cca_closed_form((a1, a2, 1 - a1 - a2)), abs=1e-12)


def lattice_count(step: Fraction) -> int:
    n = 0
    i = 0
    while i * step <= Fraction(1, 2):
        j = 0
        while j * step <= i * step:
            a1, a2 = i * step, j * step
            if a1 + 2 * a2 >= 1:
                n += 1
            j += 1
        i += 1
    return n


@pytest.mark.parametrize("step", [Fraction(1, 50), Fraction(1, 100), Fraction(1, 200), Fraction(1, 500)])
def test_heatmap_row_count(step):
    assert len(heatmap(float(step))) == lattice_count(step)


def test_heatmap_values():
    grid = heatmap(0.002)
    assert grid.cca.max() == pytest.approx(0.945, abs=1e-3)
    k = int(np.argmin(np.hypot(grid.alpha1 - 1 / 3, grid.alpha2 - 1 / 3)))
    assert grid.cca[k] == pytest.approx(0.577, abs=5e-3)
    a1, a2, c = grid_search(0.002)
    k = int(np.argmax(grid.cca))
    assert (grid.alpha1[k], grid.alpha2[k], grid.cca[k]) == (a1, a2, c)


def test_heatmap_corner_against_monte_carlo():
    grid = heatmap(0.002)
    k = int(np.flatnonzero(np.isclose(grid.alpha1, 0.5) & np.isclose(grid.alpha2, 0.25))[0])
    est = cca_montecarlo((0.5, 0.25, 0.25), 1_000_000, seed=5)
    assert abs(grid.cca[k] - est.area) <= 4 * est.std_error


def test_heatmap_invalid_step():
    with pytest.raises(InvalidInputError):
        heatmap(0.05)
