import math

import numpy as np
import pytest

from capchart import cca_closed_form
from capchart.errors import InvalidInputError
from capchart.oracle import capacity_vectors, cca_montecarlo, membership

THIRD = (1 / 3, 1 / 3, 1 / 3)


def test_conventional_estimate():
    est = cca_montecarlo(THIRD, 1_000_000, seed=0)
    assert abs(est.area - 0.577) <= 4 * est.std_error
    assert est.samples == 1_000_000 and est.seed == 0


def test_two_converters_zero():
    est = cca_montecarlo((0.5, 0.5, 0.0), 200_000, seed=7)
    assert est.area == 0.0 and est.std_error == 0.0


def test_deterministic_per_seed():
    a = cca_montecarlo((0.5, 0.4, 0.1), 300_000, seed=42)
    b = cca_montecarlo((0.5, 0.4, 0.1), 300_000, seed=42)
    c = cca_montecarlo((0.5, 0.4, 0.1), 300_000, seed=43)
    assert a == b
    assert a.area != c.area


def test_chunking_does_not_change_result(monkeypatch):
    from capchart import oracle

    a = cca_montecarlo((0.45, 0.35, 0.2), 50_000, seed=3)
    monkeypatch.setattr(oracle, "CHUNK", 50_000)
    b = cca_montecarlo((0.45, 0.35, 0.2), 50_000, seed=3)
    assert a == b


def test_standard_error_formula():
    est = cca_montecarlo((0.45, 0.35, 0.2), 100_000, seed=1)
    frac = est.area / math.sqrt(3)
    assert est.std_error == pytest.approx(math.sqrt(frac * (1 - frac) / 100_000) * math.sqrt(3), rel=1e-12)


@pytest.mark.parametrize("raw", [(0.5, 0.5), (-0.1, 0.6, 0.5), (0.4, 0.4, 0.4)])
def test_invalid_sizing(raw):
    with pytest.raises(InvalidInputError):
        cca_montecarlo(raw, 10)


def test_invalid_samples():
    with pytest.raises(InvalidInputError):
        cca_montecarlo(THIRD, 0)


def test_infeasible_sizing_accepted():
    est = cca_montecarlo((0.6, 0.3, 0.1), 100_000, seed=0)
    assert est.area > 0


def test_capacity_vectors_cover_all_switchings():
    caps = capacity_vectors((0.45, 0.35, 0.2))
    assert len(caps) == 27
    assert np.allclose(caps.sum(axis=1), 1.0)


@pytest.mark.parametrize("alpha", [THIRD, (0.5, 0.4, 0.1), (0.6, 0.3, 0.1), (0.7, 0.2, 0.1), (0.454, 0.364, 0.182)])
def test_no_member_outside_box(alpha):
    rng = np.random.default_rng(11)
    p = rng.uniform(-1, 1, size=(400_000, 2))
    hit = membership(alpha, p[:, 0], p[:, 1])
    outside = (np.abs(p) > 0.5).any(axis=1)
    assert hit.any()
    assert not (hit & outside).any()


def test_consistency_over_seeds():
    alpha = (0.47, 0.33, 0.2)
    exact = cca_closed_form(alpha)
    ok = 0
    for seed in range(100):
        est = cca_montecarlo(alpha, 1_000_000, seed)
        ok += abs(est.area - exact) <= 4 * est.std_error
    assert ok >= 99
