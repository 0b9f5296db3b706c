"""
Monte Carlo estimate of the capability chart area.

Deliberately independent of ``capability`` and ``geometry``: points are drawn
in nominal coordinates (p1, p2) on the box [-1/2, 1/2]^2, membership is the
raw existential test over all 27 switch settings, and the plane-frame area
follows from the constant Jacobian sqrt(3).

Random numbers come from numpy's PCG64 bit generator seeded through
``numpy.random.default_rng(seed)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError

BOX_HALF_WIDTH = 0.5
CHUNK = 1 << 20


@dataclass(frozen=True)
class MonteCarloEstimate:
    area: float
    std_error: float
    samples: int
    seed: int


def _validate(raw_alpha: Sequence[float]) -> np.ndarray:
    a = np.asarray(raw_alpha, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise InvalidInputError("alpha must be 3 finite numbers")
    if np.any(a < 0):
        raise InvalidInputError("alpha entries must be non-negative")
    if abs(math.fsum(a) - 1.0) > 1e-9:
        raise InvalidInputError("alpha must sum to 1")
    return a


def capacity_vectors(alpha: Sequence[float]) -> np.ndarray:
    """Per-feeder capacity for every way of switching 3 converters onto 3 feeders."""
    caps = []
    for feeders in itertools.product(range(3), repeat=3):
        c = [0.0, 0.0, 0.0]
        for conv, f in enumerate(feeders):
            c[f] += alpha[conv]
        caps.append(c)
    return np.unique(np.array(caps), axis=0)


def membership(alpha: Sequence[float], p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """Boolean mask: can (p1, p2, -p1-p2) be realised by some switch setting?"""
    alpha = _validate(alpha)
    a1 = np.abs(p1)
    a2 = np.abs(p2)
    a3 = np.abs(p1 + p2)
    hit = np.zeros(np.shape(p1), dtype=bool)
    for c1, c2, c3 in capacity_vectors(alpha):
        hit |= (a1 <= c1) & (a2 <= c2) & (a3 <= c3)
    return hit


def cca_montecarlo(raw_alpha: Sequence[float], samples: int = 1_000_000, seed: int = 0) -> MonteCarloEstimate:
    alpha = _validate(raw_alpha)
    samples = int(samples)
    if samples < 1:
        raise InvalidInputError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining:
        n = min(CHUNK, remaining)
        p = rng.uniform(-BOX_HALF_WIDTH, BOX_HALF_WIDTH, size=(n, 2))
        hits += int(membership(alpha, p[:, 0], p[:, 1]).sum())
        remaining -= n
    box_area = (2 * BOX_HALF_WIDTH) ** 2
    frac = hits / samples
    scale = box_area * math.sqrt(3.0)
    return MonteCarloEstimate(
        area=frac * scale,
        std_error=math.sqrt(frac * (1.0 - frac) / samples) * scale,
        samples=samples,
        seed=seed,
    )
