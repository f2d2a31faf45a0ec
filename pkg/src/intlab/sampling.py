"""Deterministic quasi-random sampling away from singular loci.

Points come from an unscrambled Halton sequence over a declared rectangle,
so every run sees the same points.  A point is admissible when each singular
locus L keeps a first-order distance estimate |L| / (1 + |grad L|) above the
margin; this rejects points whose coordinate distance to the zero set is
below the margin without ever solving for the locus.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.stats import qmc

from .fields import Field
from .jets import JetError

__all__ = ["Region", "sample_points", "SamplingError", "MARGIN", "EPS_SING"]

MARGIN = 0.05
EPS_SING = 1e-6


class SamplingError(RuntimeError):
    pass


class Region:
    """Axis-aligned rectangle {var: (lo, hi)} with a fixed variable order."""

    def __init__(self, bounds: dict[str, tuple[float, float]]):
        self.vars = tuple(bounds)
        self.bounds = {v: (float(lo), float(hi)) for v, (lo, hi) in bounds.items()}
        for v, (lo, hi) in self.bounds.items():
            if not hi > lo:
                raise ValueError(f"degenerate range for {v!r}: [{lo}, {hi}]")

    def scale(self, unit: np.ndarray) -> np.ndarray:
        los = np.array([self.bounds[v][0] for v in self.vars])
        his = np.array([self.bounds[v][1] for v in self.vars])
        return los + unit * (his - los)


def _admissible(point: tuple[complex, ...], loci: Sequence[Field],
                margin: float, eps_sing: float) -> bool:
    for locus in loci:
        try:
            j = locus.jet(point, (1,) * len(locus.vars))
        except (JetError, ValueError, ArithmeticError):
            return False
        val = abs(j.value)
        if val <= eps_sing:
            return False
        grad = sum(abs(j.extract(*_unit(len(locus.vars), ax)))
                   for ax in range(len(locus.vars)))
        if val <= margin * grad + eps_sing:
            return False
    return True


def _unit(d: int, ax: int) -> tuple[int, ...]:
    idx = [0] * d
    idx[ax] = 1
    return tuple(idx)


def sample_points(region: Region, count: int, loci: Sequence[Field] = (),
                  margin: float = MARGIN, eps_sing: float = EPS_SING,
                  max_draw_factor: int = 200) -> list[tuple[complex, ...]]:
    """First ``count`` admissible Halton points in the region.

    Raises :class:`SamplingError` when fewer than count/2 admissible points
    exist within the draw budget (region dominated by singular loci).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    sampler = qmc.Halton(d=len(region.vars), scramble=False)
    sampler.fast_forward(1)  # skip the origin corner
    points: list[tuple[complex, ...]] = []
    drawn = 0
    budget = max(count * max_draw_factor, 64)
    while len(points) < count and drawn < budget:
        batch = region.scale(sampler.random(32))
        drawn += 32
        for row in batch:
            pt = tuple(complex(c) for c in row)
            if _admissible(pt, loci, margin, eps_sing):
                points.append(pt)
                if len(points) == count:
                    break
    if len(points) < max(1, count // 2):
        raise SamplingError(
            f"only {len(points)} admissible points of {count} requested; "
            "region is dominated by singular loci"
        )
    return points
