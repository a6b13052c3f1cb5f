"""Integer angular bookkeeping for spokes on a uniform ray system.

All spoke positions are integer multiples of 2*pi/n_base, so gap arithmetic
is exact.  A SpokeSet stores its spokes in cyclic angular order up to
rotation; the stored rotation matters because downstream placement rules
address spokes by stored position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpokeSet:
    """Spokes on the uniform n_base-ray system.

    labels  -- 1-based ray indices, shape (k,); ray with label j points at
               angle 2*pi*(j-1)/n_base.
    units   -- integer angular positions in [0, n_base), same order as labels.
               Consecutive stored spokes are adjacent in cyclic angular order.
    """

    n_base: int
    labels: np.ndarray
    units: np.ndarray

    def __post_init__(self):
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        units = np.ascontiguousarray(self.units, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "units", units)
        if self.n_base < 1:
            raise ValueError(f"n_base must be >= 1, got {self.n_base}")
        if labels.shape != units.shape or labels.ndim != 1 or len(labels) == 0:
            raise ValueError("labels and units must be equal-length 1-d arrays")
        if np.any(units < 0) or np.any(units >= self.n_base):
            raise ValueError("units must lie in [0, n_base)")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def unit_angle(self) -> float:
        return TWO_PI / self.n_base

    def gaps(self) -> np.ndarray:
        """Integer gap from each stored spoke to its stored successor,
        cyclically.  Sums exactly to n_base."""
        u = self.units
        if len(u) == 1:
            return np.array([self.n_base])
        return (np.roll(u, -1) - u) % self.n_base

    def angles(self) -> np.ndarray:
        return self.units * (TWO_PI / self.n_base)


def uniform_spokes(n: int) -> SpokeSet:
    """The full uniform system of n spokes, labels 1..n in angular order."""
    if n < 1:
        raise ValueError(f"need at least one spoke, got {n}")
    return SpokeSet(n, np.arange(1, n + 1), np.arange(n))


def split_spokes(s: SpokeSet) -> Tuple[SpokeSet, SpokeSet]:
    """Split off every second spoke for the current round.

    Returns (survivors, consumed).  Consumed spokes are those at even stored
    positions (1-based: 2, 4, ...).  The survivors keep cyclic order but are
    rotated so that the formerly last stored spoke comes first, which places
    the two possibly-smaller gaps at stored slots 1 and 2.
    """
    k = len(s)
    if k < 3:
        raise ValueError(f"need at least 3 spokes to split, got {k}")
    consumed = SpokeSet(s.n_base, s.labels[1::2], s.units[1::2])
    keep_labels = np.roll(s.labels[0::2], 1)
    keep_units = np.roll(s.units[0::2], 1)
    survivors = SpokeSet(s.n_base, keep_labels, keep_units)
    return survivors, consumed


def opening_angle(label: int, s: SpokeSet) -> float:
    """Largest spoke-free wedge opening centered at the spoke with the given
    label: twice the smaller adjacent gap, capped at 2*pi."""
    if len(s) < 2:
        raise ValueError("need at least 2 spokes")
    hits = np.nonzero(s.labels == label)[0]
    if len(hits) == 0:
        raise ValueError(f"no spoke with label {label}")
    position = int(hits[0])
    g = s.gaps()
    units = min(int(g[position - 1]), int(g[position]))
    return min(2.0 * units * s.unit_angle, TWO_PI)


def is_well_separated(s: SpokeSet) -> bool:
    """Check the gap shape the splitting loop maintains: all gaps equal to the
    maximum g except at most two, those lie at stored slots 1-2 and 2-3, and
    each is at least ceil(g/2).  Sets of one or two spokes pass trivially."""
    k = len(s)
    if k <= 2:
        return True
    g = s.gaps()
    gmax = int(g.max())
    if np.any(g[2:] != gmax):
        return False
    lo = (gmax + 1) // 2
    return bool(g[0] >= lo and g[1] >= lo)
