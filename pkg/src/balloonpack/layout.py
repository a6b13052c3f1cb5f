"""Greedy balloon layout engines.

Places n disks with prescribed radii on rays of a uniform angular grid, one
disk per ray, growing outward in rounds.  Three variants: all rays carry a
disk (covering radius <= 2*sum(r)), one ray left free (<= 2*sum(r)), or two
rays left free with separating angle >= 2*pi/3 (<= KAPPA*sum(r)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .angles import SpokeSet, uniform_spokes
from .geometry import KAPPA, compact_factor, wedge_center_distance

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Layer:
    round: int
    kind: str  # "contact" | "wedge"
    safe_before: float
    width: float
    spokes: int  # spokes available when the round started


class Placement(NamedTuple):
    balloon: int  # index into the original radii sequence
    spoke_label: int
    center_distance: float


@dataclass(frozen=True)
class Layout:
    n_base: int
    radii: np.ndarray  # original order
    order: np.ndarray  # permutation; radii[order] is the processing order
    variant: int  # number of free spokes: 0, 1 or 2
    balloon: np.ndarray  # per placement: original balloon index
    spoke_label: np.ndarray
    spoke_unit: np.ndarray
    center: np.ndarray
    round_index: np.ndarray
    wedge_opening: np.ndarray  # opening (radians) whose confinement the placement guarantees
    compactified: np.ndarray  # bool; True for a final balloon placed by compactification
    free_labels: np.ndarray
    free_units: np.ndarray
    free_angle: Optional[float]  # smaller angle between the two free spokes, iff variant == 2
    layers: Tuple[Layer, ...]
    covering_radius: float

    @property
    def placements(self) -> List[Placement]:
        return [
            Placement(int(b), int(s), float(c))
            for b, s, c in zip(self.balloon, self.spoke_label, self.center)
        ]


def _check_radii(radii) -> np.ndarray:
    r = np.asarray(radii, dtype=float)
    if r.ndim != 1 or len(r) == 0:
        raise ValueError("need a non-empty 1-d sequence of radii")
    if not np.all(r > 0.0) or not np.all(np.isfinite(r)):
        raise ValueError("all radii must be positive and finite")
    return r


def _stable_sort(r: np.ndarray) -> np.ndarray:
    return np.argsort(r, kind="stable")


def weakly_order(radii) -> np.ndarray:
    """Permutation putting the radii into weakly ordered form in linear time.

    Weakly ordered: the first element is the minimum, everything before
    position floor(n/2) is <= the lower median, that position holds the
    median, and the suffix is recursively weakly ordered.
    """
    r = _check_radii(radii)
    perm = np.arange(len(r))
    lo = 0
    n = len(r)
    while n - lo > 1:
        m = n - lo
        k = m // 2  # 1-based median position within the segment
        seg = perm[lo:n]
        if k >= 1:
            part = np.argpartition(r[seg], k - 1)
            seg = seg[part]
        j = int(np.argmin(r[seg[:k]]))
        seg[0], seg[j] = seg[j], seg[0]
        perm[lo:n] = seg
        lo += k
    return perm


def is_weakly_ordered(radii) -> bool:
    r = np.asarray(radii, dtype=float)
    if r.ndim != 1:
        return False
    lo = 0
    n = len(r)
    while n - lo > 1:
        m = n - lo
        k = m // 2
        seg = r[lo:n]
        median = float(np.partition(seg, k - 1)[k - 1])
        if seg[0] != seg.min():
            return False
        if np.any(seg[: k - 1] > median):
            return False
        if seg[k - 1] != median:
            return False
        lo += k
    return True


class _Run:
    """Mutable state for one greedy run."""

    def __init__(self, r: np.ndarray, order: np.ndarray, n_base: int):
        n = len(r)
        base = uniform_spokes(n_base)
        self.n_base = n_base
        self.unit = TWO_PI / n_base
        self.units = base.units
        self.labels = base.labels
        self.r_sorted = r[order]
        self.idx_sorted = order.copy()
        self.k0 = 0  # balloons consumed so far
        self.safe = 0.0
        self.layers: List[Layer] = []
        self.bal = np.empty(n, dtype=np.int64)
        self.sp_label = np.empty(n, dtype=np.int64)
        self.sp_unit = np.empty(n, dtype=np.int64)
        self.center = np.empty(n, dtype=float)
        self.rnd = np.empty(n, dtype=np.int64)
        self.phi = np.empty(n, dtype=float)
        self.compact = np.zeros(n, dtype=bool)
        self.fill = 0

    def gaps(self) -> np.ndarray:
        u = self.units
        return (np.roll(u, -1) - u) % self.n_base

    def record(self, bal_idx, labels, units, centers, phis) -> None:
        a, b = self.fill, self.fill + len(centers)
        self.bal[a:b] = bal_idx
        self.sp_label[a:b] = labels
        self.sp_unit[a:b] = units
        self.center[a:b] = centers
        self.rnd[a:b] = len(self.layers) + 1
        self.phi[a:b] = phis
        self.fill = b

    def run_rounds(self, stop_size: int) -> None:
        """Split-and-fill rounds until at most stop_size spokes remain."""
        while len(self.units) > stop_size:
            k = len(self.units)
            g = self.gaps()
            nc = k // 2
            chunk = self.idx_sorted[self.k0 : self.k0 + nc]
            rs = self.r_sorted[self.k0 : self.k0 + nc]
            sub = np.argsort(rs, kind="stable")
            chunk = chunk[sub]
            rs = rs[sub]
            # adjacent gaps of the consumed spokes (stored positions 1,3,...)
            gmin = np.minimum(g[0 : 2 * nc : 2], g[1 : 2 * nc : 2])
            phi = np.minimum(2.0 * gmin * self.unit, TWO_PI)
            wedge_c = rs / np.sin(phi / 2.0)
            contact_c = self.safe + rs
            c = np.maximum(wedge_c, contact_c)
            w = c + rs - self.safe
            j = int(np.argmax(w))
            kind = "wedge" if wedge_c[j] > contact_c[j] else "contact"
            self.record(chunk, self.labels[1::2], self.units[1::2], c, phi)
            self.layers.append(
                Layer(len(self.layers) + 1, kind, self.safe, float(w[j]), k)
            )
            self.safe += float(w[j])
            self.units = np.roll(self.units[0::2], 1)
            self.labels = np.roll(self.labels[0::2], 1)
            self.k0 += nc

    def remaining(self) -> np.ndarray:
        return self.idx_sorted[self.k0 :]

    def final_pair(self) -> Tuple[int, float, int, float]:
        """Remaining two balloons as (idx_small, r_small, idx_large, r_large)."""
        rest = self.remaining()
        assert len(rest) == 2
        a, b = int(rest[0]), int(rest[1])
        ra, rb = float(self.r_sorted[self.k0]), float(self.r_sorted[self.k0 + 1])
        if ra > rb:
            a, b, ra, rb = b, a, rb, ra
        return a, ra, b, rb

    def opening_at(self, pos: int) -> float:
        g = self.gaps()
        units = min(int(g[pos - 1]), int(g[pos]))
        return min(2.0 * units * self.unit, TWO_PI)

    def finish(self, variant: int, r: np.ndarray, order: np.ndarray,
               free_pos: Sequence[int], final_width: float) -> Layout:
        assert self.fill == len(r)
        free_labels = np.array([int(self.labels[p]) for p in free_pos], dtype=np.int64)
        free_units = np.array([int(self.units[p]) for p in free_pos], dtype=np.int64)
        free_angle = None
        if variant == 2:
            d = int((free_units[1] - free_units[0]) % self.n_base)
            free_angle = min(d, self.n_base - d) * self.unit
        self.layers.append(
            Layer(len(self.layers) + 1, "contact", self.safe, final_width,
                  len(self.units))
        )
        covering = self.safe + final_width
        return Layout(
            n_base=self.n_base,
            radii=r,
            order=order,
            variant=variant,
            balloon=self.bal,
            spoke_label=self.sp_label,
            spoke_unit=self.sp_unit,
            center=self.center,
            round_index=self.rnd,
            wedge_opening=self.phi,
            compactified=self.compact,
            free_labels=free_labels,
            free_units=free_units,
            free_angle=free_angle,
            layers=tuple(self.layers),
            covering_radius=covering,
        )


def greedy_balloon(radii, order=None) -> Layout:
    """Layout on n uniform spokes, no spoke left free; R <= 2*sum(r).

    `order` may supply any weakly ordered permutation of the input; the
    resulting widths and covering radius do not depend on which one.
    """
    r = _check_radii(radii)
    n = len(r)
    if order is None:
        perm = weakly_order(r)
    else:
        perm = np.asarray(order, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(n)):
            raise ValueError("order must be a permutation of range(n)")
        if not is_weakly_ordered(r[perm]):
            raise ValueError("order must put the radii into weakly ordered form")
    run = _Run(r, perm, n)

    if n == 1:
        run.record([perm[0]], [run.labels[0]], [run.units[0]], [r[perm[0]]], [TWO_PI])
        return run.finish(0, r, perm, [], 2.0 * float(r[perm[0]]))

    run.run_rounds(2)
    ia, ra, ib, rb = run.final_pair()  # B_{n-1}, B_n
    c_n = run.safe + rb
    c_n1 = max(2.0 * ra, run.safe + ra)
    run.record(
        [ib, ia],
        [run.labels[0], run.labels[1]],
        [run.units[0], run.units[1]],
        [c_n, c_n1],
        [run.opening_at(0), math.pi / 3.0],
    )
    width = max(c_n + rb, c_n1 + ra) - run.safe
    return run.finish(0, r, perm, [], max(width, 0.0))


def greedy_one_free(radii) -> Layout:
    """Layout on n+1 uniform spokes leaving one spoke free; R <= 2*sum(r)."""
    r = _check_radii(radii)
    n = len(r)
    perm = _stable_sort(r)
    run = _Run(r, perm, n + 1)
    run.run_rounds(3)
    unit = run.unit

    if len(run.units) == 2:
        # one balloon left; either spoke works, take the stored first
        rest = run.remaining()
        assert len(rest) == 1
        rn = float(run.r_sorted[-1])
        c = run.safe + rn
        run.record([rest[0]], [run.labels[0]], [run.units[0]], [c], [run.opening_at(0)])
        return run.finish(1, r, perm, [1], c + rn - run.safe)

    # three spokes, two balloons (stored gaps g0, g1, g2 with g2 the largest)
    g = run.gaps()
    assert int(g[2]) == int(g.max()) and 2 * min(int(g[0]), int(g[1])) >= int(g[2]), (
        "terminal spoke set lost its separation shape"
    )
    assert max(int(g[0]), int(g[1])) * unit >= math.pi / 2.0 - 1e-9, (
        "second-largest terminal gap fell below pi/2"
    )
    assert int(g[2]) * unit >= TWO_PI / 3.0 - 1e-9
    # orient so the second-largest gap is adjacent to the balloon touching
    # the safe disk; the middle spoke always stays free
    if int(g[0]) <= int(g[1]):
        pos_n, pos_n1 = 2, 0
    else:
        pos_n, pos_n1 = 0, 2
    ia, ra, ib, rb = run.final_pair()
    c_n = run.safe + rb
    c_n1 = max(wedge_center_distance(ra, math.pi / 3.0), run.safe + ra)
    run.record(
        [ib, ia],
        [run.labels[pos_n], run.labels[pos_n1]],
        [run.units[pos_n], run.units[pos_n1]],
        [c_n, c_n1],
        [run.opening_at(pos_n), math.pi / 3.0],
    )
    width = max(c_n + rb, c_n1 + ra) - run.safe
    return run.finish(1, r, perm, [1], max(width, 0.0))


def greedy_two_free(radii) -> Layout:
    """Layout on n+2 uniform spokes leaving two spokes free whose smaller
    separating angle is >= 2*pi/3; R <= KAPPA*sum(r)."""
    r = _check_radii(radii)
    n = len(r)
    perm = _stable_sort(r)
    run = _Run(r, perm, n + 2)
    run.run_rounds(4)
    unit = run.unit
    g = run.gaps()

    if len(run.units) == 3:
        # one balloon left on the spoke between the two smaller gaps
        rest = run.remaining()
        assert len(rest) == 1
        rn = float(run.r_sorted[-1])
        assert min(int(g[0]), int(g[1])) * unit >= 2.0 * math.pi / 5.0 - 1e-9, (
            "terminal gaps too narrow for the 4*pi/5 wedge"
        )
        assert TWO_PI / 3.0 - 1e-9 <= int(g[2]) * unit <= math.pi + 1e-9
        floor = run.safe
        compactified = False
        if run.layers and run.layers[-1].kind == "wedge":
            last = run.layers[-1]
            assert last.spokes in (5, 6)
            beta = TWO_PI / (2 * last.spokes - 1)
            floor = max(run.safe * compact_factor(beta), last.safe_before)
            compactified = True
        c = max(wedge_center_distance(rn, 4.0 * math.pi / 5.0), floor + rn)
        run.record([rest[0]], [run.labels[1]], [run.units[1]], [c],
                   [4.0 * math.pi / 5.0])
        if compactified:
            run.compact[run.fill - 1] = True
        return run.finish(2, r, perm, [0, 2], max(c + rn - run.safe, 0.0))

    # four spokes, two balloons; gaps (g0, g1, gmax, gmax)
    assert len(run.units) == 4
    assert int(g[2]) == int(g[3]) == int(g.max()), (
        "terminal spoke set lost its separation shape"
    )
    assert int(g.min()) * unit >= TWO_PI / 7.0 - 1e-9
    ia, ra, ib, rb = run.final_pair()
    c_n = run.safe + rb
    c_n1 = max(wedge_center_distance(ra, 4.0 * math.pi / 7.0), run.safe + ra)
    run.record(
        [ib, ia],
        [run.labels[3], run.labels[1]],
        [run.units[3], run.units[1]],
        [c_n, c_n1],
        [run.opening_at(3), 4.0 * math.pi / 7.0],
    )
    width = max(c_n + rb, c_n1 + ra) - run.safe
    lay = run.finish(2, r, perm, [0, 2], max(width, 0.0))
    assert lay.free_angle is not None and lay.free_angle >= TWO_PI / 3.0 - 1e-9
    return lay
