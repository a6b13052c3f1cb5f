"""Independent verification of layouts and drawings, plus small oracles.

Everything here recomputes geometry from raw placements; the bookkeeping a
Layout or Drawing carries is treated as a claim to verify, never as ground
truth.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .angles import SpokeSet
from .geometry import KAPPA
from .layout import Layout
from .treedraw import Drawing

TWO_PI = 2.0 * math.pi

DRAWING_EXPONENT = 3.0367  # proven growth exponent of the covering radius


@dataclass(frozen=True)
class Violation:
    kind: str  # disjointness | spoke-clearance | resolution | wedge | safety | bound
    detail: str
    magnitude: float


@dataclass(frozen=True)
class Report:
    passed: bool
    violations: Tuple[Violation, ...]
    measured: Dict[str, Optional[float]]

    def __bool__(self) -> bool:
        return self.passed


def _make_report(violations: List[Violation], measured) -> Report:
    return Report(len(violations) == 0, tuple(violations), measured)


def check_layout(l: Layout, variant: Optional[int] = None, tol: float = 1e-9) -> Report:
    """Verify a balloon layout from its placements alone."""
    v: List[Violation] = []
    if variant is None:
        variant = l.variant
    nb = l.n_base
    unit = TWO_PI / nb
    r = np.asarray(l.radii, dtype=float)
    rp = r[l.balloon]  # radius per placement
    c = np.asarray(l.center, dtype=float)
    theta = l.spoke_unit * unit
    pos = np.stack([c * np.cos(theta), c * np.sin(theta)], axis=1)
    n = len(c)

    # exact angular bookkeeping: occupied + free units tile the base grid
    all_units = np.concatenate([l.spoke_unit, l.free_units])
    if len(all_units) != nb or not np.array_equal(np.sort(all_units), np.arange(nb)):
        v.append(Violation("resolution", "occupied and free spokes do not tile the uniform grid", float("nan")))
    if len(l.free_units) != variant:
        v.append(Violation("resolution", f"expected {variant} free spokes, found {len(l.free_units)}", float(len(l.free_units))))

    # pairwise interior-disjointness and spoke clearance share one Gram matrix
    if n > 1:
        gram = pos @ pos.T  # gram[i, j] = center_i . center_j
        c2 = c * c
        dist2 = c2[:, None] + c2[None, :] - 2.0 * gram
        need = rp[:, None] + rp[None, :]
        bad = dist2 < np.square(np.maximum(need - tol, 0.0))
        np.fill_diagonal(bad, False)
        for i, j in zip(*np.nonzero(bad)):
            if i < j:
                v.append(Violation(
                    "disjointness",
                    f"balloons {int(l.balloon[i])} and {int(l.balloon[j])} overlap",
                    float(need[i, j] - math.sqrt(max(dist2[i, j], 0.0))),
                ))

        # spoke segments [origin, center_j] must clear every other balloon;
        # proj[i, j] = component of center_i along spoke j
        proj = gram / c[None, :]
        t = np.clip(proj, 0.0, c[None, :])
        dseg2 = c2[:, None] - t * (2.0 * proj - t)
        bad = dseg2 < np.square(np.maximum(rp[:, None] - tol, 0.0))
        np.fill_diagonal(bad, False)
        for i, j in zip(*np.nonzero(bad)):
            v.append(Violation(
                "spoke-clearance",
                f"spoke of balloon {int(l.balloon[j])} enters balloon {int(l.balloon[i])}",
                float(rp[i] - math.sqrt(max(dseg2[i, j], 0.0))),
            ))

    # free rays must clear every balloon
    free_angle = None
    for fu in l.free_units:
        fdir = np.array([math.cos(fu * unit), math.sin(fu * unit)])
        proj = np.clip(pos @ fdir, 0.0, None)
        d = np.hypot(pos[:, 0] - proj * fdir[0], pos[:, 1] - proj * fdir[1])
        for i in np.nonzero(d < rp - tol)[0]:
            v.append(Violation(
                "spoke-clearance",
                f"free spoke at unit {int(fu)} enters balloon {int(l.balloon[i])}",
                float(rp[i] - d[i]),
            ))
    if variant == 2 and len(l.free_units) == 2:
        dunits = int((l.free_units[1] - l.free_units[0]) % nb)
        free_angle = min(dunits, nb - dunits) * unit
        if free_angle < TWO_PI / 3.0 - tol:
            v.append(Violation("resolution", "free spokes closer than 2*pi/3", TWO_PI / 3.0 - free_angle))

    # wedge confinement against the opening each placement claims
    half = np.minimum(np.asarray(l.wedge_opening, dtype=float), TWO_PI) / 2.0
    margin = np.where(half < math.pi / 2.0, c * np.sin(half), c)
    for i in np.nonzero(margin < rp - tol)[0]:
        v.append(Violation(
            "wedge",
            f"balloon {int(l.balloon[i])} leaves its wedge of opening {float(l.wedge_opening[i]):.6f}",
            float(rp[i] - margin[i]),
        ))

    # safety: recompute safe radii per round from the placements themselves
    reach = c + rp
    rounds = np.asarray(l.round_index)
    order = np.argsort(rounds, kind="stable")
    rd_sorted = rounds[order]
    starts = np.nonzero(np.r_[True, rd_sorted[1:] != rd_sorted[:-1]])[0]
    round_max = np.maximum.reduceat(reach[order], starts)
    safe_before = np.r_[0.0, np.maximum.accumulate(round_max)[:-1]]
    safe_of = safe_before[np.searchsorted(rd_sorted[starts], rounds)]
    bad = (~l.compactified) & (c < safe_of + rp - tol)
    for i in np.nonzero(bad)[0]:
        v.append(Violation(
            "safety",
            f"balloon {int(l.balloon[i])} intrudes into the safe disk of round {int(rounds[i])}",
            float(safe_of[i] + rp[i] - c[i]),
        ))

    covering = float(reach.max())
    total = float(r.sum())
    bound = {0: 2.0, 1: 2.0, 2: KAPPA}[variant]
    if covering > bound * total + tol:
        v.append(Violation("bound", f"covering radius {covering} exceeds {bound}*sum(r)", covering - bound * total))
    if abs(covering - l.covering_radius) > 1e-12 * max(covering, 1.0):
        v.append(Violation("bound", "recorded covering_radius disagrees with placements", abs(covering - l.covering_radius)))

    measured = {
        "covering_radius": covering,
        "ratio_to_bound": covering / (bound * total),
        "free_angle": free_angle,
    }
    return _make_report(v, measured)


def contact_layer_bound(l: int) -> int:
    """Number of contact layers that can follow the last wedge layer when the
    wedge layer started with l spokes.  Satisfies f(l) <= log2(l - 1)."""
    if l < 3:
        raise ValueError(f"need at least 3 spokes, got {l}")
    f = 0
    while l > 4:
        l = (l + 1) // 2 if l % 2 else l // 2
        f += 1
    return f + 1


def _min_angle(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _seg_clear_threshold(theta: float, c_j: float, r_i: float) -> float:
    """Smallest center distance on a ray at angle theta from an occupied spoke
    segment of length c_j such that a disk of radius r_i clears the segment.
    Distance to the segment is increasing in the center distance."""
    if theta >= math.pi / 2.0:
        return r_i
    s, co = math.sin(theta), math.cos(theta)
    if (r_i / s) * co <= c_j:
        return r_i / s
    return c_j * co + math.sqrt(max(r_i * r_i - (c_j * s) ** 2, 0.0))


def _pair_high_root(theta: float, c_j: float, need: float) -> float:
    """Smallest c beyond B_j such that two centers at angle theta are >= need
    apart; 0.0 if every c works."""
    s = math.sin(theta)
    closest = c_j * s if theta <= math.pi / 2.0 else c_j
    if closest >= need:
        return 0.0
    disc = need * need - (c_j * s) ** 2
    return c_j * math.cos(theta) + math.sqrt(max(disc, 0.0))


def _pair_low_root(theta: float, c_j: float, need: float) -> float:
    """Largest c before B_j keeping the two centers >= need apart; negative
    if there is no such region."""
    s = math.sin(theta)
    disc = need * need - (c_j * s) ** 2
    if disc < 0.0:
        return math.inf
    return c_j * math.cos(theta) - math.sqrt(disc)


def _feasible(cs, rs, angs, free_angs, tol=1e-9) -> bool:
    k = len(cs)
    for i in range(k):
        if cs[i] < rs[i] - tol:
            return False
        for fa in free_angs[i]:
            d = cs[i] * math.sin(fa) if fa < math.pi / 2.0 else cs[i]
            if d < rs[i] - tol:
                return False
        for j in range(k):
            if i == j:
                continue
            th = angs[i][j]
            d2 = cs[i] ** 2 + cs[j] ** 2 - 2.0 * cs[i] * cs[j] * math.cos(th)
            if math.sqrt(max(d2, 0.0)) < rs[i] + rs[j] - tol:
                return False
            # disk i against spoke segment of j
            if th < math.pi / 2.0:
                foot = cs[i] * math.cos(th)
                if foot <= cs[j]:
                    d = cs[i] * math.sin(th)
                else:
                    d = math.sqrt(max(cs[i] ** 2 + cs[j] ** 2 - 2.0 * cs[i] * cs[j] * math.cos(th), 0.0))
                if d < rs[i] - tol:
                    return False
    return True


def tiny_oracle(radii, spokes: SpokeSet, free_required: int,
                min_free_angle: float = 0.0) -> float:
    """Minimal covering radius for up to three balloons on the given spokes.

    Enumerates every injective balloon-to-spoke assignment whose leftover
    spokes form an admissible free set, and for each solves the center
    distances by monotone constraint propagation from the static lower
    bounds, cross-seeded with sequential minimal placements.  Returns the
    smallest covering radius over all assignments.
    """
    r = [float(x) for x in radii]
    if len(r) > 3:
        raise ValueError("oracle supports at most 3 balloons")
    if len(r) == 0 or any(x <= 0 for x in r):
        raise ValueError("radii must be positive and non-empty")
    if free_required not in (0, 1, 2):
        raise ValueError("free_required must be 0, 1 or 2")
    k = len(spokes)
    if k != len(r) + free_required:
        raise ValueError("spoke count must equal balloon count plus free_required")
    angles = spokes.angles()

    best = math.inf
    for assign in itertools.permutations(range(k), len(r)):
        free = [p for p in range(k) if p not in assign]
        if free_required == 2:
            fa = _min_angle(angles[free[0]], angles[free[1]])
            if fa < min_free_angle - 1e-12:
                continue
        angs = [[_min_angle(angles[assign[i]], angles[assign[j]]) for j in range(len(r))]
                for i in range(len(r))]
        free_angs = [[_min_angle(angles[assign[i]], angles[f]) for f in free]
                     for i in range(len(r))]

        static = []
        for i in range(len(r)):
            lo = r[i]
            for fang in free_angs[i]:
                if fang < math.pi / 2.0:
                    lo = max(lo, r[i] / math.sin(fang))
            static.append(lo)

        cap = 100.0 * (sum(r) + max(static))
        candidates = []

        # monotone push-up from the static lower bounds
        cs = list(static)
        for _ in range(10000):
            delta = 0.0
            for i in range(len(r)):
                need = cs[i]
                for j in range(len(r)):
                    if i == j:
                        continue
                    th = angs[i][j]
                    lo_branch = _pair_low_root(th, cs[j], r[i] + r[j])
                    if cs[i] <= lo_branch + 1e-15:
                        pair_req = 0.0
                    else:
                        pair_req = _pair_high_root(th, cs[j], r[i] + r[j])
                    seg_req = _seg_clear_threshold(th, cs[j], r[i])
                    need = max(need, pair_req, seg_req)
                if need > cs[i]:
                    delta = max(delta, need - cs[i])
                    cs[i] = need
            if delta < 1e-10 or max(cs) > cap:
                break
        if max(cs) <= cap and _feasible(cs, r, angs, free_angs):
            candidates.append(max(cs[i] + r[i] for i in range(len(r))))

        # sequential minimal placement, every order
        for order in itertools.permutations(range(len(r))):
            cs2 = [None] * len(r)
            ok = True
            for i in order:
                lo = static[i]
                hi = math.inf
                placed = [j for j in order[: order.index(i)]]
                # scan upward through pairwise low/high branches
                for j in placed:
                    th = angs[i][j]
                    lo = max(lo, _seg_clear_threshold(th, cs2[j], r[i]))
                    # j's spoke segment grows with c_i: clearing j's disk caps c_i
                    if th < math.pi / 2.0 and cs2[j] * math.sin(th) < r[j] - 1e-15:
                        hi = min(hi, cs2[j] * math.cos(th)
                                 - math.sqrt(max(r[j] ** 2 - (cs2[j] * math.sin(th)) ** 2, 0.0)))
                # resolve pairwise forbidden intervals by a sweep
                guard = 0
                while guard < 64:
                    guard += 1
                    moved = False
                    for j in placed:
                        th = angs[i][j]
                        lo_b = _pair_low_root(th, cs2[j], r[i] + r[j])
                        if lo <= lo_b + 1e-15:
                            continue
                        high = _pair_high_root(th, cs2[j], r[i] + r[j])
                        if lo < high:
                            lo = high
                            moved = True
                    if not moved:
                        break
                if lo > hi + 1e-12:
                    ok = False
                    break
                cs2[i] = lo
            if ok and _feasible(cs2, r, angs, free_angs):
                candidates.append(max(cs2[i] + r[i] for i in range(len(r))))

        if candidates:
            best = min(best, min(candidates))

    if not math.isfinite(best):
        raise ValueError("no admissible assignment for the requested free spokes")
    return best


def _crossing_pairs(pos: np.ndarray, edges: np.ndarray, eps: float = 1e-9):
    """Index pairs of edges that properly cross (shared endpoints excluded)."""
    m = len(edges)
    if m < 2:
        return []
    I, J = np.triu_indices(m, 1)
    share = (
        (edges[I, 0] == edges[J, 0]) | (edges[I, 0] == edges[J, 1])
        | (edges[I, 1] == edges[J, 0]) | (edges[I, 1] == edges[J, 1])
    )
    I, J = I[~share], J[~share]
    if len(I) == 0:
        return []
    a0, a1 = pos[edges[I, 0]], pos[edges[I, 1]]
    b0, b1 = pos[edges[J, 0]], pos[edges[J, 1]]
    d1, d2 = a1 - a0, b1 - b0

    def side(o, d, p):
        return d[:, 0] * (p[:, 1] - o[:, 1]) - d[:, 1] * (p[:, 0] - o[:, 0])

    l1 = np.hypot(d1[:, 0], d1[:, 1])
    l2 = np.hypot(d2[:, 0], d2[:, 1])
    e = eps * l1 * l2
    s1, s2 = side(a0, d1, b0), side(a0, d1, b1)
    s3, s4 = side(b0, d2, a0), side(b0, d2, a1)
    c12 = ((s1 < -e) & (s2 > e)) | ((s1 > e) & (s2 < -e))
    c34 = ((s3 < -e) & (s4 > e)) | ((s3 > e) & (s4 < -e))
    hit = c12 & c34
    return list(zip(I[hit].tolist(), J[hit].tolist()))


def check_drawing(d: Drawing, tol: float = 1e-9) -> Report:
    """Verify a tree drawing from positions and edges alone: perfect angular
    resolution, unit edge lengths (doubled on heavy edges), planarity,
    disjoint sibling exclusive disks, subtree nesting and the polynomial
    area bound."""
    v: List[Violation] = []
    pos = np.asarray(d.positions, dtype=float)
    edges = np.asarray(d.edges, dtype=np.int64).reshape(-1, 2)
    n = d.n
    if len(edges) != n - 1:
        v.append(Violation("structure", f"expected {n - 1} edges, found {len(edges)}", float(len(edges))))

    parent = np.full(n, -1, dtype=np.int64)
    kids: List[List[int]] = [[] for _ in range(n)]
    nbrs: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        parent[b] = a
        kids[a].append(b)
        nbrs[a].append(b)
        nbrs[b].append(a)

    # perfect angular resolution at every node
    min_slack = None
    for u in range(n):
        deg = len(nbrs[u])
        if deg < 2:
            continue
        vecs = pos[nbrs[u]] - pos[u]
        angs = np.sort(np.arctan2(vecs[:, 1], vecs[:, 0]))
        gaps = np.diff(np.concatenate([angs, [angs[0] + TWO_PI]]))
        slack = float(gaps.min()) - TWO_PI / deg
        min_slack = slack if min_slack is None else min(min_slack, slack)
        if slack < -tol:
            v.append(Violation("resolution", f"edges at node {u} closer than 2*pi/deg", -slack))

    # edge lengths: >= 1 everywhere, >= 2 on heavy edges
    tops = {top for top, _ in d.exclusive}
    min_len = None
    if len(edges):
        lens = np.hypot(*(pos[edges[:, 0]] - pos[edges[:, 1]]).T)
        min_len = float(lens.min())
        for idx in np.nonzero(lens < 1.0 - tol)[0]:
            v.append(Violation("edge-length", f"edge {tuple(edges[idx])} shorter than 1", float(1.0 - lens[idx])))
        heavy = np.array([int(b) not in tops for _, b in edges])
        for idx in np.nonzero(heavy & (lens < 2.0 - tol))[0]:
            v.append(Violation("edge-length", f"heavy edge {tuple(edges[idx])} shorter than 2", float(2.0 - lens[idx])))

    for i, j in _crossing_pairs(pos, edges):
        v.append(Violation("planarity", f"edges {tuple(edges[i])} and {tuple(edges[j])} cross", float("nan")))

    # exclusive disks of siblings (paths hanging off the same node) stay disjoint
    excl = {top: float(x) for top, x in d.exclusive}
    by_parent: Dict[int, List[int]] = {}
    for top in excl:
        if top != d.root:
            by_parent.setdefault(int(parent[top]), []).append(top)
    for z, group in by_parent.items():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                a, b = group[i], group[j]
                dist = float(np.hypot(*(pos[a] - pos[b])))
                need = excl[a] + excl[b]
                if dist < need - tol:
                    v.append(Violation("nesting", f"exclusive disks of {a} and {b} overlap", need - dist))

    # every subtree stays inside its top's exclusive disk
    for top, x in d.exclusive:
        stack = [top]
        sub = []
        while stack:
            u = stack.pop()
            sub.append(u)
            stack.extend(kids[u])
        dd = np.hypot(*(pos[sub] - pos[top]).T)
        worst = float(dd.max())
        if worst > x + tol * max(x, 1.0):
            v.append(Violation("nesting", f"subtree of {top} leaves its exclusive disk", worst - x))

    # polynomial bound on the covering radius
    radius = max(float(np.hypot(*(pos[top] - pos[d.root])) + x) for top, x in d.exclusive)
    limit = float(n) ** DRAWING_EXPONENT
    if radius > limit + tol:
        v.append(Violation("bound", f"covering radius {radius} exceeds n^{DRAWING_EXPONENT}", radius - limit))

    measured = {
        "covering_radius": radius,
        "min_edge_length": min_len,
        "min_resolution_slack": min_slack,
        "exponent": math.log(radius) / math.log(n) if n >= 2 and radius > 1.0 else None,
    }
    return _make_report(v, measured)
