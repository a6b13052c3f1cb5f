"""Tree drawing with perfect angular resolution.

The tree is cut into heavy paths.  Each path node lays out its light
subtrees (shrunk to their exclusive disks) as balloons on a uniform spoke
system, leaving free spokes for the heavy predecessor/successor and, at the
top node, for the parent direction.  Paths are then composed into chains of
tangent-or-separated covering disks, and whole sub-drawings are placed
rigidly (rotation + translation, never mirrored) into their parents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import point_segment_distance, ray_point_distance
from .layout import Layout, greedy_one_free, greedy_two_free

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------- trees

@dataclass(frozen=True)
class RootedTree:
    parent: np.ndarray  # parent[i]; -1 at the root
    children: Tuple[Tuple[int, ...], ...]
    root: int

    @property
    def n(self) -> int:
        return len(self.parent)

    @staticmethod
    def from_parents(parents: Sequence[int], root: int = 0) -> "RootedTree":
        p = np.asarray(parents, dtype=np.int64)
        n = len(p)
        if n == 0:
            raise ValueError("tree must have at least one node")
        if not 0 <= root < n or p[root] != -1:
            raise ValueError("root must have parent -1")
        kids: List[List[int]] = [[] for _ in range(n)]
        for i in range(n):
            if i == root:
                continue
            if not 0 <= p[i] < n:
                raise ValueError(f"node {i} has invalid parent {p[i]}")
            kids[p[i]].append(i)
        # connectivity doubles as the cycle check
        seen = np.zeros(n, dtype=bool)
        stack = [root]
        seen[root] = True
        while stack:
            u = stack.pop()
            for c in kids[u]:
                if seen[c]:
                    raise ValueError("parent map contains a cycle")
                seen[c] = True
                stack.append(c)
        if not seen.all():
            raise ValueError("tree is not connected")
        return RootedTree(p, tuple(tuple(sorted(k)) for k in kids), root)

    @staticmethod
    def from_edges(n: int, edges: Sequence[Tuple[int, int]], root: int = 0) -> "RootedTree":
        p = np.full(n, -1, dtype=np.int64)
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range")
            if b == root or p[b] != -1:
                raise ValueError(f"node {b} has two parents or is the root")
            p[b] = a
        return RootedTree.from_parents(p, root)


@dataclass(frozen=True)
class HeavyDecomposition:
    heavy_child: np.ndarray  # -1 for leaves
    paths: Tuple[Tuple[int, ...], ...]  # top node first, each ends at a leaf
    path_of: np.ndarray
    depth: Tuple[int, ...]
    light_parent_edge: Tuple[Optional[Tuple[int, int]], ...]  # (parent, top)
    subtree_size: np.ndarray


def heavy_decomposition(t: RootedTree) -> HeavyDecomposition:
    """Decompose into heavy paths: every non-leaf hands its path on to the
    child with the largest subtree (ties to the smallest id).  O(n)."""
    n = t.n
    order: List[int] = [t.root]
    for u in order:
        order.extend(t.children[u])
    size = np.ones(n, dtype=np.int64)
    heavy = np.full(n, -1, dtype=np.int64)
    for u in reversed(order):
        best = -1
        for c in t.children[u]:
            size[u] += size[c]
            if best == -1 or size[c] > size[best] or (size[c] == size[best] and c < best):
                best = c
        heavy[u] = best

    path_of = np.full(n, -1, dtype=np.int64)
    paths: List[Tuple[int, ...]] = []
    light_edge: List[Optional[Tuple[int, int]]] = []
    for u in order:  # parents precede children, so tops appear in BFS order
        if u != t.root and heavy[t.parent[u]] == u:
            continue
        run = []
        z = u
        while z != -1:
            run.append(z)
            path_of[z] = len(paths)
            z = int(heavy[z])
        paths.append(tuple(run))
        light_edge.append(None if u == t.root else (int(t.parent[u]), u))

    depth = [1] * len(paths)
    for pi in range(len(paths) - 1, 0, -1):  # children after parents in `paths`
        parent_path = int(path_of[t.parent[paths[pi][0]]])
        depth[parent_path] = max(depth[parent_path], depth[pi] + 1)
    return HeavyDecomposition(heavy, tuple(paths), path_of, tuple(depth),
                              tuple(light_edge), size)


# ---------------------------------------------------------------- drawing

@dataclass(frozen=True)
class Drawing:
    n: int
    root: int
    positions: np.ndarray  # (n, 2)
    edges: np.ndarray  # (n-1, 2) rows (parent, child)
    exclusive: Tuple[Tuple[int, float], ...]  # (top node, exclusive radius) per heavy path
    stats: Dict[str, float]


@dataclass
class PathItem:
    """One heavy-path node prepared for composition, in its layout frame."""
    node: int
    x: float
    parent_a: Optional[float] = None  # top of a non-root path only
    exit_a: Optional[float] = None  # every node but the path end
    free_pair: Optional[Tuple[float, float]] = None  # internal nodes only
    balloons: List[Tuple[int, float, float]] = field(default_factory=list)
    # (child path index, spoke angle in layout frame, center distance)


def _norm_angle(a: float) -> float:
    return (a + math.pi) % TWO_PI - math.pi


def _layout_item(node: int, layout: Optional[Layout], child_paths: List[int],
                 kind: str) -> PathItem:
    """kind: 'root_top' (one free), 'top' (two free: parent + exit),
    'internal' (two free: entry + exit)."""
    if layout is None:  # no light children
        if kind == "root_top":
            return PathItem(node, 1.0, exit_a=0.0)
        if kind == "top":
            return PathItem(node, 1.0, parent_a=0.0, exit_a=math.pi)
        return PathItem(node, 1.0, free_pair=(0.0, math.pi))
    unit = TWO_PI / layout.n_base
    balloons = [
        (child_paths[int(b)], float(su) * unit, float(c))
        for b, su, c in zip(layout.balloon, layout.spoke_unit, layout.center)
    ]
    x = max(layout.covering_radius, 1.0)
    free = [float(u) * unit for u in layout.free_units]
    if kind == "root_top":
        return PathItem(node, x, exit_a=free[0], balloons=balloons)
    if kind == "top":
        return PathItem(node, x, parent_a=free[0], exit_a=free[1], balloons=balloons)
    return PathItem(node, x, free_pair=(free[0], free[1]), balloons=balloons)


def _chain_feasible(pos: np.ndarray, xs: np.ndarray, new_c: np.ndarray,
                    new_x: float, has_parent_ray: bool) -> bool:
    i = len(xs)  # nodes already placed; new node gets index i
    eps = 1e-12 * max(new_x, 1.0)
    d = np.hypot(pos[:, 0] - new_c[0], pos[:, 1] - new_c[1])
    if np.any(d < xs + new_x - eps):
        return False
    if i >= 2:
        # the new heavy edge must clear every earlier covering disk
        dseg = point_segment_distance(pos[i - 1], new_c, pos[: i - 1])
        if np.any(dseg < xs[: i - 1] - eps):
            return False
        # earlier heavy edges must clear the new covering disk
        for j in range(i - 1):
            dd = point_segment_distance(pos[j], pos[j + 1], new_c[None, :])
            if dd[0] < new_x - eps:
                return False
    if has_parent_ray:
        dr = ray_point_distance(math.pi, new_c[None, :])
        if dr[0] < new_x - eps:
            return False
    return True


def _find_step(pos, xs, heading, new_x, has_parent_ray):
    """Smallest workable center distance along `heading`.

    Starts from tangency with the previous disk and pushes outward until the
    new disk, the new edge and the parent ray are clear, then bisects back.
    Falls back to tangency if no clear distance exists on the ray (the
    checker reports any resulting overlap)."""
    start = pos[len(xs) - 1]
    u = np.array([math.cos(heading), math.sin(heading)])
    t = xs[-1] + new_x
    if _chain_feasible(pos, xs, start + t * u, new_x, has_parent_ray):
        return t
    lo, hi = t, t
    ok = False
    for _ in range(80):
        hi = hi * 1.3 + 0.1
        if _chain_feasible(pos, xs, start + hi * u, new_x, has_parent_ray):
            ok = True
            break
        lo = hi
    if not ok:
        return t
    for _ in range(80):
        if hi - lo <= 1e-9 * max(hi, 1.0):
            break
        mid = 0.5 * (lo + hi)
        if _chain_feasible(pos, xs, start + mid * u, new_x, has_parent_ray):
            hi = mid
        else:
            lo = mid
    return hi


def compose_path(items: Sequence[PathItem]):
    """Chain the node layouts of one heavy path.

    Returns (positions (k,2), frame rotations (k,), exclusive radius).  The
    top node sits at the origin; when the first item exposes a parent
    direction it is rotated onto the angle pi exactly.  Consecutive nodes are
    joined along free spokes, turning at most pi/3 per node with greedily
    balanced signs; each step length starts at x_i + x_{i+1} and grows
    minimally until the new disk, the new edge and the parent ray are all
    clear.
    """
    if len(items) == 0:
        raise ValueError("need at least one node layout")
    k = len(items)
    top = items[0]
    has_parent = top.parent_a is not None
    if has_parent:
        rot0 = math.pi - top.parent_a
    else:
        rot0 = -top.exit_a if top.exit_a is not None else 0.0
    positions = np.zeros((k, 2))
    rotations = np.zeros(k)
    rotations[0] = rot0
    if k > 1:
        if top.exit_a is None:
            raise ValueError("path of length > 1 needs an exit spoke at the top")
        if has_parent:
            theta = abs(_norm_angle(top.exit_a - top.parent_a))
            if theta < TWO_PI / 3.0 - 1e-9:
                raise ValueError("free spokes of a path layout closer than 2*pi/3")
        heading = rot0 + top.exit_a
        h1 = heading
        xs = [top.x]
        for i in range(1, k):
            it = items[i]
            t = _find_step(positions[:i], np.asarray(xs), heading, it.x, has_parent)
            positions[i] = positions[i - 1] + t * np.array(
                [math.cos(heading), math.sin(heading)])
            if i < k - 1:
                if it.free_pair is None:
                    raise ValueError("internal path node needs two free spokes")
                a, b = it.free_pair
                theta = abs(_norm_angle(a - b))
                theta = min(theta, TWO_PI - theta)
                if theta < TWO_PI / 3.0 - 1e-9:
                    raise ValueError("free spokes of a path layout closer than 2*pi/3")
                # either free spoke may take the incoming edge; keep whichever
                # heading drifts least from the initial one
                best = None
                for entry, exit_ in ((a, b), (b, a)):
                    rot = (heading + math.pi) - entry
                    h_new = rot + exit_
                    drift = abs(_norm_angle(h_new - h1))
                    if best is None or drift < best[0] - 1e-15:
                        best = (drift, rot, h_new)
                rotations[i] = best[1]
                heading = best[2]
            else:
                rotations[i] = heading + math.pi  # bare leaf; frame is arbitrary
            xs.append(it.x)
    radius = float(max(np.hypot(positions[:, 0], positions[:, 1])
                       + np.array([it.x for it in items])))
    return positions, rotations, radius


def draw_tree(t: RootedTree) -> Drawing:
    """Draw the tree with one straight-line edge per tree edge, perfect
    angular resolution at every node, and no edge shorter than 1."""
    hd = heavy_decomposition(t)
    n = t.n
    n_paths = len(hd.paths)
    excl = [0.0] * n_paths
    records: List[Optional[Tuple[np.ndarray, np.ndarray, List[List[Tuple[int, float, float]]]]]] = [None] * n_paths

    node_x = np.ones(n)
    for pi in sorted(range(n_paths), key=lambda p: (hd.depth[p], hd.paths[p][0])):
        nodes = hd.paths[pi]
        is_root_path = hd.light_parent_edge[pi] is None
        items: List[PathItem] = []
        for idx, z in enumerate(nodes):
            if idx == len(nodes) - 1:
                items.append(PathItem(z, 1.0))
                continue
            light = [c for c in t.children[z] if c != int(hd.heavy_child[z])]
            kind = ("root_top" if is_root_path else "top") if idx == 0 else "internal"
            if not light:
                items.append(_layout_item(z, None, [], kind))
                continue
            child_paths = [int(hd.path_of[c]) for c in light]
            radii = [excl[cp] for cp in child_paths]
            lay = greedy_one_free(radii) if kind == "root_top" else greedy_two_free(radii)
            items.append(_layout_item(z, lay, child_paths, kind))
        for it in items:
            node_x[it.node] = it.x
        pos, rot, radius = compose_path(items)
        excl[pi] = radius
        records[pi] = (pos, rot, [it.balloons for it in items])

    positions = np.zeros((n, 2))
    stack: List[Tuple[int, float, np.ndarray]] = []
    root_path = int(hd.path_of[t.root])
    stack.append((root_path, 0.0, np.zeros(2)))
    while stack:
        pi, ang, base = stack.pop()
        pos, rot, balloons = records[pi]
        ca, sa = math.cos(ang), math.sin(ang)
        for idx, z in enumerate(hd.paths[pi]):
            px, py = pos[idx]
            positions[z] = (base[0] + ca * px - sa * py, base[1] + sa * px + ca * py)
        for idx, z in enumerate(hd.paths[pi]):
            for child_path, spoke_a, dist in balloons[idx]:
                attach = ang + rot[idx] + spoke_a
                cbase = positions[z] + dist * np.array([math.cos(attach), math.sin(attach)])
                stack.append((child_path, attach, cbase))

    edges = np.array([[int(t.parent[c]), c] for c in range(n) if c != t.root],
                     dtype=np.int64).reshape(-1, 2)
    exclusive = tuple((hd.paths[pi][0], excl[pi]) for pi in range(n_paths))

    stats = _drawing_stats(t, positions, edges, excl, hd, node_x)
    return Drawing(n, t.root, positions, edges, exclusive, stats)


def _drawing_stats(t, positions, edges, excl, hd, node_x) -> Dict[str, float]:
    n = t.n
    root_x = excl[int(hd.path_of[t.root])]
    stats: Dict[str, float] = {"covering_radius": float(root_x)}
    if len(edges):
        lens = np.hypot(*(positions[edges[:, 0]] - positions[edges[:, 1]]).T)
        stats["min_edge_length"] = float(lens.min())
    else:
        stats["min_edge_length"] = None
    slack = None
    nbrs: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for v in range(n):
        if len(nbrs[v]) < 2:
            continue
        vecs = positions[nbrs[v]] - positions[v]
        angs = np.sort(np.arctan2(vecs[:, 1], vecs[:, 0]))
        diffs = np.diff(np.concatenate([angs, [angs[0] + TWO_PI]]))
        s = float(diffs.min()) - TWO_PI / len(nbrs[v])
        slack = s if slack is None else min(slack, s)
    stats["min_resolution_slack"] = slack
    if n >= 2 and root_x > 1.0:
        stats["exponent"] = math.log(root_x) / math.log(n)
    worst = 0.0
    for pi, nodes in enumerate(hd.paths):
        target = 2.0 * float(sum(node_x[z] for z in nodes))
        worst = max(worst, excl[pi] / target)
    stats["max_exclusive_to_target"] = worst
    return stats
