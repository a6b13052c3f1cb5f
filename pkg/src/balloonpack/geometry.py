"""Scalar geometric kernel: wedge covering factors, contact distances and
disk/segment predicates shared by the layout engines and the checker."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# Covering factor of a disk inscribed in a wedge of opening 4*pi/5.  This is
# the worst case that the two-free-spoke layout can hit, hence it bounds the
# covering radius of that variant.  Closed form: 1 + sqrt(2 - 2/sqrt(5)).
KAPPA = 1.0 + math.sqrt(2.0 - 2.0 / math.sqrt(5.0))


class Disk(NamedTuple):
    center: tuple
    radius: float


def alpha(phi: float) -> float:
    """Covering factor of a wedge-inscribed disk.

    A disk of radius r centered on the axis of a wedge with opening angle phi,
    touching both boundary rays, fits inside the origin-centered disk of
    radius alpha(phi)*r.  Strictly decreasing on (0, pi].
    """
    if not 0.0 < phi <= TWO_PI:
        raise ValueError(f"wedge opening must lie in (0, 2*pi], got {phi}")
    s = math.sin(phi / 2.0)
    return (1.0 + s) / s


def wedge_center_distance(r: float, phi: float) -> float:
    """Distance from the apex at which a radius-r disk touches both boundary
    rays of a wedge with opening phi.  Equals (alpha(phi) - 1) * r."""
    if r <= 0.0:
        raise ValueError(f"radius must be positive, got {r}")
    if not 0.0 < phi < TWO_PI:
        raise ValueError(f"wedge opening must lie in (0, 2*pi), got {phi}")
    return r / math.sin(phi / 2.0)


def compact_factor(beta: float) -> float:
    """Shrink factor used to pull the last balloon inside the current covering
    disk.

    If every balloon of a round sits on a spoke at angle >= beta from a given
    spoke s, is disjoint from s, and is covered by the origin-centered disk of
    radius c, then all of them stay on the origin side of the line
    perpendicular to s at distance c * compact_factor(beta).  A new balloon on
    s placed beyond that line is therefore disjoint from all of them.
    """
    if not 0.0 < beta <= math.pi / 2.0:
        raise ValueError(f"separation angle must lie in (0, pi/2], got {beta}")
    sb = math.sin(beta)
    return (sb + math.cos(beta)) / (sb + 1.0)


def disks_interior_disjoint(a: Disk, b: Disk, tol: float = 1e-9) -> bool:
    """True iff the two closed disks overlap at most on their boundaries,
    up to an absolute tolerance."""
    dx = a.center[0] - b.center[0]
    dy = a.center[1] - b.center[1]
    return math.hypot(dx, dy) >= a.radius + b.radius - tol


def point_segment_distance(p, q, points) -> np.ndarray:
    """Distances from each row of `points` to the segment p-q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = q - p
    dd = float(d @ d)
    if dd == 0.0:
        return np.hypot(pts[:, 0] - p[0], pts[:, 1] - p[1])
    t = np.clip(((pts - p) @ d) / dd, 0.0, 1.0)
    feet = p + t[:, None] * d
    return np.hypot(pts[:, 0] - feet[:, 0], pts[:, 1] - feet[:, 1])


def segment_clear_of_disk(p, q, d: Disk, tol: float = 1e-9) -> bool:
    """True iff segment p-q stays out of the disk interior (touching is ok)."""
    dist = point_segment_distance(p, q, np.asarray(d.center, dtype=float)[None, :])
    return bool(dist[0] >= d.radius - tol)


def segments_properly_cross(a0, a1, b0, b1, eps: float = 1e-12) -> bool:
    """True iff the open segments a0-a1 and b0-b1 cross at a single interior
    point of both.  Shared endpoints and touching do not count."""
    a0 = np.asarray(a0, float)
    a1 = np.asarray(a1, float)
    b0 = np.asarray(b0, float)
    b1 = np.asarray(b1, float)

    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    scale = max(
        abs(a1[0] - a0[0]) + abs(a1[1] - a0[1]),
        abs(b1[0] - b0[0]) + abs(b1[1] - b0[1]),
        1.0,
    )
    e = eps * scale * scale
    o1 = orient(a0, a1, b0)
    o2 = orient(a0, a1, b1)
    o3 = orient(b0, b1, a0)
    o4 = orient(b0, b1, a1)
    return (
        ((o1 > e and o2 < -e) or (o1 < -e and o2 > e))
        and ((o3 > e and o4 < -e) or (o3 < -e and o4 > e))
    )


def ray_point_distance(direction: float, points) -> np.ndarray:
    """Distances from each row of `points` to the ray from the origin with the
    given direction (radians)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    u = np.array([math.cos(direction), math.sin(direction)])
    proj = np.clip(pts @ u, 0.0, None)
    feet = proj[:, None] * u
    return np.hypot(pts[:, 0] - feet[:, 0], pts[:, 1] - feet[:, 1])
