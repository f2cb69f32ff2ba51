"""Continuous collision detection for dihedral rotations.

A dihedral rotation is feasible when no moving segment touches a static one at
any angle of the sweep. Rotation preserves height along the axis and distance
to it, so a moving point can only meet a static point with the same height and
radius; the swept angle at which it does is the angular gap between them.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .chain import Chain, apply_dihedral, edge_axis
from .geom3 import AxisLine, eps_geom, rotate_about_axis

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DihedralQuery:
    edge: int
    phi: float


@dataclass(frozen=True)
class CollisionEvent:
    t_fraction: float
    angle_at_contact: float
    moving_segment: int
    static_segment: int
    contact: tuple[float, float, float]

    def to_json(self) -> dict:
        return {
            "tFraction": self.t_fraction,
            "angleAtContact": self.angle_at_contact,
            "movingSegment": self.moving_segment,
            "staticSegment": self.static_segment,
            "contact": list(self.contact),
        }


def _frame(axis: AxisLine) -> np.ndarray:
    e1, e2 = axis.frame()
    return np.concatenate([axis.origin, axis.direction, e1, e2])


def _event(phi: float, dtheta: float, mi: int, si: int, q0, q1, v: float) -> CollisionEvent:
    phi_abs = abs(phi)
    t = 0.0 if phi_abs == 0.0 else min(dtheta / phi_abs, 1.0)
    q0 = np.asarray(q0, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    contact = q0 + v * (q1 - q0)
    return CollisionEvent(t, dtheta, mi, si, tuple(float(x) for x in contact))


def _check_finite(*vals):
    for x in vals:
        if not np.all(np.isfinite(np.asarray(x, dtype=float))):
            raise ValueError("NaN or infinite input to collision query")


def sweep_collision(axis: AxisLine, phi: float, moving, static, eps: float | None = None):
    """Earliest contact of ``moving`` rotating by ``phi`` about ``axis`` with ``static``.

    Segments are point pairs. Returns a :class:`CollisionEvent` (segment indices
    0) or ``None``.
    """
    _check_finite(phi, moving, static)
    p0, p1 = (tuple(map(float, p)) for p in moving)
    q0, q1 = (tuple(map(float, p)) for p in static)
    if eps is None:
        eps = eps_geom([p0, p1, q0, q1])
    sgn = 1.0 if phi >= 0 else -1.0
    r = _kernels.sweep_pair(_frame(axis), abs(phi), sgn, p0, p1, q0, q1, eps)
    if r is None:
        return None
    dtheta, _, v = r
    return _event(phi, dtheta, 0, 0, q0, q1, v)


class FeasibilityResult(NamedTuple):
    event: CollisionEvent | None
    pair_tests: int

    @property
    def feasible(self) -> bool:
        return self.event is None


def _pairs_in(c: Chain, e: int) -> int:
    """Number of exempt moving x static pairs for a rotation at edge ``e``."""
    return sum(1 for i, j in c.allowed_overlaps if i < e < j)


def expected_pair_tests(c: Chain, e: int) -> int:
    """Moving segments x static segments, minus allowed-overlap exemptions."""
    n_static = e
    n_moving = c.n_segments - 1 - e
    return n_static * n_moving - _pairs_in(c, e)


def dihedral_feasible(c: Chain, q: DihedralQuery, eps: float | None = None, jobs: int = 1) -> FeasibilityResult:
    """Test every (moving, static) segment pair; the rotation edge itself is on the axis.

    Intra-side pairs keep constant clearance under the rigid motion and are not
    tested. The earliest contact wins, ties going to the smallest
    (moving, static) index pair.
    """
    e = c.check_edge(q.edge)
    _check_finite(q.phi)
    axis = edge_axis(c, e)
    if eps is None:
        eps = c.eps()
    frame = _frame(axis)
    phi_abs = abs(q.phi)
    sgn = 1.0 if q.phi >= 0 else -1.0
    keys = c.skip_keys()
    verts = c.vertices
    m_lo, m_hi = e + 1, c.n_segments
    s_lo, s_hi = 0, e

    if jobs <= 1 or m_hi - m_lo < 2 * jobs:
        chunks = [(m_lo, m_hi)]
    else:
        bounds = np.linspace(m_lo, m_hi, jobs + 1).astype(int)
        chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

    def run(chunk):
        return _kernels.sweep_range(verts, frame, phi_abs, sgn, chunk[0], chunk[1], s_lo, s_hi, eps, keys)

    if len(chunks) == 1:
        results = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, chunks))

    tests = 0
    best = None
    # chunks are in moving-index order, so strict < keeps the lexicographic tie-break
    for found, dtheta, mi, si, _u, v, n in results:
        tests += n
        if found and (best is None or dtheta < best[0]):
            best = (dtheta, mi, si, v)
    if best is None:
        return FeasibilityResult(None, tests)
    dtheta, mi, si, v = best
    return FeasibilityResult(_event(q.phi, dtheta, mi, si, verts[si], verts[si + 1], v), tests)


class RotationResult(NamedTuple):
    chain: Chain
    applied: bool
    event: CollisionEvent | None
    pair_tests: int


def dyn_rotate(c: Chain, q: DihedralQuery, eps: float | None = None, jobs: int = 1) -> RotationResult:
    """Apply the rotation if it is feasible; otherwise return ``c`` itself with the witness."""
    res = dihedral_feasible(c, q, eps=eps, jobs=jobs)
    if res.event is not None:
        return RotationResult(c, False, res.event, res.pair_tests)
    return RotationResult(apply_dihedral(c, q.edge, q.phi), True, None, res.pair_tests)


def rotated_segment(axis: AxisLine, phi: float, seg) -> tuple[np.ndarray, np.ndarray]:
    """Position of a segment after rotating by ``phi``; used to check contact witnesses."""
    m = rotate_about_axis(axis, phi)
    return m.apply(seg[0]), m.apply(seg[1])
