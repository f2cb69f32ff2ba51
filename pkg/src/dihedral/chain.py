"""Polygonal chains: storage, edge addressing, eager dihedral rotation, simplicity."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from . import _kernels
from .geom3 import AxisLine, InvalidAxisError, eps_geom, rotate_about_axis

INVARIANT_TOL = 1e-9


class DegenerateEdgeError(ValueError):
    pass


def _normalize_pairs(pairs: Iterable) -> frozenset[tuple[int, int]]:
    out = set()
    for p in pairs:
        i, j = (int(x) for x in p)
        if i == j:
            raise ValueError(f"allowed overlap pairs two distinct segments, got {p!r}")
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class Chain:
    """Ordered 3D vertices plus segment pairs that may touch (needle constructions).

    Segment ``i`` runs from vertex ``i`` to vertex ``i + 1``.
    """

    vertices: np.ndarray
    allowed_overlaps: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or len(v) < 2:
            raise ValueError("a chain needs at least two 3D vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("chain coordinates must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        pairs = _normalize_pairs(self.allowed_overlaps)
        nseg = len(v) - 1
        for i, j in pairs:
            if not (0 <= i and j < nseg):
                raise ValueError(f"allowed overlap ({i}, {j}) out of range for {nseg} segments")
        object.__setattr__(self, "allowed_overlaps", pairs)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_segments(self) -> int:
        return len(self.vertices) - 1

    def segment(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        self.check_edge(i)
        return self.vertices[i], self.vertices[i + 1]

    def check_edge(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i <= self.n_segments - 1:
            raise IndexError(f"edge index {i!r} out of range [0, {self.n_segments - 1}]")
        return int(i)

    def eps(self) -> float:
        return eps_geom(self.vertices)

    def skip_keys(self) -> np.ndarray:
        """Allowed pairs encoded ``i * n_segments + j`` (sorted), as the kernels expect."""
        n = self.n_segments
        return np.array(sorted(i * n + j for i, j in self.allowed_overlaps), dtype=np.int64)

    def with_vertices(self, vertices) -> "Chain":
        return Chain(vertices, self.allowed_overlaps)

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.vertices, axis=0), axis=1)

    def vertex_angles(self) -> np.ndarray:
        """Interior angle at every inner vertex (pi for a straight continuation)."""
        a = self.vertices[:-2] - self.vertices[1:-1]
        b = self.vertices[2:] - self.vertices[1:-1]
        cr = np.linalg.norm(np.cross(a, b), axis=1)
        dt = np.einsum("ij,ij->i", a, b)
        return np.arctan2(cr, dt)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (
            self.vertices.shape == other.vertices.shape
            and bool(np.array_equal(self.vertices, other.vertices))
            and self.allowed_overlaps == other.allowed_overlaps
        )

    __hash__ = None


class SplitResult(NamedTuple):
    static_side: range
    moving_side: range


def split_at_edge(c: Chain, e: int) -> SplitResult:
    """Static side holds u = vertex e, moving side holds v = vertex e + 1."""
    e = c.check_edge(e)
    return SplitResult(range(0, e + 1), range(e + 1, c.n_vertices))


def edge_axis(c: Chain, e: int) -> AxisLine:
    u, v = c.segment(e)
    if float(np.linalg.norm(v - u)) <= c.eps():
        raise DegenerateEdgeError(f"edge {e} is degenerate")
    try:
        return AxisLine.through(u, v)
    except InvalidAxisError as exc:
        raise DegenerateEdgeError(str(exc)) from exc


def apply_dihedral(c: Chain, e: int, phi: float) -> Chain:
    """Rotate every vertex after edge ``e`` about the oriented line through it by ``phi``."""
    axis = edge_axis(c, e)
    motion = rotate_about_axis(axis, phi)
    verts = np.array(c.vertices)
    verts[e + 1 :] = motion.apply_many(verts[e + 1 :])
    # the edge endpoint lies on the axis; keep it bit-exact
    verts[e + 1] = c.vertices[e + 1]
    out = c.with_vertices(verts)
    _check_rigid(c, out, e)
    return out


def _check_rigid(before: Chain, after: Chain, e: int) -> None:
    scale = max(1.0, float(np.max(np.abs(before.vertices))))
    dl = np.max(np.abs(before.edge_lengths() - after.edge_lengths()))
    if dl > INVARIANT_TOL * scale:
        raise AssertionError(f"dihedral rotation at edge {e} changed an edge length by {dl:.3g}")
    if before.n_vertices > 2:
        da = np.max(np.abs(before.vertex_angles() - after.vertex_angles()))
        if da > INVARIANT_TOL * scale:
            raise AssertionError(f"dihedral rotation at edge {e} changed a vertex angle by {da:.3g}")


def segment_distance(s1, s2) -> float:
    """Euclidean distance between closed segments given as point pairs."""
    (p0, p1), (q0, q1) = s1, s2
    return _kernels.segment_distance(tuple(map(float, p0)), tuple(map(float, p1)),
                                     tuple(map(float, q0)), tuple(map(float, q1)))[0]


class SimplicityReport(NamedTuple):
    simple: bool
    pair: tuple[int, int] | None

    def __bool__(self):
        return self.simple


def is_simple(c: Chain, eps: float | None = None) -> SimplicityReport:
    """Pairwise check; returns the lexicographically first offending segment pair."""
    if eps is None:
        eps = c.eps()
    i, j = _kernels.first_violation(c.vertices, eps, c.skip_keys())
    if i < 0:
        return SimplicityReport(True, None)
    return SimplicityReport(False, (int(i), int(j)))


def min_nonadjacent_distance(c: Chain) -> float:
    """Smallest distance between segments that share no vertex (allowed pairs skipped)."""
    best = math.inf
    n = c.n_segments
    for i in range(n):
        for j in range(i + 2, n):
            if (i, j) in c.allowed_overlaps:
                continue
            best = min(best, segment_distance(c.segment(i), c.segment(j)))
    return best
