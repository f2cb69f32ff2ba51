"""Unchecked dihedral rotations in O(log n) each via lazily composed rigid motions.

Leaves of a static balanced tree hold stored vertex coordinates; every node
holds a rigid motion. A vertex's actual position is its stored coordinate
mapped by the composition of the motions on its root-to-leaf path, with the
root's motion applied last::

    effective(root) = M_root
    effective(v)    = effective(parent(v)) o M_v

A rotation touches only the O(log n) maximal subtrees covering the moving
suffix of the chain. Because ancestors' motions are applied after a subtree
root's own motion, the rotation is conjugated by the ancestors' effective
motion before it is folded into the subtree root.
"""
from __future__ import annotations

import math

import numpy as np

from .chain import Chain, DegenerateEdgeError
from .geom3 import AxisLine, RigidMotion, compose, eps_geom, rotate_about_axis

_ID = RigidMotion.identity()


class MotionTree:
    """Balanced tree over the vertices of a chain with per-node rigid motions.

    Attributes
    ----------
    last_updates : int
        Node motions rewritten by the most recent :meth:`rotate_lazy`.
    last_reads : int
        Node motions read to locate the rotation axis in that call.
    last_flush_applications : int
        Motion applications performed by the most recent :meth:`flush`.
    """

    def __init__(self, chain: Chain):
        self._stored = np.array(chain.vertices, dtype=float)
        self._allowed = chain.allowed_overlaps
        self._eps = eps_geom(self._stored)
        n = len(self._stored)
        self.leaf_count = n
        lo, hi, left, right = [], [], [], []
        # iterative build keeps deep chains off the recursion limit
        stack = [(0, n, -1, 0)]
        while stack:
            a, b, parent, side = stack.pop()
            node = len(lo)
            lo.append(a)
            hi.append(b)
            left.append(-1)
            right.append(-1)
            if parent >= 0:
                if side == 0:
                    left[parent] = node
                else:
                    right[parent] = node
            if b - a > 1:
                mid = (a + b + 1) // 2
                stack.append((mid, b, node, 1))
                stack.append((a, mid, node, 0))
        self._lo = lo
        self._hi = hi
        self._left = left
        self._right = right
        self._motion = [_ID] * len(lo)
        self.height = self._height()
        self.last_updates = 0
        self.last_reads = 0
        self.total_updates = 0
        self.rotations = 0
        self.last_flush_applications = 0

    @classmethod
    def build(cls, chain: Chain) -> "MotionTree":
        return cls(chain)

    @property
    def node_count(self) -> int:
        return len(self._lo)

    def _height(self) -> int:
        best = 0
        stack = [(0, 0)]
        while stack:
            node, d = stack.pop()
            best = max(best, d)
            if self._left[node] >= 0:
                stack.append((self._left[node], d + 1))
                stack.append((self._right[node], d + 1))
        return best

    def update_budget(self) -> int:
        """Upper bound on node updates per rotation: 2 ceil(log2 n) + 2 for n edges."""
        n_edges = max(1, self.leaf_count - 1)
        return 2 * math.ceil(math.log2(n_edges)) + 2 if n_edges > 1 else 2

    def _effective_to_leaf(self, i: int) -> tuple[RigidMotion, int]:
        node = 0
        acc = _ID
        reads = 0
        while True:
            acc = compose(acc, self._motion[node])
            reads += 1
            if self._left[node] < 0:
                return acc, reads
            node = self._left[node] if i < self._hi[self._left[node]] else self._right[node]

    def position(self, i: int) -> np.ndarray:
        if not 0 <= i < self.leaf_count:
            raise IndexError(f"vertex index {i} out of range [0, {self.leaf_count - 1}]")
        return self._effective_to_leaf(i)[0].apply(self._stored[i])

    def rotate_lazy(self, e: int, phi: float) -> int:
        """Rotate vertices e+1.. about the current line through vertices e, e+1.

        Returns the number of node motions rewritten.
        """
        if not 0 <= e < self.leaf_count - 1:
            raise IndexError(f"edge index {e} out of range [0, {self.leaf_count - 2}]")
        mu, ru = self._effective_to_leaf(e)
        mv, rv = self._effective_to_leaf(e + 1)
        u = mu.apply(self._stored[e])
        v = mv.apply(self._stored[e + 1])
        self.last_reads = ru + rv
        if float(np.linalg.norm(v - u)) <= self._eps:
            raise DegenerateEdgeError(f"edge {e} is degenerate")
        rot = rotate_about_axis(AxisLine.through(u, v), phi)
        start = e + 1
        node = 0
        acc = _ID  # effective motion of the parent of ``node``
        updates = 0
        while True:
            if start <= self._lo[node]:
                self._fold(node, acc, rot)
                updates += 1
                break
            acc = compose(acc, self._motion[node])
            l, r = self._left[node], self._right[node]
            if start >= self._hi[l]:
                node = r
            else:
                self._fold(r, acc, rot)
                updates += 1
                node = l
        self.last_updates = updates
        self.total_updates += updates
        self.rotations += 1
        return updates

    def _fold(self, node: int, parent_eff: RigidMotion, rot: RigidMotion) -> None:
        if parent_eff is _ID:
            local = rot
        else:
            local = compose(parent_eff.inverse(), compose(rot, parent_eff))
        self._motion[node] = compose(local, self._motion[node])

    def flush(self) -> Chain:
        """Write actual coordinates back to the leaves and reset every motion to identity."""
        out = np.empty_like(self._stored)
        applications = 0
        stack = [(0, _ID)]
        while stack:
            node, parent_eff = stack.pop()
            eff = compose(parent_eff, self._motion[node])
            l = self._left[node]
            if l < 0:
                i = self._lo[node]
                out[i] = eff.apply(self._stored[i])
                applications += 1
            else:
                stack.append((self._right[node], eff))
                stack.append((l, eff))
        self._stored = out
        self._motion = [_ID] * len(self._lo)
        self.last_flush_applications = applications
        return Chain(out.copy(), self._allowed)
