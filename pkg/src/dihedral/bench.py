"""Counter-based benchmarks: lazy motion tree versus the all-pairs feasibility query."""
from __future__ import annotations

import math
import time

import numpy as np

from .chain import Chain
from .motiontree import MotionTree
from .sweep import DihedralQuery, dihedral_feasible, expected_pair_tests


def random_walk_chain(n_edges: int, rng: np.random.Generator) -> Chain:
    steps = rng.normal(size=(n_edges, 3))
    steps /= np.linalg.norm(steps, axis=1, keepdims=True)
    return Chain(np.vstack([np.zeros(3), np.cumsum(steps, axis=0)]))


def zigzag_chain(n_edges: int) -> Chain:
    """Planar zigzag along x; simple, with every dihedral rotation of pi feasible."""
    x = np.arange(n_edges + 1, dtype=float)
    y = np.where(np.arange(n_edges + 1) % 2 == 0, 0.0, 0.5)
    return Chain(np.column_stack([x, y, np.zeros_like(x)]))


def worst_tree_touches(n_edges: int) -> int:
    """Largest node-update count over every edge of a tree on ``n_edges`` edges."""
    tree = MotionTree(zigzag_chain(n_edges))
    return max(tree.rotate_lazy(e, 0.0) for e in range(n_edges))


def bench_tree(n_edges: int, k: int, rng: np.random.Generator) -> dict:
    tree = MotionTree(random_walk_chain(n_edges, rng))
    edges = rng.integers(0, n_edges, size=k)
    angles = rng.uniform(-math.pi, math.pi, size=k)
    touches = []
    t0 = time.perf_counter()
    for e, a in zip(edges, angles):
        touches.append(tree.rotate_lazy(int(e), float(a)))
    t1 = time.perf_counter()
    tree.flush()
    t2 = time.perf_counter()
    return {
        "n": n_edges,
        "k": k,
        "height": tree.height,
        "updateBudget": tree.update_budget(),
        "nodeTouchesPerRotation": {
            "mean": float(np.mean(touches)) if touches else 0.0,
            "max": int(max(touches, default=0)),
        },
        "nodeTouchesWorst": worst_tree_touches(n_edges),
        "flushApplications": tree.last_flush_applications,
        "wallTimes": {"rotations": t1 - t0, "flush": t2 - t1},
    }


def bench_brute(n_edges: int, k: int, jobs: int = 1) -> dict:
    c = zigzag_chain(n_edges)
    e = n_edges // 2
    lo, hi = (n_edges - 1) // 2, -(-(n_edges - 1) // 2)
    t0 = time.perf_counter()
    res = None
    for _ in range(max(1, k)):
        res = dihedral_feasible(c, DihedralQuery(e, math.pi), jobs=jobs)
    dt = time.perf_counter() - t0
    return {
        "n": n_edges,
        "k": max(1, k),
        "edge": e,
        "pairTestsPerQuery": res.pair_tests,
        "closedForm": lo * hi,
        "expected": expected_pair_tests(c, e),
        "feasible": res.feasible,
        "wallTimes": {"perQuery": dt / max(1, k)},
    }
