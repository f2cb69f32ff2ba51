import math

import numpy as np
import pytest

from dihedral.chain import Chain, DegenerateEdgeError, apply_dihedral
from dihedral.motiontree import MotionTree
from oracles import random_chain


def _chain(n, seed=0):
    return Chain(random_chain(np.random.default_rng(seed), n, min_sep_factor=0))


def test_build_flush_identity():
    c = _chain(20)
    t = MotionTree.build(c)
    assert t.leaf_count == c.n_vertices
    assert all(np.array_equal(t.position(i), c.vertices[i]) for i in range(c.n_vertices))
    assert t.flush() == c
    assert t.last_flush_applications == c.n_vertices


@pytest.mark.parametrize("n_vertices", [1 + 1, 3, 7, 8, 9, 100, 1025, 4097])
def test_height_bound(n_vertices):
    t = MotionTree(Chain(np.column_stack([np.arange(n_vertices), np.zeros(n_vertices), np.zeros(n_vertices)])))
    assert t.height <= math.ceil(math.log2(n_vertices)) + 1
    assert t.node_count == 2 * n_vertices - 1


def test_single_rotation_matches_eager():
    c = _chain(15, 1)
    t = MotionTree(c)
    t.rotate_lazy(6, 1.2)
    assert np.allclose(t.flush().vertices, apply_dihedral(c, 6, 1.2).vertices, atol=1e-9)


def test_inverse_pair_restores():
    c = _chain(15, 2)
    t = MotionTree(c)
    t.rotate_lazy(4, 0.8)
    t.rotate_lazy(4, -0.8)
    assert np.allclose(t.flush().vertices, c.vertices, atol=1e-9)


def test_full_turn_position_unchanged():
    c = _chain(10, 3)
    t = MotionTree(c)
    t.rotate_lazy(2, 2 * math.pi)
    assert all(np.allclose(t.position(i), c.vertices[i], atol=1e-9) for i in range(c.n_vertices))


def test_random_sequence_matches_eager_and_position_is_stable():
    c = _chain(60, 4)
    rng = np.random.default_rng(4)
    t = MotionTree(c)
    eager = c
    for _ in range(100):
        e = int(rng.integers(0, 60))
        phi = float(rng.uniform(-math.pi, math.pi))
        t.rotate_lazy(e, phi)
        eager = apply_dihedral(eager, e, phi)
        assert t.last_updates <= t.update_budget()
    before = np.array([t.position(i) for i in range(c.n_vertices)])
    flushed = t.flush()
    assert np.abs(flushed.vertices - eager.vertices).max() <= 1e-6
    assert np.allclose(before, flushed.vertices, atol=1e-12)
    # a second flush is a no-op
    assert t.flush() == flushed


def test_only_suffix_moves():
    c = _chain(30, 5)
    t = MotionTree(c)
    t.rotate_lazy(11, 0.9)
    for i in range(12):
        assert np.array_equal(t.position(i), c.vertices[i])


def test_update_budget_over_all_edges():
    for n_edges in (1, 2, 5, 16, 100, 1024):
        c = Chain(np.column_stack([np.arange(n_edges + 1), np.zeros(n_edges + 1), np.zeros(n_edges + 1)]))
        t = MotionTree(c)
        worst = max(t.rotate_lazy(e, 0.0) for e in range(n_edges))
        assert worst <= t.update_budget()
        assert worst <= t.height


def test_errors():
    t = MotionTree(_chain(5))
    with pytest.raises(IndexError):
        t.rotate_lazy(5, 1.0)
    with pytest.raises(IndexError):
        t.position(6)
    with pytest.raises(DegenerateEdgeError):
        MotionTree(Chain([[0, 0, 0], [1, 0, 0], [1, 0, 0]])).rotate_lazy(1, 1.0)


def test_read_counter_reports_axis_lookup_cost():
    t = MotionTree(_chain(64))
    t.rotate_lazy(30, 0.5)
    # two root-to-leaf walks
    assert 2 * t.height <= t.last_reads <= 2 * (t.height + 1)
