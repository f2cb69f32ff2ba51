import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral.chain import (
    Chain,
    DegenerateEdgeError,
    apply_dihedral,
    is_simple,
    min_nonadjacent_distance,
    segment_distance,
    split_at_edge,
)
from dihedral.geom3 import AxisLine, rotate_about_axis
from oracles import dense_seg_dist, random_chain, seg_dist

ZIGZAG = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [2, 1, 0]]


def test_split_at_edge():
    c = Chain(np.arange(15, dtype=float).reshape(5, 3))
    assert split_at_edge(c, 1) == (range(0, 2), range(2, 5))
    assert split_at_edge(c, 0) == (range(0, 1), range(1, 5))
    assert list(split_at_edge(c, 3).moving_side) == [4]
    with pytest.raises(IndexError):
        split_at_edge(c, 4)
    with pytest.raises(IndexError):
        split_at_edge(c, -1)


def test_chain_validation():
    with pytest.raises(ValueError):
        Chain([[0, 0, 0]])
    with pytest.raises(ValueError):
        Chain([[0, 0, 0], [1, 0, math.nan]])
    with pytest.raises(ValueError):
        Chain(ZIGZAG, [(0, 5)])
    c = Chain(ZIGZAG, [(2, 0)])
    assert c.allowed_overlaps == {(0, 2)}
    assert not c.vertices.flags.writeable


def test_half_turn_example():
    out = apply_dihedral(Chain(ZIGZAG), 1, math.pi)
    assert np.allclose(out.vertices[-1], [0, 1, 0], atol=1e-12)
    assert np.array_equal(out.vertices[:3], np.array(ZIGZAG[:3], dtype=float))


def test_full_turn_unchanged():
    c = Chain(random_chain(np.random.default_rng(1), 8))
    assert np.allclose(apply_dihedral(c, 3, 2 * math.pi).vertices, c.vertices, atol=1e-9)


def test_degenerate_edge():
    with pytest.raises(DegenerateEdgeError):
        apply_dihedral(Chain([[0, 0, 0], [1, 0, 0], [1, 0, 0], [2, 0, 0]]), 1, 1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 12), st.floats(-7, 7))
def test_rotation_invariants(seed, n, phi):
    rng = np.random.default_rng(seed)
    c = Chain(random_chain(rng, n, min_sep_factor=0))
    e = int(rng.integers(0, n))
    out = apply_dihedral(c, e, phi)
    assert np.allclose(out.edge_lengths(), c.edge_lengths(), atol=1e-9)
    assert np.allclose(out.vertex_angles(), c.vertex_angles(), atol=1e-9)
    # moving side matches an independent rigid rotation; static side untouched
    axis = AxisLine.through(c.vertices[e], c.vertices[e + 1])
    assert np.allclose(out.vertices[e + 1:], rotate_about_axis(axis, phi).apply_many(c.vertices[e + 1:]), atol=1e-9)
    assert np.array_equal(out.vertices[: e + 1], c.vertices[: e + 1])
    back = apply_dihedral(out, e, -phi)
    assert np.allclose(back.vertices, c.vertices, atol=1e-9)
    psi = 0.37
    assert np.allclose(apply_dihedral(out, e, psi).vertices, apply_dihedral(c, e, phi + psi).vertices, atol=1e-9)


def test_simplicity_examples(backend):
    assert is_simple(Chain(ZIGZAG)) == (True, None)
    rep = is_simple(Chain([[0, 0, 0], [2, 0, 0], [2, 1, 0], [1, 0, 0]]))
    assert rep == (False, (0, 2)) and not rep


def test_needle_tooth_exemption(backend):
    # the down edge retraces the up edge and passes the incoming arm's end
    needle = [[0, 0.2, 0], [1, 0.2, 0], [1, 1, 0], [1, 0, 0], [2, 0, 0]]
    assert is_simple(Chain(needle)).pair == (0, 2)
    assert is_simple(Chain(needle, [(0, 2)])).pair == (1, 2)
    assert is_simple(Chain(needle, [(0, 2), (1, 2)])).simple


def test_adjacent_fold_back_detected(backend):
    # second segment runs back along the first
    assert is_simple(Chain([[0, 0, 0], [2, 0, 0], [1, 0, 0]])).pair == (0, 1)
    # a sharp but proper corner is fine
    assert is_simple(Chain([[0, 0, 0], [2, 0, 0], [0, 0.01, 0]])).simple


def test_simplicity_invariant_under_rigid_motion_and_reversal(backend):
    rng = np.random.default_rng(4)
    for _ in range(20):
        v = rng.normal(size=(9, 3)) * 2
        c = Chain(v)
        rep = is_simple(c)
        m = rotate_about_axis(AxisLine.through(rng.normal(size=3), rng.normal(size=3)), 1.3)
        assert is_simple(Chain(m.apply_many(v) + 5.0)).simple == rep.simple
        assert is_simple(Chain(v[::-1])).simple == rep.simple


def test_segment_distance_examples(backend):
    assert segment_distance(([0, 0, 0], [1, 0, 0]), ([2, 0, 0], [3, 0, 0])) == pytest.approx(1.0)
    assert segment_distance(([0, 0, 0], [1, 1, 0]), ([0, 1, 0], [1, 0, 0])) == pytest.approx(0.0, abs=1e-15)
    # parallel offset and point-like segments
    assert segment_distance(([0, 0, 0], [1, 0, 0]), ([0.5, 2, 0], [3, 2, 0])) == pytest.approx(2.0)
    assert segment_distance(([0, 0, 0], [0, 0, 0]), ([1, 1, 0], [1, -1, 0])) == pytest.approx(1.0)


def test_segment_distance_against_oracles(backend):
    rng = np.random.default_rng(7)
    for _ in range(200):
        s1 = rng.normal(size=(2, 3))
        s2 = rng.normal(size=(2, 3))
        d = segment_distance(s1, s2)
        assert d == pytest.approx(seg_dist(s1, s2), abs=1e-12)
    for _ in range(5):
        s1, s2 = rng.normal(size=(2, 3)), rng.normal(size=(2, 3))
        pitch = (np.linalg.norm(s1[1] - s1[0]) + np.linalg.norm(s2[1] - s2[0])) / 999
        assert 0 <= dense_seg_dist(s1, s2) - segment_distance(s1, s2) <= pitch


def test_min_nonadjacent_distance():
    c = Chain([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0.25, 0]])
    assert min_nonadjacent_distance(c) == pytest.approx(0.25)
