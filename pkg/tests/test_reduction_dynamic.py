import math

import numpy as np
import pytest

from dihedral.chain import Chain, is_simple
from dihedral.reduction import (
    FoldError,
    ThreeSumInstance,
    build_canonical_chain,
    encode_sets,
    fold_hinge,
    pad_and_scale,
    plan_fold,
    run_dynamic_reduction,
)
from dihedral.reduction.canonical import hinge_span
from dihedral.reduction.dynamic import certify_bands
from oracles import threesum_brute


def test_canonical_parameters():
    cc = build_canonical_chain(5)
    assert len(cc.stairs) == 6  # n + 1 verticals
    assert cc.hinge_count == 3 * 5 + 1
    assert len(cc.left_teeth) == len(cc.right_teeth) == 5
    cc1 = build_canonical_chain(1)
    assert len(cc1.left_teeth) + len(cc1.right_teeth) == 2 and len(cc1.stairs) == 2
    with pytest.raises(ValueError):
        build_canonical_chain(0)


def test_canonical_depends_only_on_n():
    assert build_canonical_chain(4).chain == build_canonical_chain(4).chain


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_canonical_simple_only_modulo_needles(n):
    cc = build_canonical_chain(n)
    assert is_simple(cc.chain).simple
    assert cc.chain.allowed_overlaps
    assert not is_simple(Chain(cc.chain.vertices)).simple


def test_canonical_geometry():
    cc = build_canonical_chain(3)
    V = cc.chain.vertices
    xs = [V[u][0] for u, _ in cc.left_teeth]
    assert np.diff(xs) == pytest.approx([2, 2])
    for up, down in cc.left_teeth:
        assert V[up + 1][1] == 1.0
    for down, up in cc.right_teeth:
        assert V[down + 1][1] == 0.5
    # staircase: n+1 unit steps, rise 3/2, comb separation 7
    sx = [V[v][0] for v in cc.stairs]
    assert np.diff(sx) == pytest.approx([1, 1, 1])
    assert sx[0] - xs[-1] == 7 and V[cc.right_teeth[0][0]][0] - sx[-1] == 7
    assert cc.step == pytest.approx(1.5 / 4)
    assert cc.delta == min(0.1, 3 / 16)


def test_identity_fold():
    cc = build_canonical_chain(2)
    h = cc.hinges[1]
    plan = plan_fold(cc.chain, h, h.arm_sum)
    assert plan.identity
    out, recs = fold_hinge(cc.chain, plan)
    assert out is cc.chain and recs == []


def test_half_span_fold():
    cc = build_canonical_chain(2)
    h = next(h for h in cc.hinges if h.kind == "stair")
    plan = plan_fold(cc.chain, h, 0.5)
    assert plan.theta == pytest.approx(math.pi / 3)
    tail = cc.chain.vertices[h.alpha2 + 1:]
    out, recs = fold_hinge(cc.chain, plan)
    assert len(recs) == 3 and all(r.feasible for r in recs)
    assert hinge_span(out, h) == pytest.approx(0.5, abs=1e-9)
    assert np.allclose(out.vertices[h.alpha2 + 1:] - tail, [-0.5, 0, 0], atol=1e-9)


def test_random_folds_keep_tail_rigid():
    rng = np.random.default_rng(0)
    cc = build_canonical_chain(3)
    c = cc.chain
    for h in cc.hinges:
        d = float(rng.uniform(1e-3, 1)) * h.arm_sum
        c, recs = fold_hinge(c, plan_fold(c, h, d))
        assert abs(hinge_span(c, h) - d) <= 1e-9
    assert is_simple(c).simple


def test_bad_target_rejected():
    cc = build_canonical_chain(2)
    with pytest.raises(FoldError):
        plan_fold(cc.chain, cc.hinges[0], 0.0)
    with pytest.raises(FoldError):
        plan_fold(cc.chain, cc.hinges[0], cc.hinges[0].arm_sum + 0.1)


def test_encoding_places_features():
    inst = ThreeSumInstance([-1], [0], [1])
    s = pad_and_scale(inst)
    enc = encode_sets(build_canonical_chain(s.n), s)
    V = enc.chain.vertices
    cc = enc.canonical
    assert V[cc.left_teeth[0][0]][0] == pytest.approx(float(s.dyn_A()[0]), abs=1e-9)
    assert V[cc.stairs[1]][0] == pytest.approx(float(s.dyn_B()[0]), abs=1e-9)
    assert V[cc.right_teeth[0][0]][0] == pytest.approx(float(s.dyn_C()[0]), abs=1e-9)
    cert = certify_bands(enc)
    assert cert["toothRadiusMin"] >= 3.5 and cert["stairRadiusMax"] <= 2


def test_driver_examples():
    tr = run_dynamic_reduction(ThreeSumInstance([-1], [0], [1]))
    assert tr.triple == (-1, 0, 1)
    (probe,) = tr.queries("probe")
    assert not probe.feasible and probe.label["b"] == 0
    tr = run_dynamic_reduction(ThreeSumInstance([-1], [0], [2]))
    assert tr.triple is None


def test_counters():
    inst = ThreeSumInstance([-7, 3, 10], [2, 4], [5])
    tr = run_dynamic_reduction(inst)
    n = tr.header["n"]
    assert tr.counters["probeRotations"] == n == 3
    assert tr.counters["encodingRotations"] == 3 * tr.counters["hingesTouched"] <= 3 * (3 * n + 1)
    assert tr.counters["encodingRotations"] + tr.counters["probeRotations"] <= 10 * n + 3
    assert all(r.feasible for r in tr.queries("encode"))
    assert tr.counters["pairTests"] == tr.counters["encodingPairTests"] + tr.counters["probePairTests"]


def test_explicit_padding_size():
    tr = run_dynamic_reduction(ThreeSumInstance([-1], [0], [1]), n=4)
    assert tr.header["n"] == 4 and tr.triple == (-1, 0, 1) and tr.counters["probeRotations"] == 4


def test_random_agreement():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        sets = [rng.choice(np.arange(-30, 31), n, replace=False).tolist() for _ in range(3)]
        assert run_dynamic_reduction(ThreeSumInstance(*sets)).triple == threesum_brute(*sets)
