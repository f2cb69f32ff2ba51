"""Planar comb/staircase chain whose 2*pi staircase rotations decide 3SUM'.

The left comb carries an upward rectangular tooth centred on x = a - 3m for
every a in A, the right comb a downward tooth centred on x = c + 3m for every
c in C, and the staircase a vertical edge on x = -b/2 for every b in B.
Spinning the right part about the vertical at -b/2 swings right teeth through
the radii of the left teeth; two teeth meet iff their centres are at equal
distance from the axis, i.e. iff (a - 3m) + b + (c + 3m) is within 2w = 1/2
of zero, which for integers means exactly zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..chain import Chain, is_simple, min_nonadjacent_distance
from ..sweep import DihedralQuery, dihedral_feasible
from .scaling import ScaledSets, pad_and_scale
from .threesum import ThreeSumInstance
from .transcript import QueryRecord, ReductionTranscript

TOOTH_HALF_WIDTH = Fraction(1, 4)
LEFT_TIP = 1
RIGHT_SPINE = Fraction(3, 2)
RIGHT_TIP = Fraction(1, 2)


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class StaticConstruction:
    chain: Chain
    scaled: ScaledSets
    feature_map: dict  # b -> staircase edge index
    tooth_map: dict  # segment index -> ("A" | "C", original value)
    step_height: Fraction


def build_static_chain(s: ScaledSets, check: bool = True) -> StaticConstruction:
    w = TOOTH_HALF_WIDTH
    m = s.m
    pts: list[tuple] = []
    tooth_map: dict[int, tuple[str, int]] = {}
    feature_map: dict[int, int] = {}

    def seg_index():
        return len(pts) - 2  # segment ending at the vertex just appended

    left = sorted(zip(s.static_A(), s.A))
    pts.append((left[0][0] - 1, 0))
    for x, a in left:
        pts.append((x - w, 0))
        for p in ((x - w, LEFT_TIP), (x + w, LEFT_TIP), (x + w, 0)):
            pts.append(p)
            tooth_map[seg_index()] = ("A", a)

    # staircase verticals in increasing x, i.e. decreasing b
    stairs = sorted(zip(s.static_stairs(), s.B))
    h = RIGHT_SPINE / len(stairs)
    for k, (x, b) in enumerate(stairs):
        pts.append((x, k * h))
        pts.append((x, (k + 1) * h))
        feature_map[b] = seg_index()

    right = sorted(zip(s.static_C(), s.C))
    for x, c in right:
        pts.append((x - w, RIGHT_SPINE))
        for p in ((x - w, RIGHT_TIP), (x + w, RIGHT_TIP), (x + w, RIGHT_SPINE)):
            pts.append(p)
            tooth_map[seg_index()] = ("C", c)
    pts.append((right[-1][0] + 1, RIGHT_SPINE))

    verts = np.array([[float(x), float(y), 0.0] for x, y in pts])
    chain = Chain(verts)
    out = StaticConstruction(chain, s, feature_map, tooth_map, h)
    if check:
        certify_static(out)
    return out


def certify_static(sc: StaticConstruction) -> None:
    """Build-time certificates; raises ConstructionError on any failure."""
    rep = is_simple(sc.chain)
    if not rep.simple:
        raise ConstructionError(f"static chain not simple at segment pair {rep.pair}")
    # the staircase treads are only one step height apart
    need = min(TOOTH_HALF_WIDTH, sc.step_height)
    got = min_nonadjacent_distance(sc.chain)
    if got < float(need) - 1e-12:
        raise ConstructionError(f"non-adjacent clearance {got} below {float(need)}")
    s = sc.scaled
    xs = s.static_stairs()
    if max(xs) - min(xs) > s.m:
        raise ConstructionError("staircase verticals spread wider than m")
    centres = s.static_A() + s.static_C()
    gap = min(abs(c - x) for c in centres for x in xs)
    if gap < Fraction(3 * s.m, 2):
        raise ConstructionError(f"tooth centre only {gap} from a staircase vertical")


def _decode_witness(sc: StaticConstruction, event, b: int) -> tuple[int, int, int]:
    mv = sc.tooth_map.get(event.moving_segment)
    st = sc.tooth_map.get(event.static_segment)
    if mv is None or st is None or mv[0] != "C" or st[0] != "A":
        raise ConstructionError(
            f"probe for b={b} collided outside the teeth: segments "
            f"{event.moving_segment}/{event.static_segment}"
        )
    return st[1], b, mv[1]


def best_triple(inst: ThreeSumInstance, hit_bs) -> tuple[int, int, int] | None:
    """Smallest (a, b, c) over the b's whose probe collided, completing (a, c) by hashing."""
    cset = set(inst.C)
    best = None
    for b in hit_bs:
        for a in inst.A:
            if -a - b in cset:
                t = (a, b, -a - b)
                if best is None or t < best:
                    best = t
                break
    return best


def run_static_reduction(inst: ThreeSumInstance, jobs: int = 1) -> ReductionTranscript:
    s = pad_and_scale(inst)
    sc = build_static_chain(s)
    tr = ReductionTranscript(
        "static",
        header={
            "n": s.n,
            "m": s.m,
            "segments": sc.chain.n_segments,
            "toothHalfWidth": str(TOOTH_HALF_WIDTH),
            "shift": "3m",
        },
    )
    tr.counters = {"probeRotations": 0, "pairTests": 0}
    hits = []
    for x, b in sorted(zip(s.static_stairs(), s.B)):
        e = sc.feature_map[b]
        res = dihedral_feasible(sc.chain, DihedralQuery(e, 2 * math.pi), jobs=jobs)
        tr.counters["probeRotations"] += 1
        label = {"b": b}
        if res.event is not None:
            a, _, c = _decode_witness(sc, res.event, b)
            if a + b + c != 0:
                raise ConstructionError(f"witness ({a}, {b}, {c}) does not sum to zero")
            label["witnessTriple"] = [a, b, c]
            hits.append(b)
        tr.record("probe", QueryRecord(e, 2 * math.pi, res.feasible, res.pair_tests, res.event, label))
    tr.triple = best_triple(inst, hits)
    return tr
