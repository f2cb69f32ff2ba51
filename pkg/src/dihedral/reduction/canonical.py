"""Set-independent planar chain with needle teeth and foldable five-segment hinges.

Layout (x grows along the chain, y is height, z = 0 throughout)::

    lead-in | left comb | connector | staircase | connector | right comb

Every horizontal run between two vertical edges is a hinge: a vertical edge
alpha1, an arm, a short vertical uv, a second arm of equal length, and a
vertical edge alpha2. Rotating by (+t, -2t, +t) at alpha1, uv, alpha2 pulls
alpha2 towards alpha1 by L(1 - cos t) and leaves the tail parallel to where it
was. The alpha edges are shared with teeth and staircase verticals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..chain import Chain, is_simple
from ..sweep import DihedralQuery, dyn_rotate
from .transcript import QueryRecord

START_X = -7.0
LEFT_X0 = -4.0
TOOTH_SPACING = 2.0
COMB_GAP = 7.0
STAIR_RISE = Fraction(3, 2)
FOLD_TOL = 1e-9


class FoldError(RuntimeError):
    pass


def bump_length(n: int) -> float:
    return min(0.1, 3.0 / (4 * (n + 1)))


def step_height(n: int) -> float:
    return float(STAIR_RISE) / (n + 1)


@dataclass(frozen=True)
class Hinge:
    id: int
    kind: str  # lead | left | bottom | stair | top | right
    alpha1: int
    arm1: int
    uv: int
    arm2: int
    alpha2: int
    arm_sum: float


@dataclass(frozen=True)
class CanonicalChain:
    n: int
    chain: Chain
    hinges: tuple[Hinge, ...]
    left_teeth: tuple[tuple[int, int], ...]  # (up, down) segment indices
    right_teeth: tuple[tuple[int, int], ...]  # (down, up)
    stairs: tuple[int, ...]  # V_0 .. V_n
    delta: float
    step: float
    tooth_map: dict = field(default_factory=dict)  # segment -> ("A"|"C", tooth index)

    @property
    def hinge_count(self) -> int:
        return len(self.hinges)


class _Builder:
    def __init__(self, start):
        self.pts = [start]

    def to(self, x, y) -> int:
        self.pts.append((float(x), float(y)))
        return len(self.pts) - 2

    @property
    def x(self):
        return self.pts[-1][0]


def build_canonical_chain(n: int, check: bool = True) -> CanonicalChain:
    if n < 1:
        raise ValueError("the canonical chain needs n >= 1")
    d = bump_length(n)
    s = step_height(n)
    top = float(STAIR_RISE)
    b = _Builder((START_X, 0.0))
    hinges: list[Hinge] = []
    allowed: list[tuple[int, int]] = []
    left, right, stairs = [], [], []

    def arms(x_mid, x_end, y1, y2):
        return b.to(x_mid, y1), b.to(x_mid, y2), b.to(x_end, y2)

    def hinge(kind, a1, parts, a2, span):
        hinges.append(Hinge(len(hinges), kind, a1, *parts, a2, span))

    # lead-in
    a1 = b.to(START_X, -d)
    parts = arms(START_X + 1.5, LEFT_X0, -d, -d / 2)
    for i in range(n):
        x = LEFT_X0 + TOOTH_SPACING * i
        up = b.to(x, 1.0)
        down = b.to(x, -d)
        allowed += [(up, down), (parts[2], down)]
        left.append((up, down))
        if i == 0:
            hinge("lead", a1, parts, up, 3.0)
        else:
            hinge("left", left[i - 1][1], parts, up, TOOTH_SPACING)
        if i < n - 1:
            parts = arms(x + 1.0, x + TOOTH_SPACING, -d, -d / 2)

    x0 = b.x + COMB_GAP
    parts = arms(b.x + COMB_GAP / 2, x0, -d, -d / 2)
    v = b.to(x0, s)
    hinge("bottom", left[-1][1], parts, v, COMB_GAP)
    stairs.append(v)
    for k in range(n):
        xk = b.x
        parts = arms(xk + 0.5, xk + 1.0, (k + 1) * s, (k + 1) * s - d)
        v = b.to(xk + 1.0, (k + 2) * s if k < n - 1 else top + d)
        hinge("stair", stairs[-1], parts, v, 1.0)
        stairs.append(v)

    xc = b.x + COMB_GAP
    parts = arms(b.x + COMB_GAP / 2, xc, top + d, top + d / 2)
    for j in range(n):
        x = xc + TOOTH_SPACING * j
        down = b.to(x, 0.5)
        up = b.to(x, top + d)
        allowed += [(down, up), (parts[2], up)]
        right.append((down, up))
        if j == 0:
            hinge("top", stairs[-1], parts, down, COMB_GAP)
        else:
            hinge("right", right[j - 1][1], parts, down, TOOTH_SPACING)
        if j < n - 1:
            parts = arms(x + 1.0, x + TOOTH_SPACING, top + d, top + d / 2)

    verts = np.array([[x, y, 0.0] for x, y in b.pts])
    chain = Chain(verts, allowed)
    tooth_map = {}
    for i, pair in enumerate(left):
        for seg in pair:
            tooth_map[seg] = ("A", i)
    for j, pair in enumerate(right):
        for seg in pair:
            tooth_map[seg] = ("C", j)
    out = CanonicalChain(n, chain, tuple(hinges), tuple(left), tuple(right), tuple(stairs), d, s, tooth_map)
    if check:
        rep = is_simple(chain)
        if not rep.simple:
            raise FoldError(f"canonical chain for n={n} not simple at {rep.pair}")
    return out


def alpha_x(c: Chain, seg: int) -> float:
    return float(c.vertices[seg][0])


def hinge_span(c: Chain, h: Hinge) -> float:
    return alpha_x(c, h.alpha2) - alpha_x(c, h.alpha1)


@dataclass(frozen=True)
class HingeFoldPlan:
    hinge: Hinge
    target: float
    theta: float
    program: tuple[tuple[int, float], ...]

    @property
    def identity(self) -> bool:
        return not self.program


def _up(c: Chain, seg: int) -> float:
    dy = c.vertices[seg + 1][1] - c.vertices[seg][1]
    return 1.0 if dy >= 0 else -1.0


def plan_fold(c: Chain, h: Hinge, target: float) -> HingeFoldPlan:
    """Fold program shrinking the hinge span from ``h.arm_sum`` to ``target``.

    Angles are expressed about each edge's own orientation so that all three
    turn the same way around +y.
    """
    L = h.arm_sum
    if not (0.0 < target <= L + FOLD_TOL):
        raise FoldError(f"hinge {h.id} ({h.kind}): target span {target} outside (0, {L}]")
    if target >= L:
        return HingeFoldPlan(h, min(target, L), 0.0, ())
    t = math.acos(target / L)
    prog = (
        (h.alpha1, t * _up(c, h.alpha1)),
        (h.uv, -2.0 * t * _up(c, h.uv)),
        (h.alpha2, t * _up(c, h.alpha2)),
    )
    return HingeFoldPlan(h, target, t, prog)


def fold_hinge(c: Chain, plan: HingeFoldPlan, jobs: int = 1) -> tuple[Chain, list[QueryRecord]]:
    """Run the three dynamic rotations; any infeasible one is a construction bug and raises."""
    records = []
    tail0 = c.vertices[plan.hinge.alpha2 + 1 :].copy()
    for edge, angle in plan.program:
        res = dyn_rotate(c, DihedralQuery(edge, angle), jobs=jobs)
        rec = QueryRecord(edge, angle, res.applied, res.pair_tests, res.event, {"hinge": plan.hinge.id})
        records.append(rec)
        if not res.applied:
            raise FoldError(
                f"hinge {plan.hinge.id} ({plan.hinge.kind}): rotation at edge {edge} "
                f"by {angle:.6g} infeasible: {res.event}"
            )
        c = res.chain
    if plan.program:
        got = hinge_span(c, plan.hinge)
        if abs(got - plan.target) > FOLD_TOL:
            raise FoldError(f"hinge {plan.hinge.id}: span {got} after folding, wanted {plan.target}")
        shift = c.vertices[plan.hinge.alpha2 + 1 :] - tail0
        drift = np.abs(shift - shift[0]).max()
        lateral = np.abs(shift[:, 1:]).max()
        if drift > FOLD_TOL or lateral > FOLD_TOL:
            raise FoldError(f"hinge {plan.hinge.id}: tail moved non-rigidly (drift {drift:.3g}, offset {lateral:.3g})")
    return c, records
