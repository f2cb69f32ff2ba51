"""Padding the three sets to equal size and computing exact embedding targets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .threesum import ThreeSumInstance

# |static shift| in units of m: comb teeth sit at a - SHIFT*m and c + SHIFT*m
STATIC_SHIFT = 3


@dataclass(frozen=True)
class ScaledSets:
    instance: ThreeSumInstance
    m0: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    m: int

    @property
    def n(self) -> int:
        return len(self.A)

    def is_sentinel(self, v: int) -> bool:
        return v > 7 * self.m0

    # static embedding: integer tooth centres, staircase abscissae -b/2
    def static_A(self) -> tuple[int, ...]:
        return tuple(a - STATIC_SHIFT * self.m for a in self.A)

    def static_C(self) -> tuple[int, ...]:
        return tuple(c + STATIC_SHIFT * self.m for c in self.C)

    def static_stairs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(-b, 2) for b in self.B)

    # dynamic embedding: A' in [-6,-4], B' in [-1/2,1/2], C' in [4,6]
    def dyn_A(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.m) - 5 for a in self.A)

    def dyn_B(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(-b, 2 * self.m) for b in self.B)

    def dyn_C(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.m) + 5 for c in self.C)


def pad_and_scale(inst: ThreeSumInstance, n: int | None = None) -> ScaledSets:
    """Pad every set to ``n`` elements (default: the largest set) with sentinels 7*m0 + i.

    Sentinels are positive and exceed 7*m0, so any sum containing one is at
    least 7*m0 + 1 - 2*m0 > 0 and the zero triples are exactly preserved.
    """
    inst.check_bound()
    m0 = inst.max_abs() or 1
    size = max(len(inst.A), len(inst.B), len(inst.C))
    if n is None:
        n = size
    if n < size:
        raise ValueError(f"cannot pad sets of size {size} down to {n}")

    def pad(s):
        return tuple(sorted(s)) + tuple(7 * m0 + i for i in range(1, n - len(s) + 1))

    A, B, C = pad(inst.A), pad(inst.B), pad(inst.C)
    m = max(abs(v) for v in A + B + C) or 1
    return ScaledSets(inst, m0, A, B, C, m)
