"""3SUM instances, ground-truth solvers and the 3SUM <-> 3SUM' conversions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

SOUNDNESS_BOUND = 10**5


class SoundnessError(ValueError):
    """Input values too large for the geometric embeddings to decide reliably."""


def _as_int_set(values, name: str) -> tuple[int, ...]:
    out = set()
    for v in values:
        if isinstance(v, bool) or int(v) != v:
            raise TypeError(f"set {name} holds a non-integer {v!r}")
        out.add(int(v))
    return tuple(sorted(out))


@dataclass(frozen=True)
class ThreeSumInstance:
    """Three integer sets (deduplicated, sorted); one element each must sum to zero."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]

    def __post_init__(self):
        for name in "ABC":
            object.__setattr__(self, name, _as_int_set(getattr(self, name), name))

    @classmethod
    def from_single(cls, S) -> "ThreeSumInstance":
        return cls(S, S, S)

    def max_abs(self) -> int:
        return max((abs(v) for v in self.A + self.B + self.C), default=0)

    def check_bound(self, bound: int = SOUNDNESS_BOUND) -> None:
        if self.max_abs() > bound:
            raise SoundnessError(f"values must satisfy |v| <= {bound}, got {self.max_abs()}")
        if not (self.A and self.B and self.C):
            raise ValueError("all three sets must be nonempty")


def solve_threesum_oracle(inst: ThreeSumInstance):
    """Lexicographically smallest (a, b, c) with a + b + c == 0, or None.

    Quadratic: for each (a, b) look up c = -a - b in a hash set.
    """
    cset = set(inst.C)
    for a in inst.A:
        for b in inst.B:
            if -a - b in cset:
                return (a, b, -a - b)
    return None


def solve_threesum_cubic(inst: ThreeSumInstance):
    """Exhaustive triple enumeration; the slow cross-check for the quadratic oracle."""
    for a, b, c in itertools.product(inst.A, inst.B, inst.C):
        if a + b + c == 0:
            return (a, b, c)
    return None


def threesum_single(S):
    """Three elements of S (repeats allowed) summing to zero, or None."""
    return solve_threesum_oracle(ThreeSumInstance.from_single(S))


def to_prime(S) -> ThreeSumInstance:
    """3SUM -> 3SUM': the same set three times."""
    return ThreeSumInstance.from_single(S)


def from_prime(inst: ThreeSumInstance) -> tuple[int, ...]:
    """3SUM' -> 3SUM: offset the sets by K, 2K and -3K with K > 3 max|v|.

    Any three offsets other than one of each sum to a nonzero multiple of K,
    which the values cannot cancel.
    """
    k = 3 * inst.max_abs() + 1
    S = {a + k for a in inst.A} | {b + 2 * k for b in inst.B} | {c - 3 * k for c in inst.C}
    return tuple(sorted(S))
