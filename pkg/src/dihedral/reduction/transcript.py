"""Append-only record of the queries a reduction driver issues."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..sweep import CollisionEvent

SCHEMA_VERSION = 1


@dataclass
class QueryRecord:
    edge_index: int
    angle: float
    feasible: bool
    pair_tests: int
    witness: CollisionEvent | None = None
    label: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "edgeIndex": self.edge_index,
            "angle": self.angle,
            "verdict": "feasible" if self.feasible else "infeasible",
            "pairTests": self.pair_tests,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        out.update(self.label)
        return out


@dataclass
class ReductionTranscript:
    mode: str
    header: dict = field(default_factory=dict)
    phases: dict = field(default_factory=dict)
    counters: dict = field(default_factory=dict)
    triple: tuple[int, int, int] | None = None

    def record(self, phase: str, rec: QueryRecord) -> None:
        self.phases.setdefault(phase, []).append(rec)
        self.counters["pairTests"] = self.counters.get("pairTests", 0) + rec.pair_tests

    def queries(self, phase: str) -> list[QueryRecord]:
        return self.phases.get(phase, [])

    def to_json(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "mode": self.mode,
            "header": self.header,
            "phases": {k: [r.to_json() for r in v] for k, v in self.phases.items()},
            "counters": self.counters,
            "triple": None if self.triple is None else list(self.triple),
        }
