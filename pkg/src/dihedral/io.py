"""JSON chain and set files."""
from __future__ import annotations

import json
from pathlib import Path

from .chain import Chain
from .reduction.threesum import ThreeSumInstance


class InputError(ValueError):
    """Malformed or unreadable input file."""


def _load(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def chain_from_json(doc) -> Chain:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputError('chain file needs a "vertices" list')
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(
        isinstance(v, list) and len(v) == 3 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
        for v in verts
    ):
        raise InputError("vertices must be a list of [x, y, z] numbers")
    pairs = doc.get("allowed_overlaps", [])
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(i, int) and not isinstance(i, bool) for i in p)
        for p in pairs
    ):
        raise InputError("allowed_overlaps must be a list of [i, j] integer pairs")
    try:
        return Chain(verts, pairs)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def chain_to_json(c: Chain) -> dict:
    return {
        "vertices": c.vertices.tolist(),
        "allowed_overlaps": [list(p) for p in sorted(c.allowed_overlaps)],
    }


def read_chain(path) -> Chain:
    return chain_from_json(_load(path))


def write_chain(c: Chain, path) -> None:
    # repr-exact floats, so reading back gives identical coordinates
    Path(path).write_text(json.dumps(chain_to_json(c)) + "\n")


def sets_from_json(doc) -> ThreeSumInstance:
    if not isinstance(doc, dict):
        raise InputError('sets file must be an object with "A", "B", "C" or "S"')

    def ints(key):
        v = doc[key]
        if not isinstance(v, list) or not v or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise InputError(f'"{key}" must be a nonempty list of integers')
        return v

    if "S" in doc:
        return ThreeSumInstance.from_single(ints("S"))
    if all(k in doc for k in "ABC"):
        return ThreeSumInstance(ints("A"), ints("B"), ints("C"))
    raise InputError('sets file needs "A", "B" and "C", or "S"')


def read_sets(path) -> ThreeSumInstance:
    return sets_from_json(_load(path))
