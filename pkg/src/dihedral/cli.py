"""``dihedral`` command line: validate, query, simulate, reduce, bench, render.

Exit codes: 0 success or feasible, 3 infeasible or not simple, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import bench_brute, bench_tree
from .chain import DegenerateEdgeError, is_simple
from .io import InputError, chain_to_json, read_chain, read_sets, write_chain
from .reduction import SoundnessError, run_dynamic_reduction, run_static_reduction
from .render import render_svg
from .sweep import DihedralQuery, dyn_rotate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NEGATIVE = 3
SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _seed(value) -> int:
    if value is None:
        value = os.environ.get("DIHEDRAL_SEED", "0")
    try:
        s = int(value)
    except ValueError as exc:
        raise InputError(f"seed must be an integer, got {value!r}") from exc
    if not 0 <= s < 2**64:
        raise InputError("seed must fit in 64 unsigned bits")
    return s


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps({"version": SCHEMA_VERSION, **doc}, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return vals


def cmd_validate(args) -> int:
    c = read_chain(args.chain)
    rep = is_simple(c, eps=args.tol)
    _emit({"simple": rep.simple, "pair": list(rep.pair) if rep.pair else None,
           "segments": c.n_segments}, args.output)
    return EXIT_OK if rep.simple else EXIT_NEGATIVE


def cmd_query(args) -> int:
    c = read_chain(args.chain)
    res = dyn_rotate(c, DihedralQuery(c.check_edge(args.edge), args.angle), eps=args.tol, jobs=args.jobs)
    doc = {
        "edge": args.edge,
        "angle": args.angle,
        "verdict": "feasible" if res.event is None else "infeasible",
        "pairTests": res.pair_tests,
        "witness": None if res.event is None else res.event.to_json(),
    }
    if args.dynamic and res.applied:
        target = args.write or args.chain
        write_chain(res.chain, target)
        doc["written"] = str(target)
    _emit(doc, args.output)
    return EXIT_OK if res.event is None else EXIT_NEGATIVE


def cmd_simulate(args) -> int:
    c = read_chain(args.chain)
    if not is_simple(c, eps=args.tol):
        raise InputError("simulation needs a simple starting chain")
    if args.steps < 0 or not (args.max_angle >= 0 and math.isfinite(args.max_angle)):
        raise InputError("steps and max-angle must be non-negative")
    seed = _seed(args.seed)
    rng = np.random.default_rng(seed)
    steps = []
    accepted = 0
    for _ in range(args.steps):
        e = int(rng.integers(0, c.n_segments))
        phi = float(rng.uniform(-args.max_angle, args.max_angle))
        res = dyn_rotate(c, DihedralQuery(e, phi), eps=args.tol, jobs=args.jobs)
        accepted += res.applied
        c = res.chain
        steps.append({"edge": e, "angle": phi, "accepted": res.applied})
    if args.write:
        write_chain(c, args.write)
    _emit({
        "seed": seed,
        "steps": args.steps,
        "maxAngle": args.max_angle,
        "accepted": accepted,
        "acceptance": accepted / args.steps if args.steps else 1.0,
        "verdicts": steps,
        "finalChain": chain_to_json(c),
    }, args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = read_sets(args.sets)
    run = run_static_reduction if args.mode == "static" else run_dynamic_reduction
    tr = run(inst, jobs=args.jobs)
    doc = tr.to_json()
    doc.pop("version")
    _emit(doc, args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    seed = _seed(args.seed)
    rng = np.random.default_rng(seed)
    records = []
    for n in [x for group in args.n for x in group]:
        if args.structure == "tree":
            records.append(bench_tree(n, args.k, rng))
        else:
            records.append(bench_brute(n, args.k, jobs=args.jobs))
    _emit({"structure": args.structure, "seed": seed, "records": records}, args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    c = read_chain(args.chain)
    Path(args.svg).write_text(render_svg(c))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dihedral", description="Dihedral rotations of polygonal chains.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker threads for pair tests")
    common.add_argument("--tol", type=float, default=None, help="absolute contact tolerance override")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a chain for self-intersection")
    s.add_argument("chain")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("query", parents=[common], help="test one dihedral rotation")
    s.add_argument("chain")
    s.add_argument("--edge", type=int, required=True)
    s.add_argument("--angle", type=float, required=True)
    s.add_argument("--dynamic", action="store_true", help="apply the rotation when feasible")
    s.add_argument("--write", help="where --dynamic writes the rotated chain (default: in place)")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("simulate", parents=[common], help="Monte Carlo random rotations")
    s.add_argument("chain")
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--seed", default=None, help="defaults to $DIHEDRAL_SEED, then 0")
    s.add_argument("--max-angle", type=float, default=math.pi)
    s.add_argument("--write", help="also write the final chain here")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("reduce", parents=[common], help="decide 3SUM' through the rotation reductions")
    s.add_argument("sets")
    s.add_argument("--mode", choices=("static", "dynamic"), default="static")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bench", parents=[common], help="operation counters for the tree and the brute query")
    s.add_argument("--structure", choices=("tree", "brute"), default="tree")
    s.add_argument("--n", type=_int_list, nargs="+", default=[[16, 64, 256, 1024]], help="sizes, space or comma separated")
    s.add_argument("--k", type=int, default=1000)
    s.add_argument("--seed", default=None)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("render", parents=[common], help="SVG top and side views")
    s.add_argument("chain")
    s.add_argument("--svg", required=True)
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("dihedral: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, SoundnessError, IndexError, DegenerateEdgeError, ValueError) as exc:
        print(f"dihedral: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"dihedral: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
