"""Compare the compiled and pure-Python collision kernels on one all-pairs query.

    python3 benchmarks/bench_backends.py [--n 64 128 256] [--repeat 3]

Both backends run the same ``sweep_range`` call on a random-walk chain; the
script checks they agree and prints seconds per query and the speedup.
"""
import argparse
import math
import time

import numpy as np

from dihedral._kernels import backends
from dihedral.bench import random_walk_chain
from dihedral.sweep import _frame
from dihedral.chain import edge_axis


def time_query(mod, c, e, phi, repeat):
    frame = _frame(edge_axis(c, e))
    args = (c.vertices, frame, abs(phi), 1.0, e + 1, c.n_segments, 0, e, c.eps(), c.skip_keys())
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = mod.sweep_range(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, nargs="+", default=[64, 128, 256])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    mods = backends()
    if "cython" not in mods:
        print("compiled extension not built; only the Python kernel is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>6} {'pairs':>8} " + " ".join(f"{k + ' s':>12}" for k in mods) + "   speedup")
    for n in args.n:
        c = random_walk_chain(n, rng)
        e = n // 2
        res = {k: time_query(m, c, e, math.pi, args.repeat) for k, m in mods.items()}
        outs = [r[1] for r in res.values()]
        # found flag, pair and test count must match exactly; angle to rounding
        assert all(o[0] == outs[0][0] and o[2:4] == outs[0][2:4] and o[6] == outs[0][6] for o in outs)
        assert all(abs(o[1] - outs[0][1]) <= 1e-9 for o in outs if o[0])
        times = [r[0] for r in res.values()]
        speed = f"{times[0] / times[1]:9.1f}x" if len(times) > 1 else "        -"
        print(f"{n:>6} {outs[0][6]:>8} " + " ".join(f"{t:12.5f}" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
