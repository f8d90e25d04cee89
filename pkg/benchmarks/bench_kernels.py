"""Compare the compiled and pure-Python power-iteration kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--scale 20]

Runs the damped and dummy-paper solvers on every reference experiment
and on one larger block-model graph (``--scale`` times Example 6).
"""
import argparse
import time

import numpy as np

from paperrank import _pykernels
from paperrank.synth import BlockModelSpec, example_spec, gen_block_model

try:
    from paperrank import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(name, g, repeat, threads):
    inv_f = 1.0 / (g.out_degrees() + 1.0)
    args = (g.in_indptr, g.in_indices, inv_f)
    rows = []
    for solver, call in (
        ("damped p=0.99", lambda k, t: k.damped_power(*args, 0.99, 1e-10, 100_000, t)),
        ("dummy", lambda k, t: k.dummy_power(*args, 1e-10, 100_000, t)),
    ):
        t_py, (v_py, it, *_rest) = best_of(lambda: call(_pykernels, 0), repeat)
        line = f"{name:<14} {g.n_edges:>9} {solver:<14} {it:>6} {t_py * 1e3:>10.2f}"
        if _kernels is not None:
            t_c, (v_c, *_rest) = best_of(lambda: call(_kernels, threads), repeat)
            diff = np.abs(v_c - v_py).sum()
            line += f" {t_c * 1e3:>10.2f} {t_py / t_c:>8.1f}x {diff:>9.1e}"
        rows.append(line)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=int, default=20)
    ap.add_argument("--threads", type=int, default=0)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'graph':<14} {'edges':>9} {'solver':<14} {'iters':>6} {'python ms':>10}"
          + ("" if _kernels is None else f" {'cython ms':>10} {'speedup':>9} {'|diff|_1':>9}"))
    for n in range(1, 7):
        g = gen_block_model(example_spec(n), args.seed)
        for line in bench(f"example {n}", g, args.repeat, args.threads):
            print(line)
    base = example_spec(6)
    big = BlockModelSpec(tuple(s * args.scale for s in base.group_sizes), base.mean_refs)
    g = gen_block_model(big, args.seed)
    for line in bench(f"ex6 x{args.scale}", g, max(1, args.repeat // 2), args.threads):
        print(line)


if __name__ == "__main__":
    main()
