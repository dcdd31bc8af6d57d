#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Times the three hot paths (embedding force loop, fraction-free leading
minors, exact tableau pivoting) on synthetic inputs of adjustable size and
prints a small table with the speedup.  Run from a checkout with the
extension built, e.g.

    python3 benchmarks/bench_backends.py --vertices 60 --iterations 400
"""

import argparse
import time
from fractions import Fraction

import numpy as np

import shapecert._kernels_py as pure

try:
    import shapecert._kernels_c as compiled
except ImportError:
    compiled = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def embed_case(args):
    rng = np.random.Generator(np.random.Philox(key=7))
    n, dim = args.vertices, 3
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if (i * 31 + j) % 5 == 0]
    edge_i = np.array([e[0] for e in edges], dtype=np.int64)
    edge_j = np.array([e[1] for e in edges], dtype=np.int64)
    target = np.ascontiguousarray(rng.random(len(edges)) + 0.5)
    base = np.ascontiguousarray(rng.random((n, dim)))

    def run(module):
        pos = np.copy(base)
        module.run_embed_phase(pos, edge_i, edge_j, target,
                               0.2, 1.0, 0.05, args.iterations, True)
        return pos

    return "embed %dv/%de x%d" % (n, len(edges), args.iterations), run


def bareiss_case(args):
    rng = np.random.Generator(np.random.Philox(key=8))
    n = args.matrix
    rows = [[int(rng.integers(-999, 1000)) for _ in range(n)]
            for _ in range(n)]

    def run(module):
        return module.bareiss_leading_minors([r[:] for r in rows])

    return "bareiss minors %dx%d" % (n, n), run


def pivot_case(args):
    rng = np.random.Generator(np.random.Philox(key=9))
    rows, cols = args.matrix, 2 * args.matrix + 2
    tableau = [[Fraction(int(rng.integers(-50, 51)),
                         int(rng.integers(1, 7)))
                for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        if tableau[i][i] == 0:
            tableau[i][i] = Fraction(1)

    def run(module):
        work = [row[:] for row in tableau]
        for k in range(rows):
            module.lcp_pivot(work, k, k)
        return work

    return "lcp pivots %dx%d" % (rows, cols), run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vertices", type=int, default=60,
                        help="vertex count for the embed case (default 60)")
    parser.add_argument("--iterations", type=int, default=400,
                        help="force iterations for the embed case (default 400)")
    parser.add_argument("--matrix", type=int, default=40,
                        help="matrix size for the exact cases (default 40)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="best-of repeat count (default 3)")
    args = parser.parse_args()

    if compiled is None:
        print("compiled extension not built; nothing to compare")
        return 1

    print("%-28s %12s %12s %9s" % ("case", "pure (s)", "compiled (s)", "speedup"))
    for label, run in (embed_case(args), bareiss_case(args), pivot_case(args)):
        t_pure = best_of(lambda: run(pure), args.repeats)
        t_comp = best_of(lambda: run(compiled), args.repeats)
        print("%-28s %12.4f %12.4f %8.1fx"
              % (label, t_pure, t_comp, t_pure / t_comp))

    # sanity: identical answers on the embed case
    label, run = embed_case(args)
    ok = np.array_equal(run(pure), run(compiled))
    print("embed outputs identical:", ok)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
