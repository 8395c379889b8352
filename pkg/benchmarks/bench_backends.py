"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_backends.py [--repeat 3]

Cases: the subset DP reach table on a dense order-20 graph, the pruned DFS
under a fixed node budget on a sparse order-40 graph, and end-to-end W_8 verification of the K_63 and
K_189 blow-up colorings. Both backends must return identical answers; the
script exits 1 if they do not.
"""

import argparse
import sys
import time

import numpy as np

from wheelramsey import _jit, _kernels
from wheelramsey.constructions import iterated_blowup
from wheelramsey.detection import verify_wheel_free
from wheelramsey.graph import Graph


def dense_graph(order, p, seed=0):
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((order, order)) < p, 1)
    return Graph.from_adjacency(upper | upper.T)


def case_dp():
    g = dense_graph(20, 0.3)
    adj = np.array(g.masks, dtype=np.int64)
    return lambda: tuple(_kernels.dp_extract_cycle(_kernels.reach_table(adj, 20), adj, 20) or ())


def case_dfs():
    # a fixed node budget gives both backends exactly the same work
    g = dense_graph(40, 0.12, seed=1)
    return lambda: (lambda r: (r[0], tuple(r[1] or ())))(_kernels.dfs_cycle(g.rows, 37, 2_000_000))


def case_verify(k, n):
    coloring, _ = iterated_blowup(k, n)
    return lambda: verify_wheel_free(coloring, n, threads=1).to_text()


CASES = {
    "dp-reach-20": case_dp,
    "dfs-budget-40": case_dfs,
    "verify-K63-W8": lambda: case_verify(3, 8),
    "verify-K189-W8": lambda: case_verify(4, 8),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = [b for b in _jit.BACKENDS if b != "numba" or _jit.HAVE_NUMBA]
    print(f"{'case':<16} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    mismatch = False
    for name, make in CASES.items():
        fn = make()
        row, answers = {}, set()
        for b in backends:
            with _jit.use_backend(b):
                fn()  # warm-up, includes jit compilation
                row[b], ans = best_of(fn, args.repeat)
            answers.add(ans)
        mismatch |= len(answers) != 1
        speed = row["numpy"] / row["numba"] if "numba" in row and row["numba"] > 0 else float("nan")
        cells = " ".join(f"{row[b] * 1e3:>8.1f}ms" for b in backends)
        print(f"{name:<16} {cells}   {speed:6.1f}x" + ("  MISMATCH" if len(answers) != 1 else ""))
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
