"""Time the numba kernels against their numpy/Python twins.

    python3 benchmarks/bench_kernels.py [--nodes 60] [--repeat 200]
"""

import argparse
import time

import numpy as np

from bndecomp import _accel, _kernels, random_graph


def timed(fn, repeat):
    fn()  # warm-up, includes jit compilation
    t = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t) / repeat


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=60)
    ap.add_argument("--edge-prob", type=float, default=0.1)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--bb-nodes", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    g = random_graph(args.nodes, args.edge_prob, args.seed)
    adj = g.adjacency_matrix()
    order = np.random.default_rng(args.seed).permutation(args.nodes).astype(np.int64)
    arity = np.full(args.nodes, 2, np.int64)
    small = random_graph(args.bb_nodes, 0.4, args.seed)
    masks = small.adjacency_masks()
    small_ar = np.full(args.bb_nodes, 2, np.int64)

    rows = [
        (f"eliminate (n={args.nodes})",
         lambda: _kernels._eliminate_jit(adj, order),
         lambda: _kernels._eliminate_numpy(adj, order), args.repeat),
        (f"score (n={args.nodes})",
         lambda: _kernels._score_jit(adj, order, arity, _kernels.INT64_LIMIT),
         lambda: _kernels._score_numpy(adj, order, arity), args.repeat),
        (f"branch-and-bound (n={args.bb_nodes})",
         lambda: _kernels._bb_jit(np.asarray(masks, np.int64), small_ar, _kernels.MTNS,
                                  _kernels.INT64_LIMIT),
         lambda: _kernels._bb_python(masks, small_ar, _kernels.MTNS), 3),
    ]
    print(f"{'kernel':<28}{'numba':>12}{'numpy':>12}{'speed-up':>10}")
    for name, jit, ref, repeat in rows:
        a, b = timed(jit, repeat), timed(ref, repeat)
        print(f"{name:<28}{a * 1e3:>10.3f}ms{b * 1e3:>10.3f}ms{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
