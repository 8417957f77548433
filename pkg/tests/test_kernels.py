"""The jitted kernels and their numpy twins must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given, settings

from bndecomp import _accel, _kernels, random_graph

from oracles import graph_and_ordering

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def _arity(n, seed):
    return np.random.default_rng(seed).integers(2, 5, n).astype(np.int64)


@needs_numba
@settings(max_examples=200, deadline=None)
@given(graph_and_ordering(max_nodes=10))
def test_eliminate_backends_agree(case):
    g, order = case
    adj = g.adjacency_matrix()
    idx = order.indices(g)
    a = _kernels._eliminate_jit(adj, idx)
    b = _kernels._eliminate_numpy(adj, idx)
    assert np.array_equal(a[0], b[0])
    assert np.array_equal(a[1], b[1])
    assert np.array_equal(a[2], b[2])
    assert int(a[3]) == int(b[3])


@needs_numba
@settings(max_examples=200, deadline=None)
@given(graph_and_ordering(max_nodes=10))
def test_score_backends_agree(case):
    g, order = case
    adj = g.adjacency_matrix()
    idx = order.indices(g)
    ar = _arity(len(g.nodes), len(g.edges))
    total, biggest, nfill, overflow = _kernels._score_jit(adj, idx, ar, _kernels.INT64_LIMIT)
    assert not overflow
    assert (int(total), int(biggest), int(nfill)) == _kernels._score_numpy(adj, idx, ar)


def test_score_falls_back_on_int64_overflow():
    g = random_graph(6, 1.0, 0)
    adj = g.adjacency_matrix()
    ar = np.full(6, 1 << 20, np.int64)
    total, biggest, _ = _kernels.score(adj, np.arange(6), ar)
    assert total == biggest == (1 << 120)


@needs_numba
@pytest.mark.parametrize("criterion", [_kernels.MTNS, _kernels.MAX_CLIQUE, _kernels.FILL_IN])
def test_branch_and_bound_backends_agree(criterion):
    for seed in range(25):
        g = random_graph(7, 0.45, seed)
        masks = g.adjacency_masks()
        ar = _arity(7, seed)
        order, p, s, overflow = _kernels._bb_jit(np.asarray(masks, np.int64), ar,
                                                 criterion, _kernels.INT64_LIMIT)
        assert not overflow
        py = _kernels._bb_python(masks, ar, criterion)
        assert ([int(i) for i in order], int(p), int(s)) == py


@needs_numba
def test_branch_and_bound_overflow_uses_python_ints():
    g = random_graph(5, 1.0, 0)
    order, p, s = _kernels.branch_and_bound(g.adjacency_masks(), [1 << 16] * 5, _kernels.MTNS)
    assert p == s == 1 << 80


def test_backend_name():
    assert _accel.backend() in ("numba", "numpy")


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys

    from bndecomp import exact_optimal

    code = ("import bndecomp as b; g = b.random_graph(7, 0.5, 1); "
            "print(b.backend(), b.exact_optimal(g).mtns, b.anneal(g, cfg=b.AnnealConfig("
            "seed=1, max_stale=2)).ordering.nodes)")
    env = dict(os.environ, BNDECOMP_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split(" ", 2)
    assert out[0] == "numpy"
    from bndecomp import AnnealConfig, anneal
    g = random_graph(7, 0.5, 1)
    assert int(out[1]) == exact_optimal(g).mtns
    assert out[2].strip() == str(anneal(g, cfg=AnnealConfig(seed=1, max_stale=2)).ordering.nodes)
