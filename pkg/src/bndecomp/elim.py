"""Elimination orderings, fill-in, elimination graphs, chordality and the
maximal cliques of chordal graphs."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import NotChordalError
from .model import Edge, Ordering, UndirectedGraph


def _run(g: UndirectedGraph, ordering: Ordering):
    idx = ordering.indices(g)
    return idx, _kernels.eliminate(g.adjacency_matrix(), idx)


def fill_in(g: UndirectedGraph, ordering: Ordering) -> frozenset[Edge]:
    """Edges added by eliminating nodes in increasing rank."""
    _, (filled, _, _, _) = _run(g, ordering)
    extra = np.argwhere(np.triu(filled.astype(bool) & ~g.adjacency_matrix().astype(bool)))
    return frozenset((g.nodes[i], g.nodes[j]) for i, j in extra)


def elimination_graph(g: UndirectedGraph, ordering: Ordering) -> UndirectedGraph:
    return g.with_edges(fill_in(g, ordering))


def elimination_cliques(g: UndirectedGraph, ordering: Ordering):
    """``[(v, C_v, is_maximal)]`` in rank order, where ``C_v`` is ``v`` plus
    its higher-ranked neighbours in the elimination graph."""
    idx, (filled, _, maximal, _) = _run(g, ordering)
    rank = np.empty(len(idx), np.int64)
    rank[idx] = np.arange(len(idx))
    out = []
    for v in idx:
        members = np.flatnonzero(filled[v].astype(bool) & (rank > rank[v]))
        clique = frozenset([g.nodes[v], *(g.nodes[u] for u in members)])
        out.append((g.nodes[v], clique, bool(maximal[v])))
    return out


def is_chordal(g: UndirectedGraph) -> Ordering | None:
    """Perfect elimination ordering witness, or ``None`` if ``g`` is not chordal.

    Maximum cardinality search yields a zero fill-in ordering on every
    chordal graph, so a nonempty fill-in for it settles the question.
    """
    from .heur import max_cardinality_ordering

    peo = max_cardinality_ordering(g)
    return peo if not fill_in(g, peo) else None


def maximal_cliques_chordal(g: UndirectedGraph, peo: Ordering) -> list[frozenset[str]]:
    """Maximal cliques of a chordal graph from one of its perfect elimination
    orderings, listed in the rank order of their lowest member."""
    if fill_in(g, peo):
        raise NotChordalError("ordering has nonempty fill-in; triangulate first")
    cands = [c for _, c, _ in elimination_cliques(g, peo)]
    # size-descending containment scan; stable sort keeps rank order among equals
    by_size = sorted(range(len(cands)), key=lambda i: -len(cands[i]))
    kept: list[int] = []
    for i in by_size:
        if not any(cands[i] <= cands[j] for j in kept):
            kept.append(i)
    return [cands[i] for i in sorted(kept)]
