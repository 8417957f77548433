"""Greedy ordering heuristics: minimum degree, minimum deficiency,
lexicographic search and maximum cardinality search.

Ties always go to the node declared first.
"""

from __future__ import annotations

from typing import Callable

from .model import Ordering, UndirectedGraph


def _greedy_elimination(g: UndirectedGraph, key: Callable) -> Ordering:
    # rank 0 is picked first; the working graph loses the picked node after
    # its remaining neighbours are joined pairwise
    work = {v: set(g.adjacency[v]) for v in g.nodes}
    remaining = list(g.nodes)
    picked = []
    while remaining:
        v = min(remaining, key=lambda u: key(u, work))
        nb = work.pop(v)
        for x in nb:
            work[x].discard(v)
            work[x] |= nb - {x}
        remaining.remove(v)
        picked.append(v)
    return Ordering(tuple(picked))


def _degree(v, work):
    return len(work[v])


def _deficiency(v, work):
    nb = list(work[v])
    missing = 0
    for i, x in enumerate(nb):
        adj = work[x]
        missing += sum(1 for y in nb[i + 1:] if y not in adj)
    return missing


def min_degree_ordering(g: UndirectedGraph) -> Ordering:
    return _greedy_elimination(g, _degree)


def min_deficiency_ordering(g: UndirectedGraph) -> Ordering:
    return _greedy_elimination(g, _deficiency)


def _numbering_search(g: UndirectedGraph, label_key: Callable) -> Ordering:
    # ranks handed out from m-1 downward on the static graph
    m = len(g.nodes)
    labels: dict[str, list[int]] = {v: [] for v in g.nodes}
    unnumbered = list(g.nodes)
    rank_of: dict[str, int] = {}
    for r in range(m - 1, -1, -1):
        best = unnumbered[0]
        best_key = label_key(labels[best])
        for v in unnumbered[1:]:
            k = label_key(labels[v])
            if k > best_key:
                best, best_key = v, k
        unnumbered.remove(best)
        rank_of[best] = r
        for w in g.adjacency[best]:
            if w not in rank_of:
                labels[w].append(r)
    return Ordering(tuple(sorted(g.nodes, key=rank_of.__getitem__)))


def lex_search_ordering(g: UndirectedGraph) -> Ordering:
    """Pick the node whose list of numbered-neighbour ranks (descending) is
    lexicographically largest; a proper prefix compares smaller."""
    return _numbering_search(g, lambda lab: lab)


def max_cardinality_ordering(g: UndirectedGraph) -> Ordering:
    """Pick the node with the most numbered neighbours."""
    return _numbering_search(g, len)


HEURISTICS: dict[str, Callable[[UndirectedGraph], Ordering]] = {
    "min-degree": min_degree_ordering,
    "min-deficiency": min_deficiency_ordering,
    "lex": lex_search_ordering,
    "mcs": max_cardinality_ordering,
}
