"""Hypergraph acyclicity (Graham reduction, conformality, running
intersection) and junction trees over clique sets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NetworkError, NotChordalError, ParseError
from .model import UndirectedGraph


@dataclass(frozen=True)
class Hypergraph:
    nodes: tuple[str, ...]
    hyperedges: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "hyperedges", tuple(frozenset(e) for e in self.hyperedges))
        known = set(self.nodes)
        for e in self.hyperedges:
            if not e:
                raise NetworkError("empty hyperedge")
            if not e <= known:
                raise NetworkError(f"hyperedge uses undeclared node(s) {sorted(e - known)}")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[str]], nodes: Sequence[str] | None = None):
        edges = [list(e) for e in edges]
        if nodes is None:
            seen: dict[str, None] = {}
            for e in edges:
                seen.update(dict.fromkeys(e))
            nodes = tuple(seen)
        return cls(tuple(nodes), tuple(frozenset(e) for e in edges))


def parse_hypergraph(text: str) -> Hypergraph:
    """One hyperedge per line, node names separated by whitespace."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if line:
            if len(set(line)) != len(line):
                raise ParseError("node repeated within a hyperedge", lineno)
            edges.append(line)
    if not edges:
        raise ParseError("no hyperedges")
    return Hypergraph.from_edges(edges)


def reduce(h: Hypergraph) -> Hypergraph:
    """Drop every hyperedge contained in another (first copy of duplicates kept)."""
    edges = h.hyperedges
    kept = []
    for i, e in enumerate(edges):
        dominated = any(
            e < f or (e == f and j < i) for j, f in enumerate(edges) if j != i)
        if not dominated:
            kept.append(e)
    return Hypergraph(h.nodes, tuple(kept))


def two_section(h: Hypergraph) -> UndirectedGraph:
    order = {v: i for i, v in enumerate(h.nodes)}
    edges = set()
    for e in h.hyperedges:
        members = sorted(e, key=order.__getitem__)
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                edges.add((u, v))
    return UndirectedGraph(h.nodes, frozenset(edges))


def maximal_cliques(g: UndirectedGraph) -> list[frozenset[str]]:
    """Bron-Kerbosch with pivoting; for graphs that need not be chordal."""
    adj = g.adjacency
    out: list[frozenset[str]] = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if g.nodes:
        expand(set(), set(g.nodes), set())
    return out


def is_conformal(h: Hypergraph) -> bool:
    return all(any(c <= e for e in h.hyperedges) for c in maximal_cliques(two_section(h)))


def graham_acyclic(h: Hypergraph) -> tuple[bool, list[tuple]]:
    """Graham reduction to a fixpoint.

    Returns ``(acyclic, trace)``; trace entries are ``("node", v, i)`` for
    node ``v`` deleted from hyperedge ``i`` (its only occurrence),
    ``("edge", i, j)`` for hyperedge ``i`` deleted as a subset of ``j``, and
    ``("edge", i, None)`` for a hyperedge emptied out.
    """
    ok, trace, _ = _graham(h)
    return ok, trace


def _graham(h: Hypergraph):
    live = {i: set(e) for i, e in enumerate(h.hyperedges)}
    trace: list[tuple] = []
    ears: list[int] = []
    order = {v: k for k, v in enumerate(h.nodes)}
    changed = True
    while changed:
        changed = False
        count: dict[str, list[int]] = {}
        for i, e in live.items():
            for v in e:
                count.setdefault(v, []).append(i)
        for v in sorted(count, key=order.__getitem__):
            holders = count[v]
            if len(holders) == 1:
                live[holders[0]].discard(v)
                trace.append(("node", v, holders[0]))
                changed = True
        for i in sorted(live):
            e = live[i]
            if not e:
                container = None
            else:
                container = next(
                    (j for j in sorted(live) if j != i and e <= live[j]), -1)
                if container == -1:
                    continue
            del live[i]
            ears.append(i)
            trace.append(("edge", i, container))
            changed = True
    return not live, trace, ears


def satisfies_running_intersection(seq: Sequence[frozenset[str]]) -> bool:
    seen: set[str] = set()
    for i, s in enumerate(seq):
        if i:
            common = s & seen
            if not any(common <= seq[j] for j in range(i)):
                return False
        seen |= s
    return True


def running_intersection_ordering(h: Hypergraph) -> list[int] | None:
    """Hyperedge indices in an order with the running intersection property,
    or ``None``. Built by reversing the order Graham reduction peels edges."""
    ok, _, ears = _graham(h)
    if not ok:
        return None
    seq = ears[::-1]
    assert satisfies_running_intersection([h.hyperedges[i] for i in seq])
    return seq


@dataclass(frozen=True)
class JunctionTree:
    cliques: tuple[frozenset[str], ...]
    edges: tuple[tuple[int, int, frozenset[str]], ...] = field(default=())

    def neighbors(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {i: [] for i in range(len(self.cliques))}
        for i, j, _ in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        return nb

    def bfs_order(self, root: int = 0) -> list[int]:
        if not self.cliques:
            return []
        nb = self.neighbors()
        seen = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in sorted(nb[i]):
                if j not in seen:
                    seen.append(j)
                    queue.append(j)
        return seen


def build_junction_tree(cliques: Sequence[Iterable[str]]) -> JunctionTree:
    """Maximum-weight spanning tree of the clique intersection graph.

    Weight is separator size; ties go to the smaller clique index, then the
    smaller partner index. Cliques from different components are joined with
    empty separators so the result is always a single tree.
    """
    cl = tuple(frozenset(c) for c in cliques)
    if len(cl) > 1:
        h = Hypergraph.from_edges(cl)
        if not graham_acyclic(h)[0] or len(reduce(h).hyperedges) != len(cl):
            raise NotChordalError("clique set is not a reduced acyclic hypergraph")
    pairs = sorted(
        ((i, j) for i in range(len(cl)) for j in range(i + 1, len(cl))),
        key=lambda p: (-len(cl[p[0]] & cl[p[1]]), p[0], p[1]))
    root = list(range(len(cl)))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    edges = []
    for i, j in pairs:
        a, b = find(i), find(j)
        if a != b:
            root[a] = b
            edges.append((i, j, cl[i] & cl[j]))
            if len(edges) == len(cl) - 1:
                break
    return JunctionTree(cl, tuple(edges))


def propagation_delay(t: JunctionTree) -> int:
    """Number of cliques on the longest path of the tree."""
    if not t.cliques:
        return 0
    nb = t.neighbors()

    def farthest(src):
        dist = {src: 1}
        queue = deque([src])
        while queue:
            i = queue.popleft()
            for j in nb[i]:
                if j not in dist:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        far = max(dist, key=lambda k: (dist[k], -k))
        return far, dist[far]

    end, _ = farthest(0)
    return farthest(end)[1]
