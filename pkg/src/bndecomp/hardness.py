"""Executable form of the reduction from Elimination Degree Sequence to
optimal decomposition: EDS instances, the bipartite construction C(G'),
the fill-in induced by a node ordering, and a checker for the clique-state
accounting on concrete instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .elim import is_chordal, maximal_cliques_chordal
from .errors import DecompError, InfeasibleError, NetworkError, OrderingError, StateOverflowError
from .hyper import build_junction_tree, propagation_delay
from .model import Edge, Ordering, UndirectedGraph
from .optimize import MAX_STATES, mtns_cost

EDS_LIMIT = 10


@dataclass(frozen=True)
class EdsInstance:
    graph: UndirectedGraph
    degrees: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.degrees)
        object.__setattr__(self, "degrees", d)
        m = len(self.graph.nodes)
        if len(d) != m:
            raise NetworkError(f"degree sequence has {len(d)} entries, graph has {m} nodes")
        if any(x < 0 or x > m - 1 for x in d):
            raise NetworkError(f"degrees must lie in [0, {m - 1}]")

    @property
    def sum_matches(self) -> bool:
        # each edge is counted once, at its earlier endpoint
        return sum(self.degrees) == len(self.graph.edges)


def later_degrees(g: UndirectedGraph, tau: Ordering) -> tuple[int, ...]:
    """Degree sequence realised by ``tau``: neighbours at later positions."""
    tau.check(g)
    pos = tau.rank
    return tuple(sum(1 for u in g.adjacency[v] if pos[u] > pos[v]) for v in tau.nodes)


def eds_check(inst: EdsInstance, tau: Ordering) -> bool:
    return later_degrees(inst.graph, tau) == inst.degrees


def eds_search(inst: EdsInstance, limit: int = EDS_LIMIT) -> Ordering | None:
    """First satisfying ordering in lexicographic (declaration-index) order."""
    g = inst.graph
    m = len(g.nodes)
    if m > limit:
        raise InfeasibleError(f"EDS search limited to {limit} nodes, graph has {m}")
    if not inst.sum_matches:
        return None
    d = inst.degrees
    placed: list[str] = []
    free = set(g.nodes)

    def rec(i):
        if i == m:
            return True
        for v in g.nodes:
            if v not in free:
                continue
            if len(g.adjacency[v] & free) != d[i]:
                continue
            free.remove(v)
            placed.append(v)
            if rec(i + 1):
                return True
            placed.pop()
            free.add(v)
        return False

    return Ordering(tuple(placed)) if rec(0) else None


@dataclass(frozen=True)
class BipartiteConstruction:
    """``P`` = original nodes, ``Q`` = one node per original edge; ``graph`` is
    C(G'), the bipartite graph with both sides completed to cliques."""

    p_nodes: tuple[str, ...]
    q_nodes: tuple[str, ...]
    q_ends: dict[str, Edge]
    bipartite_edges: frozenset[Edge]
    graph: UndirectedGraph = field(compare=False)


def build_construction(g: UndirectedGraph) -> BipartiteConstruction:
    if not g.edges:
        raise NetworkError("construction needs at least one edge")
    if not g.is_connected():
        raise NetworkError("construction needs a connected graph")
    taken = set(g.nodes)
    q_nodes = []
    q_ends: dict[str, Edge] = {}
    for u, v in g.sorted_edges():
        name, k = f"e_{u}_{v}", 1
        while name in taken:
            name, k = f"e_{u}_{v}_{k}", k + 1
        taken.add(name)
        q_nodes.append(name)
        q_ends[name] = (u, v)
    bip = frozenset((u, q) for q, (a, b) in q_ends.items() for u in (a, b))
    within = [(a, b) for side in (g.nodes, q_nodes)
              for i, a in enumerate(side) for b in side[i + 1:]]
    full = UndirectedGraph(g.nodes + tuple(q_nodes), bip | frozenset(within))
    return BipartiteConstruction(g.nodes, tuple(q_nodes), q_ends, bip, full)


def pi_fill_in(c: BipartiteConstruction, pi: Ordering) -> frozenset[Edge]:
    """Join each edge node ``x`` to every ``pi(j)`` with ``j < delta(x)``, where
    ``delta(x)`` is the last position of an endpoint of ``x``."""
    if set(pi.nodes) != set(c.p_nodes) or len(pi) != len(c.p_nodes):
        raise OrderingError("pi must be a bijection over P")
    pos = pi.rank
    out = set()
    for x, ends in c.q_ends.items():
        delta = max(pos[e] for e in ends)
        for j in range(delta):
            p = pi.nodes[j]
            if p not in ends:
                out.add((p, x))
    return frozenset(out)


def is_chain_graph(p_nodes: Sequence[str], q_nodes: Sequence[str],
                   edges: Iterable[Sequence[str]]) -> bool:
    """True iff the neighbour sets of ``P`` are totally ordered by inclusion."""
    p_set, q_set = set(p_nodes), set(q_nodes)
    nb = {p: set() for p in p_nodes}
    for u, v in edges:
        if u in p_set and v in q_set:
            nb[u].add(v)
        elif v in p_set and u in q_set:
            nb[v].add(u)
        else:
            raise NetworkError(f"edge {u}-{v} does not cross the bipartition")
    chain = sorted(nb.values(), key=len, reverse=True)
    return all(b <= a for a, b in zip(chain, chain[1:]))


def eds_state_bound(m: int, d: Sequence[int]) -> int:
    """Sum of ``2 ** (m - i + 1 + d_1 + ... + d_i)`` over positions with
    ``d_i != 0`` (1-based ``i``)."""
    if len(d) != m:
        raise ValueError("degree sequence length must equal m")
    total, run = 0, 0
    for i, di in enumerate(d, 1):
        run += di
        if di:
            total += 1 << (m - i + 1 + run)
    if total > MAX_STATES:
        raise StateOverflowError(f"state bound {total} exceeds the 128-bit range")
    return total


@dataclass
class ReductionReport:
    tau: Ordering
    degrees: tuple[int, ...]
    construction: BipartiteConstruction
    fill: frozenset[Edge]
    cliques: list[frozenset[str]]
    mtns: int
    bound: int
    delay: int
    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def clique_sizes(self) -> list[int]:
        return sorted((len(c) for c in self.cliques), reverse=True)


class EdsMismatch(DecompError, ValueError):
    """``tau`` does not realise the degree sequence."""


def verify_reduction(g: UndirectedGraph, tau: Ordering, d: Sequence[int]) -> ReductionReport:
    """Build C(G'), fill it along the reverse of ``tau`` and check the five
    claims of the construction. Failed claims are reported, not raised."""
    inst = EdsInstance(g, tuple(d))
    if not eds_check(inst, tau):
        raise EdsMismatch(
            f"tau realises {list(later_degrees(g, tau))}, not {list(inst.degrees)}")
    m = len(g.nodes)
    d = inst.degrees
    c = build_construction(g)
    pi = Ordering(tau.nodes[::-1])
    fill = pi_fill_in(c, pi)
    filled = c.graph.with_edges(fill)
    checks: list[tuple[str, bool, str]] = []

    peo = is_chordal(filled)
    checks.append(("chordal", peo is not None, "" if peo else "C(G') + F(pi) has a chordless cycle"))

    bip = list(c.bipartite_edges) + list(fill)
    chain = is_chain_graph(c.p_nodes, c.q_nodes, bip)
    checks.append(("chain-graph", chain, "" if chain else "P neighbour sets not nested"))

    cliques = maximal_cliques_chordal(filled, peo) if peo else []
    z = sum(1 for x in d if x == 0)
    checks.append(("clique-count", len(cliques) == m - z,
                   f"{len(cliques)} maximal cliques, expected {m - z}"))

    p_set = set(c.p_nodes)
    got = sorted((len(k & p_set), len(k - p_set)) for k in cliques)
    want, run = [], 0
    for i, di in enumerate(d, 1):
        run += di
        if di:
            want.append((m - i + 1, run))
    want.sort()
    checks.append(("clique-shapes", got == want, f"(|P|, |Q|) per clique {got}, expected {want}"))

    mtns = mtns_cost(cliques, {v: 2 for v in filled.nodes}) if cliques else 0
    bound = eds_state_bound(m, d)
    checks.append(("state-count", mtns == bound, f"mtns {mtns}, bound {bound}"))

    delay = propagation_delay(build_junction_tree(cliques)) if peo else 0
    return ReductionReport(tau, d, c, fill, cliques, mtns, bound, delay, checks)
