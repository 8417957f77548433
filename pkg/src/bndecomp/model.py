"""Belief networks, undirected graphs, moralization, file parsing and
seeded random graphs."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NetworkError, OrderingError, ParseError

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")

Edge = tuple[str, str]


@dataclass(frozen=True)
class Variable:
    name: str
    arity: int = 2

    def __post_init__(self):
        if not _NAME.match(self.name):
            raise NetworkError(f"invalid variable name {self.name!r}")
        if int(self.arity) < 2:
            raise NetworkError(f"variable {self.name}: arity {self.arity} < 2")


@dataclass(frozen=True)
class ConditionalConstraint:
    """Structure of one conditional constraint P(child | parents)."""

    child: str
    parents: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "parents", frozenset(self.parents))
        if self.child in self.parents:
            raise NetworkError(f"constraint on {self.child}: child among its own parents")

    @property
    def scope(self) -> frozenset[str]:
        return self.parents | {self.child}


@dataclass(frozen=True)
class BeliefNetwork:
    variables: tuple[Variable, ...]
    constraints: tuple[ConditionalConstraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        seen = set()
        for v in self.variables:
            if v.name in seen:
                raise NetworkError(f"duplicate variable {v.name}")
            seen.add(v.name)
        for c in self.constraints:
            missing = c.scope - seen
            if missing:
                raise NetworkError(f"undeclared variable(s) {sorted(missing)}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def arities(self) -> dict[str, int]:
        return {v.name: int(v.arity) for v in self.variables}

    def directed_edges(self) -> set[Edge]:
        """Parent -> child pairs over all constraints."""
        return {(p, c.child) for c in self.constraints for p in c.parents}


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph. Node order is declaration order and drives
    every tie-break in the package."""

    nodes: tuple[str, ...]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        index = {v: i for i, v in enumerate(nodes)}
        if len(index) != len(nodes):
            raise NetworkError("duplicate node names")
        norm = set()
        for e in self.edges:
            u, v = e
            if u not in index or v not in index:
                raise NetworkError(f"edge {u}-{v} has an undeclared endpoint")
            if u == v:
                raise NetworkError(f"self-loop on {u}")
            norm.add((u, v) if index[u] < index[v] else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, nodes: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        return cls(tuple(nodes), frozenset(tuple(e) for e in edges))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adjacency[v]

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def __len__(self):
        return len(self.nodes)

    def adjacency_matrix(self) -> np.ndarray:
        n = len(self.nodes)
        a = np.zeros((n, n), dtype=np.uint8)
        if self.edges:
            idx = np.array([(self.index[u], self.index[v]) for u, v in self.edges])
            a[idx[:, 0], idx[:, 1]] = 1
            a[idx[:, 1], idx[:, 0]] = 1
        return a

    def adjacency_masks(self) -> list[int]:
        masks = [0] * len(self.nodes)
        for u, v in self.edges:
            i, j = self.index[u], self.index[v]
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def with_edges(self, extra: Iterable[Edge]) -> UndirectedGraph:
        return UndirectedGraph(self.nodes, self.edges | frozenset(extra))

    def normalize(self, u: str, v: str) -> Edge:
        return (u, v) if self.index[u] < self.index[v] else (v, u)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (self.index[e[0]], self.index[e[1]]))


@dataclass(frozen=True)
class Ordering:
    """Bijection rank -> node; ``nodes[r]`` is the node of rank ``r``.

    Rank 0 is eliminated first.
    """

    nodes: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(set(self.nodes)) != len(self.nodes):
            raise OrderingError("ordering repeats a node")

    @cached_property
    def rank(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def check(self, g: UndirectedGraph) -> None:
        if len(self.nodes) != len(g.nodes) or set(self.nodes) != set(g.nodes):
            raise OrderingError("ordering is not a bijection over the graph's nodes")

    def indices(self, g: UndirectedGraph) -> np.ndarray:
        self.check(g)
        return np.array([g.index[v] for v in self.nodes], dtype=np.int64)

    @classmethod
    def from_indices(cls, g: UndirectedGraph, idx: Iterable[int]) -> Ordering:
        return cls(tuple(g.nodes[int(i)] for i in idx))


def moral_graph(net: BeliefNetwork) -> UndirectedGraph:
    """Connect every pair of variables that co-occur in some constraint scope."""
    edges = set()
    for c in net.constraints:
        scope = sorted(c.scope)
        for i, u in enumerate(scope):
            for v in scope[i + 1:]:
                edges.add((u, v))
    return UndirectedGraph(net.names, frozenset(edges))


def neighbor_set(g: UndirectedGraph, s: Iterable[str]) -> frozenset[str]:
    s = set(s)
    unknown = s - set(g.nodes)
    if unknown:
        raise NetworkError(f"unknown node(s) {sorted(unknown)}")
    out = set()
    for v in s:
        out |= g.adjacency[v]
    return frozenset(out - s)


def random_graph(n: int, p: float, seed: int) -> UndirectedGraph:
    """G(n, p) over nodes ``n0..n{n-1}``; pairs visited in (i, j) order."""
    if n < 1:
        raise NetworkError("node count must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise NetworkError(f"edge probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    nodes = tuple(f"n{i}" for i in range(n))
    draws = rng.random(n * (n - 1) // 2)
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < p:
                edges.append((nodes[i], nodes[j]))
            k += 1
    return UndirectedGraph(nodes, frozenset(edges))


# -- text formats ------------------------------------------------------------

def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_network(text: str) -> BeliefNetwork:
    """Parse the line-oriented ``.bn`` format.

    Each ``cpt`` line is kept as its own constraint (repeated identical lines
    collapse); ``marg`` lines are checked for declared names and otherwise
    ignored.
    """
    variables: list[Variable] = []
    declared: dict[str, int] = {}
    constraints: list[ConditionalConstraint] = []
    for lineno, tok in _lines(text):
        kw = tok[0]
        if kw == "var":
            if len(tok) != 3:
                raise ParseError("expected 'var NAME ARITY'", lineno)
            name = tok[1]
            try:
                arity = int(tok[2])
            except ValueError:
                raise ParseError(f"arity {tok[2]!r} is not an integer", lineno) from None
            if name in declared:
                raise ParseError(f"variable {name} declared twice", lineno)
            try:
                variables.append(Variable(name, arity))
            except NetworkError as exc:
                raise ParseError(str(exc), lineno) from None
            declared[name] = arity
        elif kw == "cpt":
            if len(tok) < 2 or (len(tok) > 2 and tok[2] != "|"):
                raise ParseError("expected 'cpt CHILD | PARENTS...'", lineno)
            child, parents = tok[1], tok[3:]
            for name in [child, *parents]:
                if name not in declared:
                    raise ParseError(f"undeclared variable {name}", lineno)
            if child in parents:
                raise ParseError(f"{child} listed among its own parents", lineno)
            c = ConditionalConstraint(child, frozenset(parents))
            if c not in constraints:
                constraints.append(c)
        elif kw == "marg":
            for name in tok[1:]:
                if name not in declared:
                    raise ParseError(f"undeclared variable {name}", lineno)
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno)
    return BeliefNetwork(tuple(variables), tuple(constraints))


def parse_graph(text: str) -> UndirectedGraph:
    """Parse the ``.ug`` format (``node NAME`` / ``edge A B``)."""
    nodes: list[str] = []
    seen: set[str] = set()
    edges = []
    for lineno, tok in _lines(text):
        if tok[0] == "node" and len(tok) == 2:
            if tok[1] in seen:
                raise ParseError(f"node {tok[1]} declared twice", lineno)
            if not _NAME.match(tok[1]):
                raise ParseError(f"invalid node name {tok[1]!r}", lineno)
            nodes.append(tok[1])
            seen.add(tok[1])
        elif tok[0] == "edge" and len(tok) == 3:
            u, v = tok[1], tok[2]
            for name in (u, v):
                if name not in seen:
                    raise ParseError(f"undeclared node {name}", lineno)
            if u == v:
                raise ParseError(f"self-loop on {u}", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"cannot parse {' '.join(tok)!r}", lineno)
    return UndirectedGraph(tuple(nodes), frozenset(edges))


def format_graph(g: UndirectedGraph) -> str:
    out = [f"node {v}" for v in g.nodes]
    out += [f"edge {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


def format_network(net: BeliefNetwork) -> str:
    order = {v: i for i, v in enumerate(net.names)}
    out = [f"var {v.name} {v.arity}" for v in net.variables]
    for c in net.constraints:
        ps = sorted(c.parents, key=order.__getitem__)
        out.append(f"cpt {c.child} | {' '.join(ps)}".rstrip())
    return "\n".join(out) + "\n"
