"""Decomposition pipeline, state-count criteria, exact search and simulated
annealing over elimination orderings."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .elim import elimination_graph, fill_in, maximal_cliques_chordal
from .errors import InfeasibleError, NetworkError, StateOverflowError
from .heur import HEURISTICS
from .hyper import JunctionTree, build_junction_tree, propagation_delay
from .model import Edge, Ordering, UndirectedGraph

MAX_STATES = (1 << 128) - 1
CRITERIA = ("mtns", "max-clique", "fill-in")
_CRITERION_CODE = {"mtns": _kernels.MTNS, "max-clique": _kernels.MAX_CLIQUE,
                   "fill-in": _kernels.FILL_IN}
EXACT_LIMIT = 10


def _check_range(value: int) -> int:
    if value > MAX_STATES:
        raise StateOverflowError(f"state count {value} exceeds the 128-bit range")
    return value


def clique_states(clique: Iterable[str], arities: Mapping[str, int]) -> int:
    states = 1
    for v in clique:
        try:
            states *= int(arities[v])
        except KeyError:
            raise NetworkError(f"no arity for variable {v}") from None
    return _check_range(states)


def mtns_cost(cliques: Iterable[Iterable[str]], arities: Mapping[str, int]) -> int:
    """Total number of states: sum over cliques of the product of arities."""
    return _check_range(sum(clique_states(c, arities) for c in cliques))


def _arities(g: UndirectedGraph, arities: Mapping[str, int] | None) -> dict[str, int]:
    if arities is None:
        return {v: 2 for v in g.nodes}
    missing = [v for v in g.nodes if v not in arities]
    if missing:
        raise NetworkError(f"no arity for variable(s) {missing}")
    return {v: int(arities[v]) for v in g.nodes}


@dataclass
class Decomposition:
    ordering: Ordering
    fill_edges: frozenset[Edge]
    cliques: tuple[frozenset[str], ...]
    tree: JunctionTree
    mtns: int
    max_clique_states: int
    fillin_count: int
    delay_levels: int
    method: str = "given"
    source: str = ""
    info: dict = field(default_factory=dict)

    @property
    def clique_sizes(self) -> list[int]:
        return sorted((len(c) for c in self.cliques), reverse=True)

    @property
    def max_clique_size(self) -> int:
        return max(self.clique_sizes, default=0)

    def value(self, criterion: str) -> int:
        return {"mtns": self.mtns, "max-clique": self.max_clique_states,
                "fill-in": self.fillin_count}[criterion]

    def energy(self, criterion: str) -> tuple[int, int]:
        return self.value(criterion), self.mtns


def criterion_scores(g: UndirectedGraph, ordering: Ordering,
                     arities: Mapping[str, int] | None = None,
                     method: str = "given", source: str = "") -> Decomposition:
    """Full pipeline for one ordering: triangulate, take maximal cliques,
    build the junction tree and fill in every metric."""
    ar = _arities(g, arities)
    fill = fill_in(g, ordering)
    tri = elimination_graph(g, ordering)
    cliques = tuple(maximal_cliques_chordal(tri, ordering))
    tree = build_junction_tree(cliques)
    return Decomposition(
        ordering=ordering,
        fill_edges=fill,
        cliques=cliques,
        tree=tree,
        mtns=mtns_cost(cliques, ar),
        max_clique_states=max((clique_states(c, ar) for c in cliques), default=0),
        fillin_count=len(fill),
        delay_levels=propagation_delay(tree),
        method=method,
        source=source,
    )


class _Scorer:
    """Fast (criterion, mtns) evaluation of index orderings."""

    def __init__(self, g: UndirectedGraph, arities: Mapping[str, int], criterion: str):
        if criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {criterion!r}")
        self.adj = np.ascontiguousarray(g.adjacency_matrix())
        self.arity = np.array([arities[v] for v in g.nodes], dtype=np.int64)
        self.pick = ("mtns", "max-clique", "fill-in").index(criterion)
        self.calls = 0

    def __call__(self, order: np.ndarray) -> tuple[int, int]:
        self.calls += 1
        metrics = _kernels.score(self.adj, order, self.arity)
        return metrics[self.pick], metrics[0]


def heuristic_decompositions(g: UndirectedGraph, arities=None, source: str = ""):
    return [criterion_scores(g, fn(g), arities, method=name, source=source)
            for name, fn in HEURISTICS.items()]


def exact_optimal(g: UndirectedGraph, arities: Mapping[str, int] | None = None,
                  criterion: str = "mtns", limit: int = EXACT_LIMIT,
                  source: str = "") -> Decomposition:
    """Branch-and-bound over all orderings.

    Minimises ``(criterion, mtns)`` lexicographically; among equal optima the
    lexicographically smallest ordering (by declaration index) is returned.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}")
    if len(g.nodes) > limit:
        raise InfeasibleError(
            f"exact search limited to {limit} nodes, graph has {len(g.nodes)}")
    ar = _arities(g, arities)
    order, _, _ = _kernels.branch_and_bound(
        g.adjacency_masks(), [ar[v] for v in g.nodes], _CRITERION_CODE[criterion])
    dec = criterion_scores(g, Ordering.from_indices(g, order), ar,
                           method="exact", source=source)
    dec.info = {"criterion": criterion, "limit": limit}
    return dec


@dataclass(frozen=True)
class AnnealConfig:
    """Annealing schedule. ``None`` fields are derived from the instance:
    initial temperature = starting criterion value / 10, minimum temperature
    = initial * 1e-3, steps per temperature = 100 * node count."""

    initial_temperature: float | None = None
    cooling: float = 0.95
    steps_per_temperature: int | None = None
    min_temperature: float | None = None
    max_stale: int = 50
    seed: int = 0
    move: str = "swap"

    def __post_init__(self):
        if not 0.0 < self.cooling < 1.0:
            raise ValueError("cooling factor must lie in (0, 1)")
        for name in ("initial_temperature", "min_temperature"):
            val = getattr(self, name)
            if val is not None and not val > 0:
                raise ValueError(f"{name} must be positive")
        if self.steps_per_temperature is not None and self.steps_per_temperature < 1:
            raise ValueError("steps_per_temperature must be >= 1")
        if self.max_stale < 1:
            raise ValueError("max_stale must be >= 1")
        if self.move not in ("swap", "relocate"):
            raise ValueError(f"unknown move kind {self.move!r}")

    def resolved(self, start_value: int, m: int) -> AnnealConfig:
        t0 = self.initial_temperature or max(start_value, 1) / 10.0
        return AnnealConfig(
            initial_temperature=t0,
            cooling=self.cooling,
            steps_per_temperature=self.steps_per_temperature or 100 * m,
            min_temperature=self.min_temperature or t0 * 1e-3,
            max_stale=self.max_stale,
            seed=self.seed,
            move=self.move,
        )


def anneal(g: UndirectedGraph, arities: Mapping[str, int] | None = None,
           criterion: str = "mtns", cfg: AnnealConfig | None = None,
           source: str = "") -> Decomposition:
    """Simulated annealing over orderings, started from the best heuristic.

    Worse moves on the criterion are accepted with Metropolis probability;
    among moves that tie on the criterion only those not raising mtns are
    accepted. The best ordering seen is returned, so the result is never
    worse than the starting heuristic.
    """
    cfg = cfg or AnnealConfig()
    ar = _arities(g, arities)
    m = len(g.nodes)
    score = _Scorer(g, ar, criterion)

    starts = heuristic_decompositions(g, ar, source)
    start = min(starts, key=lambda d: d.energy(criterion))
    cur = start.ordering.indices(g)
    e_cur = score(cur)
    best, e_best = cur.copy(), e_cur
    run = cfg.resolved(e_cur[0], m)
    rng = np.random.default_rng(cfg.seed)

    temp = run.initial_temperature
    temps = 0
    stale = 0
    accepted = 0
    while m >= 2 and temp >= run.min_temperature and stale < run.max_stale:
        improved = False
        steps = run.steps_per_temperature
        first = rng.integers(0, m, steps)
        second = rng.integers(0, m - 1, steps)
        second += second >= first
        draws = rng.random(steps)
        for i, j, u in zip(first, second, draws):
            cand = cur.copy()
            if run.move == "swap":
                cand[i], cand[j] = cand[j], cand[i]
            else:
                cand = np.insert(np.delete(cand, i), j, cur[i])
            e = score(cand)
            if e[0] > e_cur[0]:
                ok = u < math.exp(-(e[0] - e_cur[0]) / temp)
            else:
                ok = e <= e_cur
            if ok:
                cur, e_cur = cand, e
                accepted += 1
                if e < e_best:
                    best, e_best = cand.copy(), e
                    improved = True
        stale = 0 if improved else stale + 1
        temp *= run.cooling
        temps += 1

    dec = criterion_scores(g, Ordering.from_indices(g, best), ar,
                           method="anneal", source=source)
    dec.info = {
        "criterion": criterion,
        "start": start.method,
        "config": asdict(run),
        "temperatures": temps,
        "evaluations": score.calls,
        "accepted": accepted,
    }
    return dec


def compare_report(g: UndirectedGraph, arities: Mapping[str, int] | None = None,
                   seed: int = 0, criterion: str = "mtns",
                   exact_limit: int = EXACT_LIMIT, source: str = "",
                   cfg: AnnealConfig | None = None) -> list[Decomposition]:
    """One decomposition per method in fixed order: the four heuristics,
    annealing, and exact search when the graph is small enough."""
    ar = _arities(g, arities)
    rows = heuristic_decompositions(g, ar, source)
    cfg = cfg or AnnealConfig(seed=seed)
    rows.append(anneal(g, ar, criterion, cfg, source=source))
    if len(g.nodes) <= exact_limit:
        rows.append(exact_optimal(g, ar, criterion, exact_limit, source=source))
    return rows
