import pytest
from hypothesis import given, settings

from bndecomp import (AnnealConfig, HEURISTICS, Ordering, anneal, compare_report,
                      criterion_scores, exact_optimal, is_chordal, mtns_cost, random_graph)
from bndecomp.errors import InfeasibleError, NetworkError, StateOverflowError
from bndecomp.optimize import MAX_STATES, clique_states

from conftest import load_ug
from oracles import graph_and_ordering, optimal_by_enumeration

PAIRS = [f"{s}{i}" for i in range(1, 13) for s in "uv"]  # u1 v1 u2 v2 ...
# 10 four-node cliques plus 2 triangles, found by local search
LADDER_MIXED = ("u1 v3 u2 v1 v2 v7 u4 u3 u6 v5 v4 u5 v6 v8 u9 u7 v12 u11 v10 u8 u12 u10 "
                "v9 v11").split()


def test_mtns_examples():
    binary = dict.fromkeys("abcd", 2)
    assert mtns_cost([frozenset("abd"), frozenset("bcd")], binary) == 16
    eleven = [frozenset(f"x{i}_{k}" for k in range(4)) for i in range(11)]
    assert mtns_cost(eleven, {v: 2 for c in eleven for v in c}) == 176
    assert mtns_cost([frozenset("xy")], {"x": 3, "y": 2}) == 6


def test_mtns_missing_arity():
    with pytest.raises(NetworkError):
        mtns_cost([frozenset("ab")], {"a": 2})


def test_state_overflow_is_an_error():
    big = {f"v{i}": 1 << 32 for i in range(5)}
    with pytest.raises(StateOverflowError):
        clique_states(big, big)
    assert clique_states(list(big)[:3], big) == 1 << 96 <= MAX_STATES


def test_criterion_scores_c4(C4):
    dec = criterion_scores(C4, Ordering(tuple("abcd")))
    assert dec.fillin_count == 1
    assert set(dec.cliques) == {frozenset("abd"), frozenset("bcd")}
    assert (dec.mtns, dec.max_clique_states, dec.delay_levels) == (16, 8, 2)


def test_criterion_scores_ladder_triangles(LADDER12):
    dec = criterion_scores(LADDER12, Ordering(tuple(PAIRS)))
    assert dec.clique_sizes == [3] * 22
    assert (dec.mtns, dec.max_clique_states, dec.delay_levels) == (176, 8, 22)
    assert dec.fillin_count == 11


def test_strip_fixture_reproduces_both_schemes():
    # the chordal strip carries both clique schemes: pair-wise elimination
    # merges each square into a four-clique, any perfect ordering keeps triangles
    g = load_ug("STRIP12")
    squares = criterion_scores(g, Ordering(tuple(PAIRS)))
    assert squares.clique_sizes == [4] * 11
    assert (squares.mtns, squares.max_clique_states, squares.delay_levels) == (176, 16, 11)
    tri = criterion_scores(g, is_chordal(g))
    assert tri.clique_sizes == [3] * 22 and tri.fillin_count == 0
    assert (tri.mtns, tri.max_clique_states, tri.delay_levels) == (176, 8, 22)


def test_ladder_tradeoff_observation(LADDER12):
    a = criterion_scores(LADDER12, Ordering(tuple(PAIRS)))
    b = criterion_scores(LADDER12, Ordering(tuple(LADDER_MIXED)))
    assert a.mtns == b.mtns == 176
    assert a.fillin_count < b.fillin_count
    assert a.max_clique_states < b.max_clique_states
    assert b.delay_levels < a.delay_levels
    assert b.clique_sizes == [4] * 10 + [3] * 2 and b.delay_levels == 12


@settings(max_examples=150, deadline=None)
@given(graph_and_ordering(max_nodes=8))
def test_decomposition_invariants(case):
    g, order = case
    dec = criterion_scores(g, order)
    assert dec.mtns >= dec.max_clique_states >= 2
    assert dec.max_clique_states == 2 ** dec.max_clique_size
    assert dec.mtns == sum(2 ** len(c) for c in dec.cliques)
    assert dec.fillin_count == len(dec.fill_edges)
    assert sorted(dec.clique_sizes) == sorted(len(c) for c in dec.cliques)


def test_exact_examples(PAW, C4):
    dec = exact_optimal(PAW)
    assert set(dec.cliques) == {frozenset("abc"), frozenset("ad")}
    assert dec.mtns == 12
    assert exact_optimal(C4).mtns == 16


def test_exact_limit(LADDER12):
    with pytest.raises(InfeasibleError):
        exact_optimal(LADDER12)
    with pytest.raises(ValueError):
        exact_optimal(load_ug("K3"), criterion="nope")


@pytest.mark.parametrize("criterion", ["mtns", "max-clique", "fill-in"])
def test_exact_matches_plain_enumeration(criterion):
    for seed in range(12):
        g = random_graph(6, 0.5, seed)
        ar = {v: 2 + (i % 2) for i, v in enumerate(g.nodes)}
        dec = exact_optimal(g, ar, criterion)
        (val, perm) = optimal_by_enumeration(g, ar, lambda d: d.energy(criterion))
        assert dec.energy(criterion) == val
        assert dec.ordering.nodes == perm


def test_exact_never_worse_than_heuristics():
    for seed in range(20):
        g = random_graph(8, 0.4, seed)
        best = exact_optimal(g).mtns
        for h in HEURISTICS.values():
            assert best <= criterion_scores(g, h(g)).mtns


def test_anneal_examples(C4, LADDER12):
    assert anneal(C4, cfg=AnnealConfig(seed=1)).mtns == 16
    dec = anneal(LADDER12, cfg=AnnealConfig(seed=1))
    assert dec.mtns <= 176
    assert dec.info["config"]["seed"] == 1


@pytest.mark.parametrize("criterion", ["mtns", "max-clique", "fill-in"])
def test_anneal_not_worse_than_start_and_deterministic(criterion):
    cfg = AnnealConfig(seed=3, steps_per_temperature=60, max_stale=5)
    for seed in range(6):
        g = random_graph(8, 0.4, seed)
        dec = anneal(g, None, criterion, cfg)
        best_h = min(criterion_scores(g, h(g)).energy(criterion) for h in HEURISTICS.values())
        assert dec.energy(criterion) <= best_h
        again = anneal(g, None, criterion, cfg)
        assert again.ordering == dec.ordering and again.info == dec.info


def test_anneal_relocate_move(LADDER12):
    dec = anneal(LADDER12, cfg=AnnealConfig(seed=2, move="relocate", max_stale=3))
    assert dec.mtns <= 176


def test_anneal_defaults_resolved():
    cfg = AnnealConfig().resolved(160, 8)
    assert cfg.initial_temperature == 16.0
    assert cfg.min_temperature == pytest.approx(0.016)
    assert cfg.steps_per_temperature == 800
    assert cfg.cooling == 0.95 and cfg.move == "swap"


@pytest.mark.parametrize("kw", [dict(cooling=1.0), dict(cooling=0.0), dict(max_stale=0),
                                dict(steps_per_temperature=0), dict(move="jump"),
                                dict(initial_temperature=-1.0)])
def test_anneal_config_validation(kw):
    with pytest.raises(ValueError):
        AnnealConfig(**kw)


def test_compare_report_examples(C4, PAW, LADDER12):
    rows = compare_report(C4)
    assert [r.method for r in rows] == ["min-degree", "min-deficiency", "lex", "mcs",
                                        "anneal", "exact"]
    assert {r.mtns for r in rows} == {16}
    rows = compare_report(PAW)
    assert {(r.mtns, r.fillin_count) for r in rows} == {(12, 0)}
    rows = compare_report(LADDER12, seed=1)
    assert len(rows) == 5
    assert any(r.mtns == 176 for r in rows)
