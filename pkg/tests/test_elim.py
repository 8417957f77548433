import itertools

import pytest
from hypothesis import given, settings

from bndecomp import (Ordering, elimination_cliques, elimination_graph, fill_in,
                      is_chordal, maximal_cliques_chordal, random_graph)
from bndecomp.errors import NotChordalError, OrderingError

from oracles import (all_maximal_cliques, fill_in_by_paths, graph_and_ordering, graphs,
                     is_chordal_brute)


def test_complete_graph_has_no_fill(K3):
    for perm in itertools.permutations(K3.nodes):
        assert fill_in(K3, Ordering(perm)) == frozenset()


def test_c4_fill(C4):
    assert fill_in(C4, Ordering(tuple("abcd"))) == {("b", "d")}


def test_c4_elimination_graph_is_diamond(C4, DIAMOND):
    assert elimination_graph(C4, Ordering(tuple("abcd"))) == DIAMOND


def test_perfect_ordering_leaves_graph_unchanged(DIAMOND):
    peo = Ordering(tuple("acbd"))
    assert elimination_graph(DIAMOND, peo) == DIAMOND


def test_random_graph_fill_matches_paths():
    g = random_graph(7, 0.5, 3)
    order = Ordering(g.nodes)
    assert fill_in(g, order) == fill_in_by_paths(g, order.nodes)


def test_fill_in_rejects_bad_ordering(C4):
    with pytest.raises(OrderingError):
        fill_in(C4, Ordering(tuple("abc")))
    with pytest.raises(OrderingError):
        fill_in(C4, Ordering(tuple("abcx")))


@settings(max_examples=300, deadline=None)
@given(graph_and_ordering(max_nodes=7))
def test_fill_in_matches_path_characterisation(case):
    g, order = case
    fill = fill_in(g, order)
    assert not fill & g.edges
    assert all(u != v for u, v in fill)
    assert fill == fill_in_by_paths(g, order.nodes)


@settings(max_examples=200, deadline=None)
@given(graph_and_ordering(max_nodes=8))
def test_elimination_graph_is_chordal(case):
    g, order = case
    h = elimination_graph(g, order)
    assert h.nodes == g.nodes
    assert is_chordal(h) is not None
    assert fill_in(h, order) == frozenset()


def test_chordality_examples(C4, DIAMOND, PAW):
    assert is_chordal(C4) is None
    peo = is_chordal(DIAMOND)
    assert peo is not None and fill_in(DIAMOND, peo) == frozenset()
    assert is_chordal(PAW) is not None


@settings(max_examples=300, deadline=None)
@given(graphs(max_nodes=6))
def test_is_chordal_matches_cycle_oracle(g):
    assert (is_chordal(g) is not None) == is_chordal_brute(g)


@settings(max_examples=60, deadline=None)
@given(graphs(max_nodes=6))
def test_chordal_iff_some_ordering_has_no_fill(g):
    any_zero = any(not fill_in(g, Ordering(p)) for p in itertools.permutations(g.nodes))
    assert any_zero == (is_chordal(g) is not None)


def test_maximal_cliques_examples(K3, DIAMOND):
    assert maximal_cliques_chordal(K3, Ordering(tuple("abc"))) == [frozenset("abc")]
    got = maximal_cliques_chordal(DIAMOND, is_chordal(DIAMOND))
    assert set(got) == {frozenset("abd"), frozenset("bcd")}


def test_maximal_cliques_requires_perfect_ordering(C4):
    with pytest.raises(NotChordalError):
        maximal_cliques_chordal(C4, Ordering(tuple("abcd")))


@settings(max_examples=200, deadline=None)
@given(graph_and_ordering(max_nodes=8))
def test_maximal_cliques_match_subset_enumeration(case):
    g, order = case
    h = elimination_graph(g, order)
    got = maximal_cliques_chordal(h, order)
    assert len(got) == len(set(got)) <= len(h.nodes)
    assert set(got) == all_maximal_cliques(h)
    for u, v in h.edges:
        assert any(u in c and v in c for c in got)


@settings(max_examples=200, deadline=None)
@given(graph_and_ordering(max_nodes=8))
def test_elimination_clique_maximal_flags(case):
    g, order = case
    h = elimination_graph(g, order)
    rows = elimination_cliques(g, order)
    assert [v for v, _, _ in rows] == list(order.nodes)
    cliques = [c for _, c, _ in rows]
    for i, (_, c, flag) in enumerate(rows):
        contained = any(c < d for d in cliques)
        assert flag == (not contained)
    assert {c for _, c, f in rows if f} == all_maximal_cliques(h)
