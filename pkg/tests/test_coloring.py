import pytest
from hypothesis import given, settings

from ess.coloring import (chromatic_number, color_classes, color_critical_edge, find_coloring, sigma,
                          sigma_family)
from ess.constructions import complete_multipartite
from ess.errors import DomainError, SizeError
from ess.graph import Graph, remove_edge

from oracles import brute_chromatic, brute_sigma, is_proper
from test_graph import graphs


def test_chromatic_examples():
    assert chromatic_number(Graph.complete(4)) == 4
    assert chromatic_number(Graph.cycle(5)) == 3
    assert chromatic_number(Graph.petersen()) == 3
    assert chromatic_number(Graph.empty(0)) == 0
    assert chromatic_number(Graph.empty(3)) == 1
    with pytest.raises(SizeError):
        chromatic_number(Graph.empty(17))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_chromatic_matches_brute_force(G):
    assert chromatic_number(G) == brute_chromatic(G.n, G.edges())


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8, min_n=1))
def test_find_coloring_is_proper(G):
    k = chromatic_number(G)
    col = find_coloring(G, k)
    assert col is not None and is_proper(G.n, G.edges(), tuple(col))
    if k > 1:
        assert find_coloring(G, k - 1) is None


def test_sigma_examples():
    assert sigma(Graph.complete(4)) == 1
    assert sigma(Graph.cycle(5)) == 1
    assert sigma(complete_multipartite([2, 2, 2])) == 2
    with pytest.raises(DomainError):
        sigma(Graph.empty(0))
    with pytest.raises(SizeError):
        sigma(Graph.empty(13))


@pytest.mark.parametrize("F", [Graph.complete(4), Graph.cycle(5), complete_multipartite([2, 2, 2]),
                               complete_multipartite([2, 3]), Graph.path(5), Graph.cycle(7)])
def test_sigma_matches_all_colourings(F):
    assert sigma(F) == brute_sigma(F.n, F.edges())


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7, min_n=1))
def test_sigma_random_matches_brute_force(G):
    value, col = sigma(G, witness=True)
    assert value == brute_sigma(G.n, G.edges())
    classes = color_classes(col)
    assert len(classes) == chromatic_number(G)
    assert min(len(c) for c in classes) == value
    assert is_proper(G.n, G.edges(), tuple(col))


def test_sigma_family_examples():
    assert sigma_family([Graph.complete(3), Graph.complete(4)]) == 1
    assert sigma_family([Graph.cycle(5), complete_multipartite([2, 2, 2])]) == 1
    assert sigma_family([Graph.complete(2)]) == 1
    assert sigma_family([complete_multipartite([2, 2, 2]), Graph.complete(4)]) == 2
    with pytest.raises(DomainError):
        sigma_family([])


def test_color_critical_edge_examples():
    for F in (Graph.complete(3), Graph.cycle(5)):
        e = color_critical_edge(F)
        assert e is not None
        assert chromatic_number(remove_edge(F, e)) == chromatic_number(F) - 1
    assert color_critical_edge(complete_multipartite([3, 3])) is None
