import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ess.constructions import complete_multipartite, turan, turan_plus
from ess.errors import CapacityError, DomainError, ParseError
from ess.graph import (Graph, add_edge, automorphism_count, canonical_form, canonical_labeling,
                       contains_subgraph, count_copies, count_embeddings, delete_vertex, duplicate_vertex,
                       from_graph6, is_isomorphic, iter_embeddings, read_graph6_stream, remove_edge,
                       restriction, to_graph6)

from oracles import atlas, brute_copies, injections, to_nx


@st.composite
def graphs(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1)) if pairs else 0
    return Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


# graph6

def test_graph6_known_strings():
    assert from_graph6("A_") == Graph.complete(2)
    assert to_graph6(Graph.complete(2)) == "A_"
    assert to_graph6(Graph.empty(0)) == "?"
    assert from_graph6("?") == Graph.empty(0)
    assert from_graph6("Bw") == Graph.complete(3)


def test_graph6_star_example():
    G = from_graph6("D?{")
    assert G.n == 5 and G.num_edges == 4
    assert sorted(G.degrees()) == [1, 1, 1, 1, 4]
    assert to_graph6(G) == "D?{"


@pytest.mark.parametrize("bad", ["Dll", "", "A", "A_x", "A\x7f", "B~~", "~??", "Bw!"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(ParseError) as info:
        from_graph6(bad)
    assert "offset" in str(info.value)


def test_graph6_rejects_more_than_64_vertices():
    H = nx.empty_graph(65)
    text = nx.to_graph6_bytes(H, header=False).decode().strip()
    with pytest.raises(ParseError):
        from_graph6(text)


def test_graph6_header_and_stream():
    assert from_graph6(">>graph6<<Bw") == Graph.complete(3)
    got = list(read_graph6_stream(["A_\n", "\n", "Bw\n"]))
    assert got == [Graph.complete(2), Graph.complete(3)]


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_graph6_matches_networkx(G):
    expected = nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
    assert to_graph6(G) == expected
    assert from_graph6(expected) == G


@pytest.mark.parametrize("n", [62, 63, 64])
def test_graph6_long_header_round_trip(n):
    rng = random.Random(n)
    G = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.1])
    text = to_graph6(G)
    assert text == nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()
    assert from_graph6(text) == G


# validation and edits

def test_graph_validation():
    with pytest.raises(DomainError):
        Graph(2, (0b10, 0))
    with pytest.raises(DomainError):
        Graph(1, (1,))
    with pytest.raises(CapacityError):
        Graph.empty(65)


def test_restriction_examples():
    assert restriction(Graph.complete(4), {0, 1}) == Graph.complete(2)
    P = restriction(Graph.cycle(5), [0, 1, 2])
    assert P.edges() == [(0, 1), (1, 2)]
    G = Graph.petersen()
    assert restriction(G, G.vertex_mask) == G
    with pytest.raises(DomainError):
        restriction(Graph.complete(3), [0, 3])


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1), st.data())
def test_restriction_is_functorial(G, data):
    U = data.draw(st.integers(0, G.vertex_mask))
    kept = [v for v in range(G.n) if U >> v & 1]
    W = data.draw(st.integers(0, (1 << len(kept)) - 1)) if kept else 0
    nested = restriction(restriction(G, U), W)
    direct = restriction(G, [kept[i] for i in range(len(kept)) if W >> i & 1])
    assert nested == direct


def test_add_edge_examples():
    K33 = complete_multipartite([3, 3])
    assert add_edge(K33, (0, 1)) == turan_plus(6, 2)
    assert add_edge(Graph.empty(2), (0, 1)) == Graph.complete(2)
    for e in [(0, 1), (1, 2), (0, 2)]:
        with pytest.raises(DomainError):
            add_edge(Graph.complete(3), e)
    with pytest.raises(DomainError):
        add_edge(Graph.empty(3), (1, 1))
    with pytest.raises(DomainError):
        remove_edge(Graph.empty(3), (0, 1))


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2), st.data())
def test_add_then_remove_edge_is_identity(G, data):
    non = G.non_edges()
    if non:
        e = data.draw(st.sampled_from(non))
        assert remove_edge(add_edge(G, e), e) == G


def test_duplicate_vertex_examples():
    K23 = complete_multipartite([2, 3])
    assert is_isomorphic(duplicate_vertex(K23, 0), complete_multipartite([3, 3]))
    assert is_isomorphic(duplicate_vertex(Graph.complete(2), 0), Graph.path(3))
    D = duplicate_vertex(Graph.complete(3), 0)
    assert D.num_edges == 5 and not D.has_edge(0, 3)
    with pytest.raises(CapacityError):
        duplicate_vertex(Graph.empty(64), 0)


# canonical form

def test_canonical_form_examples():
    C5 = Graph.cycle(5)
    assert canonical_form(C5) == canonical_form(C5.relabel([2, 4, 1, 3, 0]))
    K23 = complete_multipartite([2, 3])
    swapped = complete_multipartite([3, 2])
    assert canonical_form(K23) == canonical_form(swapped)
    assert canonical_form(Graph.path(4)) != canonical_form(Graph.star(3))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(G, rnd):
    order = list(range(G.n))
    rnd.shuffle(order)
    C, lab = canonical_labeling(G)
    assert C == G.relabel(lab)
    assert canonical_form(G.relabel(order)) == C


@pytest.mark.parametrize("n", range(0, 8))
def test_canonical_form_separates_atlas_classes(n):
    forms = set()
    classes = atlas(n)
    for g in classes:
        G = Graph.from_edges(n, g.edges())
        forms.add(canonical_form(G).adj)
    assert len(forms) == len(classes)


def test_canonical_form_on_regular_graphs():
    # vertex-transitive and strongly regular inputs defeat refinement alone
    P = Graph.petersen()
    rng = random.Random(3)
    for _ in range(5):
        order = list(range(10))
        rng.shuffle(order)
        assert canonical_form(P.relabel(order)) == canonical_form(P)
    a = nx.circulant_graph(12, [1, 5])
    b = nx.circulant_graph(12, [1, 3])
    A = Graph.from_edges(12, a.edges())
    B = Graph.from_edges(12, b.edges())
    assert (canonical_form(A) == canonical_form(B)) == nx.is_isomorphic(a, b)


# containment

def test_contains_subgraph_examples():
    K3 = Graph.complete(3)
    assert contains_subgraph(K3, turan(6, 3)) is not None
    assert contains_subgraph(K3, complete_multipartite([3, 3])) is None
    assert contains_subgraph(Graph.path(3), Graph.cycle(4), induced=True) is not None
    K2K1 = Graph.from_edges(3, [(0, 1)])
    assert contains_subgraph(K2K1, K3, induced=True) is None


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=4), graphs(max_n=6), st.booleans())
def test_embeddings_are_valid_and_counted(F, G, induced):
    count = 0
    for phi in iter_embeddings(F, G, induced):
        count += 1
        assert len(set(phi)) == F.n
        for u in range(F.n):
            for v in range(u + 1, F.n):
                if F.has_edge(u, v):
                    assert G.has_edge(phi[u], phi[v])
                elif induced:
                    assert not G.has_edge(phi[u], phi[v])
    assert count == injections(F.n, F.edges(), G.n, G.edges(), induced)


def test_count_copies_examples():
    K3 = Graph.complete(3)
    assert count_copies(K3, Graph.complete(5)) == 10
    assert count_copies(K3, turan(6, 3)) == 8
    P = Graph.petersen()
    assert count_copies(Graph.complete(2), P) == P.num_edges


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=4, min_n=1), graphs(max_n=6))
def test_count_copies_matches_naive_injections(H, G):
    assert count_copies(H, G) == brute_copies(H.n, H.edges(), G.n, G.edges())


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_automorphism_count_matches_networkx(G):
    g = to_nx(G)
    expected = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(g, g).isomorphisms_iter())
    assert automorphism_count(G) == expected


def test_delete_vertex():
    G = delete_vertex(Graph.cycle(5), 2)
    assert G.n == 4 and G.edges() == [(0, 1), (0, 3), (2, 3)]
