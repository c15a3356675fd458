import math
import random
from itertools import combinations

import networkx as nx
import pytest

from ess.coloring import chromatic_number
from ess.constructions import complete_multipartite, turan, turan_edges
from ess.errors import DomainError, InvariantError, SizeError
from ess.graph import Graph, canonical_form, count_copies, from_graph6, to_graph6
from ess.parameters import ParameterSpec, parse_param
from ess.search import (EnumerationStats, abstract_chi, count_labeled_free, edge_critical_check, enumerate_graphs,
                        extremal, greedy_rainbow_embedding, partitions_into, random_proper_coloring,
                        sigma_partition, stability_distance, supersaturation_min, verify_rainbow_lemma)
from ess import search
from ess.structures import ForbiddenSubgraph, RainbowForbidden, parse_oracle

from oracles import atlas, brute_stability, labeled_free_inclusion_exclusion, labeled_graphs, triangle_count


def forbid(F: Graph) -> ForbiddenSubgraph:
    return ForbiddenSubgraph([F])


# enumeration

@pytest.mark.parametrize("n", range(0, 8))
def test_enumeration_matches_atlas(n):
    got = list(enumerate_graphs(n))
    assert len(got) == len(atlas(n))
    assert len({canonical_form(G).adj for G in got}) == len(got)


def test_enumeration_with_prune_counts_triangle_free():
    K3 = forbid(Graph.complete(3))
    for n in range(0, 8):
        expected = sum(1 for g in atlas(n) if not any(nx.triangles(g).values()))
        assert len(list(enumerate_graphs(n, prune=K3.__contains__))) == expected
    assert len(list(enumerate_graphs(3, prune=K3.__contains__))) == 3


def test_enumeration_stats_and_limits():
    stats = EnumerationStats()
    graphs = list(enumerate_graphs(4, stats=stats))
    assert stats.classes == len(graphs) == 11
    assert stats.per_level == [1, 1, 2, 4, 11]
    with pytest.raises(SizeError):
        list(enumerate_graphs(11))
    with pytest.raises(DomainError):
        list(enumerate_graphs(-1))


def test_enumeration_is_worker_independent():
    one = [to_graph6(G) for G in enumerate_graphs(6, workers=1)]
    many = [to_graph6(G) for G in enumerate_graphs(6, workers=3)]
    assert one == many


# extremal values

@pytest.mark.parametrize("n", range(3, 9))
def test_turan_extremal(n):
    for k in (2, 3):
        report = extremal(n, forbid(Graph.complete(k + 1)), ParameterSpec.edges())
        assert report.value == turan_edges(n, k)
        assert [to_graph6(canonical_form(turan(n, k)))] == report.witnesses


def test_extremal_is_nondecreasing_in_n():
    oracle = forbid(Graph.cycle(4))
    values = [extremal(n, oracle, ParameterSpec.edges()).value for n in range(1, 8)]
    assert values == sorted(values)
    # known small values of ex(n, C_4)
    assert values == [0, 1, 3, 4, 6, 7, 9]


def test_extremal_witnesses_attain_the_value():
    oracle = forbid(Graph.complete(3))
    report = extremal(6, oracle, parse_param("kt:2"))
    for g6 in report.witnesses:
        W = from_graph6(g6)
        assert oracle.membership(W) is not None and W.num_edges == report.value
    d = report.to_dict()
    assert d["value"] == 9 and d["classes_searched"] > 0


def test_extremal_from_graph_stream_matches_enumeration():
    oracle = forbid(Graph.complete(3))
    rng = random.Random(4)
    stream = []
    for G in enumerate_graphs(5):
        order = list(range(5))
        rng.shuffle(order)
        stream.append(G.relabel(order))
        stream.append(G)
    a = extremal(5, oracle, ParameterSpec.edges(), graphs=stream)
    b = extremal(5, oracle, ParameterSpec.edges())
    assert (a.value, a.witnesses) == (b.value, b.witnesses)


def test_extremal_non_monotone_oracle_filters_all_graphs():
    oracle = parse_oracle("forbid-induced:C:4")
    report = extremal(4, oracle, ParameterSpec.edges())
    assert report.value == 6  # K_4 has no induced C_4


def test_extremal_errors(monkeypatch):
    with pytest.raises(DomainError):
        extremal(3, forbid(Graph.empty(1)), ParameterSpec.edges())
    oracle = forbid(Graph.complete(3))
    report = extremal(4, oracle, ParameterSpec.edges())
    # a witness that no longer attains the value, or is no longer a member, is an invariant failure
    monkeypatch.setattr(search, "evaluate", lambda spec, G: 0)
    with pytest.raises(InvariantError):
        search._validate_report(report, oracle, ParameterSpec.edges())
    monkeypatch.undo()
    with pytest.raises(InvariantError):
        search._validate_report(report, forbid(Graph.cycle(4)), ParameterSpec.edges())


def test_extremal_float_parameter_ties():
    report = extremal(5, forbid(Graph.complete(3)), ParameterSpec.spectral())
    assert abs(report.value - math.sqrt(6)) < 1e-8
    assert report.witnesses == [to_graph6(canonical_form(turan(5, 2)))]


# abstract chromatic number and sigma

def test_partitions_into():
    assert list(partitions_into(5, 2)) == [(1, 4), (2, 3)]
    assert list(partitions_into(0, 0)) == [()]
    assert list(partitions_into(3, 4)) == []


@pytest.mark.parametrize("g", [g for n in range(2, 5) for g in atlas(n) if nx.is_connected(g)],
                         ids=lambda g: nx.to_graph6_bytes(g, header=False).decode().strip())
def test_abstract_chi_equals_chromatic_number(g):
    F = Graph.from_edges(g.number_of_nodes(), g.edges())
    interval = abstract_chi(forbid(F), 6, 4)
    chi = chromatic_number(F)
    assert (interval.k_lo, interval.k_hi) == (chi, chi)
    assert interval.contains(chi) and not interval.contains(chi + 1)


def test_abstract_chi_unbounded_and_rainbow():
    top = abstract_chi(parse_oracle("all"), 6, 4)
    assert top.k_lo is None and top.k_hi is None
    assert top.to_dict()["k_lo"] == "inf"
    rb = abstract_chi(RainbowForbidden(Graph.complete(3)), 6, 4)
    assert (rb.k_lo, rb.k_hi) == (3, 3)
    with pytest.raises(DomainError):
        abstract_chi(parse_oracle("all"), 0, 4)


def test_sigma_partition_examples():
    res = sigma_partition(forbid(complete_multipartite([2, 2, 2])), 3, 4)
    assert res["value"] == 2 and res["witness"] == [2, 2, 2]
    assert sigma_partition(forbid(Graph.complete(3)), 3, 4)["value"] == 1
    capped = sigma_partition(parse_oracle("forbid-induced:C:4"), 2, 1)
    assert capped["value"] is None and capped["label"] == "> 1"
    assert sigma_partition(parse_oracle("forbid-induced:C:4"), 2, 3)["witness"] == [2, 2]
    with pytest.raises(DomainError):
        sigma_partition(forbid(Graph.complete(3)), 1, 3)


# supersaturation

def naive_min_triangles(n: int, min_edges: int) -> int:
    return min(triangle_count(n, E) for E in labeled_graphs(n) if len(E) >= min_edges)


@pytest.mark.parametrize("n,threshold", [(4, 5), (5, 7), (5, 8)])
def test_supersaturation_matches_naive_enumeration(n, threshold):
    res = supersaturation_min(n, Graph.complete(3), threshold, ParameterSpec.edges())
    assert res["value"] == naive_min_triangles(n, threshold)
    W = from_graph6(res["witness"])
    assert W.num_edges >= threshold and count_copies(Graph.complete(3), W) == res["value"]


def test_supersaturation_one_past_extremal_is_positive():
    K3 = Graph.complete(3)
    for n in range(3, 8):
        res = supersaturation_min(n, K3, turan_edges(n, 2) + 1, ParameterSpec.edges())
        assert res["value"] >= 1
    assert supersaturation_min(6, K3, 9, ParameterSpec.edges())["value"] == 0


# stability

def test_stability_examples():
    assert stability_distance(Graph.cycle(6), 2)[0] == brute_stability(6, Graph.cycle(6).edges(), 2) == 3
    assert stability_distance(Graph.complete(3), 2)[0] == 1
    d, spec, blocks = stability_distance(complete_multipartite([2, 3, 1]), 3)
    assert d == 0 and sorted(spec.parts) == [1, 2, 3]
    assert stability_distance(Graph.empty(0), 2)[0] == 0
    with pytest.raises(SizeError):
        stability_distance(Graph.empty(13), 2)
    with pytest.raises(DomainError):
        stability_distance(Graph.empty(3), 0)


@pytest.mark.parametrize("seed", range(25))
def test_stability_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    G = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
    k1 = rng.randint(1, 3)
    d, spec, blocks = stability_distance(G, k1)
    assert d == brute_stability(n, G.edges(), k1)
    # the reported blocks achieve the distance
    cost = sum((blocks[u] != blocks[v]) != G.has_edge(u, v) for u, v in combinations(range(n), 2))
    assert cost == d and len(set(blocks)) <= k1


# edge-criticality

def test_edge_critical_examples():
    yes = edge_critical_check(forbid(Graph.complete(3)), 3, range(4, 8), chi_nmax=6, chi_mmax=4)
    assert yes["edge_critical"] and all(r["status"] == "rejected" for r in yes["turan_plus"])
    assert edge_critical_check(forbid(Graph.cycle(5)), 3, range(6, 9), chi_nmax=6, chi_mmax=4)["edge_critical"]
    no = edge_critical_check(forbid(Graph.complete(4)), 3, range(4, 8), chi_nmax=6, chi_mmax=4)
    assert not no["edge_critical"]
    undefined = edge_critical_check(forbid(Graph.complete(3)), 3, range(1, 3), chi_nmax=6, chi_mmax=4)
    assert undefined["turan_plus"][0]["status"] == "undefined"


# rainbow lemma

def test_random_proper_coloring_is_proper():
    rng = random.Random(0)
    for G in (Graph.complete(6), complete_multipartite([4, 4, 4]), Graph.petersen()):
        col = random_proper_coloring(G, rng)
        for v in range(G.n):
            seen = [col[tuple(sorted((v, u)))] for u in G.neighbors(v)]
            assert len(seen) == len(set(seen))


def test_greedy_rainbow_embedding_is_rainbow():
    rng = random.Random(1)
    F = Graph.cycle(5)
    H = complete_multipartite([5, 5, 5])
    col = random_proper_coloring(H, rng)
    M = search._color_matrix(H.n, col)
    classes = [[0, 2], [1, 3], [4]]
    parts = [list(range(0, 5)), list(range(5, 10)), list(range(10, 15))]
    for _ in range(20):
        phi = greedy_rainbow_embedding(F, classes, parts, M, rng)
        if phi is None:
            continue
        image = [col[tuple(sorted((phi[u], phi[v])))] for u, v in F.edges()]
        assert len(set(image)) == len(image)
        assert all(H.has_edge(phi[u], phi[v]) for u, v in F.edges())


@pytest.mark.parametrize("F,n", [(Graph.complete(3), 3), (Graph.complete(2), 2), (Graph.cycle(5), 4)])
def test_verify_rainbow_lemma_examples(F, n):
    res = verify_rainbow_lemma(F, n, samples=20, seed=3)
    assert res["rainbow_found"] == 20 and res["agreement"] == 20
    assert res["failed_samples"] == []


def test_verify_rainbow_lemma_is_seeded():
    a = verify_rainbow_lemma(Graph.cycle(5), 4, samples=10, seed=7)
    b = verify_rainbow_lemma(Graph.cycle(5), 4, samples=10, seed=7)
    assert a == b


# labelled counting

@pytest.mark.parametrize("n", range(0, 6))
def test_count_labeled_triangle_free(n):
    expected = labeled_free_inclusion_exclusion(n)
    assert count_labeled_free(n, Graph.complete(3)) == expected
    assert expected == sum(1 for E in labeled_graphs(n) if triangle_count(n, E) == 0)


def test_count_labeled_free_examples():
    assert count_labeled_free(3, Graph.complete(3)) == 7
    assert count_labeled_free(4, Graph.complete(3)) == 41
    # a pattern too large to fit leaves every labelled graph free
    assert count_labeled_free(4, Graph.complete(5)) == 2 ** 6
    with pytest.raises(SizeError):
        count_labeled_free(8, Graph.complete(3))
