"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the search machinery it checks; graphs are plain
(n, set-of-edges) pairs or networkx graphs.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations, product

import networkx as nx


def edge_set(G) -> set[tuple[int, int]]:
    return set(G.edges())


def to_nx(G) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def atlas(n: int) -> list[nx.Graph]:
    """Every graph on ``n`` <= 7 vertices up to isomorphism, from networkx's atlas."""
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n]


def is_proper(n: int, edges, col: tuple[int, ...]) -> bool:
    return all(col[u] != col[v] for u, v in edges)


def brute_chromatic(n: int, edges) -> int:
    if n == 0:
        return 0
    for k in range(1, n + 1):
        if any(is_proper(n, edges, c) for c in product(range(k), repeat=n)):
            return k
    return n


def brute_sigma(n: int, edges) -> int:
    k = brute_chromatic(n, edges)
    best = n
    for c in product(range(k), repeat=n):
        if is_proper(n, edges, c):
            best = min(best, min(c.count(i) for i in range(k)))
    return best


def injections(F_n: int, F_edges, G_n: int, G_edges, induced: bool = False) -> int:
    G_edges = {frozenset(e) for e in G_edges}
    F_set = {frozenset(e) for e in F_edges}
    total = 0
    for phi in permutations(range(G_n), F_n):
        ok = all(frozenset((phi[u], phi[v])) in G_edges for u, v in F_edges)
        if ok and induced:
            ok = all(frozenset((phi[u], phi[v])) not in G_edges
                     for u, v in combinations(range(F_n), 2) if frozenset((u, v)) not in F_set)
        total += ok
    return total


def brute_copies(F_n: int, F_edges, G_n: int, G_edges) -> int:
    return injections(F_n, F_edges, G_n, G_edges) // injections(F_n, F_edges, F_n, F_edges, induced=True)


def labeled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [p for i, p in enumerate(pairs) if mask >> i & 1]


def triangle_count(n: int, edges) -> int:
    s = {frozenset(e) for e in edges}
    return sum(1 for a, b, c in combinations(range(n), 3)
               if frozenset((a, b)) in s and frozenset((b, c)) in s and frozenset((a, c)) in s)


def labeled_free_inclusion_exclusion(n: int) -> int:
    """Labelled triangle-free graphs on n vertices by inclusion-exclusion over the triangles of K_n."""
    tris = [frozenset(frozenset(p) for p in combinations(t, 2)) for t in combinations(range(n), 3)]
    m = n * (n - 1) // 2
    total = 0
    for r in range(len(tris) + 1):
        for S in combinations(tris, r):
            forced = set().union(*S) if S else set()
            total += (-1) ** r * 2 ** (m - len(forced))
    return total


def brute_stability(n: int, edges, k1: int) -> int:
    s = {frozenset(e) for e in edges}
    best = math.inf
    for blocks in product(range(k1), repeat=n):
        cost = 0
        for u, v in combinations(range(n), 2):
            cross = blocks[u] != blocks[v]
            cost += cross != (frozenset((u, v)) in s)
        best = min(best, cost)
    return best


def brute_local_density(n: int, edges, size: int) -> int:
    s = {frozenset(e) for e in edges}
    return min(sum(1 for p in combinations(U, 2) if frozenset(p) in s) for U in combinations(range(n), size))


def brute_edge_ordered_contains(p_n: int, p_rank: dict, h_n: int, h_rank: dict) -> bool:
    """Edge-ordered containment: an injection mapping pattern edges to host edges
    with the same relative rank order."""
    p_edges = sorted(p_rank, key=p_rank.get)
    for phi in permutations(range(h_n), p_n):
        images = [frozenset((phi[u], phi[v])) for u, v in p_edges]
        if all(e in h_rank for e in images):
            ranks = [h_rank[e] for e in images]
            if ranks == sorted(ranks):
                return True
    return False


def brute_vertex_ordered_contains(p_n: int, p_edges, p_order, h_n: int, h_edges, h_order,
                                  cyclic: bool = False) -> bool:
    """Vertex-ordered containment by trying every injection. In cyclic mode the
    image positions, read around the pattern's circle from some starting point,
    must increase."""
    hs = {frozenset(e) for e in h_edges}
    hpos = {v: i for i, v in enumerate(h_order)}
    for phi in permutations(range(h_n), p_n):
        if not all(frozenset((phi[u], phi[v])) in hs for u, v in p_edges):
            continue
        seq = [hpos[phi[v]] for v in p_order]
        rotations = range(len(seq)) if cyclic and seq else [0]
        if any(all(seq[(r + i) % len(seq)] < seq[(r + i + 1) % len(seq)] for i in range(len(seq) - 1))
               for r in rotations):
            return True
    return False


def has_rainbow(edges_col: dict, F_n: int, F_edges, h_n: int) -> bool:
    cols = {frozenset(e): c for e, c in edges_col.items()}
    for phi in permutations(range(h_n), F_n):
        image = [frozenset((phi[u], phi[v])) for u, v in F_edges]
        if all(e in cols for e in image) and len({cols[e] for e in image}) == len(image):
            return True
    return False


def brute_rainbow_member(n: int, edges, F_n: int, F_edges) -> bool:
    """Some proper colouring with at most |E| colours avoids a rainbow F."""
    m = len(edges)
    for col in product(range(max(m, 1)), repeat=m):
        assignment = dict(zip(edges, col))
        at = {}
        proper = True
        for (u, v), c in assignment.items():
            for w in (u, v):
                if c in at.setdefault(w, set()):
                    proper = False
                at[w].add(c)
        if proper and not has_rainbow(assignment, F_n, F_edges, n):
            return True
    return False
