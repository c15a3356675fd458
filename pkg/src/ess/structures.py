"""Graphs with extra structure and the partitions they induce.

A structure is one of an edge order, a vertex order, a cyclic vertex order
(up to rotation) or an edge colouring. Containment is subgraph-style: some
injective map sends pattern edges to host edges and respects the structure.
Copies, in contrast, are counted on vertex sets via restriction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterator, Union

from .constructions import parse_graph
from .errors import DomainError, ParseError, SizeError
from .graph import (Graph, _pattern_order, bits, canonical_labeling, contains_subgraph, delete_vertex,
                    from_graph6, iter_embeddings, mask_of, remove_edge, restriction, to_graph6)


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeOrder:
    """Edges listed in increasing rank."""
    edges: tuple[tuple[int, int], ...]

    kind = "edgeorder"

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(_edge(u, v) for u, v in self.edges))


@dataclass(frozen=True)
class VertexOrder:
    """Vertices listed from first to last."""
    order: tuple[int, ...]

    kind = "vertexorder"

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))


@dataclass(frozen=True)
class CyclicOrder:
    """Vertices listed around the circle; rotations are equivalent."""
    order: tuple[int, ...]

    kind = "cyclic"

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))


@dataclass(frozen=True)
class EdgeColoring:
    colors: tuple[tuple[tuple[int, int], int], ...]

    kind = "coloring"

    def __post_init__(self):
        items = self.colors.items() if isinstance(self.colors, dict) else self.colors
        object.__setattr__(self, "colors", tuple(sorted((_edge(*e), c) for e, c in items)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.colors)


Structure = Union[EdgeOrder, VertexOrder, CyclicOrder, EdgeColoring]


@dataclass(frozen=True)
class StructuredGraph:
    graph: Graph
    structure: Structure

    def __post_init__(self):
        G, X = self.graph, self.structure
        if isinstance(X, EdgeOrder):
            if sorted(X.edges) != G.edges():
                raise DomainError("edge order must rank every edge exactly once")
        elif isinstance(X, (VertexOrder, CyclicOrder)):
            if sorted(X.order) != list(range(G.n)):
                raise DomainError("vertex order must list every vertex exactly once")
        elif isinstance(X, EdgeColoring):
            if sorted(e for e, _ in X.colors) != G.edges():
                raise DomainError("edge colouring must be total on the edge set")
        else:
            raise DomainError(f"unknown structure {X!r}")

    @property
    def kind(self) -> str:
        return self.structure.kind


# ---------------------------------------------------------------------------
# pattern files

def format_structured(S: StructuredGraph) -> str:
    X = S.structure
    if isinstance(X, EdgeOrder):
        body = ",".join(f"{u}-{v}" for u, v in X.edges)
    elif isinstance(X, EdgeColoring):
        body = ",".join(f"{u}-{v}={c}" for (u, v), c in X.colors)
    else:
        body = ",".join(str(v) for v in X.order)
    return f"{to_graph6(S.graph)}\n{X.kind}: {body}\n"


def parse_structured(text: str) -> StructuredGraph:
    """Two-line pattern format: graph6, then ``edgeorder:``/``vertexorder:``/``cyclic:``/``coloring:``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ParseError("structured pattern needs exactly two non-empty lines")
    G = from_graph6(lines[0])
    kind, sep, body = lines[1].partition(":")
    kind = kind.strip()
    items = [t.strip() for t in body.split(",") if t.strip()]
    if not sep:
        raise ParseError(f"missing ':' in structure line {lines[1]!r}")
    try:
        if kind == "edgeorder":
            X = EdgeOrder(tuple(tuple(int(p) for p in t.split("-")) for t in items))
        elif kind == "vertexorder":
            X = VertexOrder(tuple(int(t) for t in items))
        elif kind == "cyclic":
            X = CyclicOrder(tuple(int(t) for t in items))
        elif kind == "coloring":
            pairs = []
            for t in items:
                e, _, c = t.partition("=")
                u, v = (int(p) for p in e.split("-"))
                pairs.append(((u, v), int(c)))
            X = EdgeColoring(tuple(pairs))
        else:
            raise ParseError(f"unknown structure kind {kind!r}")
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad structure line {lines[1]!r}") from None
    try:
        return StructuredGraph(G, X)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def load_structured(path: str | Path) -> StructuredGraph:
    return parse_structured(Path(path).read_text())


# ---------------------------------------------------------------------------
# structure checks on embeddings

class _StructureIndex:
    """Precomputed lookups for fast structure checks on a structured graph."""

    def __init__(self, S: StructuredGraph):
        X = S.structure
        self.kind = X.kind
        if isinstance(X, EdgeOrder):
            self.seq = X.edges
            self.rank = {e: i for i, e in enumerate(X.edges)}
        elif isinstance(X, (VertexOrder, CyclicOrder)):
            self.seq = X.order
            self.pos = {v: i for i, v in enumerate(X.order)}
        else:
            self.color = X.as_dict()
            self.seq = tuple(e for e, _ in X.colors)


def _respects(p: _StructureIndex, h: _StructureIndex, phi) -> bool:
    if p.kind == "edgeorder":
        last = -1
        for u, v in p.seq:
            r = h.rank[_edge(phi[u], phi[v])]
            if r <= last:
                return False
            last = r
        return True
    if p.kind == "vertexorder":
        last = -1
        for v in p.seq:
            q = h.pos[phi[v]]
            if q <= last:
                return False
            last = q
        return True
    if p.kind == "cyclic":
        seq = [h.pos[phi[v]] for v in p.seq]
        k = len(seq)
        if k < 3:
            return True
        return sum(seq[i] > seq[(i + 1) % k] for i in range(k)) == 1
    # colour partition equal up to renaming
    seen: dict[int, int] = {}
    back: dict[int, int] = {}
    for e in p.seq:
        cp = p.color[e]
        ch = h.color[_edge(phi[e[0]], phi[e[1]])]
        if seen.setdefault(cp, ch) != ch or back.setdefault(ch, cp) != cp:
            return False
    return True


def _check_kinds(pattern: StructuredGraph, host: StructuredGraph) -> None:
    if pattern.kind != host.kind:
        raise DomainError(f"structure kinds differ: {pattern.kind} vs {host.kind}")


def iter_structured_embeddings(pattern: StructuredGraph, host: StructuredGraph,
                               induced: bool = False) -> Iterator[tuple[int, ...]]:
    _check_kinds(pattern, host)
    p, h = _StructureIndex(pattern), _StructureIndex(host)
    for phi in iter_embeddings(pattern.graph, host.graph, induced):
        if _respects(p, h, phi):
            yield phi


def contains_structured(pattern: StructuredGraph, host: StructuredGraph,
                        induced: bool = False) -> tuple[int, ...] | None:
    """Witness embedding of ``pattern`` in ``host`` respecting the structure, or ``None``."""
    return next(iter_structured_embeddings(pattern, host, induced), None)


def restrict_structured(host: StructuredGraph, U) -> StructuredGraph:
    """Restriction to ``U`` (bitmask or iterable), relabelled by increasing index."""
    if not isinstance(U, int):
        U = mask_of(U)
    G = restriction(host.graph, U)
    keep = list(bits(U))
    new = {v: i for i, v in enumerate(keep)}
    X = host.structure
    if isinstance(X, EdgeOrder):
        Y = EdgeOrder(tuple((new[u], new[v]) for u, v in X.edges if u in new and v in new))
    elif isinstance(X, VertexOrder):
        Y = VertexOrder(tuple(new[v] for v in X.order if v in new))
    elif isinstance(X, CyclicOrder):
        Y = CyclicOrder(tuple(new[v] for v in X.order if v in new))
    else:
        Y = EdgeColoring(tuple(((new[u], new[v]), c) for (u, v), c in X.colors if u in new and v in new))
    return StructuredGraph(G, Y)


def structured_isomorphic(A: StructuredGraph, B: StructuredGraph) -> bool:
    if A.graph.n != B.graph.n or A.graph.num_edges != B.graph.num_edges:
        return False
    return contains_structured(A, B, induced=True) is not None


def count_structured_copies(pattern: StructuredGraph, host: StructuredGraph) -> int:
    """Number of vertex sets ``U`` whose restriction is structurally isomorphic to ``pattern``."""
    _check_kinds(pattern, host)
    k = pattern.graph.n
    if k > 8:
        raise SizeError("structured copy counting is limited to patterns on 8 vertices")
    if k > host.graph.n:
        return 0
    m = pattern.graph.num_edges
    total = 0
    for U in combinations(range(host.graph.n), k):
        mask = mask_of(U)
        if sum((host.graph.adj[v] & mask).bit_count() for v in U) != 2 * m:
            continue
        if structured_isomorphic(pattern, restrict_structured(host, mask)):
            total += 1
    return total


def relabel_structure(X: Structure, order) -> Structure:
    """Transport a structure on ``G.relabel(order)`` back to ``G``."""
    if isinstance(X, EdgeOrder):
        return EdgeOrder(tuple((order[u], order[v]) for u, v in X.edges))
    if isinstance(X, VertexOrder):
        return VertexOrder(tuple(order[v] for v in X.order))
    if isinstance(X, CyclicOrder):
        return CyclicOrder(tuple(order[v] for v in X.order))
    return EdgeColoring(tuple(((order[u], order[v]), c) for (u, v), c in X.colors))


# ---------------------------------------------------------------------------
# colourings and rainbow copies

def is_proper_edge_coloring(G: Graph, coloring) -> bool:
    col = coloring.as_dict() if isinstance(coloring, EdgeColoring) else {_edge(*e): c for e, c in coloring.items()}
    edges = G.edges()
    if set(col) != set(edges):
        raise DomainError("colouring must be defined on exactly the edges of the graph")
    at: dict[int, set[int]] = {}
    for (u, v), c in col.items():
        for w in (u, v):
            s = at.setdefault(w, set())
            if c in s:
                return False
            s.add(c)
    return True


def _color_matrix(n: int, col: dict[tuple[int, int], int]) -> list[list[int]]:
    M = [[-1] * n for _ in range(n)]
    for (u, v), c in col.items():
        M[u][v] = M[v][u] = c
    return M


def _rainbow_search(F: Graph, n: int, adj: list[int], M: list[list[int]],
                    anchor: tuple[int, int] | None = None) -> tuple[int, ...] | None:
    """Rainbow embedding of ``F`` into a coloured host given by rows ``adj``
    and colour matrix ``M``; with ``anchor`` the host edge must be used."""
    if F.n > n:
        return None
    order = _pattern_order(F)
    prev = [[w for w in order[:i] if F.has_edge(order[i], w)] for i in range(F.n)]
    phi = [-1] * F.n

    def extend(i: int, used: int, colors: set[int]) -> bool:
        while i < F.n and phi[order[i]] >= 0:
            i += 1
        if i == F.n:
            return True
        v = order[i]
        cand = ~used & ((1 << n) - 1)
        for w in prev[i]:
            cand &= adj[phi[w]]
        # pre-assigned vertices further on must stay consistent
        for x in bits(cand):
            new = []
            ok = True
            for w in F.neighbors(v):
                if phi[w] < 0:
                    continue
                if not adj[x] >> phi[w] & 1:
                    ok = False
                    break
                c = M[x][phi[w]]
                if c in colors or c in new:
                    ok = False
                    break
                new.append(c)
            if not ok:
                continue
            phi[v] = x
            if extend(i + 1, used | (1 << x), colors.union(new)):
                return True
            phi[v] = -1
        return False

    if anchor is None:
        return tuple(phi) if extend(0, 0, set()) else None
    u, v = anchor
    c0 = M[u][v]
    for a, b in F.edges():
        for x, y in ((u, v), (v, u)):
            phi[:] = [-1] * F.n
            phi[a], phi[b] = x, y
            if extend(0, (1 << x) | (1 << y), {c0}):
                return tuple(phi)
    return None


def has_rainbow_copy(host: Graph, coloring, F: Graph) -> tuple[int, ...] | None:
    """Embedding of ``F`` whose image edges have pairwise distinct colours."""
    col = coloring.as_dict() if isinstance(coloring, EdgeColoring) else {_edge(*e): c for e, c in coloring.items()}
    if set(col) != set(host.edges()):
        raise DomainError("colouring must be total on the host edges")
    if len(set(col.values())) < F.num_edges:
        return None
    return _rainbow_search(F, host.n, list(host.adj), _color_matrix(host.n, col))


# ---------------------------------------------------------------------------
# partition oracles

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class Witness:
    """Certificate that a graph belongs to the allowed family.

    ``structure`` is ``None`` for plain forbidden-subgraph style oracles.
    """
    structure: Structure | None = None


def _orbit_representatives(G: Graph, items: list[tuple[int, ...]], cap: int = 5000) -> list[int]:
    """Indices of one item per orbit under the automorphisms of G.

    At most ``cap`` automorphisms are used. Merging along a subset of the group
    still only identifies equivalent items, so the cap only costs pruning.
    """
    index = {tuple(sorted(x)): i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for count, phi in enumerate(iter_embeddings(G, G, induced=True)):
        if count >= cap:
            break
        for i, x in enumerate(items):
            j = index[tuple(sorted(phi[v] for v in x))]
            parent[find(i)] = find(j)
    return sorted({find(i) for i in range(len(items))})


class PartitionOracle:
    """Decides membership of a graph in the allowed family A."""

    monotone = True
    hereditary = True
    memoize = False

    def __init__(self, description: str):
        self.description = description
        self._memo: dict[tuple[int, tuple[int, ...]], Structure | None | bool] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.description!r})"

    def membership(self, G: Graph) -> Witness | None:
        if not self.memoize:
            return self._decide(G)
        C, order = canonical_labeling(G)
        key = (C.n, C.adj)
        with self._lock:
            hit = key in self._memo
            cached = self._memo.get(key)
        if not hit and self.monotone and self._has_failed_minor(C):
            with self._lock:
                self._memo.setdefault(key, False)
            return None
        if not hit:
            w = self._decide(C)
            cached = False if w is None else w.structure
            with self._lock:
                cached = self._memo.setdefault(key, cached)
        if cached is False:
            return None
        if cached is None:
            return Witness()
        return Witness(relabel_structure(cached, order))

    def _has_failed_minor(self, G: Graph) -> bool:
        # a monotone family excludes G once any single deletion is known to be excluded
        smaller = [remove_edge(G, e) for e in G.edges()] + [delete_vertex(G, v) for v in range(G.n)]
        for H in smaller:
            C = canonical_labeling(H)[0]
            with self._lock:
                if self._memo.get((C.n, C.adj), True) is False:
                    return True
        return False

    def __contains__(self, G: Graph) -> bool:
        return self.membership(G) is not None

    def _decide(self, G: Graph) -> Witness | None:
        raise NotImplementedError


class ForbiddenSubgraph(PartitionOracle):
    def __init__(self, patterns: list[Graph], description: str | None = None):
        self.patterns = list(patterns)
        super().__init__(description or "forbid:" + ",".join(to_graph6(F) for F in self.patterns))

    def _decide(self, G):
        for F in self.patterns:
            if contains_subgraph(F, G) is not None:
                return None
        return Witness()


class ForbiddenInduced(PartitionOracle):
    monotone = False

    def __init__(self, patterns: list[Graph], description: str | None = None):
        self.patterns = list(patterns)
        super().__init__(description or "forbid-induced:" + ",".join(to_graph6(F) for F in self.patterns))

    def _decide(self, G):
        for F in self.patterns:
            if contains_subgraph(F, G, induced=True) is not None:
                return None
        return Witness()


class ForbiddenStructured(PartitionOracle):
    """G is allowed iff some structure X on G avoids every structured pattern.

    Structures are built one element at a time (next edge rank, next vertex
    position); a branch dies as soon as a pattern appears on the elements
    placed so far, since later elements never change earlier relations.
    """

    memoize = True

    def __init__(self, patterns: list[StructuredGraph], description: str | None = None,
                 budget: int = DEFAULT_BUDGET):
        if not patterns:
            raise DomainError("need at least one structured pattern")
        kinds = {P.kind for P in patterns}
        if len(kinds) != 1:
            raise DomainError("all structured patterns must share one structure kind")
        self.kind = kinds.pop()
        if self.kind == "coloring":
            raise DomainError("coloured patterns are supported through the rainbow oracle only")
        self.patterns = list(patterns)
        self.budget = budget
        super().__init__(description or f"forbid-{self.kind}:" + ";".join(
            format_structured(P).replace("\n", " ").strip() for P in self.patterns))

    def _free(self, S: StructuredGraph) -> bool:
        return all(contains_structured(P, S) is None for P in self.patterns)

    def _decide(self, G):
        if all(contains_subgraph(P.graph, G) is None for P in self.patterns):
            if self.kind == "edgeorder":
                X = EdgeOrder(tuple(G.edges()))
            elif self.kind == "vertexorder":
                X = VertexOrder(tuple(range(G.n)))
            else:
                X = CyclicOrder(tuple(range(G.n)))
            return Witness(X)
        if self.kind == "edgeorder":
            X = self._search_edges(G)
        else:
            X = self._search_vertices(G)
        return None if X is None else Witness(X)

    # Both searches place elements in increasing order (edge ranks or vertex
    # positions). A future pattern copy then takes a prefix of the pattern's
    # ordered elements from what is already placed, so the placed set together
    # with the set of partial prefix maps decides whether the branch can still
    # succeed. That pair is the memo key for failed branches.

    def _tick(self, nodes: list[int]) -> None:
        nodes[0] += 1
        if nodes[0] > self.budget:
            raise SizeError(f"{self.kind} search exceeded {self.budget} nodes")

    def _search_edges(self, G: Graph) -> EdgeOrder | None:
        edges = G.edges()
        m = len(edges)
        # each pattern as its ranked edge list plus its count of isolated vertices
        pats = []
        for P in self.patterns:
            touched = {v for e in P.structure.edges for v in e}
            pats.append((P.structure.edges, P.graph.n, P.graph.n - len(touched)))
        empty = frozenset((i, 0, ()) for i in range(len(pats)))
        failed: set = set()
        nodes = [0]
        ranked: list[tuple[int, int]] = []

        def extend(state: frozenset, x: int, y: int) -> frozenset | None:
            grown = set(state)
            for i, j, pairs in state:
                pe, pn, isolated = pats[i]
                a, b = pe[j]
                mp = dict(pairs)
                for u, v in ((x, y), (y, x)):
                    if mp.get(a, u) != u or mp.get(b, v) != v:
                        continue
                    used = set(mp.values()) - {mp.get(a), mp.get(b)}
                    if u in used or v in used:
                        continue
                    nm = dict(mp)
                    nm[a], nm[b] = u, v
                    if j + 1 == len(pe):
                        if G.n - len(nm) >= isolated:
                            return None
                        continue
                    grown.add((i, j + 1, tuple(sorted(nm.items()))))
            return frozenset(grown)

        def rec(taken: int, state: frozenset) -> bool:
            if taken == (1 << m) - 1:
                return self._free(StructuredGraph(G, EdgeOrder(tuple(ranked))))
            key = (taken, state)
            if key in failed:
                return False
            for i in (first if not taken else range(m)):
                if taken >> i & 1:
                    continue
                self._tick(nodes)
                nxt = extend(state, *edges[i])
                if nxt is None:
                    continue
                ranked.append(edges[i])
                if rec(taken | 1 << i, nxt):
                    return True
                ranked.pop()
            failed.add(key)
            return False

        if any(not pe for pe, pn, _ in pats if pn <= G.n):
            return None  # an edgeless pattern that fits is always contained
        first = _orbit_representatives(G, edges)
        return EdgeOrder(tuple(ranked)) if rec(0, empty) else None

    def _search_vertices(self, G: Graph) -> Structure | None:
        n = G.n
        cyclic = self.kind == "cyclic"
        make = CyclicOrder if cyclic else VertexOrder
        # linear orders to avoid; a cyclic pattern read from vertex 0 of the host
        # circle shows up as one of its rotations
        linear = []
        for P in self.patterns:
            order = P.structure.order
            rots = [order[r:] + order[:r] for r in range(len(order))] if cyclic and order else [order]
            for q in rots:
                back = [[i for i in range(j) if P.graph.has_edge(q[i], q[j])] for j in range(len(q))]
                linear.append((q, back))
        failed: set = set()
        nodes = [0]
        placed: list[int] = []

        def extend(state: frozenset, v: int) -> frozenset | None:
            grown = set(state)
            for i, images in state:
                q, back = linear[i]
                j = len(images)
                if all(G.has_edge(images[t], v) for t in back[j]):
                    if j + 1 == len(q):
                        return None
                    grown.add((i, images + (v,)))
            return frozenset(grown)

        def rec(left: int, state: frozenset) -> bool:
            if not left:
                return self._free(StructuredGraph(G, make(tuple(placed))))
            key = (left, state)
            if key in failed:
                return False
            # rotations are equivalent, so vertex 0 opens the cyclic order
            if not placed:
                options = [0] if cyclic else first
            else:
                options = bits(left)
            for v in options:
                self._tick(nodes)
                nxt = extend(state, v)
                if nxt is None:
                    continue
                placed.append(v)
                if rec(left & ~(1 << v), nxt):
                    return True
                placed.pop()
            failed.add(key)
            return False

        if n == 0:
            return make(()) if all(P.graph.n > 0 for P in self.patterns) else None
        if any(not q for q, _ in linear):
            return None
        start = frozenset((i, ()) for i in range(len(linear)))
        first = [] if cyclic else _orbit_representatives(G, [(v,) for v in range(n)])
        return make(tuple(placed)) if rec((1 << n) - 1, start) else None


class RainbowForbidden(PartitionOracle):
    """G is allowed iff it has a proper edge colouring with no rainbow copy of F.

    Colourings are built edge by edge with colours in first-use order and a
    palette of |E(G)| colours; a branch dies once a rainbow copy of F uses the
    edge just coloured. Any colouring with more colours can be merged down to
    a first-use labelled one with at most |E(G)| colours, so nothing is missed.
    """

    memoize = True

    def __init__(self, F: Graph, description: str | None = None, budget: int = DEFAULT_BUDGET):
        self.F = F
        self.budget = budget
        super().__init__(description or f"rainbow:{to_graph6(F)}")

    def _decide(self, G):
        F = self.F
        if F.num_edges == 0:
            return None if F.n <= G.n else Witness(EdgeColoring(()))
        first = contains_subgraph(F, G)
        if first is None:
            return Witness(EdgeColoring(tuple((e, i) for i, e in enumerate(G.edges()))))
        col = self._search(G, first)
        return None if col is None else Witness(EdgeColoring(tuple(col.items())))

    def _edge_order(self, G: Graph, first: tuple[int, ...]) -> list[tuple[int, int]]:
        order = [_edge(first[a], first[b]) for a, b in self.F.edges()]
        rest = [e for e in G.edges() if e not in set(order)]
        touched = set(v for e in order for v in e)
        while rest:
            e = max(rest, key=lambda f: ((f[0] in touched) + (f[1] in touched), -rest.index(f)))
            rest.remove(e)
            order.append(e)
            touched.update(e)
        return order

    def _search(self, G: Graph, first) -> dict | None:
        n = G.n
        order = self._edge_order(G, first)
        m = len(order)
        palette = m
        adj = [0] * n
        M = [[-1] * n for _ in range(n)]
        at = [0] * n  # bitmask of colours used at each vertex
        nodes = 0
        F = self.F

        def rec(i: int, used: int) -> bool:
            nonlocal nodes
            if i == m:
                return True
            u, v = order[i]
            busy = at[u] | at[v]
            for c in range(min(used + 1, palette)):
                if busy >> c & 1:
                    continue
                nodes += 1
                if nodes > self.budget:
                    raise SizeError(f"rainbow colouring search exceeded {self.budget} nodes")
                M[u][v] = M[v][u] = c
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                at[u] |= 1 << c
                at[v] |= 1 << c
                if _rainbow_search(F, n, adj, M, anchor=(u, v)) is None and rec(i + 1, max(used, c + 1)):
                    return True
                at[u] &= ~(1 << c)
                at[v] &= ~(1 << c)
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
                M[u][v] = M[v][u] = -1
            return False

        if not rec(0, 0):
            return None
        return {e: M[e[0]][e[1]] for e in order}


def all_graphs_oracle() -> ForbiddenSubgraph:
    return ForbiddenSubgraph([], description="all")


def _split_graph_tokens(body: str) -> list[str]:
    # graph6 never contains digits, so an all-digit piece continues a construction's argument list
    items: list[str] = []
    for piece in body.split(","):
        if piece.isdigit() and items and ":" in items[-1]:
            items[-1] += "," + piece
        elif piece:
            items.append(piece)
    return items


def parse_oracle(text: str) -> PartitionOracle:
    """Oracle spec strings (graphs as graph6 or construction tokens): ``forbid:G[,G...]``, ``forbid-induced:...``,
    ``forbid-eo:FILE[,FILE...]`` (any structure kind per file), ``rainbow:g6``, ``all``."""
    s = text.strip()
    if s in ("all", "none", "forbid:"):
        return all_graphs_oracle()
    name, sep, body = s.partition(":")
    if not sep:
        raise ParseError(f"unknown oracle spec {text!r}")
    items = _split_graph_tokens(body)
    if name == "forbid":
        return ForbiddenSubgraph([parse_graph(t) for t in items], description=s)
    if name == "forbid-induced":
        return ForbiddenInduced([parse_graph(t) for t in items], description=s)
    if name in ("forbid-eo", "forbid-structured"):
        try:
            patterns = [load_structured(t) for t in items]
        except OSError as exc:
            raise ParseError(f"cannot read pattern file: {exc}") from None
        return ForbiddenStructured(patterns, description=s)
    if name == "rainbow":
        if len(items) != 1:
            raise ParseError("rainbow oracle takes exactly one graph")
        return RainbowForbidden(parse_graph(items[0]), description=s)
    raise ParseError(f"unknown oracle spec {text!r}")
