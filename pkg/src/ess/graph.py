"""Small simple graphs stored as per-vertex bit rows.

A :class:`Graph` holds at most 64 vertices; row ``adj[v]`` has bit ``u`` set
iff ``uv`` is an edge. Everything here is a pure function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError, ParseError

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph has {self.n} vertices; the cap is {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise DomainError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"row {v} has bits beyond vertex {self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def _raw(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        # trusted construction for internal hot paths; skips validation
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"graph has {n} vertices; the cap is {MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {u}-{v} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise DomainError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    def __repr__(self) -> str:
        return f"Graph({to_graph6(self)!r})"

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.adj[u] >> v & 1]

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is vertex ``order[i]`` of this graph.

        ``order`` may list a subset of the vertices; the rest are dropped.
        """
        pos = {v: i for i, v in enumerate(order)}
        keep = mask_of(order)
        rows = []
        for v in order:
            r = 0
            for u in bits(self.adj[v] & keep):
                r |= 1 << pos[u]
            rows.append(r)
        return Graph._raw(len(rows), tuple(rows))


# ---------------------------------------------------------------------------
# graph6

def to_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~", chr((n >> 12 & 63) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    acc, nbits = 0, 0
    for j in range(1, n):
        row = G.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc, nbits = 0, 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    """Decode one graph6 line. An optional ``>>graph6<<`` header is accepted."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.rstrip("\r\n")
    base = 0
    if s.startswith(">>graph6<<"):
        base = 10
        s = s[10:]
    if not s:
        raise ParseError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {ch!r} outside graph6 range 63..126", base + i)
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise ParseError("graph6 with 8-byte size header exceeds 64 vertices", base + 1)
        if len(s) < 4:
            raise ParseError("truncated graph6 size header", base + len(s))
        n = (ord(s[1]) - 63) << 12 | (ord(s[2]) - 63) << 6 | (ord(s[3]) - 63)
        if n < 63:
            raise ParseError("non-minimal graph6 size header", base + 1)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    if n > MAX_VERTICES:
        raise ParseError(f"graph6 encodes {n} vertices; the cap is {MAX_VERTICES}", base)
    need_bits = n * (n - 1) // 2
    need = (need_bits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise ParseError(f"truncated graph6 body: need {need} data bytes, got {len(body)}", base + len(s))
    if len(body) > need:
        raise ParseError("trailing garbage after graph6 body", base + pos + need)
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for idx, ch in enumerate(body):
        val = ord(ch) - 63
        for b in range(5, -1, -1):
            bit = val >> b & 1
            if k >= need_bits:
                if bit:
                    raise ParseError("nonzero padding bits", base + pos + idx)
                continue
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode a newline-separated graph6 stream, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


# ---------------------------------------------------------------------------
# edits

def restriction(G: Graph, U: int | Iterable[int]) -> Graph:
    """Induced subgraph on ``U`` (a bitmask or an iterable of vertices),
    relabelled by increasing original index."""
    if not isinstance(U, int):
        U = mask_of(U)
    if U & ~G.vertex_mask or U < 0:
        raise DomainError("vertex set contains an index outside the graph")
    return G.relabel(list(bits(U)))


def _check_pair(G: Graph, e: tuple[int, int]) -> tuple[int, int]:
    u, v = e
    if u == v:
        raise DomainError(f"{u}-{v} is a loop")
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise DomainError(f"pair {u}-{v} out of range")
    return u, v


def add_edge(G: Graph, e: tuple[int, int]) -> Graph:
    u, v = _check_pair(G, e)
    if G.has_edge(u, v):
        raise DomainError(f"{u}-{v} is already an edge")
    rows = list(G.adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(G.n, tuple(rows))


def remove_edge(G: Graph, e: tuple[int, int]) -> Graph:
    u, v = _check_pair(G, e)
    if not G.has_edge(u, v):
        raise DomainError(f"{u}-{v} is not an edge")
    rows = list(G.adj)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(G.n, tuple(rows))


def duplicate_vertex(G: Graph, v: int) -> Graph:
    """Add a vertex joined to exactly the neighbours of ``v``."""
    if not 0 <= v < G.n:
        raise DomainError(f"vertex {v} out of range")
    if G.n >= MAX_VERTICES:
        raise CapacityError("cannot duplicate a vertex of a 64-vertex graph")
    u = G.n
    nbrs = G.adj[v]
    rows = [row | (1 << u) if nbrs >> w & 1 else row for w, row in enumerate(G.adj)]
    rows.append(nbrs)
    return Graph(G.n + 1, tuple(rows))


def add_vertex(G: Graph, nbrs: int) -> Graph:
    """Append a vertex adjacent to the vertex mask ``nbrs``."""
    if G.n >= MAX_VERTICES:
        raise CapacityError("cannot grow a 64-vertex graph")
    u = G.n
    rows = [row | (1 << u) if nbrs >> w & 1 else row for w, row in enumerate(G.adj)]
    rows.append(nbrs)
    return Graph._raw(G.n + 1, tuple(rows))


def delete_vertex(G: Graph, v: int) -> Graph:
    return restriction(G, G.vertex_mask & ~(1 << v))


def disjoint_union(G: Graph, H: Graph) -> Graph:
    shift = G.n
    return Graph.from_edges(G.n + H.n, G.edges() + [(u + shift, v + shift) for u, v in H.edges()])


# ---------------------------------------------------------------------------
# canonical labelling

def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    Cells split by the vector of neighbour counts into every current cell;
    sub-cells are ordered by that vector, so the result is label-invariant.
    """
    while True:
        masks = [mask_of(c) for c in cells]
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = adj[v]
                groups.setdefault(tuple((row & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                out.extend(groups[key] for key in sorted(groups))
        cells = out
        if not split:
            return cells


def _twin_representatives(adj: tuple[int, ...], cell: list[int]) -> list[int]:
    # u, w are twins iff swapping them is an automorphism: N(u)-w == N(w)-u
    reps: list[int] = []
    for v in cell:
        for r in reps:
            if adj[v] & ~(1 << r) == adj[r] & ~(1 << v):
                break
        else:
            reps.append(v)
    return reps


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        r = 0
        for u in bits(adj[v]):
            r |= 1 << pos[u]
        rows.append(r)
    return tuple(rows)


def _initial_cells(G: Graph) -> list[list[int]]:
    return [list(range(G.n))] if G.n else []


@lru_cache(maxsize=1 << 16)
def _canonical(n: int, adj: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    best_code: tuple[int, ...] | None = None
    best_order: list[int] = []

    def search(cells: list[list[int]]) -> None:
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        target = -1
        for i, c in enumerate(cells):
            if len(c) > 1 and (target < 0 or len(c) < len(cells[target])):
                target = i
        if target < 0:
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            if best_code is None or code < best_code:
                best_code, best_order = code, order
            return
        cell = cells[target]
        for v in _twin_representatives(adj, cell):
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if n == 0:
        return (), ()
    search([list(range(n))])
    return best_code, tuple(best_order)


def canonical_labeling(G: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(C, order)`` with ``C == G.relabel(order)`` the canonical form."""
    code, order = _canonical(G.n, G.adj)
    return Graph._raw(G.n, code), order


def canonical_form(G: Graph) -> Graph:
    """Isomorphism-invariant representative of ``G``.

    Colour refinement followed by individualisation backtracking; among the
    discrete leaves the relabelling with the lexicographically smallest row
    tuple wins. Twin vertices (whose transposition is an automorphism) are
    branched on once.
    """
    return Graph._raw(G.n, _canonical(G.n, G.adj)[0])


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.num_edges == H.num_edges and canonical_form(G) == canonical_form(H)


# ---------------------------------------------------------------------------
# subgraph containment

def _pattern_order(F: Graph) -> list[int]:
    # highest degree first, then greedily the vertex with most already-placed neighbours
    remaining = set(range(F.n))
    order: list[int] = []
    placed = 0
    while remaining:
        v = max(remaining, key=lambda w: ((F.adj[w] & placed).bit_count(), F.degree(w), -w))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def iter_embeddings(F: Graph, G: Graph, induced: bool = False) -> Iterator[tuple[int, ...]]:
    """Yield every injective map ``phi`` (``phi[i]`` = image of pattern vertex
    ``i``) sending edges of ``F`` to edges of ``G``; in induced mode non-edges
    must also go to non-edges."""
    if F.n > G.n:
        return
    if F.n == 0:
        yield ()
        return
    order = _pattern_order(F)
    host_deg = G.degrees()
    pat_deg = F.degrees()
    # for each step, the earlier pattern vertices adjacent / non-adjacent to it
    prev_adj = []
    prev_non = []
    for idx, v in enumerate(order):
        earlier = order[:idx]
        prev_adj.append([w for w in earlier if F.has_edge(v, w)])
        prev_non.append([w for w in earlier if not F.has_edge(v, w)])
    eligible = []
    for v in order:
        m = 0
        for x in range(G.n):
            if host_deg[x] >= pat_deg[v]:
                m |= 1 << x
        eligible.append(m)
    phi = [-1] * F.n
    k = F.n

    def extend(idx: int, used: int) -> Iterator[None]:
        if idx == k:
            yield None
            return
        v = order[idx]
        cand = eligible[idx] & ~used
        for w in prev_adj[idx]:
            cand &= G.adj[phi[w]]
        if induced:
            for w in prev_non[idx]:
                cand &= ~G.adj[phi[w]]
        for x in bits(cand):
            phi[v] = x
            yield from extend(idx + 1, used | (1 << x))
        phi[v] = -1

    for _ in extend(0, 0):
        yield tuple(phi)


def contains_subgraph(F: Graph, G: Graph, induced: bool = False) -> tuple[int, ...] | None:
    """A witness embedding of ``F`` into ``G`` or ``None``."""
    return next(iter_embeddings(F, G, induced), None)


def count_embeddings(F: Graph, G: Graph, induced: bool = False) -> int:
    return sum(1 for _ in iter_embeddings(F, G, induced))


def automorphism_count(G: Graph) -> int:
    if G.n == 0:
        return 1
    return count_embeddings(G, G, induced=True)


def count_copies(H: Graph, G: Graph) -> int:
    """Number of (not necessarily induced) subgraphs of ``G`` isomorphic to ``H``."""
    emb = count_embeddings(H, G)
    aut = automorphism_count(H)
    if emb % aut:
        raise AssertionError("embedding count not divisible by |Aut(H)|")
    return emb // aut


def clique_count(G: Graph, t: int) -> int:
    """Number of ``t``-cliques, by extension in increasing vertex order."""
    if t < 0:
        raise DomainError("clique size must be nonnegative")
    if t == 0:
        return 1

    def rec(cand: int, need: int) -> int:
        if need == 0:
            return 1
        if cand.bit_count() < need:
            return 0
        total = 0
        for v in bits(cand):
            total += rec(cand & G.adj[v] & ~((2 << v) - 1), need - 1)
        return total

    return rec(G.vertex_mask, t)


def max_clique(G: Graph) -> list[int]:
    """Vertices of one maximum clique (branch and bound on candidate masks)."""
    best = 0
    best_mask = 0

    def rec(chosen: int, cand: int) -> None:
        nonlocal best, best_mask
        size = chosen.bit_count()
        if size > best:
            best, best_mask = size, chosen
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            rec(chosen | 1 << v, cand & G.adj[v])

    rec(0, G.vertex_mask)
    return list(bits(best_mask))


def clique_number(G: Graph) -> int:
    return len(max_clique(G))
