"""Named extremal graphs: complete multipartite graphs, Turán graphs and their variants.

Vertices are grouped consecutively by part, smallest parts first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, DomainError, ParseError
from .graph import MAX_VERTICES, Graph, add_edge, from_graph6


@dataclass(frozen=True)
class MultipartiteSpec:
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise DomainError("a multipartite spec needs at least one part")
        if any(p < 1 for p in self.parts):
            raise DomainError("part sizes must be positive")
        if sum(self.parts) > MAX_VERTICES:
            raise CapacityError(f"{sum(self.parts)} vertices exceed the cap of {MAX_VERTICES}")

    @property
    def n(self) -> int:
        return sum(self.parts)


def _multipartite(parts) -> Graph:
    n = sum(parts)
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceed the cap of {MAX_VERTICES}")
    full = (1 << n) - 1
    rows = []
    start = 0
    for p in parts:
        block = ((1 << p) - 1) << start
        rows.extend([full & ~block] * p)
        start += p
    return Graph(n, tuple(rows))


def complete_multipartite(spec: MultipartiteSpec | list[int] | tuple[int, ...]) -> Graph:
    """Complete multipartite graph; parts are laid out in the order given."""
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(tuple(spec))
    return _multipartite(spec.parts)


def turan_parts(n: int, k: int) -> list[int]:
    if k <= 0:
        raise DomainError("number of parts must be positive")
    if n < 0:
        raise DomainError("vertex count must be nonnegative")
    q, r = divmod(n, k)
    sizes = [q] * (k - r) + [q + 1] * r
    return [s for s in sizes if s > 0]


def turan(n: int, k: int) -> Graph:
    """T(n, k): complete k-partite graph on n vertices with near-equal parts."""
    parts = turan_parts(n, k)
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceed the cap of {MAX_VERTICES}")
    return _multipartite(parts) if parts else Graph.empty(0)


def turan_edges(n: int, k: int) -> int:
    return n * (n - 1) // 2 - sum(s * (s - 1) // 2 for s in turan_parts(n, k))


def balanced_blowup(k: int, n: int) -> Graph:
    """K_k(n) = T(nk, k)."""
    if n < 1:
        raise DomainError("part size must be positive")
    return turan(n * k, k)


def turan_with_dominating(n: int, k1: int, t: int) -> Graph:
    """T(n, k1, t): T(n - t, k1) with t universal vertices on top.

    The universal vertices get the highest labels.
    """
    if k1 < 1:
        raise DomainError("number of parts must be positive")
    if not 0 <= t < n:
        raise DomainError(f"need 0 <= t < n, got t={t}, n={n}")
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceed the cap of {MAX_VERTICES}")
    base = turan(n - t, k1)
    full = (1 << n) - 1
    top = full & ~((1 << (n - t)) - 1)
    rows = [row | top for row in base.adj]
    rows.extend(full & ~(1 << v) for v in range(n - t, n))
    return Graph(n, tuple(rows))


def turan_plus(n: int, k1: int) -> Graph:
    """T^+(n, k1): T(n, k1) plus the edge 0-1 inside the first (smallest) part."""
    parts = turan_parts(n, k1)
    if not parts or parts[0] < 2 or len(parts) < k1:
        raise DomainError(f"T({n},{k1}) has a part of size < 2")
    return add_edge(turan(n, k1), (0, 1))


def _ints(body: str, token: str) -> list[int]:
    try:
        return [int(x) for x in body.split(",")]
    except ValueError:
        raise ParseError(f"bad integer list in {token!r}") from None


def parse_graph(token: str) -> Graph:
    """Resolve a CLI graph token: a construction or a graph6 string.

    Constructions: ``turan:n,k``, ``kpartite:a,b,...``, ``turan+:n,k``,
    ``turan_dom:n,k,t``, ``blowup:k,n``, plus ``K:n``, ``C:n``, ``P:n``,
    ``star:n``, ``empty:n`` and ``petersen``.
    """
    token = token.strip()
    if token == "petersen":
        return Graph.petersen()
    name, sep, body = token.partition(":")
    if not sep or name not in _BUILDERS:
        return from_graph6(token)
    args = _ints(body, token)
    build, arity = _BUILDERS[name]
    if arity is not None and len(args) != arity:
        raise ParseError(f"{name} takes {arity} integer arguments, got {len(args)} in {token!r}")
    return build(*args)


_BUILDERS = {
    "turan": (turan, 2),
    "kpartite": (lambda *parts: complete_multipartite(list(parts)), None),
    "turan+": (turan_plus, 2),
    "turan_dom": (turan_with_dominating, 3),
    "blowup": (balanced_blowup, 2),
    "K": (Graph.complete, 1),
    "C": (Graph.cycle, 1),
    "P": (Graph.path, 1),
    "star": (Graph.star, 1),
    "empty": (Graph.empty, 1),
}
