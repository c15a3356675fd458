"""Exact chromatic number, the smallest-colour-class invariant sigma, and colour-critical edges."""

from __future__ import annotations

from .errors import DomainError, SizeError
from .graph import Graph, bits, clique_number, remove_edge

CHI_MAX_VERTICES = 16
SIGMA_MAX_VERTICES = 12


def _dsatur_order(G: Graph) -> list[int]:
    # static order: repeatedly take the vertex with most placed neighbours, then degree
    order: list[int] = []
    placed = 0
    left = set(range(G.n))
    while left:
        v = max(left, key=lambda w: ((G.adj[w] & placed).bit_count(), G.degree(w), -w))
        order.append(v)
        placed |= 1 << v
        left.remove(v)
    return order


def _greedy_colors(G: Graph, order: list[int]) -> int:
    color: dict[int, int] = {}
    for v in order:
        taken = {color[u] for u in bits(G.adj[v]) if u in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return max(color.values(), default=-1) + 1


def find_coloring(G: Graph, k: int) -> list[int] | None:
    """A proper colouring ``col[v] in range(k)`` or ``None``.

    Colours are introduced in first-use order so permuted solutions are skipped.
    """
    order = _dsatur_order(G)
    col = [-1] * G.n
    class_mask = [0] * k

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        nb = G.adj[v]
        for c in range(min(used + 1, k)):
            if class_mask[c] & nb:
                continue
            col[v] = c
            class_mask[c] |= 1 << v
            if rec(i + 1, max(used, c + 1)):
                return True
            class_mask[c] &= ~(1 << v)
        col[v] = -1
        return False

    return list(col) if rec(0, 0) else None


def chromatic_number(G: Graph) -> int:
    """Exact chromatic number (0 for the empty vertex set)."""
    if G.n > CHI_MAX_VERTICES:
        raise SizeError(f"exact chromatic number is limited to {CHI_MAX_VERTICES} vertices")
    if G.n == 0:
        return 0
    if G.num_edges == 0:
        return 1
    lo = clique_number(G)
    hi = _greedy_colors(G, _dsatur_order(G))
    for k in range(lo, hi):
        if find_coloring(G, k) is not None:
            return k
    return hi


def _sigma_search(F: Graph, k: int) -> tuple[int, list[int]]:
    n = F.n
    order = _dsatur_order(F)
    col = [-1] * n
    sizes = [0] * k
    class_mask = [0] * k
    best = n + 1
    best_col: list[int] = []

    def rec(i: int, opened: int) -> None:
        nonlocal best, best_col
        left = n - i
        if k - opened > left:
            return
        # every class is already at least as large as the incumbent: nothing to gain
        if opened == k and min(sizes) >= best:
            return
        if i == n:
            m = min(sizes)
            if m < best:
                best, best_col = m, list(col)
            return
        v = order[i]
        nb = F.adj[v]
        for c in range(min(opened + 1, k)):
            if class_mask[c] & nb:
                continue
            col[v] = c
            sizes[c] += 1
            class_mask[c] |= 1 << v
            rec(i + 1, max(opened, c + 1))
            class_mask[c] &= ~(1 << v)
            sizes[c] -= 1
        col[v] = -1

    rec(0, 0)
    return best, best_col


def sigma(F: Graph, witness: bool = False):
    """Smallest colour class over all proper chi(F)-colourings of ``F``.

    With ``witness=True`` returns ``(sigma, colouring)``.
    """
    if F.n == 0:
        raise DomainError("sigma needs at least one vertex")
    if F.n > SIGMA_MAX_VERTICES:
        raise SizeError(f"sigma is limited to {SIGMA_MAX_VERTICES} vertices")
    k = chromatic_number(F)
    value, col = _sigma_search(F, k)
    return (value, col) if witness else value


def sigma_family(Fs: list[Graph]) -> int:
    if not Fs:
        raise DomainError("sigma of an empty family is undefined")
    chis = [chromatic_number(F) for F in Fs]
    k = min(chis)
    return min(sigma(F) for F, c in zip(Fs, chis) if c == k)


def color_critical_edge(F: Graph) -> tuple[int, int] | None:
    """First edge (lexicographic) whose deletion lowers the chromatic number."""
    chi = chromatic_number(F)
    for e in F.edges():
        if chromatic_number(remove_edge(F, e)) == chi - 1:
            return e
    return None


def color_classes(col: list[int]) -> list[list[int]]:
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(col):
        classes.setdefault(c, []).append(v)
    return [classes[c] for c in sorted(classes)]
