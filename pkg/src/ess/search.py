"""Exhaustive searches over small graphs.

Isomorph-free enumeration by canonical augmentation, exact extremal values
over a partition's allowed family, finite-evidence intervals for the abstract
chromatic number, and the verification routines built on them.
"""

from __future__ import annotations

import math
import multiprocessing as mp
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .coloring import chromatic_number, color_classes, sigma
from .constructions import MultipartiteSpec, complete_multipartite, turan, turan_plus
from .errors import DomainError, InvariantError, SizeError
from .graph import (Graph, add_vertex, automorphism_count, bits, canonical_form, count_copies,
                    delete_vertex, from_graph6, to_graph6)
from .parameters import ParameterSpec, evaluate
from .structures import PartitionOracle, _color_matrix, _edge, has_rainbow_copy

ENUMERATION_MAX_N = 10
FLOAT_TIE = 1e-9

# ---------------------------------------------------------------------------
# process fan-out
#
# Workers are forked, so the task context (oracles, predicates, closures) is
# inherited through this global instead of being pickled. Results come back in
# submission order, which keeps every report independent of the worker count.

_CONTEXT: dict = {}


def _parallel_map(fn: Callable, items: list, workers: int, **context) -> list:
    _CONTEXT.clear()
    _CONTEXT.update(context)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    ctx = mp.get_context("fork")
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# ---------------------------------------------------------------------------
# enumeration

def _vertex_invariant(G: Graph, deg: list[int], w: int) -> tuple:
    return deg[w], sorted(deg[u] for u in bits(G.adj[w]))


def is_canonical_extension(G: Graph, v: int) -> bool:
    """Whether ``v`` is the vertex canonical augmentation would delete from ``G``.

    The deletion vertex maximises (degree, sorted neighbour degrees, canonical
    form of G - w). Ties in the last component share a parent class, so the
    per-parent duplicate check resolves them.
    """
    deg = G.degrees()
    inv = [_vertex_invariant(G, deg, w) for w in range(G.n)]
    mine = inv[v]
    ties = []
    for w, x in enumerate(inv):
        if x > mine:
            return False
        if x == mine and w != v:
            ties.append(w)
    if not ties:
        return True
    key = canonical_form(delete_vertex(G, v)).adj
    return all(canonical_form(delete_vertex(G, w)).adj <= key for w in ties)


def _children(P: Graph) -> tuple[list[Graph], int]:
    prune = _CONTEXT.get("prune")
    seen: set[tuple[int, ...]] = set()
    out: list[Graph] = []
    rejected = 0
    v = P.n
    for S in range(1 << P.n):
        G = add_vertex(P, S)
        if not is_canonical_extension(G, v):
            continue
        C = canonical_form(G)
        if C.adj in seen:
            continue
        seen.add(C.adj)
        if prune is not None and not prune(C):
            rejected += 1
            continue
        out.append(C)
    return out, rejected


@dataclass
class EnumerationStats:
    classes: int = 0
    pruned: int = 0
    per_level: list[int] = field(default_factory=list)


_LEVEL_CACHE: dict[tuple[str, int], tuple[list[Graph], int]] = {}


def enumerate_graphs(n: int, prune: Callable[[Graph], bool] | None = None, workers: int = 1,
                     stats: EnumerationStats | None = None, cache_key: str | None = None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of ``n``-vertex graphs
    satisfying ``prune``.

    Children of each (n-1)-vertex representative are kept iff the new vertex is
    the canonical deletion vertex, after which duplicates among siblings are
    dropped. ``prune`` must hold on every induced subgraph of a graph it accepts
    (true for monotone and hereditary families), otherwise classes are lost.
    ``cache_key`` names the predicate so finished levels can be reused.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n > ENUMERATION_MAX_N:
        raise SizeError(f"internal enumeration is limited to n <= {ENUMERATION_MAX_N}; supply a graph6 stream")
    stats = stats if stats is not None else EnumerationStats()
    level = [Graph.empty(0)]
    if prune is not None and not prune(level[0]):
        level = []
    stats.per_level = [len(level)]
    for m in range(1, n + 1):
        key = (cache_key, m) if cache_key is not None else None
        if key is not None and key in _LEVEL_CACHE:
            level, rejected = _LEVEL_CACHE[key]
        else:
            results = _parallel_map(_children, level, workers, prune=prune)
            level = [C for kids, _ in results for C in kids]
            rejected = sum(r for _, r in results)
            if key is not None:
                _LEVEL_CACHE[key] = (level, rejected)
        stats.pruned += rejected
        stats.per_level.append(len(level))
    stats.classes = len(level)
    return iter(level)


def _unique_classes(graphs: Iterable[Graph], n: int) -> list[Graph]:
    seen: dict[tuple[int, ...], Graph] = {}
    for G in graphs:
        if G.n == n:
            C = canonical_form(G)
            seen.setdefault(C.adj, C)
    return list(seen.values())


def load_graph_stream(path: str) -> list[Graph]:
    with open(path) as fh:
        return [from_graph6(line.strip()) for line in fh if line.strip()]


# ---------------------------------------------------------------------------
# extremal values

def json_number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


@dataclass
class ExtremalReport:
    n: int
    oracle: str
    spec: str
    value: object
    witnesses: list[str]
    classes_searched: int
    pruned: int
    wall_ms: float = 0.0
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n, "oracle": self.oracle, "spec": self.spec, "value": json_number(self.value),
            "witnesses": self.witnesses, "classes_searched": self.classes_searched,
            "pruned": self.pruned, "wall_ms": self.wall_ms, "seed": self.seed,
        }


def _close(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(float(a) - float(b)) <= FLOAT_TIE * max(1.0, abs(float(b)))


def _member_task(G: Graph) -> bool:
    return _CONTEXT["oracle"].membership(G) is not None


def _eval_task(G: Graph):
    return evaluate(_CONTEXT["spec"], G)


def extremal(n: int, oracle: PartitionOracle, spec: ParameterSpec, workers: int = 1,
             graphs: Iterable[Graph] | None = None, seed: int = 0) -> ExtremalReport:
    """Maximum of ``spec`` over ``n``-vertex members of the oracle's family, with
    every maximiser up to isomorphism (canonical graph6, sorted)."""
    t0 = time.perf_counter()
    stats = EnumerationStats()
    if graphs is not None:
        pool = _unique_classes(graphs, n)
        flags = _parallel_map(_member_task, pool, workers, oracle=oracle)
        members = [G for G, ok in zip(pool, flags) if ok]
        stats.pruned = len(pool) - len(members)
    elif oracle.monotone:
        members = list(enumerate_graphs(n, prune=oracle.__contains__, workers=workers, stats=stats,
                                        cache_key=oracle.description))
    else:
        pool = list(enumerate_graphs(n, workers=workers, cache_key="all"))
        flags = _parallel_map(_member_task, pool, workers, oracle=oracle)
        members = [G for G, ok in zip(pool, flags) if ok]
        stats.pruned = len(pool) - len(members)
    if not members:
        raise DomainError(f"no {n}-vertex graph belongs to {oracle.description}")
    values = _parallel_map(_eval_task, members, workers, spec=spec)
    exact = spec.is_exact
    best = max(values)
    witnesses = sorted(to_graph6(G) for G, v in zip(members, values) if _close(v, best, exact))
    report = ExtremalReport(n, oracle.description, str(spec), best, witnesses, len(members), stats.pruned,
                            wall_ms=round((time.perf_counter() - t0) * 1000, 3), seed=seed)
    _validate_report(report, oracle, spec)
    return report


def _validate_report(report: ExtremalReport, oracle: PartitionOracle, spec: ParameterSpec) -> None:
    for g6 in report.witnesses:
        W = from_graph6(g6)
        if oracle.membership(W) is None:
            raise InvariantError(f"witness {g6} is not in {oracle.description}")
        if not _close(evaluate(spec, W), report.value, spec.is_exact):
            raise InvariantError(f"witness {g6} does not attain {report.value}")


# ---------------------------------------------------------------------------
# abstract chromatic number

def partitions_into(total: int, parts: int, lo: int = 1, hi: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples of ``parts`` integers in [lo, hi] summing to ``total``."""
    hi = total if hi is None else hi
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, min(hi, total // parts) + 1):
        for rest in partitions_into(total - first, parts - 1, first, hi):
            yield (first,) + rest


@dataclass
class ChiInterval:
    k_lo: int | None  # None: every tested complete multipartite graph was allowed
    k_hi: int | None  # None: no Turán graph was rejected within budget
    lower_witnesses: list[list[int]]
    upper_witness: dict | None
    n_max: int
    m_max: int
    unknown: list[str] = field(default_factory=list)

    def contains(self, k: int) -> bool:
        lo = self.k_lo if self.k_lo is not None else math.inf
        hi = self.k_hi if self.k_hi is not None else math.inf
        return lo <= k <= hi

    def to_dict(self) -> dict:
        return {
            "k_lo": self.k_lo if self.k_lo is not None else "inf",
            "k_hi": self.k_hi if self.k_hi is not None else "inf",
            "lower_witnesses": self.lower_witnesses,
            "upper_witness": self.upper_witness,
            "n_max": self.n_max, "m_max": self.m_max, "unknown": self.unknown,
            "evidence_only": True,
        }


def _spec_member_task(parts: tuple[int, ...]):
    try:
        return _CONTEXT["oracle"].membership(complete_multipartite(list(parts)) if parts else Graph.empty(0)) is not None
    except SizeError:
        return None


def _turan_member_task(mk: tuple[int, int]):
    m, k = mk
    try:
        return _CONTEXT["oracle"].membership(turan(m, k)) is not None
    except SizeError:
        return None


def abstract_chi(oracle: PartitionOracle, n_max: int, m_max: int, workers: int = 1) -> ChiInterval:
    """Finite-evidence interval for the abstract chromatic number.

    Lower end: the largest k such that every complete (k-1)-partite graph on at
    most ``n_max`` vertices is allowed. Upper end: the smallest k such that some
    Turán graph T(m, k) with parts of size at most ``m_max`` (m <= k*m_max) is
    rejected. Either end is ``None`` (infinite) when the budget shows no limit.
    """
    if n_max < 1 or m_max < 1:
        raise DomainError("n_max and m_max must be positive")
    unknown: list[str] = []
    k_lo: int | None = 1
    lower: list[list[int]] = []
    for j in range(1, n_max + 1):
        specs = [p for total in range(j, n_max + 1) for p in partitions_into(total, j)]
        flags = _parallel_map(_spec_member_task, specs, workers, oracle=oracle)
        if all(f is True for f in flags):
            k_lo = j + 1
            lower = [list(specs[-1])]
            continue
        unknown += [f"kpartite:{','.join(map(str, p))}" for p, f in zip(specs, flags) if f is None]
        break
    else:
        k_lo = None

    k_hi: int | None = None
    upper = None
    k_cap = max(n_max, m_max) + 1
    for k in range(1, k_cap + 1):
        cases = [(m, k) for m in range(k, min(64, k * m_max) + 1)]
        flags = _parallel_map(_turan_member_task, cases, workers, oracle=oracle)
        unknown += [f"turan:{m},{kk}" for (m, kk), f in zip(cases, flags) if f is None]
        bad = [mk for mk, f in zip(cases, flags) if f is False]
        if bad:
            m, _ = bad[0]
            k_hi = k
            upper = {"m": m, "k": k, "graph": to_graph6(turan(m, k))}
            break
    return ChiInterval(k_lo, k_hi, lower, upper, n_max, m_max, unknown)


def sigma_partition(oracle: PartitionOracle, k: int, part_cap: int) -> dict:
    """Smallest part size over rejected complete k-partite graphs with parts <= part_cap."""
    if k < 2:
        raise DomainError("k must be at least 2")
    for s in range(1, part_cap + 1):
        for rest in _nondecreasing(k - 1, s, part_cap):
            parts = (s,) + rest
            if sum(parts) > 64:
                continue
            if oracle.membership(complete_multipartite(list(parts))) is None:
                return {"value": s, "witness": list(parts), "part_cap": part_cap, "budget_limited": True}
    return {"value": None, "label": f"> {part_cap}", "witness": None, "part_cap": part_cap,
            "budget_limited": True}


def _nondecreasing(count: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    if count == 0:
        yield ()
        return
    for first in range(lo, hi + 1):
        for rest in _nondecreasing(count - 1, first, hi):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# supersaturation, stability, edge-criticality

def all_graphs(n: int, workers: int = 1, graphs: Iterable[Graph] | None = None) -> list[Graph]:
    if graphs is not None:
        return _unique_classes(graphs, n)
    return list(enumerate_graphs(n, workers=workers, cache_key="all"))


def supersaturation_min(n: int, F: Graph, value, spec: ParameterSpec, workers: int = 1,
                        graphs: Iterable[Graph] | None = None) -> dict:
    """Fewest copies of ``F`` among ``n``-vertex graphs with ``spec >= value``."""
    best = None
    witness = None
    feasible = 0
    for G in all_graphs(n, workers, graphs):
        if evaluate(spec, G) < value:
            continue
        feasible += 1
        c = count_copies(F, G)
        if best is None or c < best:
            best, witness = c, G
    return {"n": n, "F": to_graph6(F), "spec": str(spec), "threshold": json_number(value),
            "value": best, "witness": to_graph6(witness) if witness is not None else None,
            "feasible_classes": feasible}


def stability_distance(G: Graph, k1: int) -> tuple[int, MultipartiteSpec, list[int]]:
    """Fewest edge edits turning ``G`` into a complete multipartite graph with at
    most ``k1`` parts. Returns ``(distance, part sizes, block of each vertex)``."""
    if G.n > 12:
        raise SizeError("stability distance is limited to 12 vertices")
    if k1 < 1:
        raise DomainError("k1 must be positive")
    n = G.n
    if n == 0:
        return 0, None, []
    block = [-1] * n
    members = [0] * k1
    best = math.inf
    best_block: list[int] = []

    def rec(v: int, opened: int, cost: int) -> None:
        nonlocal best, best_block
        if cost >= best:
            return
        if v == n:
            best, best_block = cost, list(block)
            return
        row = G.adj[v]
        assigned = (1 << v) - 1
        for b in range(min(opened + 1, k1)):
            inside = members[b]
            # edges inside the block must go, missing edges across blocks must come
            add = (row & inside).bit_count() + (assigned & ~inside & ~row).bit_count()
            block[v] = b
            members[b] |= 1 << v
            rec(v + 1, max(opened, b + 1), cost + add)
            members[b] &= ~(1 << v)
        block[v] = -1

    rec(0, 0, 0)
    sizes = sorted(best_block.count(b) for b in set(best_block))
    return best, MultipartiteSpec(tuple(sizes)), best_block


def edge_critical_check(oracle: PartitionOracle, k: int, n_range: Iterable[int],
                        chi_nmax: int | None = None, chi_mmax: int = 6, workers: int = 1) -> dict:
    """Whether T+(n, k-1) is rejected for every n in range, with the abstract
    chromatic number interval checked to contain k."""
    ns = list(n_range)
    rows = []
    ok = True
    for n in ns:
        try:
            T = turan_plus(n, k - 1)
        except DomainError as exc:
            rows.append({"n": n, "status": "undefined", "detail": str(exc)})
            ok = False
            continue
        try:
            member = oracle.membership(T) is not None
        except SizeError as exc:
            rows.append({"n": n, "status": "unknown", "detail": str(exc)})
            ok = False
            continue
        rows.append({"n": n, "graph": to_graph6(T), "status": "allowed" if member else "rejected"})
        ok &= not member
    interval = abstract_chi(oracle, chi_nmax or max(ns), chi_mmax, workers=workers)
    consistent = interval.contains(k)
    return {"k": k, "edge_critical": bool(ok and consistent), "turan_plus": rows,
            "chi_interval": interval.to_dict(), "chi_consistent": consistent}


# ---------------------------------------------------------------------------
# rainbow lemma

def random_proper_coloring(G: Graph, rng: random.Random, max_tries: int = 100) -> dict:
    """Random proper edge colouring: shuffled greedy with random admissible
    colours, restarted on a dead end; after ``max_tries`` the 2*Delta-1 palette
    (which cannot dead-end) is used."""
    edges = G.edges()
    delta = max(G.degrees(), default=0)
    for attempt in range(max_tries + 1):
        palette = 2 * delta - 1 if attempt == max_tries else delta + rng.randrange(max(1, delta))
        order = edges[:]
        rng.shuffle(order)
        at: dict[int, set[int]] = {v: set() for v in range(G.n)}
        col = {}
        for u, v in order:
            free = [c for c in range(palette) if c not in at[u] and c not in at[v]]
            if not free:
                break
            c = rng.choice(free)
            col[(u, v)] = c
            at[u].add(c)
            at[v].add(c)
        else:
            return col
    raise InvariantError("greedy colouring with 2*Delta-1 colours cannot fail")


def greedy_rainbow_embedding(F: Graph, classes: list[list[int]], parts: list[list[int]],
                             M: list[list[int]], rng: random.Random | None = None) -> dict[int, int] | None:
    """Class-by-class greedy embedding of ``F`` into the host parts.

    Colour class i of ``F`` goes into host part i. Before placing a class, every
    host vertex joined to some already placed vertex by an edge of an already
    used colour is discarded; the class then takes the remaining vertices in
    order (shuffled when ``rng`` is given). Returns the map when the image is
    rainbow, else ``None``.
    """
    phi: dict[int, int] = {}
    used: set[int] = set()
    for Y, X in zip(classes, parts):
        X = list(X)
        if rng is not None:
            rng.shuffle(X)
        placed = list(phi.values())
        allowed = [x for x in X if not any(M[u][x] in used for u in placed)]
        if len(allowed) < len(Y):
            return None
        phi.update(zip(Y, allowed))
        for y in Y:
            used.update(M[phi[y]][phi[w]] for w in F.neighbors(y) if w in phi and w not in Y)
    image = [M[phi[a]][phi[b]] for a, b in F.edges()]
    return phi if len(set(image)) == len(image) else None


def verify_rainbow_lemma(F: Graph, n: int, samples: int = 100, seed: int = 0, attempts: int = 50) -> dict:
    """Sample proper edge colourings of K_{t,n,...,n} (k parts, k = chi(F),
    t = sigma(F)) and look for a rainbow F both greedily and exhaustively.

    The greedy's free choices are re-drawn up to ``attempts`` times per
    colouring; ``greedy_first_try`` counts colourings solved by the first,
    unshuffled pass.
    """
    k = chromatic_number(F)
    t, col = sigma(F, witness=True)
    classes = sorted(color_classes(col), key=len)
    sizes = [t] + [n] * (k - 1)
    if sum(sizes) > 64:
        raise SizeError("host exceeds 64 vertices")
    if any(len(Y) > s for Y, s in zip(classes, sizes)):
        raise DomainError(f"parts of size {n} cannot host the colour classes of F")
    H = complete_multipartite(sizes)
    starts = [sum(sizes[:i]) for i in range(k)]
    parts = [list(range(s, s + z)) for s, z in zip(starts, sizes)]
    rng = random.Random(seed)
    choice_rng = random.Random(seed + 1)
    found = greedy_found = first_try = agree = 0
    failures = []
    for i in range(samples):
        colors = random_proper_coloring(H, rng)
        M = _color_matrix(H.n, colors)
        full = has_rainbow_copy(H, colors, F)
        greedy = greedy_rainbow_embedding(F, classes, parts, M)
        first_try += greedy is not None
        for _ in range(attempts - 1):
            if greedy is not None:
                break
            greedy = greedy_rainbow_embedding(F, classes, parts, M, choice_rng)
        if greedy is not None:
            image = [_edge(greedy[a], greedy[b]) for a, b in F.edges()]
            if len({colors[e] for e in image}) != len(image):
                raise InvariantError("greedy embedding is not rainbow")
        found += full is not None
        greedy_found += greedy is not None
        agree += (full is not None) == (greedy is not None)
        if full is None or greedy is None:
            failures.append(i)
    return {"F": to_graph6(F), "k": k, "t": t, "n": n, "host": to_graph6(H), "samples": samples,
            "seed": seed, "attempts": attempts, "rainbow_found": found, "greedy_found": greedy_found,
            "greedy_first_try": first_try, "agreement": agree, "failed_samples": failures}


# ---------------------------------------------------------------------------
# counting labelled F-free graphs

def count_labeled_free(n: int, F: Graph) -> int:
    """Labelled ``n``-vertex F-free graphs: sum of n!/|Aut(G)| over free classes."""
    if n > 7:
        raise SizeError("labelled counting is limited to n <= 7")
    from .structures import ForbiddenSubgraph
    oracle = ForbiddenSubgraph([F])
    total = 0
    for G in enumerate_graphs(n, prune=oracle.__contains__, cache_key=oracle.description):
        total += math.factorial(n) // automorphism_count(G)
    return total
