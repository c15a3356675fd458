"""Turán-type graph functionals and an empirical balancedness check.

Counting functionals return exact ``int`` / ``Fraction`` values; the spectral
ones are floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Union

import numpy as np

from .constructions import complete_multipartite
from .errors import DomainError, ParseError, SizeError
from .graph import (Graph, add_edge, bits, clique_count, count_copies, duplicate_vertex, max_clique,
                    from_graph6, remove_edge, to_graph6)

Number = Union[int, Fraction, float]

LOCAL_DENSITY_BUDGET = 10**7


# ---------------------------------------------------------------------------
# polynomials for topological indices

@dataclass(frozen=True)
class Polynomial:
    """Bivariate polynomial in ``x``, ``y`` with nonnegative coefficients."""

    terms: tuple[tuple[int, int, Fraction], ...]
    text: str = ""

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        src = text.replace(" ", "").replace("**", "^")
        if not src:
            raise ParseError("empty polynomial")
        acc: dict[tuple[int, int], Fraction] = {}
        for term in src.split("+"):
            if not term:
                raise ParseError(f"empty term in polynomial {text!r}")
            coef, ex, ey = Fraction(1), 0, 0
            for factor in term.split("*"):
                base, _, power = factor.partition("^")
                try:
                    k = int(power) if power else 1
                except ValueError:
                    raise ParseError(f"bad exponent {power!r} in polynomial {text!r}") from None
                if k < 0:
                    raise ParseError(f"negative exponent in polynomial {text!r}")
                if base == "x":
                    ex += k
                elif base == "y":
                    ey += k
                else:
                    try:
                        c = Fraction(base)
                    except (ValueError, ZeroDivisionError):
                        raise ParseError(f"bad factor {factor!r} in polynomial {text!r}") from None
                    if c < 0:
                        raise ParseError("polynomial coefficients must be nonnegative")
                    coef *= c ** k
            acc[ex, ey] = acc.get((ex, ey), Fraction(0)) + coef
        terms = tuple(sorted((i, j, c) for (i, j), c in acc.items() if c))
        return cls(terms, text)

    def __call__(self, x: int, y: int) -> Fraction:
        return sum((c * x**i * y**j for i, j, c in self.terms), Fraction(0))

    def symmetric(self, x: int, y: int) -> Fraction:
        """Value on an unordered pair: mean of f(x, y) and f(y, x)."""
        return (self(x, y) + self(y, x)) / 2


# ---------------------------------------------------------------------------
# parameter specs

KINDS = ("edges", "kt", "count", "degpow", "topo", "spectral", "pspectral", "local", "sum", "scale")


@dataclass(frozen=True)
class ParameterSpec:
    kind: str
    arg: object = None
    children: tuple["ParameterSpec", ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown parameter kind {self.kind!r}")
        if self.kind == "kt" and (not isinstance(self.arg, int) or self.arg < 1):
            raise DomainError("clique size must be a positive integer")
        if self.kind == "count" and (not isinstance(self.arg, Graph) or self.arg.n > 10):
            raise DomainError("subgraph-count pattern must be a graph on at most 10 vertices")
        if self.kind == "degpow" and not self.arg >= 1:
            raise DomainError("degree power must be >= 1")
        if self.kind == "pspectral" and not self.arg >= 1:
            raise DomainError("p must be >= 1")
        if self.kind == "local" and not 0 < self.arg <= 1:
            raise DomainError("local density alpha must lie in (0, 1]")
        if self.kind == "sum" and not self.children:
            raise DomainError("sum needs at least one term")
        if self.kind == "scale" and len(self.children) != 1:
            raise DomainError("scale wraps exactly one spec")

    # convenience constructors
    @classmethod
    def edges(cls):
        return cls("edges")

    @classmethod
    def cliques(cls, t: int):
        return cls("kt", t)

    @classmethod
    def subgraph_count(cls, H: Graph):
        return cls("count", H)

    @classmethod
    def degree_power(cls, r):
        return cls("degpow", _number(r))

    @classmethod
    def topological(cls, poly: str | Polynomial):
        return cls("topo", poly if isinstance(poly, Polynomial) else Polynomial.parse(poly))

    @classmethod
    def spectral(cls):
        return cls("spectral")

    @classmethod
    def p_spectral(cls, p):
        return cls("pspectral", _number(p))

    @classmethod
    def local(cls, alpha):
        return cls("local", _number(alpha))

    @classmethod
    def sum(cls, *specs):
        return cls("sum", None, tuple(specs))

    @classmethod
    def scale(cls, c, spec):
        return cls("scale", _number(c), (spec,))

    @property
    def is_exact(self) -> bool:
        if self.kind in ("spectral", "pspectral"):
            return False
        if self.kind == "degpow":
            return isinstance(self.arg, int) or (isinstance(self.arg, Fraction) and self.arg.denominator == 1)
        return all(c.is_exact for c in self.children)

    def __str__(self) -> str:
        k = self.kind
        if k in ("edges", "spectral"):
            return k
        if k == "kt":
            return f"kt:{self.arg}"
        if k == "count":
            return f"count:{to_graph6(self.arg)}"
        if k == "topo":
            return f"topo:{self.arg.text}"
        if k in ("degpow", "pspectral", "local"):
            return f"{k}:{_fmt(self.arg)}"
        if k == "sum":
            return "sum(" + ",".join(str(c) for c in self.children) + ")"
        return f"scale:{_fmt(self.arg)}({self.children[0]})"


def _number(x) -> Number:
    """Parse a numeric argument, keeping decimals exact as Fractions."""
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, float):
        x = repr(x)
    try:
        f = Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {x!r}") from None
    return int(f) if f.denominator == 1 else f


def _fmt(x: Number) -> str:
    if isinstance(x, Fraction):
        f = float(x)
        return repr(f) if Fraction(repr(f)) == x else str(x)
    return str(x)


def _split_top(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parenthesis in {text!r}", i)
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth:
        raise ParseError(f"unbalanced parenthesis in {text!r}")
    parts.append(text[start:])
    return parts


def parse_param(text: str) -> ParameterSpec:
    """Parse the textual parameter syntax, e.g. ``sum(edges,scale:2(kt:3))``."""
    s = text.strip()
    if s in ("edges", "spectral"):
        return ParameterSpec(s)
    if s.startswith("sum(") and s.endswith(")"):
        return ParameterSpec.sum(*(parse_param(p) for p in _split_top(s[4:-1])))
    if s.startswith("scale:") and s.endswith(")") and "(" in s:
        c, _, inner = s[6:].partition("(")
        return ParameterSpec.scale(c, parse_param(inner[:-1]))
    name, sep, arg = s.partition(":")
    if not sep or not arg:
        raise ParseError(f"unknown parameter spec {text!r}")
    try:
        if name == "kt":
            return ParameterSpec.cliques(int(arg))
        if name == "count":
            return ParameterSpec.subgraph_count(from_graph6(arg))
        if name == "degpow":
            return ParameterSpec.degree_power(arg)
        if name == "topo":
            return ParameterSpec.topological(arg)
        if name == "pspectral":
            return ParameterSpec.p_spectral(arg)
        if name == "local":
            return ParameterSpec.local(arg)
    except DomainError as exc:
        raise ParseError(f"{exc} in {text!r}") from None
    except ValueError:
        raise ParseError(f"bad argument in {text!r}") from None
    raise ParseError(f"unknown parameter spec {text!r}")


# ---------------------------------------------------------------------------
# evaluation

def degree_power_sum(G: Graph, r: Number) -> Number:
    if isinstance(r, Fraction) and r.denominator == 1:
        r = int(r)
    if isinstance(r, int):
        return sum(d**r for d in G.degrees())
    return math.fsum(d ** float(r) for d in G.degrees())


def topological_index(G: Graph, poly: Polynomial) -> Fraction | int:
    deg = G.degrees()
    total = sum((poly.symmetric(deg[u], deg[v]) for u, v in G.edges()), Fraction(0))
    return int(total) if total.denominator == 1 else total


def evaluate(spec: ParameterSpec, G: Graph) -> Number:
    k = spec.kind
    if k == "edges":
        return G.num_edges
    if k == "kt":
        return clique_count(G, spec.arg)
    if k == "count":
        return count_copies(spec.arg, G)
    if k == "degpow":
        return degree_power_sum(G, spec.arg)
    if k == "topo":
        return topological_index(G, spec.arg)
    if k == "spectral":
        return spectral_radius(G)
    if k == "pspectral":
        return p_spectral_radius(G, float(spec.arg))
    if k == "local":
        return local_density(G, spec.arg)
    if k == "sum":
        return _simplify(sum(evaluate(c, G) for c in spec.children))
    value = evaluate(spec.children[0], G)
    c = spec.arg
    if isinstance(value, float):
        return float(c) * value
    return _simplify(c * value)


def _simplify(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    for u, v in G.edges():
        A[u, v] = A[v, u] = 1.0
    return A


def spectral_radius(G: Graph, tol: float = 1e-12, max_iter: int = 1_000_000) -> float:
    """Largest adjacency eigenvalue by power iteration on ``A + I``.

    The unit shift keeps the Perron root dominant for bipartite graphs, whose
    spectrum is symmetric. Stops once the Rayleigh quotient moves by less than
    ``tol`` between iterates.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if G.num_edges == 0:
        return 0.0
    A = adjacency_matrix(G)
    x = np.full(G.n, 1.0 / math.sqrt(G.n))
    rq = float(x @ A @ x)
    for _ in range(max_iter):
        y = A @ x
        y += x
        x = y / np.linalg.norm(y)
        new = float(x @ A @ x)
        if abs(new - rq) < tol:
            return new
        rq = new
    return rq


def _lp_normalize(x: np.ndarray, p: float) -> np.ndarray:
    return x / np.sum(x**p) ** (1.0 / p)


def _ascent(A: np.ndarray, x: np.ndarray, p: float, tol: float, max_iter: int) -> np.ndarray:
    x = _lp_normalize(x, p)
    f = float(x @ A @ x)
    step = 1.0
    for _ in range(max_iter):
        y = x + step * 2.0 * (A @ x)
        np.maximum(y, 0.0, out=y)
        y = _lp_normalize(y, p)
        g = float(y @ A @ y)
        if g > f:
            gain = g - f
            x, f = y, g
            step = min(step * 2.0, 1e6)
            if gain < tol:
                break
        else:
            step /= 2.0
            if step < 1e-14:
                break
    return x


def _polish(A: np.ndarray, x: np.ndarray, p: float, steps: int = 50) -> np.ndarray:
    # Newton on A x = lam x^(p-1), sum x^p = 1 for a strictly positive critical point
    n = len(x)
    lam = float(x @ A @ x)
    for _ in range(steps):
        r = np.concatenate([A @ x - lam * x ** (p - 1), [np.sum(x**p) - 1.0]])
        if np.max(np.abs(r)) < 1e-15:
            break
        J = np.zeros((n + 1, n + 1))
        J[:n, :n] = A - lam * (p - 1) * np.diag(x ** (p - 2))
        J[:n, n] = -(x ** (p - 1))
        J[n, :n] = p * x ** (p - 1)
        try:
            d = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            break
        x = x + d[:n]
        lam += d[n]
        if np.min(x) <= 0:
            break
    return x


def p_spectral_radius(G: Graph, p: float, restarts: int = 8, tol: float = 1e-10,
                      seed: int = 0, max_iter: int = 5_000) -> float:
    """Lower bound on max{2 sum_{uv in E} x_u x_v : ||x||_p = 1}.

    Projected gradient ascent with step doubling/halving over nonnegative
    vectors, from the uniform vector, a maximum clique and ``restarts`` random starts. A strictly
    positive end point is then sharpened by Newton steps on the stationarity
    conditions, kept only if it scores higher. For ``p < 2`` the problem can
    have local maxima, so only the bound is certified.
    """
    if p < 1:
        raise DomainError("p must be >= 1")
    if G.num_edges == 0:
        return 0.0
    A = adjacency_matrix(G)
    p = float(p)
    rng = np.random.default_rng(seed)
    clique = np.zeros(G.n)
    clique[max_clique(G)] = 1.0
    # the clique start is optimal at p = 1, where the maximum sits on a largest clique
    starts = [np.ones(G.n), clique] + [rng.random(G.n) + 1e-3 for _ in range(restarts)]
    best = 0.0
    for x0 in starts:
        x = _ascent(A, x0, p, tol, max_iter)
        best = max(best, float(x @ A @ x))
        if p > 1 and np.min(x) > 1e-9:
            y = _polish(A, x, p)
            if np.min(y) > 0:
                y = _lp_normalize(y, p)
                best = max(best, float(y @ A @ y))
    return best


def local_density_size(n: int, alpha) -> int:
    a = _number(alpha)
    if not 0 < a <= 1:
        raise DomainError("alpha must lie in (0, 1]")
    return math.ceil(a * n)


def local_density(G: Graph, alpha) -> int:
    """Fewest edges spanned by any ceil(alpha*n) vertices."""
    m = local_density_size(G.n, alpha)
    if m == 0:
        raise DomainError("ceil(alpha*n) = 0: no vertex set to measure")
    if math.comb(G.n, m) > LOCAL_DENSITY_BUDGET:
        raise SizeError(f"C({G.n},{m}) subsets exceed the budget of {LOCAL_DENSITY_BUDGET}")
    n = G.n
    order = sorted(range(n), key=lambda v: (G.degree(v), v))
    # greedy incumbent: the m lowest-degree vertices
    chosen = 0
    for v in order[:m]:
        chosen |= 1 << v
    best = sum((G.adj[v] & chosen).bit_count() for v in bits(chosen)) // 2

    def rec(i: int, picked: int, count: int, edges: int) -> None:
        nonlocal best
        if edges >= best:
            return
        if count == m:
            best = edges
            return
        if n - i < m - count:
            return
        v = order[i]
        rec(i + 1, picked | (1 << v), count + 1, edges + (G.adj[v] & picked).bit_count())
        rec(i + 1, picked, count, edges)

    rec(0, 0, 0, 0)
    return best


# ---------------------------------------------------------------------------
# balancedness evidence

@dataclass
class BalanceReport:
    spec: str
    a: float
    k: int
    c: float
    band: float
    sizes: list[int]
    properties: dict[str, dict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(p["passed"] for p in self.properties.values())

    def to_dict(self) -> dict:
        return {
            "spec": self.spec, "a": self.a, "k": self.k, "c": self.c, "band": self.band,
            "sizes": self.sizes, "passed": self.passed, "evidence_only": True,
            "properties": self.properties,
        }


def _random_graph(n: int, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.5])


def _random_parts(n: int, parts: int, minimum: int, rng: random.Random) -> list[int]:
    sizes = [minimum] * parts
    for _ in range(n - minimum * parts):
        sizes[rng.randrange(parts)] += 1
    return sorted(sizes)


def _loglog_slope(xs: list[int], ys: list[float]) -> float | None:
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if y > 0]
    if len(pts) < 2:
        return None
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    den = sum((p[0] - mx) ** 2 for p in pts)
    return sum((p[0] - mx) * (p[1] - my) for p in pts) / den if den else None


def _geomean(vals: list[float]) -> float:
    return math.exp(sum(math.log(v) for v in vals) / len(vals))


def _judge(kind: str, rows: list[dict], sizes: list[int], band: float) -> dict:
    ratios = [r["ratio"] for r in rows]
    per_size = [max((abs(r["ratio"]) for r in rows if r["n"] == n), default=0.0) for n in sizes]
    out = {"bound": kind, "samples": rows, "per_size_max": per_size,
           "fitted_exponent_offset": _loglog_slope(sizes, per_size)}
    if kind == "O":
        positive = [v for v in per_size if v > 0]
        if not positive:
            out.update(reference=0.0, passed=True)
        else:
            ref = _geomean(positive)
            out.update(reference=ref, passed=all(v <= band * ref for v in per_size))
    else:
        if any(r <= 0 for r in ratios):
            out.update(reference=None, passed=False)
        else:
            ref = _geomean(ratios)
            out.update(reference=ref, passed=all(ref / band <= r <= ref * band for r in ratios))
    return out


def check_balanced(spec: ParameterSpec, a: float, k: int, sizes: list[int], c: float | None = None,
                   band: float = 8.0, samples: int = 4, seed: int = 0) -> BalanceReport:
    """Finite-n evidence for the four balancedness properties.

    (a) adding a non-edge to a random graph changes h by O(n^a);
    (b) duplicating a vertex changes h by O(n^(a+1));
    (c) on complete (k-1)-partite graphs with parts >= c*n both increments are
        Theta(n^a) and Theta(n^(a+1));
    (d) deleting x edges from such a graph lowers h by Theta(x*n^a).

    Each ratio is the increment divided by its scale. An O-property passes when
    the per-size maxima stay below ``band`` times their geometric mean; a
    Theta-property passes when every ratio is positive and within a factor
    ``band`` of the geometric mean of all its ratios. This is evidence, not proof.
    """
    sizes = sorted(sizes)
    if len(sizes) < 3:
        raise DomainError("need at least three sizes to assess a trend")
    if k < 2:
        raise DomainError("k must be at least 2")
    if c is None:
        c = 1.0 / (2 * (k - 1))
    c = float(c)
    if not 0 < c <= 1.0 / (k - 1) + 1e-12:
        raise DomainError("need 0 < c <= 1/(k-1)")
    if sizes[-1] >= 64:
        raise DomainError("sizes must leave room for a duplicated vertex (n < 64)")
    rng = random.Random(seed)
    h = lambda G: float(evaluate(spec, G))
    rows: dict[str, list[dict]] = {"a": [], "b": [], "c_edge": [], "c_vertex": [], "d": []}

    for n in sizes:
        for _ in range(samples):
            G = _random_graph(n, rng)
            hG = h(G)
            non = G.non_edges()
            if non:
                e = rng.choice(non)
                inc = h(add_edge(G, e)) - hG
                rows["a"].append({"n": n, "ratio": inc / n**a, "graph": to_graph6(G), "edit": f"add {e[0]}-{e[1]}"})
            if n:
                v = rng.randrange(n)
                inc = h(duplicate_vertex(G, v)) - hG
                rows["b"].append({"n": n, "ratio": inc / n ** (a + 1), "graph": to_graph6(G), "edit": f"duplicate {v}"})

        minimum = max(1, math.ceil(c * n - 1e-9))
        if minimum * (k - 1) > n:
            raise DomainError(f"n={n} cannot host {k - 1} parts of size >= {minimum}")
        for _ in range(samples):
            parts = _random_parts(n, k - 1, minimum, rng)
            T = complete_multipartite(parts)
            hT = h(T)
            starts = [sum(parts[:i]) for i in range(len(parts))]
            big = [i for i, p in enumerate(parts) if p >= 2]
            if big:
                i = rng.choice(big)
                u, w = rng.sample(range(starts[i], starts[i] + parts[i]), 2)
                e = (min(u, w), max(u, w))
                inc = h(add_edge(T, e)) - hT
                rows["c_edge"].append({"n": n, "ratio": inc / n**a, "graph": to_graph6(T),
                                       "parts": parts, "edit": f"add {e[0]}-{e[1]}"})
            v = rng.randrange(n)
            inc = h(duplicate_vertex(T, v)) - hT
            rows["c_vertex"].append({"n": n, "ratio": inc / n ** (a + 1), "graph": to_graph6(T),
                                     "parts": parts, "edit": f"duplicate {v}"})
            edges = T.edges()
            x = rng.randint(1, max(1, min(len(edges), n // 2)))
            removed = rng.sample(edges, x)
            D = T
            for e in removed:
                D = remove_edge(D, e)
            dec = hT - h(D)
            rows["d"].append({"n": n, "ratio": dec / (x * n**a), "graph": to_graph6(T), "parts": parts,
                              "edit": "delete " + ",".join(f"{p}-{q}" for p, q in sorted(removed))})

    report = BalanceReport(str(spec), a, k, c, band, sizes)
    report.properties["a"] = _judge("O", rows["a"], sizes, band)
    report.properties["b"] = _judge("O", rows["b"], sizes, band)
    ce = _judge("Theta", rows["c_edge"], sizes, band)
    cv = _judge("Theta", rows["c_vertex"], sizes, band)
    report.properties["c"] = {"edge": ce, "vertex": cv, "passed": ce["passed"] and cv["passed"]}
    report.properties["d"] = _judge("Theta", rows["d"], sizes, band)
    return report
