"""Command-line front end. Every subcommand writes one JSON report that embeds
its full run configuration."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import search
from .coloring import chromatic_number, color_critical_edge, sigma
from .constructions import parse_graph
from .errors import CapacityError, DomainError, ESSError, InvariantError, ParseError, SizeError
from .graph import to_graph6
from .parameters import check_balanced, evaluate, parse_param
from .structures import format_structured, parse_oracle

EXIT_OK, EXIT_USAGE, EXIT_SIZE, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(ESSError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A..B") from None
    if not sep or a > b:
        raise UsageError(f"bad range {text!r}, expected A..B with A <= B")
    return list(range(a, b + 1))


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _number(text: str):
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"bad number {text!r}") from None


def _oracle(args):
    given = [(flag, v) for flag, v in (("forbid", args.forbid), ("forbid-induced", args.forbid_induced),
                                       ("forbid-eo", args.forbid_eo), ("oracle", args.oracle)) if v]
    if len(given) > 1:
        raise UsageError("give at most one of --forbid, --forbid-induced, --forbid-eo, --oracle")
    if not given:
        return parse_oracle("all")
    flag, value = given[0]
    if flag == "oracle":
        return parse_oracle(value)
    return parse_oracle(f"{flag}:{','.join(value)}")


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


def _graphs(args):
    return search.load_graph_stream(args.graphs) if args.graphs else None


def _number_json(x):
    return search.json_number(x) if isinstance(x, Fraction) else x


# ---------------------------------------------------------------------------
# subcommands

def cmd_construct(args):
    _require(args, "graph")
    G = parse_graph(args.graph)
    return {"graph6": to_graph6(G), "n": G.n, "edges": G.num_edges}


def cmd_param(args):
    _require(args, "graph", "param")
    G = parse_graph(args.graph)
    spec = parse_param(args.param)
    return {"graph6": to_graph6(G), "spec": str(spec), "value": _number_json(evaluate(spec, G))}


def cmd_chi(args):
    oracle = _oracle(args)
    interval = search.abstract_chi(oracle, args.nmax, args.mmax, workers=args.workers)
    return {"oracle": oracle.description, **interval.to_dict()}


def cmd_chromatic(args):
    _require(args, "graph")
    G = parse_graph(args.graph)
    e = color_critical_edge(G) if G.num_edges else None
    return {"graph6": to_graph6(G), "chi": chromatic_number(G), "critical_edge": list(e) if e else None}


def cmd_sigma(args):
    _require(args, "graph")
    G = parse_graph(args.graph)
    value, col = sigma(G, witness=True)
    return {"graph6": to_graph6(G), "chi": chromatic_number(G), "value": value, "coloring": col}


def cmd_sigma_partition(args):
    _require(args, "k")
    oracle = _oracle(args)
    return {"oracle": oracle.description, "k": args.k, **search.sigma_partition(oracle, args.k, args.part_cap)}


def cmd_extremal(args):
    _require(args, "n", "param")
    oracle = _oracle(args)
    spec = parse_param(args.param)
    report = search.extremal(args.n, oracle, spec, workers=args.workers, graphs=_graphs(args), seed=args.seed)
    return report.to_dict()


def cmd_supersat(args):
    _require(args, "n", "graph", "param", "threshold")
    F = parse_graph(args.graph)
    spec = parse_param(args.param)
    return search.supersaturation_min(args.n, F, _number(args.threshold), spec, workers=args.workers,
                                      graphs=_graphs(args))


def cmd_stability(args):
    _require(args, "graph", "k")
    G = parse_graph(args.graph)
    d, parts, block = search.stability_distance(G, args.k)
    return {"graph6": to_graph6(G), "k1": args.k, "distance": d,
            "parts": list(parts.parts) if parts else [], "blocks": block}


def cmd_balanced(args):
    _require(args, "param", "k")
    spec = parse_param(args.param)
    if args.sizes:
        sizes = _ints(args.sizes)
    elif args.range:
        sizes = _range(args.range)[:: args.step]
    else:
        raise UsageError("balanced needs --sizes or --range")
    c = float(_number(args.c)) if args.c is not None else None
    report = check_balanced(spec, float(_number(args.a)), args.k, sizes, c=c, band=args.band,
                            samples=args.samples, seed=args.seed)
    return report.to_dict()


def cmd_edge_critical(args):
    _require(args, "k", "range")
    oracle = _oracle(args)
    ns = _range(args.range)
    out = search.edge_critical_check(oracle, args.k, ns, chi_nmax=args.nmax, chi_mmax=args.mmax,
                                     workers=args.workers)
    return {"oracle": oracle.description, **out}


def cmd_rainbow_lemma(args):
    _require(args, "graph", "n")
    F = parse_graph(args.graph)
    return search.verify_rainbow_lemma(F, args.n, samples=args.samples, seed=args.seed)


def cmd_count_free(args):
    _require(args, "graph", "n")
    F = parse_graph(args.graph)
    return {"n": args.n, "F": to_graph6(F), "value": search.count_labeled_free(args.n, F)}


def cmd_membership(args):
    _require(args, "graph")
    oracle = _oracle(args)
    G = parse_graph(args.graph)
    w = oracle.membership(G)
    structure = None
    if w is not None and w.structure is not None:
        from .structures import StructuredGraph
        structure = format_structured(StructuredGraph(G, w.structure)).splitlines()[-1]
    return {"oracle": oracle.description, "graph6": to_graph6(G), "member": w is not None, "witness": structure}


COMMANDS = {
    "construct": cmd_construct, "param": cmd_param, "chi": cmd_chi, "chromatic": cmd_chromatic,
    "sigma": cmd_sigma, "sigma-partition": cmd_sigma_partition, "extremal": cmd_extremal,
    "supersat": cmd_supersat, "stability": cmd_stability, "balanced": cmd_balanced,
    "edge-critical": cmd_edge_critical, "rainbow-lemma": cmd_rainbow_lemma, "count-free": cmd_count_free,
    "membership": cmd_membership,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-n", "--n", type=int)
    common.add_argument("--nmax", type=int, default=8)
    common.add_argument("--mmax", type=int, default=6)
    common.add_argument("--part-cap", type=int, default=6)
    common.add_argument("--forbid", action="append", help="graph6 or construction token; repeatable")
    common.add_argument("--forbid-induced", action="append")
    common.add_argument("--forbid-eo", action="append", metavar="FILE")
    common.add_argument("--oracle", metavar="SPEC")
    common.add_argument("--param", metavar="SPEC")
    common.add_argument("--graphs", metavar="FILE", help="graph6 stream used instead of enumeration")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--samples", type=int)
    common.add_argument("--range", metavar="A..B")
    common.add_argument("--graph", metavar="G")
    common.add_argument("--k", type=int)
    common.add_argument("--a", default="0")
    common.add_argument("--c")
    common.add_argument("--band", type=float, default=8.0)
    common.add_argument("--threshold")
    common.add_argument("--sizes", metavar="N,N,...")
    common.add_argument("--step", type=int, default=1)
    common.add_argument("--table", action="store_true", help="also print a summary table to stderr")

    parser = _Parser(prog="ess", description="Small-graph extremal search and verification")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("command", "table")}
    if cfg.get("samples") is None:
        cfg["samples"] = 100 if args.command == "rainbow-lemma" else 4
    return cfg


def _table(report: dict) -> str:
    rows = [(k, v) for k, v in report.items() if k != "config" and not isinstance(v, (dict, list))]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Parse ``argv``, run one subcommand, and return ``(exit status, report)``."""
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand; choose one of " + ", ".join(COMMANDS))
        if args.workers < 1:
            raise UsageError("--workers must be positive")
        config = _config(args)
        args.samples = config["samples"]
        result = COMMANDS[args.command](args)
        status = EXIT_OK
    except UsageError as exc:
        return EXIT_USAGE, {"error": "usage", "message": str(exc)}
    except (SizeError, CapacityError) as exc:
        return EXIT_SIZE, {"error": "size", "message": str(exc)}
    except (ParseError, DomainError) as exc:
        return EXIT_USAGE, {"error": "usage", "message": str(exc)}
    except InvariantError as exc:
        return EXIT_INVARIANT, {"error": "invariant", "message": str(exc)}
    report = {"command": args.command, "config": config, **result}
    report.setdefault("wall_ms", round((time.perf_counter() - t0) * 1000, 3))
    return status, report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, default=str)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    status, report = run(argv)
    text = dumps(report)
    out = None
    if status == EXIT_OK:
        out = report["config"].get("out")
        if "--table" in argv:
            print(_table(report), file=sys.stderr)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if status != EXIT_OK:
        print(f"ess: {report['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
