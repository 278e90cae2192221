"""Command-line front end.

Every command prints human-readable lines followed by one JSON record per
line. Exit codes: 0 success, 1 failed check, 2 unreadable input,
3 pipelines disagree, 4 input beyond a size cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .bigraph import GraphError, parse_graph
from .ehrhart import interior_polynomial_via_ehrhart, interior_signed_via_ehrhart
from .homfly import (
    CROSSING_CAP,
    CrossingCapError,
    DiagramError,
    homfly,
    median_diagram,
    parse_pd,
    parse_plane_graph,
    seifert_analyze,
    top_coefficient,
)
from .interior import interior_recursive, interior_signed, interior_signed_skein
from .suites import SUITES, run_suite, worker_count

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_DISAGREE, EXIT_CAP = 0, 1, 2, 3, 4

NEGATIVE_EDGE_CAP = 20
EHRHART_NODE_CAP = 16
VERIFY_EDGE_CAP = 8
SUITE_ORDER = ("mirror", "pipelines", "reciprocity", "subgraph", "hull", "flype", "mutation", "homfly", "tutte")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _read(path: str) -> tuple[str, bytes]:
    try:
        raw = Path(path).read_bytes()
        return raw.decode("utf-8"), raw
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None


def _emit(lines: list[str], records: list[dict]) -> None:
    out = lines + [json.dumps(r, sort_keys=True) for r in records]
    sys.stdout.write("\n".join(out) + "\n")


# ---------------------------------------------------------------------------


def cmd_interior(args) -> int:
    text, raw = _read(args.file)
    try:
        g = parse_graph(text)
    except GraphError as exc:
        raise CliError(EXIT_PARSE, f"{args.file}: {exc}") from None
    if not args.signed:
        g = g.unsigned()
    neg = len(g.negative_edges())
    if neg > NEGATIVE_EDGE_CAP:
        raise CliError(EXIT_CAP, f"{neg} negative edges exceed the cap of {NEGATIVE_EDGE_CAP}")
    if args.pipeline in ("ehrhart", "both") and g.n_nodes > EHRHART_NODE_CAP:
        raise CliError(EXIT_CAP, f"lattice-point counting supports at most {EHRHART_NODE_CAP} nodes")

    pipelines = {
        "recursion": interior_signed if args.signed else interior_recursive,
        "ehrhart": interior_signed_via_ehrhart if args.signed else interior_polynomial_via_ehrhart,
        "skein": interior_signed_skein if args.signed else interior_recursive,
    }
    chosen = ["recursion", "ehrhart"] + (["skein"] if args.signed else []) if args.pipeline == "both" else [args.pipeline]
    values = {}
    timings = {}
    for name in chosen:
        start = time.perf_counter()
        values[name] = pipelines[name](g)
        timings[name] = round(time.perf_counter() - start, 4)
    distinct = {str(p) for p in values.values()}
    if len(distinct) > 1:
        detail = ", ".join(f"{k}: {v}" for k, v in values.items())
        raise CliError(EXIT_DISAGREE, f"pipelines disagree ({detail})")
    poly = next(iter(values.values()))
    record = {
        "record": "interior",
        "command": "interior",
        "input": args.file,
        "input_digest": _digest(raw),
        "signed": args.signed,
        "pipeline": args.pipeline,
        "polynomial": str(poly),
        "coefficients": list(poly.coeffs),
        "seconds": timings,
    }
    _emit([str(poly)], [record])
    return EXIT_OK


def cmd_homfly(args) -> int:
    path = args.pd or args.graph
    text, raw = _read(path)
    try:
        if args.pd:
            d = parse_pd(text)
        else:
            d = median_diagram(parse_plane_graph(text))
    except (GraphError, DiagramError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    if d.n_crossings > CROSSING_CAP:
        raise CliError(EXIT_CAP, f"{d.n_crossings} crossings exceed the cap of {CROSSING_CAP}")
    start = time.perf_counter()
    try:
        p = homfly(d)
    except CrossingCapError as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    sd = seifert_analyze(d)
    top = top_coefficient(d, p)
    record = {
        "record": "homfly",
        "command": "homfly",
        "input": path,
        "input_digest": _digest(raw),
        "homfly": str(p),
        "top": str(top),
        "crossings": sd.crossings,
        "seifert_circles": sd.circles,
        "writhe": sd.writhe,
        "seconds": round(time.perf_counter() - start, 4),
    }
    summary = f"top: {top.grouped()}  crossings: {sd.crossings}  seifert circles: {sd.circles}  writhe: {sd.writhe}"
    _emit([p.grouped(), summary], [record])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_edges is not None and args.max_edges > VERIFY_EDGE_CAP:
        raise CliError(EXIT_CAP, f"--max-edges is capped at {VERIFY_EDGE_CAP}")
    names = SUITE_ORDER if args.suite == "all" else (args.suite,)
    params = {"suite": args.suite, "max_edges": args.max_edges, "seed": args.seed}
    header = {
        "record": "run",
        "command": "verify",
        "params": params,
        "input_digest": _digest(json.dumps(params, sort_keys=True).encode()),
        "workers": worker_count(),
    }
    results = [run_suite(name, args.max_edges, args.seed) for name in names]
    lines = []
    for r in results:
        status = "pass" if r.passed else "FAIL"
        lines.append(f"{r.suite}: {status} ({r.cases} cases, {r.seconds:.2f} s)")
        for check, witness in r.failures[:5]:
            lines.append(f"  {check}: {witness.strip().replace(chr(10), ' | ')}")
    records = [header] + [dict(record="check", **r.record()) for r in results]
    _emit(lines, records)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interiorpoly",
        description="Interior polynomials of signed bipartite graphs and related checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interior", help="compute the interior polynomial of a graph file")
    p.add_argument("file")
    p.add_argument("--signed", action="store_true", help="honor edge signs (I+ instead of I')")
    p.add_argument("--pipeline", choices=("ehrhart", "recursion", "skein", "both"), default="recursion")
    p.set_defaults(func=cmd_interior)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_ORDER + ("all",))
    p.add_argument("--max-edges", type=int, default=None, help=f"graph family size (at most {VERIFY_EDGE_CAP})")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homfly", help="HOMFLY polynomial of a PD code or of a plane graph's median diagram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", metavar="FILE")
    src.add_argument("--graph", metavar="FILE")
    p.set_defaults(func=cmd_homfly)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


assert set(SUITE_ORDER) == set(SUITES)
