"""Verification suites shared by the command line and the test suite.

Each suite maps a case function over a deterministic family of inputs and
collects failures with a serialized witness. Set ``INTERIORPOLY_WORKERS`` to
run cases in that many processes; results are sorted the same way either way.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .bigraph import SignedBipartiteGraph, canonical_form, flype, format_graph, mutate, negate
from .ehrhart import interior_polynomial_via_ehrhart, reciprocity_check
from .families import (
    classical_multigraphs,
    connected_bigraphs,
    random_flype_instances,
    random_mutation_instances,
    sign_patterns,
)
from .homfly import (
    LinkDiagram,
    PlaneEmbedding,
    format_pd,
    homfly,
    median_diagram,
    mirror_chain_check,
    mirror_diagram,
    parse_pd,
    plane_embedding,
    seifert_analyze,
    seifert_count,
    theorem6_check,
    top_coefficient,
)
from .hull import generate_samples, indicator_identity_failures, standard_pool
from .interior import (
    _connected,
    interior_recursive,
    interior_signed,
    interior_signed_skein,
    invariance_suite,
    mirror_transform,
    subgraph_expansion_check,
    tutte_specialization_check,
)
from .poly import IntPoly, LaurentPoly2, parse_laurent

__all__ = [
    "SuiteResult",
    "SUITES",
    "run_suite",
    "worker_count",
    "FIXTURE_5_2",
    "FIXTURE_5_2_MIRROR",
    "FIXTURE_HOPF",
    "five_two_embedding",
    "hopf_embedding",
    "diagram_checks",
]

WORKERS_ENV = "INTERIORPOLY_WORKERS"

FIXTURE_5_2 = parse_laurent("v^2*z^2 + v^4*z^2 + v^2 + v^4 - v^6")
FIXTURE_5_2_MIRROR = parse_laurent("v^-4*z^2 + v^-2*z^2 - v^-6 + v^-4 + v^-2")
FIXTURE_HOPF = parse_laurent("v*z + v*z^-1 - v^3*z^-1")

_FIVE_TWO = SignedBipartiteGraph(
    ("a", "b"),
    ("p", "q"),
    (("a", "p", 1), ("a", "p", 1), ("a", "q", 1), ("b", "p", 1), ("b", "q", 1)),
)


def five_two_embedding() -> PlaneEmbedding:
    """Seifert graph of the standard 5_2 diagram: a 4-cycle with one edge doubled."""
    return PlaneEmbedding(_FIVE_TWO, {"a": (0, 1, 2), "b": (3, 4), "p": (1, 0, 3), "q": (2, 4)})


def hopf_embedding() -> PlaneEmbedding:
    g = SignedBipartiteGraph(("a",), ("p",), (("a", "p", 1), ("a", "p", 1)))
    return PlaneEmbedding(g, {"a": (0, 1), "p": (1, 0)})


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)  # (check, witness)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "cases": self.cases,
            "failures": [{"check": c, "witness": w} for c, w in self.failures],
            "seconds": round(self.seconds, 3),
            **({"notes": self.notes} if self.notes else {}),
        }


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _map(fn: Callable, items: list) -> list:
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _graph_family(max_edges: int, min_edges: int = 0) -> list[SignedBipartiteGraph]:
    return sorted(connected_bigraphs(max_edges, min_edges), key=canonical_form)


def _collect(name: str, items: list, fn: Callable) -> SuiteResult:
    start = time.perf_counter()
    result = SuiteResult(name)
    for cases, failures in _map(fn, items):
        result.cases += cases
        result.failures.extend(failures)
    result.seconds = time.perf_counter() - start
    return result


def _rng_for(g: SignedBipartiteGraph, seed: int) -> random.Random:
    return random.Random(f"{seed}:{format_graph(g)}")


def _matches_edgewise(g: SignedBipartiteGraph, h: SignedBipartiteGraph) -> bool:
    """Is there a color-preserving node bijection sending edge ``k`` of ``g`` to edge ``k`` of ``h``?"""
    if g.n_edges != h.n_edges or len(g.e_nodes) != len(h.e_nodes) or len(g.v_nodes) != len(h.v_nodes):
        return False
    forward: dict = {}
    backward: dict = {}
    for (e1, v1, s1), (e2, v2, s2) in zip(g.edges, h.edges):
        if s1 != s2:
            return False
        for a, b in ((e1, e2), (v1, v2)):
            if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:
                return False
    return len(forward) == g.n_nodes


# ---------------------------------------------------------------------------
# case functions (module level so they can be sent to worker processes)


def _mirror_case(args):
    g, seed, exhaustive = args
    failures, cases = [], 0
    for h in sign_patterns(g, exhaustive, _rng_for(g, seed)):
        cases += 1
        if mirror_transform(h) != interior_signed(negate(h)):
            failures.append(("mirror formula", format_graph(h)))
        if interior_signed_skein(h) != interior_signed(h):
            failures.append(("skein pipeline", format_graph(h)))
    return cases, failures


def _pipeline_case(g):
    if interior_recursive(g) == interior_polynomial_via_ehrhart(g):
        return 1, []
    return 1, [("recursion vs ehrhart", format_graph(g))]


def _reciprocity_case(args):
    g, s_max = args
    return 1, ([] if reciprocity_check(g, s_max) else [("reciprocity", format_graph(g))])


def _subgraph_case(g):
    return 1, ([] if subgraph_expansion_check(g) else [("subgraph expansion", format_graph(g))])


def _tutte_case(args):
    n, edges = args
    if tutte_specialization_check(n, edges):
        return 1, []
    return 1, [("tutte specialization", f"vertices={n} edges={list(edges)}")]


def diagram_checks(d: LinkDiagram, seed: int = 0):
    """Morton bound on every skein subdiagram, the mirror identity and basepoint independence.

    Returns ``(P(d), P(mirror d), names of failed checks)``.
    """
    bad = []
    bounds: dict = {}

    def trace(comps, free, value):
        shape = (tuple(tuple(k for k, _ in comp) for comp in comps), free)
        bound = bounds.get(shape)
        if bound is None:
            c = sum(len(comp) for comp in shape[0]) // 2
            bound = bounds[shape] = c - seifert_count(comps, free) + 1
        top = value.max_z()
        if top is not None and top > bound:
            bad.append("morton bound")

    p = homfly(d, trace=trace)
    pm = homfly(mirror_diagram(d), trace=trace)
    if pm != p.mirror():
        bad.append("mirror identity")
    if homfly(d, rng=random.Random(seed)) != p:
        bad.append("basepoint independence")
    return p, pm, sorted(set(bad))


def _homfly_case(args):
    g, seed, exhaustive = args
    rotation = plane_embedding(g).rotation
    failures, cases = [], 0
    for h in sign_patterns(g, exhaustive, _rng_for(g, seed)):
        cases += 1
        pe = PlaneEmbedding(h, rotation)
        d = median_diagram(pe)
        witness = format_graph(h) + "".join(f"rot: {n} {' '.join(map(str, r))}\n" for n, r in rotation.items())
        p, pm, bad = diagram_checks(d, seed)
        if not theorem6_check(pe, p):
            failures.append(("top coefficient vs I+", witness))
        if not mirror_chain_check(pe, pm):
            failures.append(("mirror chain", witness))
        sd = seifert_analyze(d)
        if sd.circles != h.n_nodes or sd.seifert_graph is None or not _matches_edgewise(h, sd.seifert_graph):
            failures.append(("seifert round trip", witness))
        for name in bad:
            failures.append((name, witness))
    return cases, failures


# ---------------------------------------------------------------------------
# suites


def suite_mirror(max_edges: int = 7, seed: int = 0, exhaustive_signs: int = 5) -> SuiteResult:
    items = [(g, seed, exhaustive_signs) for g in _graph_family(max_edges, 1)]
    return _collect("mirror", items, _mirror_case)


def suite_pipelines(max_edges: int = 8, seed: int = 0) -> SuiteResult:
    return _collect("pipelines", _graph_family(max_edges), _pipeline_case)


def suite_reciprocity(max_edges: int = 7, seed: int = 0, s_max: int = 3) -> SuiteResult:
    items = [(g, s_max) for g in _graph_family(max_edges, 1)]
    return _collect("reciprocity", items, _reciprocity_case)


def suite_subgraph(max_edges: int = 6, seed: int = 0) -> SuiteResult:
    return _collect("subgraph", _graph_family(max_edges), _subgraph_case)


def suite_tutte(max_edges: int = 6, seed: int = 0) -> SuiteResult:
    items = [(n, edges) for n, edges in classical_multigraphs(max_edges) if _connected(n, edges)]
    return _collect("tutte", items, _tutte_case)


def suite_hull(max_edges: int = 0, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    result = SuiteResult("hull")
    for name, points in standard_pool():
        samples = generate_samples(points, seed)
        for dedupe in (False, True):
            result.cases += 1
            for q, lhs, rhs in indicator_identity_failures(points, samples, dedupe):
                reading = "deduplicated" if dedupe else "indexed"
                result.failures.append(
                    (f"indicator identity ({reading})", f"{name}: points={points} q={q} lhs={lhs} rhs={rhs}")
                )
    result.seconds = time.perf_counter() - start
    return result


def _invariance(name: str, instances: Iterable, apply) -> SuiteResult:
    start = time.perf_counter()
    result = SuiteResult(name)
    changed = mixed = 0
    for g, dec in instances:
        result.cases += 1
        h = apply(g, dec)
        changed += canonical_form(h) != canonical_form(g)
        mixed += len({s for _, _, s in g.edges}) == 2
        if hasattr(dec, "v1"):
            key = "same color" if g.color(dec.v1) == g.color(dec.v2) else "different color"
            result.notes[key] = result.notes.get(key, 0) + 1
        if not invariance_suite(g, dec):
            result.failures.append((name, f"{format_graph(g)}# {dec!r}\n"))
    result.notes["non-isomorphic results"] = changed
    result.notes["mixed signs"] = mixed
    result.seconds = time.perf_counter() - start
    return result


def suite_flype(max_edges: int = 10, seed: int = 0, count: int = 60) -> SuiteResult:
    return _invariance("flype", random_flype_instances(count, seed, max(max_edges, 6)), flype)


def suite_mutation(max_edges: int = 10, seed: int = 0, count: int = 30) -> SuiteResult:
    edges = max(max_edges, 6)
    instances = list(random_mutation_instances(count, seed, edges, same_color=True))
    instances += list(random_mutation_instances(count, seed + 1, edges, same_color=False))
    return _invariance("mutation", instances, mutate)


def _fixture_failures(seed: int) -> list[tuple[str, str]]:
    out = []
    d = median_diagram(five_two_embedding())
    expected = [
        ("5_2 homfly", homfly(d), FIXTURE_5_2),
        ("5_2 mirror homfly", homfly(mirror_diagram(d)), FIXTURE_5_2_MIRROR),
        ("5_2 top", top_coefficient(d), parse_laurent("v^2 + v^4")),
        ("5_2 mirror top", top_coefficient(mirror_diagram(d)), parse_laurent("v^-4 + v^-2")),
        ("hopf", homfly(median_diagram(hopf_embedding())), FIXTURE_HOPF),
        ("unknot", homfly(parse_pd("")), LaurentPoly2.const(1)),
    ]
    for name, got, want in expected:
        if got != want:
            out.append((name, f"got {got}, expected {want}"))
    for name, diagram in (("5_2", d), ("hopf", median_diagram(hopf_embedding()))):
        for check in diagram_checks(diagram, seed)[2]:
            out.append((f"{name} {check}", format_pd(diagram)))
    if interior_signed(_FIVE_TWO) != IntPoly([1, 1]):
        out.append(("5_2 interior", format_graph(_FIVE_TWO)))
    return out


def suite_homfly(max_edges: int = 8, seed: int = 0, exhaustive_signs: int = 5) -> SuiteResult:
    items = [(g, seed, exhaustive_signs) for g in _graph_family(max_edges, 1)]
    result = _collect("homfly", items, _homfly_case)
    start = time.perf_counter()
    result.failures[:0] = _fixture_failures(seed)
    result.cases += 1
    result.seconds += time.perf_counter() - start
    return result


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "mirror": suite_mirror,
    "pipelines": suite_pipelines,
    "reciprocity": suite_reciprocity,
    "subgraph": suite_subgraph,
    "hull": suite_hull,
    "flype": suite_flype,
    "mutation": suite_mutation,
    "homfly": suite_homfly,
    "tutte": suite_tutte,
}


def run_suite(name: str, max_edges: int | None = None, seed: int = 0) -> SuiteResult:
    fn = SUITES[name]
    return fn(seed=seed) if max_edges is None else fn(max_edges=max_edges, seed=seed)
