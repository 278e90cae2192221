"""Oriented link diagrams, the median construction and the HOMFLY polynomial.

Crossings use PD notation ``X[a, b, c, d]``: arcs listed counterclockwise
starting from the incoming under-strand, so ``c`` is the outgoing
under-strand. The over-strand runs ``d -> b`` at a positive crossing and
``b -> d`` at a negative one.

HOMFLY uses the normalization ``v^-1 P(L+) - v P(L-) = z P(L0)`` with
``P(unknot) = 1``. It is evaluated by the descending-diagram skein
recursion on a Gauss-code form of the diagram.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import networkx as nx

from .bigraph import GraphError, SignedBipartiteGraph, components, parse_graph
from .interior import interior_signed, mirror_transform
from .poly import DELTA, LaurentPoly2, substitute_v2

__all__ = [
    "DiagramError",
    "CrossingCapError",
    "LinkDiagram",
    "SeifertData",
    "PlaneEmbedding",
    "plane_embedding",
    "parse_plane_graph",
    "parse_pd",
    "format_pd",
    "median_diagram",
    "seifert_analyze",
    "homfly",
    "top_coefficient",
    "mirror_diagram",
    "theorem6_check",
    "mirror_chain_check",
    "seifert_count",
    "CROSSING_CAP",
]

CROSSING_CAP = 12

_DELTA_POWERS = [LaurentPoly2.const(1)]


def _delta_power(k: int) -> LaurentPoly2:
    while len(_DELTA_POWERS) <= k:
        _DELTA_POWERS.append(_DELTA_POWERS[-1] * DELTA)
    return _DELTA_POWERS[k]


class DiagramError(ValueError):
    """Malformed or inconsistently oriented diagram."""


class CrossingCapError(DiagramError):
    """Diagram has more crossings than the skein recursion accepts."""


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple, ...]
    signs: tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(x) for x in self.crossings))
        object.__setattr__(self, "signs", tuple(self.signs))
        if len(self.crossings) != len(self.signs):
            raise DiagramError("one sign per crossing required")
        count: dict = {}
        heads: dict = {}
        tails: dict = {}
        for k, (x, s) in enumerate(zip(self.crossings, self.signs)):
            if len(x) != 4:
                raise DiagramError(f"crossing {k} needs four arcs")
            if s not in (1, -1):
                raise DiagramError(f"crossing {k}: bad sign {s!r}")
            for arc in x:
                count[arc] = count.get(arc, 0) + 1
            for pos in self._in_positions(s):
                heads[x[pos]] = heads.get(x[pos], 0) + 1
            for pos in self._out_positions(s):
                tails[x[pos]] = tails.get(x[pos], 0) + 1
        for arc, k in count.items():
            if k != 2:
                raise DiagramError(f"arc {arc} appears {k} times")
            if heads.get(arc) != 1 or tails.get(arc) != 1:
                raise DiagramError(f"arc {arc} is not consistently oriented")

    @staticmethod
    def _in_positions(sign):
        return (0, 3) if sign == 1 else (0, 1)

    @staticmethod
    def _out_positions(sign):
        return (2, 1) if sign == 1 else (2, 3)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def _head(self):
        """arc -> (crossing, is_over) where the arc ends."""
        out = {}
        for k, (x, s) in enumerate(zip(self.crossings, self.signs)):
            under_in, over_in = self._in_positions(s)
            out[x[under_in]] = (k, False)
            out[x[over_in]] = (k, True)
        return out

    def _exit(self, k: int, over: bool):
        x, s = self.crossings[k], self.signs[k]
        return x[self._out_positions(s)[1 if over else 0]]

    def successor(self) -> dict:
        """arc -> next arc along the orientation."""
        return {arc: self._exit(k, over) for arc, (k, over) in self._head().items()}

    def gauss_code(self) -> tuple[tuple[tuple[int, bool], ...], ...]:
        """Components as cyclic sequences of ``(crossing, passes_over)``, from their least arc."""
        head = self._head()
        seen = set()
        comps = []
        for start in sorted(head):
            if start in seen:
                continue
            arc, comp = start, []
            while arc not in seen:
                seen.add(arc)
                k, over = head[arc]
                comp.append((k, over))
                arc = self._exit(k, over)
            comps.append(tuple(comp))
        return tuple(comps)

    def n_components(self) -> int:
        return len(self.gauss_code()) + self.free_loops

    def relabeled(self) -> LinkDiagram:
        """Arcs renumbered 1..2c consecutively along each component."""
        succ = self.successor()
        label, nxt = {}, 1
        for start in sorted(succ):
            arc = start
            while arc not in label:
                label[arc] = nxt
                nxt += 1
                arc = succ[arc]
        return LinkDiagram(
            tuple(tuple(label[a] for a in x) for x in self.crossings), self.signs, self.free_loops
        )


@dataclass(frozen=True)
class SeifertData:
    circles: int
    crossings: int
    writhe: int
    seifert_graph: Optional[SignedBipartiteGraph]


@dataclass(frozen=True)
class PlaneEmbedding:
    """A signed bipartite graph with a counterclockwise rotation of edge indices at every node."""

    graph: SignedBipartiteGraph
    rotation: dict = field(hash=False)

    def __post_init__(self):
        g = self.graph
        for node in g.nodes:
            rot = list(self.rotation.get(node, ()))
            if sorted(rot) != sorted(g.incident(node)):
                raise GraphError(f"rotation at {node!r} must list exactly its incident edges")
        if len(components(g)) != 1:
            raise GraphError("plane embedding requires a connected graph")
        if self.faces() != 2 - g.n_nodes + g.n_edges:
            raise GraphError("rotation system is not planar (Euler characteristic check failed)")

    def faces(self) -> int:
        g = self.graph
        if not g.n_edges:
            return 1
        # dart (edge, tail): next dart leaves the head along the edge after `edge` in its rotation
        seen = set()
        faces = 0
        for idx, (e, v, _) in enumerate(g.edges):
            for tail in (e, v):
                dart = (idx, tail)
                if dart in seen:
                    continue
                faces += 1
                while dart not in seen:
                    seen.add(dart)
                    i, t = dart
                    a, b, _ = g.edges[i]
                    head = b if t == a else a
                    rot = list(self.rotation[head])
                    nxt = rot[(rot.index(i) + 1) % len(rot)]
                    dart = (nxt, head)
        return faces


def plane_embedding(g: SignedBipartiteGraph) -> PlaneEmbedding:
    """Some planar rotation system for ``g`` (edges subdivided so parallel edges are allowed)."""
    h = nx.Graph()
    for name in g.nodes:
        h.add_node(("n", name))
    for idx, (e, v, _) in enumerate(g.edges):
        h.add_edge(("n", e), ("m", idx))
        h.add_edge(("m", idx), ("n", v))
    planar, emb = nx.check_planarity(h)
    if not planar:
        raise GraphError("graph is not planar")
    rotation = {}
    for name in g.nodes:
        cw = [m[1] for m in emb.neighbors_cw_order(("n", name))] if g.incident(name) else []
        rotation[name] = tuple(reversed(cw))
    return PlaneEmbedding(g, rotation)


def parse_plane_graph(text: str) -> PlaneEmbedding:
    """Graph file plus ``rot: <node> <edge-idx> ...`` lines; missing rotations are computed."""
    g = parse_graph(text)
    rotation = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line.startswith("rot:"):
            words = line[4:].split()
            if not words:
                raise GraphError(f"line {lineno}: rot needs a node name")
            try:
                rotation[words[0]] = tuple(int(w) for w in words[1:])
            except ValueError:
                raise GraphError(f"line {lineno}: edge indices must be integers") from None
    if not rotation:
        return plane_embedding(g)
    for node in g.nodes:
        rotation.setdefault(node, ())
    return PlaneEmbedding(g, rotation)


# ---------------------------------------------------------------------------
# PD text


_X_RE = re.compile(r"X\[\s*([^\]]*)\]")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X[a,b,c,d]`` crossings, optional ``orient: a b ...`` and ``loops: k`` lines.

    Over-strand directions are propagated from the under-strands; ``orient``
    lines list consecutive arcs of a component to settle the rest; anything
    still open follows the consecutive-labels convention.
    """
    crossings = []
    seeds: list[list[str]] = []
    loops = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("orient:"):
            seeds.append(line[7:].split())
            continue
        if line.startswith("loops:"):
            try:
                loops = int(line[6:])
            except ValueError:
                raise DiagramError(f"line {lineno}: bad loop count") from None
            continue
        found = _X_RE.findall(line)
        if not found:
            raise DiagramError(f"line {lineno}: cannot read {raw!r}")
        for body in found:
            arcs = [a.strip() for a in body.split(",")]
            if len(arcs) != 4:
                raise DiagramError(f"line {lineno}: crossing needs four arcs")
            crossings.append(tuple(int(a) if a.lstrip("-").isdigit() else a for a in arcs))
    if loops is None:
        loops = 0 if crossings else 1
    return _orient(crossings, seeds, loops)


def _orient(crossings, seeds, loops) -> LinkDiagram:
    # slot state: True = arc enters this crossing here, False = leaves
    state: dict[tuple[int, int], bool] = {}
    where: dict = {}
    for k, x in enumerate(crossings):
        for pos, arc in enumerate(x):
            where.setdefault(arc, []).append((k, pos))
        state[(k, 0)] = True
        state[(k, 2)] = False
    for arc, slots in where.items():
        if len(slots) != 2:
            raise DiagramError(f"arc {arc} appears {len(slots)} times")

    def settle(slot, value):
        if slot in state:
            if state[slot] != value:
                raise DiagramError("inconsistent orientation")
            return False
        state[slot] = value
        return True

    def propagate():
        changed = True
        while changed:
            changed = False
            for arc, (s1, s2) in where.items():
                if s1 in state:
                    changed |= settle(s2, not state[s1])
                elif s2 in state:
                    changed |= settle(s1, not state[s2])
            for k in range(len(crossings)):
                if (k, 1) in state:
                    changed |= settle((k, 3), not state[(k, 1)])
                elif (k, 3) in state:
                    changed |= settle((k, 1), not state[(k, 3)])

    propagate()
    for seq in seeds:
        arcs = [int(a) if a.lstrip("-").isdigit() else a for a in seq]
        for a, b in zip(arcs, arcs[1:]):
            against = False
            for k, x in enumerate(crossings):
                if x[1] == a and x[3] == b:
                    settle((k, 1), True)
                    break
                if x[3] == a and x[1] == b:
                    settle((k, 3), True)
                    break
                if x[0] == a and x[2] == b:
                    break
                against |= x[2] == a and x[0] == b
            else:
                if against:
                    raise DiagramError(f"orient: {a} {b} runs against the under-strand")
                raise DiagramError(f"orient: arcs {a} and {b} do not meet at a crossing")
            propagate()
    for k, x in enumerate(crossings):
        if (k, 1) not in state:
            b, d = x[1], x[3]
            forward = isinstance(b, int) and isinstance(d, int) and (b - d == 1 or d - b > 1)
            settle((k, 3), forward)
            propagate()
    signs = tuple(1 if state[(k, 3)] else -1 for k in range(len(crossings)))
    return LinkDiagram(tuple(crossings), signs, loops)


def format_pd(d: LinkDiagram) -> str:
    lines = [f"X[{','.join(map(str, x))}]" for x in d.crossings]
    succ = d.successor()
    head = d._head()

    def first_meeting(a, b):
        return next((k for k, x in enumerate(d.crossings) if {x[1], x[3]} == {a, b}), None)

    seen = set()
    for start in sorted(succ):
        if start in seen:
            continue
        comp = []
        arc = start
        while arc not in seen:
            seen.add(arc)
            comp.append(arc)
            arc = succ[arc]
        # a seed pair names the first crossing where both arcs meet, so pick one that reads unambiguously
        seed = next((a for a in comp if head[a][1] and first_meeting(a, succ[a]) == head[a][0]), start)
        lines.append(f"orient: {seed} {succ[seed]}")
    if d.free_loops or not d.crossings:
        lines.append(f"loops: {d.free_loops}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# median construction and Seifert data


def median_diagram(pe: PlaneEmbedding) -> LinkDiagram:
    """Special diagram with one Seifert circle per node and one crossing per edge (sign = edge sign).

    Circles of E-nodes run counterclockwise and meet their crossings in
    rotation order; circles of V-nodes run clockwise.
    """
    g = pe.graph
    if not g.n_edges:
        return LinkDiagram((), (), 1)
    arc_out: dict[tuple[str, int], tuple[str, int]] = {}
    arc_in: dict[tuple[str, int], tuple[str, int]] = {}
    for node in g.nodes:
        rot = list(pe.rotation[node])
        order = rot if node in g.e_nodes else rot[::-1]
        k = len(order)
        for i, idx in enumerate(order):
            arc_out[(node, idx)] = (node, i)
            arc_in[(node, idx)] = (node, (i - 1) % k)
    crossings, signs = [], []
    for idx, (u, w, sign) in enumerate(g.edges):
        u_in, u_out = arc_in[(u, idx)], arc_out[(u, idx)]
        w_in, w_out = arc_in[(w, idx)], arc_out[(w, idx)]
        if sign == 1:
            crossings.append((w_in, w_out, u_out, u_in))
        else:
            crossings.append((u_in, w_in, w_out, u_out))
        signs.append(sign)
    return LinkDiagram(tuple(crossings), tuple(signs)).relabeled()


def _seifert_circles(d: LinkDiagram):
    """Map arc -> circle id after smoothing every crossing, and the circle count (free loops included)."""
    smooth_next = {}
    for x, s in zip(d.crossings, d.signs):
        under_in, over_in = LinkDiagram._in_positions(s)
        under_out, over_out = LinkDiagram._out_positions(s)
        smooth_next[x[under_in]] = x[over_out]
        smooth_next[x[over_in]] = x[under_out]
    circle = {}
    count = 0
    for start in sorted(smooth_next, key=repr):
        if start in circle:
            continue
        arc = start
        while arc not in circle:
            circle[arc] = count
            arc = smooth_next[arc]
        count += 1
    return circle, count + d.free_loops


def seifert_analyze(d: LinkDiagram) -> SeifertData:
    circle, count = _seifert_circles(d)
    graph = None
    if not d.free_loops:
        color: dict[int, str] = {}
        ends = []
        consistent = True
        for x, s in zip(d.crossings, d.signs):
            a_circle = circle[x[0]]
            other = circle[x[3]] if s == 1 else circle[x[1]]
            if other == a_circle:
                consistent = False
                break
            a_col = "V" if s == 1 else "E"
            o_col = "E" if s == 1 else "V"
            for c, col in ((a_circle, a_col), (other, o_col)):
                if color.setdefault(c, col) != col:
                    consistent = False
            ends.append((a_circle, other, s) if a_col == "E" else (other, a_circle, s))
        if consistent and (color or not count):
            names = {c: f"s{c}" for c in range(count)}
            graph = SignedBipartiteGraph(
                tuple(names[c] for c in range(count) if color.get(c) == "E"),
                tuple(names[c] for c in range(count) if color.get(c) == "V"),
                tuple((names[e], names[v], s) for e, v, s in ends),
            )
    return SeifertData(count, d.n_crossings, d.writhe, graph)


# ---------------------------------------------------------------------------
# HOMFLY by descending diagrams


def _smooth(comps, x):
    """Oriented smoothing of crossing ``x`` in a Gauss code; returns (components, new free loops)."""
    where = [(ci, pi, over) for ci, comp in enumerate(comps) for pi, (k, over) in enumerate(comp) if k == x]
    (c1, p1, o1), (c2, p2, _) = where
    if not o1:
        (c1, p1, o1), (c2, p2, _) = (c2, p2, True), (c1, p1, False)
    out = list(comps)
    free = 0
    if c1 == c2:
        comp = comps[c1]
        rot = comp[p1:] + comp[:p1]
        q = (p2 - p1) % len(comp)
        first, second = rot[1:q], rot[q + 1:]
        new = [part for part in (first, second) if part]
        free = 2 - len(new)
        out[c1:c1 + 1] = new
    else:
        a = comps[c1][p1 + 1:] + comps[c1][:p1]
        b = comps[c2][p2 + 1:] + comps[c2][:p2]
        merged = a + b
        lo, hi = sorted((c1, c2))
        out[lo] = merged
        del out[hi]
        if not merged:
            del out[lo]
            free = 1
    return tuple(out), free


def _switch(comps, signs, x):
    comps = tuple(tuple((k, (not over) if k == x else over) for k, over in comp) for comp in comps)
    signs = signs[:x] + (-signs[x],) + signs[x + 1:]
    return comps, signs


def seifert_count(comps, free: int) -> int:
    """Seifert circles of a Gauss-code diagram.

    Smoothing sends the arrival at a crossing on one strand to the departure
    along the other, so circles are cycles of "partner passage, then step".
    Over/under information is irrelevant here.
    """
    flat, step = [], []
    for comp in comps:
        base, length = len(flat), len(comp)
        for i, (k, _) in enumerate(comp):
            flat.append(k)
            step.append(base + (i + 1) % length)
    partner = [0] * len(flat)
    first: dict = {}
    for i, k in enumerate(flat):
        j = first.pop(k, None)
        if j is None:
            first[k] = i
        else:
            partner[i], partner[j] = j, i
    seen = bytearray(len(flat))
    circles = 0
    for i in range(len(flat)):
        if not seen[i]:
            circles += 1
            j = i
            while not seen[j]:
                seen[j] = 1
                j = step[partner[j]]
    return circles + free


def homfly(
    d: LinkDiagram,
    rng: Optional[random.Random] = None,
    trace: Optional[Callable] = None,
    cap: int = CROSSING_CAP,
) -> LaurentPoly2:
    """HOMFLY polynomial of ``d``.

    ``rng`` shuffles component order and basepoints before the recursion.
    ``trace(comps, free, value)`` is called for every intermediate diagram.
    """
    if d.n_crossings > cap:
        raise CrossingCapError(f"{d.n_crossings} crossings exceed the cap of {cap}")
    comps = d.gauss_code()
    if rng is not None:
        comps = list(comps)
        rng.shuffle(comps)
        comps = tuple(c[r:] + c[:r] for c in comps for r in [rng.randrange(len(c))])
    memo: dict = {}

    def value(comps, signs, free):
        key = (comps, signs, free)
        if key in memo:
            return memo[key]
        seen = set()
        bad = None
        for comp in comps:
            for k, over in comp:
                if k in seen:
                    continue
                seen.add(k)
                if not over:
                    bad = k
                    break
            if bad is not None:
                break
        if bad is None:
            result = _delta_power(len(comps) + free - 1)
        else:
            switched = value(*_switch(comps, signs, bad), free)
            smoothed_comps, extra = _smooth(comps, bad)
            smoothed = value(smoothed_comps, signs, free + extra)
            if signs[bad] == 1:
                result = switched.shift(2) + smoothed.shift(1, 1)
            else:
                result = switched.shift(-2) + smoothed.shift(-1, 1, -1)
        memo[key] = result
        if trace is not None:
            trace(comps, free, result)
        return result

    return value(comps, d.signs, d.free_loops)


def top_coefficient(d: LinkDiagram, p: Optional[LaurentPoly2] = None) -> LaurentPoly2:
    """Coefficient of ``z^(c - s + 1)`` as a Laurent polynomial in ``v``."""
    if p is None:
        p = homfly(d)
    s = seifert_analyze(d).circles
    return p.coefficient_of_z(d.n_crossings - s + 1)


def mirror_diagram(d: LinkDiagram) -> LinkDiagram:
    crossings = []
    for (a, b, c, e), s in zip(d.crossings, d.signs):
        crossings.append((e, a, b, c) if s == 1 else (b, c, e, a))
    return LinkDiagram(tuple(crossings), tuple(-s for s in d.signs), d.free_loops)


def theorem6_check(pe: PlaneEmbedding, p: Optional[LaurentPoly2] = None) -> bool:
    """Top of HOMFLY of the median diagram equals ``v^(|E+|-|E-|-(|V|+|E|)+1) I+_G(v^2)``.

    ``p`` may carry the already computed HOMFLY of the median diagram.
    """
    g = pe.graph
    d = median_diagram(pe)
    shift = len(g.positive_edges()) - len(g.negative_edges()) - g.n_nodes + 1
    return top_coefficient(d, p) == substitute_v2(interior_signed(g), shift)


def mirror_chain_check(pe: PlaneEmbedding, p_mirror: Optional[LaurentPoly2] = None) -> bool:
    """Top of the mirrored median diagram agrees with the mirror formula for ``I+`` read through the top."""
    g = pe.graph
    d = mirror_diagram(median_diagram(pe))
    shift = len(g.negative_edges()) - len(g.positive_edges()) - g.n_nodes + 1
    return top_coefficient(d, p_mirror) == substitute_v2(mirror_transform(g), shift)
