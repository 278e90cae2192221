"""Signed bipartite graphs and the graph surgeries used throughout the package.

A graph has two color classes, ``E`` and ``V``, and an indexed list of signed
edges. Parallel edges are allowed and keep their own index. All objects are
immutable; every operation returns a new graph.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "GraphError",
    "SignedBipartiteGraph",
    "CycleWitness",
    "FlypeDecomposition",
    "MutationDecomposition",
    "parse_graph",
    "format_graph",
    "components",
    "delete_edges",
    "negate",
    "swap_classes",
    "find_cycle",
    "random_cycle",
    "flype",
    "mutate",
    "canonical_form",
    "is_forest",
]

CANONICAL_NODE_CAP = 16


class GraphError(ValueError):
    """Raised for malformed graphs, graph files and invalid decompositions."""


@dataclass(frozen=True)
class SignedBipartiteGraph:
    e_nodes: tuple[str, ...]
    v_nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "e_nodes", tuple(self.e_nodes))
        object.__setattr__(self, "v_nodes", tuple(self.v_nodes))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        e_set, v_set = set(self.e_nodes), set(self.v_nodes)
        if len(e_set) != len(self.e_nodes) or len(v_set) != len(self.v_nodes):
            raise GraphError("duplicate node name")
        both = e_set & v_set
        if both:
            raise GraphError(f"node {sorted(both)[0]!r} declared in both classes")
        for i, (e, v, sign) in enumerate(self.edges):
            if e not in e_set:
                raise GraphError(f"edge {i}: {e!r} is not an E-node")
            if v not in v_set:
                raise GraphError(f"edge {i}: {v!r} is not a V-node")
            if sign not in (1, -1):
                raise GraphError(f"edge {i}: sign must be +1 or -1, got {sign!r}")

    @classmethod
    def build(cls, e_nodes: Iterable, v_nodes: Iterable, edges: Iterable) -> SignedBipartiteGraph:
        """Build from loose input; edges may be ``(e, v)`` or ``(e, v, sign)``."""
        norm = []
        for edge in edges:
            if len(edge) == 2:
                norm.append((edge[0], edge[1], 1))
            else:
                norm.append((edge[0], edge[1], int(edge[2])))
        return cls(tuple(e_nodes), tuple(v_nodes), tuple(norm))

    # -- sizes -----------------------------------------------------------
    @property
    def n_nodes(self) -> int:
        return len(self.e_nodes) + len(self.v_nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.e_nodes + self.v_nodes

    def positive_edges(self) -> list[int]:
        return [i for i, edge in enumerate(self.edges) if edge[2] == 1]

    def negative_edges(self) -> list[int]:
        return [i for i, edge in enumerate(self.edges) if edge[2] == -1]

    def color(self, node: str) -> str:
        if node in self.e_nodes:
            return "E"
        if node in self.v_nodes:
            return "V"
        raise GraphError(f"unknown node {node!r}")

    def degree(self, node: str) -> int:
        return sum(1 for e, v, _ in self.edges if node in (e, v))

    def incident(self, node: str) -> list[int]:
        return [i for i, (e, v, _) in enumerate(self.edges) if node in (e, v)]

    def node_index(self) -> dict[str, int]:
        """Position of every node in ``E ⊎ V`` order (E block first)."""
        return {name: i for i, name in enumerate(self.nodes)}

    def endpoint_indices(self) -> list[tuple[int, int]]:
        idx = self.node_index()
        return [(idx[e], idx[v]) for e, v, _ in self.edges]

    def with_signs(self, signs: Sequence[int]) -> SignedBipartiteGraph:
        if len(signs) != len(self.edges):
            raise GraphError("sign vector length does not match edge count")
        return SignedBipartiteGraph(
            self.e_nodes, self.v_nodes, tuple((e, v, s) for (e, v, _), s in zip(self.edges, signs))
        )

    def with_sign(self, index: int, sign: int) -> SignedBipartiteGraph:
        signs = [s for _, _, s in self.edges]
        signs[index] = sign
        return self.with_signs(signs)

    def unsigned(self) -> SignedBipartiteGraph:
        return self.with_signs([1] * len(self.edges))

    def __str__(self) -> str:
        return format_graph(self)


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk with distinct nodes, ``nodes[i]`` sits between ``edges[i-1]`` and ``edges[i]``.

    ``edges`` alternates between the two classes used by the cycle recursion:
    positions 0, 2, 4, ... are the epsilon edges, 1, 3, 5, ... the delta edges.
    """

    nodes: tuple[str, ...]
    edges: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.edges) // 2

    @property
    def epsilon(self) -> tuple[int, ...]:
        return self.edges[0::2]

    @property
    def delta(self) -> tuple[int, ...]:
        return self.edges[1::2]


@dataclass(frozen=True)
class FlypeDecomposition:
    """Presentation of ``g`` as ``G' * G_R`` for graph flyping.

    ``region`` holds the nodes of ``G_R`` other than the shared node; ``b`` is
    in ``region``, ``a`` and ``c`` are not. ``c`` plays both roles ``c`` and
    ``d``. Edge ``e0`` joins ``a`` and ``b``.
    """

    region: frozenset[str]
    a: str
    b: str
    c: str
    e0: int

    def __post_init__(self):
        object.__setattr__(self, "region", frozenset(self.region))


@dataclass(frozen=True)
class MutationDecomposition:
    """``region`` holds the interior nodes of ``G_R``; it meets the rest only at ``v1`` and ``v2``."""

    region: frozenset[str]
    v1: str
    v2: str

    def __post_init__(self):
        object.__setattr__(self, "region", frozenset(self.region))


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> SignedBipartiteGraph:
    e_nodes: list[str] = []
    v_nodes: list[str] = []
    raw_edges: list[tuple[int, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise GraphError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key = key.strip()
        words = rest.split()
        if key == "E":
            e_nodes.extend(words)
        elif key == "V":
            v_nodes.extend(words)
        elif key == "edge":
            if len(words) not in (2, 3):
                raise GraphError(f"line {lineno}: edge needs 'e v [+|-]'")
            sign = 1
            if len(words) == 3:
                if words[2] not in ("+", "-"):
                    raise GraphError(f"line {lineno}: bad sign {words[2]!r}")
                sign = 1 if words[2] == "+" else -1
            raw_edges.append((lineno, words[0], words[1], sign))
        elif key == "rot":
            # rotation systems belong to plane embeddings, see homfly.parse_plane_graph
            continue
        else:
            raise GraphError(f"line {lineno}: unknown key {key!r}")
    e_set, v_set = set(e_nodes), set(v_nodes)
    for name in e_set & v_set:
        raise GraphError(f"node {name!r} declared in both classes")
    if len(e_set) != len(e_nodes) or len(v_set) != len(v_nodes):
        raise GraphError("duplicate node declaration")
    edges = []
    for lineno, e, v, sign in raw_edges:
        if e not in e_set:
            raise GraphError(f"line {lineno}: unknown E-node {e!r}")
        if v not in v_set:
            raise GraphError(f"line {lineno}: unknown V-node {v!r}")
        edges.append((e, v, sign))
    return SignedBipartiteGraph(tuple(e_nodes), tuple(v_nodes), tuple(edges))


def format_graph(g: SignedBipartiteGraph) -> str:
    lines = ["E: " + " ".join(g.e_nodes), "V: " + " ".join(g.v_nodes)]
    for e, v, sign in g.edges:
        lines.append(f"edge: {e} {v} {'+' if sign == 1 else '-'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural queries


def _adjacency(g: SignedBipartiteGraph, mask: Optional[int] = None):
    adj: dict[str, list[tuple[str, int]]] = {name: [] for name in g.nodes}
    for i, (e, v, _) in enumerate(g.edges):
        if mask is not None and not (mask >> i) & 1:
            continue
        adj[e].append((v, i))
        adj[v].append((e, i))
    return adj


def components(g: SignedBipartiteGraph) -> list[SignedBipartiteGraph]:
    adj = _adjacency(g)
    seen: set[str] = set()
    result = []
    for start in g.nodes:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        members = {start}
        while queue:
            node = queue.popleft()
            for other, _ in adj[node]:
                if other not in seen:
                    seen.add(other)
                    members.add(other)
                    queue.append(other)
        result.append(
            SignedBipartiteGraph(
                tuple(n for n in g.e_nodes if n in members),
                tuple(n for n in g.v_nodes if n in members),
                tuple(edge for edge in g.edges if edge[0] in members),
            )
        )
    return result


def is_forest(g: SignedBipartiteGraph) -> bool:
    return g.n_edges == g.n_nodes - len(components(g))


def delete_edges(g: SignedBipartiteGraph, indices: Iterable[int]) -> SignedBipartiteGraph:
    drop = set(indices)
    for i in drop:
        if not 0 <= i < g.n_edges:
            raise GraphError(f"edge index {i} out of range")
    return SignedBipartiteGraph(
        g.e_nodes, g.v_nodes, tuple(edge for i, edge in enumerate(g.edges) if i not in drop)
    )


def negate(g: SignedBipartiteGraph) -> SignedBipartiteGraph:
    return SignedBipartiteGraph(g.e_nodes, g.v_nodes, tuple((e, v, -s) for e, v, s in g.edges))


def swap_classes(g: SignedBipartiteGraph) -> SignedBipartiteGraph:
    return SignedBipartiteGraph(g.v_nodes, g.e_nodes, tuple((v, e, s) for e, v, s in g.edges))


def _path_avoiding(adj, source, target, banned_edge, rng=None):
    """BFS path source -> target not using ``banned_edge``; returns (nodes, edges) or None."""
    parent: dict[str, tuple[str, int]] = {source: (None, None)}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        if node == target:
            break
        nbrs = adj[node]
        if rng is not None:
            nbrs = nbrs[:]
            rng.shuffle(nbrs)
        for other, idx in nbrs:
            if idx == banned_edge or other in parent:
                continue
            parent[other] = (node, idx)
            queue.append(other)
    if target not in parent:
        return None
    nodes, edges = [target], []
    node = target
    while node != source:
        prev, idx = parent[node]
        edges.append(idx)
        nodes.append(prev)
        node = prev
    nodes.reverse()
    edges.reverse()
    return nodes, edges


def _cycle_through(g, adj, idx, rng=None) -> Optional[CycleWitness]:
    e, v, _ = g.edges[idx]
    found = _path_avoiding(adj, v, e, idx, rng)
    if found is None:
        return None
    nodes, edges = found
    # cycle: e --idx--> v --path--> e
    return CycleWitness(tuple([e] + nodes[:-1]), tuple([idx] + edges))


def find_cycle(g: SignedBipartiteGraph, mask: Optional[int] = None) -> Optional[CycleWitness]:
    """Shortest cycle of the underlying multigraph, or ``None`` for a forest.

    ``mask`` restricts the search to the edges whose bit is set. Ties are broken
    by lowest starting edge index, so the result is deterministic.
    """
    adj = _adjacency(g, mask)
    best = None
    for idx in range(g.n_edges):
        if mask is not None and not (mask >> idx) & 1:
            continue
        cycle = _cycle_through(g, adj, idx)
        if cycle is not None and (best is None or len(cycle.edges) < len(best.edges)):
            best = cycle
            if len(best.edges) == 2:
                break
    return best


def random_cycle(
    g: SignedBipartiteGraph, rng: random.Random, mask: Optional[int] = None
) -> Optional[CycleWitness]:
    """Some cycle chosen at random (through a random non-bridge edge), rotated and reversed at random."""
    adj = _adjacency(g, mask)
    order = [i for i in range(g.n_edges) if mask is None or (mask >> i) & 1]
    rng.shuffle(order)
    for idx in order:
        cycle = _cycle_through(g, adj, idx, rng)
        if cycle is None:
            continue
        nodes, edges = list(cycle.nodes), list(cycle.edges)
        if rng.random() < 0.5:
            # reverse direction: node i sits between edges i-1 and i
            edges = edges[::-1]
            nodes = [nodes[0]] + nodes[1:][::-1]
        shift = rng.randrange(len(edges))
        nodes = nodes[shift:] + nodes[:shift]
        edges = edges[shift:] + edges[:shift]
        return CycleWitness(tuple(nodes), tuple(edges))
    return None


# ---------------------------------------------------------------------------
# flype and mutation


def _reassemble(g, color_of: dict[str, str], endpoints: list[tuple[str, str]]):
    e_nodes = tuple(n for n in _ordered_nodes(g, color_of) if color_of[n] == "E")
    v_nodes = tuple(n for n in _ordered_nodes(g, color_of) if color_of[n] == "V")
    edges = []
    for (x, y), (_, _, sign) in zip(endpoints, g.edges):
        cx, cy = color_of[x], color_of[y]
        if cx == cy:
            raise GraphError(f"color clash on edge {x}-{y}")
        edges.append((x, y, sign) if cx == "E" else (y, x, sign))
    return SignedBipartiteGraph(e_nodes, v_nodes, tuple(edges))


def _ordered_nodes(g, color_of):
    return [n for n in g.nodes if n in color_of] + sorted(n for n in color_of if n not in set(g.nodes))


def _flip(color: str) -> str:
    return "V" if color == "E" else "E"


def validate_flype(g: SignedBipartiteGraph, fd: FlypeDecomposition) -> None:
    nodes = set(g.nodes)
    if not fd.region <= nodes:
        raise GraphError("flype region names unknown nodes")
    if fd.b not in fd.region:
        raise GraphError("b must lie in G_R")
    if fd.a in fd.region or fd.c in fd.region:
        raise GraphError("a and c must lie outside G_R")
    if fd.a not in nodes or fd.c not in nodes:
        raise GraphError("unknown marked node")
    if not 0 <= fd.e0 < g.n_edges:
        raise GraphError("e0 out of range")
    e, v, _ = g.edges[fd.e0]
    if {e, v} != {fd.a, fd.b}:
        raise GraphError("e0 must join a and b")
    for i, (x, y, _) in enumerate(g.edges):
        if i == fd.e0:
            continue
        inside = (x in fd.region) + (y in fd.region)
        if inside == 1:
            outside = y if x in fd.region else x
            if outside != fd.c:
                raise GraphError(f"edge {i} leaves G_R at {outside!r}, not at the shared node")


def flype(g: SignedBipartiteGraph, fd: FlypeDecomposition) -> SignedBipartiteGraph:
    """Graph flyping: flip colors in G_R, glue the image of ``b`` to ``a``, move ``e0`` to ``c``.

    The image of ``d`` (the copy of the shared node ``c`` inside ``G_R``) takes
    over the name of ``b``, so node names are conserved.
    """
    validate_flype(g, fd)
    color_of = {n: g.color(n) for n in g.nodes}
    for n in fd.region:
        color_of[n] = _flip(color_of[n])
    d_bar = fd.b
    color_of[d_bar] = _flip(color_of[fd.c])

    def move(node, in_region_edge):
        if node == fd.b:
            return fd.a
        if node == fd.c and in_region_edge:
            return d_bar
        return node

    endpoints = []
    for i, (x, y, _) in enumerate(g.edges):
        if i == fd.e0:
            endpoints.append((d_bar, fd.c))
            continue
        in_region = x in fd.region or y in fd.region
        endpoints.append((move(x, in_region), move(y, in_region)))
    return _reassemble(g, color_of, endpoints)


def validate_mutation(g: SignedBipartiteGraph, md: MutationDecomposition) -> None:
    nodes = set(g.nodes)
    if md.v1 == md.v2:
        raise GraphError("v1 and v2 must differ")
    if md.v1 not in nodes or md.v2 not in nodes or not md.region <= nodes:
        raise GraphError("mutation names unknown nodes")
    if md.v1 in md.region or md.v2 in md.region:
        raise GraphError("v1, v2 must not be interior nodes of G_R")
    allowed = md.region | {md.v1, md.v2}
    for i, (x, y, _) in enumerate(g.edges):
        if (x in md.region or y in md.region) and not (x in allowed and y in allowed):
            raise GraphError(f"edge {i} connects G_R to the rest away from v1, v2")


def mutate(g: SignedBipartiteGraph, md: MutationDecomposition) -> SignedBipartiteGraph:
    validate_mutation(g, md)
    color_of = {n: g.color(n) for n in g.nodes}
    if color_of[md.v1] != color_of[md.v2]:
        for n in md.region:
            color_of[n] = _flip(color_of[n])
    swap = {md.v1: md.v2, md.v2: md.v1}
    endpoints = []
    for x, y, _ in g.edges:
        if x in md.region or y in md.region:
            endpoints.append((swap.get(x, x), swap.get(y, y)))
        else:
            endpoints.append((x, y))
    return _reassemble(g, color_of, endpoints)


# ---------------------------------------------------------------------------
# canonical form


def canonical_form(g: SignedBipartiteGraph) -> bytes:
    """Canonical encoding under color- and sign-preserving isomorphism.

    Color refinement followed by individualization of the first non-singleton
    cell; the lexicographically least edge encoding over all leaves wins.
    """
    n = g.n_nodes
    if n > CANONICAL_NODE_CAP:
        raise GraphError(f"canonical_form supports at most {CANONICAL_NODE_CAP} nodes, got {n}")
    ne = len(g.e_nodes)
    # multiplicity structure: (i, j) -> (#positive, #negative)
    mult: dict[tuple[int, int], list[int]] = {}
    for i, j in g.endpoint_indices():
        mult.setdefault((i, j), [0, 0])
    for (i, j), (_, _, s) in zip(g.endpoint_indices(), g.edges):
        mult[(i, j)][0 if s == 1 else 1] += 1
    nbrs: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in range(n)]
    for (i, j), (p, q) in mult.items():
        nbrs[i].append((j, (p, q)))
        nbrs[j].append((i, (p, q)))

    def refine(colors: list[int]) -> list[int]:
        while True:
            sigs = [
                (colors[u], tuple(sorted((colors[w], m) for w, m in nbrs[u]))) for u in range(n)
            ]
            ranks = {sig: r for r, sig in enumerate(sorted(set(sigs)))}
            new = [ranks[s] for s in sigs]
            if len(set(new)) == len(set(colors)):
                return new
            colors = new

    def encode(colors: list[int]) -> tuple:
        pos = colors  # discrete: colors are a permutation of range(n)
        return tuple(sorted((pos[i], pos[j], p, q) for (i, j), (p, q) in mult.items()))

    best: list = [None]

    def search(colors: list[int]):
        if len(set(colors)) == n:
            code = encode(colors)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for u in range(n):
            if colors[u] != target:
                continue
            split = [2 * c + (1 if c > target or (c == target and w != u) else 0) for w, c in enumerate(colors)]
            search(refine(split))

    start = refine([0 if i < ne else 1 for i in range(n)])
    # keep E before V after refinement: the class is part of the first signature
    search(start)
    header = f"{ne}|{n - ne}|{g.n_edges}:"
    body = ";".join(",".join(map(str, t)) for t in best[0]) if best[0] else ""
    return (header + body).encode()
