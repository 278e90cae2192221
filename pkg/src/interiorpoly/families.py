"""Exhaustive and seeded-random graph families for the verification suites."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator

from .bigraph import (
    FlypeDecomposition,
    MutationDecomposition,
    SignedBipartiteGraph,
    canonical_form,
)

__all__ = [
    "connected_bigraphs",
    "sign_patterns",
    "classical_multigraphs",
    "subdivision",
    "random_flype_instances",
    "random_mutation_instances",
]


def _graph(ne: int, nv: int, pairs) -> SignedBipartiteGraph:
    return SignedBipartiteGraph(
        tuple(f"e{i}" for i in range(ne)),
        tuple(f"v{j}" for j in range(nv)),
        tuple((f"e{i}", f"v{j}", 1) for i, j in pairs),
    )


@lru_cache(maxsize=None)
def _layer(m: int) -> tuple[tuple[int, int, tuple[tuple[int, int], ...]], ...]:
    """Connected unsigned bipartite multigraphs with exactly ``m`` edges, one per iso class."""
    if m == 0:
        return ((1, 0, ()), (0, 1, ()))
    seen: dict[bytes, tuple] = {}
    for ne, nv, pairs in _layer(m - 1):
        if m == 1:
            candidates = [(1, 1, ((0, 0),))]
        else:
            candidates = []
            for i in range(ne):
                for j in range(nv):
                    candidates.append((ne, nv, tuple(sorted(pairs + ((i, j),)))))
                candidates.append((ne, nv + 1, tuple(sorted(pairs + ((i, nv),)))))
            for j in range(nv):
                candidates.append((ne + 1, nv, tuple(sorted(pairs + ((ne, j),)))))
        for cand in candidates:
            key = canonical_form(_graph(*cand))
            if key not in seen:
                seen[key] = cand
    return tuple(seen[k] for k in sorted(seen))


def connected_bigraphs(max_edges: int, min_edges: int = 0) -> Iterator[SignedBipartiteGraph]:
    """All connected bipartite multigraphs (E/V classes distinguished) up to isomorphism, all edges positive."""
    for m in range(min_edges, max_edges + 1):
        for cand in _layer(m):
            yield _graph(*cand)


def sign_patterns(g: SignedBipartiteGraph, exhaustive_up_to: int, rng: random.Random, samples: int = 3):
    """Every sign pattern for small graphs; otherwise all-positive, all-negative and ``samples`` random ones."""
    m = g.n_edges
    if m <= exhaustive_up_to:
        for signs in itertools.product((1, -1), repeat=m):
            yield g.with_signs(signs)
        return
    yield g.with_signs([1] * m)
    yield g.with_signs([-1] * m)
    for _ in range(samples):
        yield g.with_signs([rng.choice((1, -1)) for _ in range(m)])


# ---------------------------------------------------------------------------
# classical multigraphs for the Tutte comparison


def subdivision(n_vertices: int, edges) -> SignedBipartiteGraph:
    """Bipartite graph with one E-node per classical edge joined to its endpoints (a loop gives a double edge)."""
    return SignedBipartiteGraph(
        tuple(f"h{k}" for k in range(len(edges))),
        tuple(f"p{i}" for i in range(n_vertices)),
        tuple(
            (f"h{k}", f"p{x}", 1)
            for k, (a, b) in enumerate(edges)
            for x in (a, b)
        ),
    )


@lru_cache(maxsize=None)
def _classical_layer(m: int, loops: bool):
    if m == 0:
        return ((1, ()),)
    seen: dict[bytes, tuple] = {}
    for n, edges in _classical_layer(m - 1, loops):
        cands = []
        for a in range(n):
            for b in range(a, n):
                if a == b and not loops:
                    continue
                cands.append((n, tuple(sorted(edges + ((a, b),)))))
            cands.append((n + 1, tuple(sorted(edges + ((a, n),)))))
        for cand in cands:
            key = canonical_form(subdivision(*cand))
            if key not in seen:
                seen[key] = cand
    return tuple(seen[k] for k in sorted(seen))


def classical_multigraphs(max_edges: int, loops: bool = True):
    """Connected classical multigraphs ``(n_vertices, edges)`` with 1..max_edges edges, up to isomorphism."""
    for m in range(1, max_edges + 1):
        yield from _classical_layer(m, loops)


# ---------------------------------------------------------------------------
# flype / mutation instances


def _random_connected(rng: random.Random, n_nodes: int, extra: int, prefix: str):
    """Random connected bicolored multigraph on ``n_nodes`` nodes: a random tree plus ``extra`` edges.

    Returns ``(colors, edges)`` with colors a dict name -> 'E'/'V' and edges a list of name pairs.
    """
    names = [f"{prefix}{i}" for i in range(n_nodes)]
    colors = {names[0]: rng.choice("EV")}
    edges = []
    for i in range(1, n_nodes):
        parent = names[rng.randrange(i)]
        colors[names[i]] = "V" if colors[parent] == "E" else "E"
        edges.append((parent, names[i]))
    e_side = [n for n in names if colors[n] == "E"]
    v_side = [n for n in names if colors[n] == "V"]
    if e_side and v_side:
        for _ in range(extra):
            edges.append((rng.choice(e_side), rng.choice(v_side)))
    return colors, edges


def _assemble(colors: dict, edges: list, rng: random.Random) -> SignedBipartiteGraph:
    e_nodes = tuple(n for n in colors if colors[n] == "E")
    v_nodes = tuple(n for n in colors if colors[n] == "V")
    out = []
    for x, y in edges:
        sign = rng.choice((1, -1))
        out.append((x, y, sign) if colors[x] == "E" else (y, x, sign))
    return SignedBipartiteGraph(e_nodes, v_nodes, tuple(out))


def random_flype_instances(count: int, seed: int = 0, max_edges: int = 10):
    """Seeded random ``(graph, FlypeDecomposition)`` pairs with mixed signs."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        p_colors, p_edges = _random_connected(rng, rng.randint(2, 5), rng.randint(0, 2), "p")
        r_colors, r_edges = _random_connected(rng, rng.randint(1, 4), rng.randint(0, 2), "r")
        r_names = list(r_colors)
        b = rng.choice(r_names)
        d = rng.choice(r_names)
        same_bd = r_colors[b] == r_colors[d]
        p_names = list(p_colors)
        pairs = [
            (a, c)
            for a in p_names
            for c in p_names
            if (p_colors[a] != p_colors[c]) == same_bd
        ]
        if not pairs:
            continue
        a, c = rng.choice(pairs)
        # orient G_R's coloring so that b is opposite to a (then d matches c)
        if r_colors[b] == p_colors[a]:
            r_colors = {n: ("V" if col == "E" else "E") for n, col in r_colors.items()}
        if r_colors[d] != p_colors[c]:
            continue
        rename = {d: c}
        colors = dict(p_colors)
        for n, col in r_colors.items():
            if n != d:
                colors[n] = col
        edges = list(p_edges) + [(rename.get(x, x), rename.get(y, y)) for x, y in r_edges]
        e0 = len(edges)
        edges.append((a, b) if b != d else (a, c))
        if len(edges) > max_edges:
            continue
        if b == d:
            # degenerate flype: G_R is the single node d identified with c; b == c lies outside G_R
            continue
        region = frozenset(n for n in r_colors if n != d)
        g = _assemble(colors, edges, rng)
        yield g, FlypeDecomposition(region, a, b, c, e0)
        produced += 1


def random_mutation_instances(count: int, seed: int = 0, max_edges: int = 10, same_color=None):
    """Seeded random ``(graph, MutationDecomposition)`` pairs; ``same_color`` forces the color case."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        p_colors, p_edges = _random_connected(rng, rng.randint(2, 5), rng.randint(0, 2), "p")
        p_names = list(p_colors)
        want_same = rng.random() < 0.5 if same_color is None else same_color
        pairs = [
            (x, y)
            for x in p_names
            for y in p_names
            if x != y and (p_colors[x] == p_colors[y]) == want_same
        ]
        if not pairs:
            continue
        v1, v2 = rng.choice(pairs)
        n_inner = rng.randint(1, 4)
        inner = [f"r{i}" for i in range(n_inner)]
        colors = dict(p_colors)
        edges = list(p_edges)
        # random connected interior, then attach to v1 and v2 through edges of valid colors
        r_colors, r_edges = _random_connected(rng, n_inner, rng.randint(0, 1), "r")
        for n, col in r_colors.items():
            colors[n] = col
        edges.extend(r_edges)
        opp1 = [n for n in inner if colors[n] != colors[v1]]
        opp2 = [n for n in inner if colors[n] != colors[v2]]
        if not opp1 or not opp2:
            continue
        for _ in range(rng.randint(1, 2)):
            edges.append((v1, rng.choice(opp1)))
        for _ in range(rng.randint(1, 2)):
            edges.append((v2, rng.choice(opp2)))
        if len(edges) > max_edges:
            continue
        g = _assemble(colors, edges, rng)
        yield g, MutationDecomposition(frozenset(inner), v1, v2)
        produced += 1
