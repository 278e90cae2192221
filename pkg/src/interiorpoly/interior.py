"""Interior polynomials by cycle recursion, and the signed variants built on them."""

from __future__ import annotations

import itertools
from typing import Callable, Optional

from .bigraph import (
    CycleWitness,
    FlypeDecomposition,
    GraphError,
    MutationDecomposition,
    SignedBipartiteGraph,
    delete_edges,
    find_cycle,
    flype,
    mutate,
    negate,
)
from .families import subdivision
from .poly import IntPoly, reverse_with_sign

__all__ = [
    "interior_recursive",
    "interior_signed",
    "interior_signed_minus",
    "interior_signed_skein",
    "mirror_transform",
    "subgraph_expansion_check",
    "tutte_polynomial",
    "tutte_specialization_check",
    "invariance_suite",
    "SUBGRAPH_EDGE_CAP",
]

ONE_MINUS_X = IntPoly([1, -1])
SUBGRAPH_EDGE_CAP = 14

CycleFinder = Callable[[SignedBipartiteGraph, int], Optional[CycleWitness]]


def _count_components(n: int, ends: list[tuple[int, int]], mask: int) -> int:
    parent = list(range(n))

    def root(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    k = n
    for idx, (i, j) in enumerate(ends):
        if (mask >> idx) & 1:
            ri, rj = root(i), root(j)
            if ri != rj:
                parent[ri] = rj
                k -= 1
    return k


class _Recursion:
    """Cycle recursion on spanning subgraphs of one graph, memoized by edge bitmask."""

    def __init__(self, g: SignedBipartiteGraph, cycle_finder: Optional[CycleFinder] = None):
        self.g = g
        self.n = g.n_nodes
        self.ends = g.endpoint_indices()
        self.find = cycle_finder or find_cycle
        self.memo: dict[int, IntPoly] = {}

    def __call__(self, mask: int) -> IntPoly:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        k = _count_components(self.n, self.ends, mask)
        if bin(mask).count("1") == self.n - k:
            value = ONE_MINUS_X ** (k - 1)
        else:
            cycle = self.find(self.g, mask)
            eps = cycle.epsilon
            value = IntPoly()
            for r in range(1, len(eps) + 1):
                for subset in itertools.combinations(eps, r):
                    sub = mask
                    for i in subset:
                        sub &= ~(1 << i)
                    term = self(sub)
                    value = value + term if r % 2 else value - term
        self.memo[mask] = value
        return value

    def full(self) -> int:
        return (1 << self.g.n_edges) - 1

    def without(self, indices) -> int:
        mask = self.full()
        for i in indices:
            mask &= ~(1 << i)
        return mask


def interior_recursive(g: SignedBipartiteGraph, cycle_finder: Optional[CycleFinder] = None) -> IntPoly:
    """``I'_G`` of the underlying unsigned graph.

    Forests give ``(1-x)^(k-1)``; otherwise a cycle's alternate edges
    ``eps_1..eps_n`` are deleted in all nonempty combinations with signs.
    """
    rec = _Recursion(g, cycle_finder)
    return rec(rec.full())


def _alternating(g: SignedBipartiteGraph, pool: list[int], cycle_finder=None) -> IntPoly:
    rec = _Recursion(g, cycle_finder)
    total = IntPoly()
    for r in range(len(pool) + 1):
        for subset in itertools.combinations(pool, r):
            term = rec(rec.without(subset))
            total = total + term if r % 2 == 0 else total - term
    return total


def interior_signed(g: SignedBipartiteGraph, cycle_finder: Optional[CycleFinder] = None) -> IntPoly:
    """``I+_G``: alternating sum of ``I'`` over deletions of negative-edge subsets."""
    return _alternating(g, g.negative_edges(), cycle_finder)


def interior_signed_minus(g: SignedBipartiteGraph) -> IntPoly:
    """``I-_G``: the same sum taken over subsets of the positive edges."""
    return _alternating(g, g.positive_edges())


def interior_signed_skein(g: SignedBipartiteGraph) -> IntPoly:
    """``I+_G`` through the skein relation ``I+_G = I+_{G+eps} - I+_{G minus eps}``."""
    neg = g.negative_edges()
    if not neg:
        return interior_recursive(g)
    eps = neg[0]
    return interior_signed_skein(g.with_sign(eps, 1)) - interior_signed_skein(delete_edges(g, [eps]))


def mirror_transform(g: SignedBipartiteGraph) -> IntPoly:
    """Predicted ``I+_{-G}``: ``(-1)^(|edges|+|E|+|V|-1) x^(|E|+|V|-1) I+_G(1/x)``."""
    n = g.n_nodes - 1
    p = interior_signed(g)
    if p.degree > n:
        raise ArithmeticError(f"deg I+ = {p.degree} exceeds |E|+|V|-1 = {n}")
    return reverse_with_sign(p, n, (-1) ** ((g.n_edges + n) % 2))


def subgraph_expansion_check(g: SignedBipartiteGraph) -> bool:
    """``(-x)^(|E|+|V|-1) I'_G(1/x) == sum over edge subsets S of (-1)^|S| I'_S``."""
    m = g.n_edges
    if m > SUBGRAPH_EDGE_CAP:
        raise GraphError(f"subgraph expansion needs at most {SUBGRAPH_EDGE_CAP} edges, got {m}")
    n = g.n_nodes - 1
    rec = _Recursion(g)
    lhs = reverse_with_sign(rec(rec.full()), n, (-1) ** n)
    rhs = IntPoly()
    for mask in range(1 << m):
        term = rec(mask)
        rhs = rhs + term if bin(mask).count("1") % 2 == 0 else rhs - term
    return lhs == rhs


# ---------------------------------------------------------------------------
# Tutte polynomial of a classical multigraph


def _connected(n: int, edges) -> bool:
    return _count_components(n, list(edges), (1 << len(edges)) - 1) == 1


def tutte_polynomial(n: int, edges) -> dict[tuple[int, int], int]:
    """``T(x, y)`` of a classical multigraph by deletion-contraction, as ``{(i, j): c}``."""
    edges = [tuple(e) for e in edges]
    if not edges:
        return {(0, 0): 1}
    (a, b), rest = edges[0], edges[1:]

    def shift(poly, di, dj):
        return {(i + di, j + dj): c for (i, j), c in poly.items()}

    def add(p, q):
        out = dict(p)
        for k, c in q.items():
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c}

    if a == b:
        return shift(tutte_polynomial(n, rest), 0, 1)
    # contraction: merge b into a, relabel vertices above b downward
    def relabel(u):
        u = a if u == b else u
        return u - 1 if u > b else u

    contracted = [(relabel(u), relabel(w)) for u, w in rest]
    still_connected = _count_components(n, rest, (1 << len(rest)) - 1) == _count_components(
        n, edges, (1 << len(edges)) - 1
    )
    if not still_connected:
        return shift(tutte_polynomial(n - 1, contracted), 1, 0)
    return add(tutte_polynomial(n, rest), tutte_polynomial(n - 1, contracted))


def tutte_specialization_check(n: int, edges) -> bool:
    """Interior polynomial of the subdivision equals ``x^(|V|-1) T(1/x, 1)``."""
    if not _connected(n, edges):
        raise GraphError("Tutte comparison needs a connected graph")
    tutte = tutte_polynomial(n, edges)
    coeffs = [0] * n
    for (i, _), c in tutte.items():
        coeffs[n - 1 - i] += c
    return interior_recursive(subdivision(n, edges)) == IntPoly(coeffs)


def invariance_suite(g: SignedBipartiteGraph, decomposition) -> bool:
    """``I+`` is unchanged by the flype or mutation described by ``decomposition``."""
    if isinstance(decomposition, FlypeDecomposition):
        h = flype(g, decomposition)
    elif isinstance(decomposition, MutationDecomposition):
        h = mutate(g, decomposition)
    else:
        raise TypeError(f"not a decomposition: {decomposition!r}")
    return interior_signed(g) == interior_signed(h)


def interior_minus_via_mirror(g: SignedBipartiteGraph) -> IntPoly:
    """``I-_G`` computed as ``I+_{-G}``."""
    return interior_signed(negate(g))
