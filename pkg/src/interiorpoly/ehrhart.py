"""Root polytopes, lattice-point counting, Ehrhart polynomials and series.

A lattice point ``p`` (indexed by ``E ⊎ V``, E block first) lies in the
dilation ``s * Q_G`` iff both blocks are nonnegative and sum to ``s`` and
the transportation problem "ship ``p_e`` from each ``e`` to the ``p_v``
of each ``v`` along edges of ``G``" is feasible. Single points are decided
by max-flow; bulk enumeration uses the equivalent cut condition
``p(A) <= p(N(A))`` for every set ``A`` of nodes on one side.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .bigraph import SignedBipartiteGraph, components, delete_edges
from .hull import affine_dimension
from .poly import IntPoly, RatPoly, hstar_from_counts, interpolate, series_coefficients

__all__ = [
    "RootPolytope",
    "root_polytope",
    "dilation_membership",
    "relint_membership",
    "lattice_points",
    "count_points",
    "count_interior_points",
    "ehrhart_polynomial",
    "interior_polynomial_via_ehrhart",
    "interior_signed_via_ehrhart",
    "signed_ehr_check",
    "reciprocity_check",
    "lattice_indicator_check",
    "root_polytope_dimension",
]


@dataclass(frozen=True)
class RootPolytope:
    graph: SignedBipartiteGraph
    vertices: tuple[tuple[int, ...], ...]
    dim: int


def root_polytope(g: SignedBipartiteGraph) -> RootPolytope:
    n = g.n_nodes
    verts = []
    for i, j in g.endpoint_indices():
        point = [0] * n
        point[i] = point[j] = 1
        verts.append(tuple(point))
    dim = affine_dimension([tuple(Fraction(c) for c in p) for p in verts]) if verts else -1
    return RootPolytope(g, tuple(verts), dim)


def root_polytope_dimension(g: SignedBipartiteGraph) -> int:
    """``|E|+|V|-2`` for connected graphs with an edge; exact rank otherwise."""
    comps = components(g)
    if len(comps) == 1 and g.n_edges:
        return g.n_nodes - 2
    return root_polytope(g).dim


# ---------------------------------------------------------------------------
# single-point decisions by max-flow


def _max_flow(n: int, cap: dict[tuple[int, int], int], source: int, sink: int) -> int:
    adj: dict[int, set[int]] = {u: set() for u in range(n)}
    residual: dict[tuple[int, int], int] = {}
    for (u, w), c in cap.items():
        residual[(u, w)] = residual.get((u, w), 0) + c
        residual.setdefault((w, u), 0)
        adj[u].add(w)
        adj[w].add(u)
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for w in adj[u]:
                if w not in parent and residual[(u, w)] > 0:
                    parent[w] = u
                    queue.append(w)
        if sink not in parent:
            return flow
        bottleneck = None
        w = sink
        while parent[w] is not None:
            u = parent[w]
            bottleneck = residual[(u, w)] if bottleneck is None else min(bottleneck, residual[(u, w)])
            w = u
        w = sink
        while parent[w] is not None:
            u = parent[w]
            residual[(u, w)] -= bottleneck
            residual[(w, u)] += bottleneck
            w = u
        flow += bottleneck


def dilation_membership(g: SignedBipartiteGraph, p: Sequence[int], s: int) -> bool:
    """Is the lattice point ``p`` in ``s * Q_G``?  (``s = 0``: only the origin.)"""
    ne, n = len(g.e_nodes), g.n_nodes
    if len(p) != n:
        raise ValueError(f"point has {len(p)} coordinates, expected {n}")
    if any(c < 0 for c in p):
        return False
    if sum(p[:ne]) != s or sum(p[ne:]) != s:
        return False
    if s == 0:
        return True
    source, sink = n, n + 1
    cap: dict[tuple[int, int], int] = {}
    for i in range(ne):
        if p[i]:
            cap[(source, i)] = p[i]
    for j in range(ne, n):
        if p[j]:
            cap[(j, sink)] = p[j]
    for i, j in set(g.endpoint_indices()):
        cap[(i, j)] = s
    return _max_flow(n + 2, cap, source, sink) == s


def relint_membership(g: SignedBipartiteGraph, p: Sequence[int], s: int) -> bool:
    """Is ``p`` in the relative interior of ``s * Q_G``?

    Equivalent to a representation with every edge weight strictly positive;
    since the transportation polytope has integral vertices, edge ``uv`` can
    carry positive weight iff ``p - (u + v)`` lies in ``(s-1) * Q_G``.
    """
    if not g.n_edges:
        raise ValueError("relative interior of an edgeless root polytope is undefined")
    if not dilation_membership(g, p, s):
        return False
    for i, j in set(g.endpoint_indices()):
        q = list(p)
        q[i] -= 1
        q[j] -= 1
        if not dilation_membership(g, q, s - 1):
            return False
    return True


# ---------------------------------------------------------------------------
# vectorized enumeration


@lru_cache(maxsize=4096)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 0:
        return np.zeros((1 if total == 0 else 0, 0), dtype=np.int64)
    rows = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(total + parts - 2 - prev)
        rows.append(row)
    out = np.array(rows, dtype=np.int64).reshape(-1, parts)
    out.setflags(write=False)
    return out


def _side_structures(g: SignedBipartiteGraph):
    """Active nodes per side and the subset/neighbourhood matrices for the cut condition."""
    ne, n = len(g.e_nodes), g.n_nodes
    ends = g.endpoint_indices()
    active = sorted({i for e in ends for i in e})
    act_e = [i for i in active if i < ne]
    act_v = [j for j in active if j >= ne]
    # test subsets of the smaller side
    if len(act_e) <= len(act_v):
        side, other = act_e, act_v
        nbr = {i: {j for a, j in ends if a == i} for i in side}
    else:
        side, other = act_v, act_e
        nbr = {j: {a for a, b in ends if b == j} for j in side}
    k = len(side)
    pos_other = {u: t for t, u in enumerate(other)}
    subsets = range(1, 1 << k)
    m_side = np.zeros((k, len(subsets)), dtype=np.int64)
    m_other = np.zeros((len(other), len(subsets)), dtype=np.int64)
    for col, mask in enumerate(subsets):
        reach: set[int] = set()
        for t in range(k):
            if (mask >> t) & 1:
                m_side[t, col] = 1
                reach |= nbr[side[t]]
        for u in reach:
            m_other[pos_other[u], col] = 1
    return side, other, m_side, m_other


def _feasible_pairs(g: SignedBipartiteGraph, s: int):
    """Yield ``(side_block, other_block, mask)`` chunks; ``mask[i, j]`` marks feasible pairs."""
    side, other, m_side, m_other = _side_structures(g)
    a = _compositions(s, len(side))
    b = _compositions(s, len(other))
    sa = a @ m_side
    sb = b @ m_other
    width = max(1, sa.shape[1])
    chunk = max(1, 4_000_000 // max(1, b.shape[0] * width))
    for start in range(0, a.shape[0], chunk):
        block = sa[start:start + chunk]
        ok = (block[:, None, :] <= sb[None, :, :]).all(axis=2)
        yield side, other, a[start:start + chunk], b, ok


def count_points(g: SignedBipartiteGraph, s: int) -> int:
    """Number of lattice points in ``s * Q_G``; ``count_points(g, 0) == 1`` always."""
    if s < 0:
        raise ValueError("dilation factor must be nonnegative")
    if s == 0:
        return 1
    if not g.n_edges:
        return 0
    return int(sum(int(ok.sum()) for *_, ok in _feasible_pairs(g, s)))


def lattice_points(g: SignedBipartiteGraph, s: int) -> np.ndarray:
    """All lattice points of ``s * Q_G`` as rows of an integer array (E block first)."""
    n = g.n_nodes
    if s == 0:
        return np.zeros((1, n), dtype=np.int64)
    if not g.n_edges:
        return np.zeros((0, n), dtype=np.int64)
    out = []
    for side, other, a, b, ok in _feasible_pairs(g, s):
        ii, jj = np.nonzero(ok)
        pts = np.zeros((len(ii), n), dtype=np.int64)
        pts[:, side] = a[ii]
        pts[:, other] = b[jj]
        out.append(pts)
    return np.concatenate(out) if out else np.zeros((0, n), dtype=np.int64)


def _encode(points: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(points.shape[1], dtype=np.int64)
    return points @ weights


def count_interior_points(g: SignedBipartiteGraph, s: int) -> int:
    """Lattice points in the relative interior of ``s * Q_G`` (``s >= 1``)."""
    if not g.n_edges:
        raise ValueError("relative interior of an edgeless root polytope is undefined")
    if s < 1:
        raise ValueError("dilation factor must be positive")
    pts = lattice_points(g, s)
    inner = _encode(lattice_points(g, s - 1), s + 1)
    keep = np.ones(len(pts), dtype=bool)
    for i, j in set(g.endpoint_indices()):
        shifted = pts.copy()
        shifted[:, i] -= 1
        shifted[:, j] -= 1
        valid = (shifted[:, i] >= 0) & (shifted[:, j] >= 0)
        keep &= valid & np.isin(_encode(np.maximum(shifted, 0), s + 1), inner)
    return int(keep.sum())


# ---------------------------------------------------------------------------
# polynomials and series


def ehrhart_polynomial(g: SignedBipartiteGraph) -> RatPoly:
    dim = root_polytope_dimension(g)
    top = max(dim, 0)
    return interpolate([(s, count_points(g, s)) for s in range(top + 1)])


def interior_polynomial_via_ehrhart(g: SignedBipartiteGraph) -> IntPoly:
    """``I'_G`` as the Ehrhart-series numerator over ``(1-x)^(|E|+|V|-1)``."""
    n = g.n_nodes
    if not g.n_edges:
        return IntPoly([1, -1]) ** (n - 1)
    d = n - 2
    return hstar_from_counts([count_points(g, s) for s in range(d + 1)], d)


def interior_signed_via_ehrhart(g: SignedBipartiteGraph) -> IntPoly:
    """``I+_G`` with every summand of the negative-edge expansion taken from lattice-point counts."""
    neg = g.negative_edges()
    total = IntPoly()
    for r in range(len(neg) + 1):
        for subset in itertools.combinations(neg, r):
            term = interior_polynomial_via_ehrhart(delete_edges(g, subset))
            total = total + term if r % 2 == 0 else total - term
    return total


def signed_ehr_check(g: SignedBipartiteGraph, x0, order: int) -> tuple[Fraction, Fraction]:
    """Both sides of the signed Ehrhart-series identity, truncated after ``x^order`` and evaluated at ``x0``.

    Left: alternating sum over negative-edge subsets of the counted series.
    Right: the series of ``I+_G(x) / (1-x)^(|E|+|V|-1)``.
    """
    from .interior import interior_signed

    x0 = Fraction(x0)
    if x0 == 1:
        raise ValueError("x0 = 1 is a pole of the series")
    n = g.n_nodes
    if order < n:
        raise ValueError(f"truncation order must be at least |E|+|V| = {n}")
    neg = g.negative_edges()
    lhs = Fraction(0)
    for r in range(len(neg) + 1):
        for subset in itertools.combinations(neg, r):
            h = delete_edges(g, subset)
            series = sum(count_points(h, s) * x0 ** s for s in range(order + 1))
            lhs += (-1) ** r * series
    coeffs = series_coefficients(interior_signed(g), n - 1, order)
    rhs = sum(Fraction(c) * x0 ** k for k, c in enumerate(coeffs))
    return lhs, rhs


def reciprocity_check(g: SignedBipartiteGraph, s_max: int) -> bool:
    """``(-1)^dim * eps(-s) == #interior points of s*Q_G`` for ``1 <= s <= s_max``."""
    dim = root_polytope_dimension(g)
    eps = ehrhart_polynomial(g)
    for s in range(1, s_max + 1):
        if (-1) ** dim * eps(-s) != count_interior_points(g, s):
            return False
    return True


def lattice_indicator_check(g: SignedBipartiteGraph, s: int) -> bool:
    """Pointwise check of the subgraph indicator identity on all candidate lattice points of ``s * Q_G``.

    ``(-1)^dim [relint s*Q_G](p) == sum over nonempty edge subsets S of (-1)^(|S|-1) [s*Q_S](p)``.
    """
    n, ne, m = g.n_nodes, len(g.e_nodes), g.n_edges
    dim = root_polytope_dimension(g)
    base = s + 1
    interior = {
        tuple(p)
        for p in lattice_points(g, s)
        if s >= 1 and relint_membership(g, list(map(int, p)), s)
    }
    totals: dict[int, int] = {}
    for mask in range(1, 1 << m):
        sub = delete_edges(g, [i for i in range(m) if not (mask >> i) & 1])
        sign = (-1) ** (bin(mask).count("1") - 1)
        for code in _encode(lattice_points(sub, s), base).tolist():
            totals[code] = totals.get(code, 0) + sign
    # every candidate: nonnegative blocks summing to s
    for a in _compositions(s, ne):
        for b in _compositions(s, n - ne):
            p = np.concatenate([a, b])
            code = int(_encode(p[None, :], base)[0])
            lhs = (-1) ** dim * (1 if tuple(p) in interior else 0)
            if lhs != totals.get(code, 0):
                return False
    return True
