"""Exact convex-hull membership and the alternating indicator identity for finite point families.

Everything is decided with :class:`fractions.Fraction` arithmetic; the linear
programs are solved by a dense two-phase simplex with Bland's rule.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "RatPoint",
    "HullProblem",
    "LPResult",
    "solve_lp",
    "affine_dimension",
    "conv_contains",
    "relint_contains",
    "indicator_sides",
    "indicator_identity_check",
    "indicator_identity_failures",
    "generate_samples",
    "standard_pool",
]

RatPoint = tuple  # tuple of Fractions
MAX_POINTS = 9


def _point(p) -> RatPoint:
    return tuple(Fraction(c) for c in p)


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Rank of ``{x_i - x_0}`` by exact Gaussian elimination; ``-1`` for an empty family."""
    pts = [_point(p) for p in points]
    if not pts:
        return -1
    rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    rank = 0
    ncols = len(pts[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class HullProblem:
    points: tuple
    dim: int

    @classmethod
    def of(cls, points) -> HullProblem:
        pts = tuple(_point(p) for p in points)
        if not pts:
            raise ValueError("a hull problem needs at least one point")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("dimension mismatch")
        return cls(pts, affine_dimension(pts))


# ---------------------------------------------------------------------------
# exact simplex


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Optional[Fraction] = None
    x: Optional[list] = None


def _pivot(rows, obj, r, col):
    piv = rows[r][col]
    rows[r] = [v / piv for v in rows[r]]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i != r and row[col] != 0:
            f = row[col]
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    if obj[col] != 0:
        f = obj[col]
        obj[:] = [a - f * b for a, b in zip(obj, prow)]


def _iterate(rows, obj, basis, allowed) -> str:
    while True:
        col = next((j for j in allowed if obj[j] > 0), None)
        if col is None:
            return "optimal"
        best = None
        for i, row in enumerate(rows):
            if row[col] > 0:
                key = (row[-1] / row[col], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        r = best[1]
        _pivot(rows, obj, r, col)
        basis[r] = col


def solve_lp(a: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Maximize ``c.x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    m, n = len(a), len(c)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = list(range(n, n + m))
    # phase one: maximize -(sum of artificials)
    obj = [Fraction(0)] * n + [Fraction(-1)] * m + [Fraction(0)]
    for row in rows:
        obj = [o + v for o, v in zip(obj, row)]
    _iterate(rows, obj, basis, range(n + m))
    if obj[-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(len(rows)):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j] != 0), None)
            if col is None:
                continue
            _pivot(rows, obj, i, col)
            basis[i] = col
        keep.append(i)
    rows = [rows[i][:n] + [rows[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [Fraction(v) for v in c] + [Fraction(0)]
    for i, row in enumerate(rows):
        cb = obj[basis[i]]
        if cb != 0:
            obj = [o - cb * v for o, v in zip(obj, row)]
    status = _iterate(rows, obj, basis, range(n))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    return LPResult("optimal", -obj[-1], x)


# ---------------------------------------------------------------------------
# membership


def _check_dims(points, q):
    d = len(q)
    if any(len(p) != d for p in points):
        raise ValueError("dimension mismatch")


def conv_contains(points: Sequence, q) -> bool:
    """Is ``q`` a convex combination of ``points``?"""
    pts = [_point(p) for p in points]
    q = _point(q)
    if not pts:
        raise ValueError("empty point family")
    _check_dims(pts, q)
    if any(p == q for p in pts):
        return True
    if len(pts) == 1:
        return False
    d = len(q)
    a = [[p[k] for p in pts] for k in range(d)] + [[1] * len(pts)]
    return solve_lp(a, list(q) + [1], [0] * len(pts)).status == "optimal"


def relint_contains(points: Sequence, q) -> bool:
    """Is ``q`` a convex combination of ``points`` with every weight strictly positive?

    Write each weight as ``t + mu_i`` with ``t, mu_i >= 0`` and maximize ``t``.
    """
    pts = [_point(p) for p in points]
    q = _point(q)
    if not pts:
        raise ValueError("empty point family")
    _check_dims(pts, q)
    n, d = len(pts), len(q)
    a = [[sum(p[k] for p in pts)] + [p[k] for p in pts] for k in range(d)]
    a.append([n] + [1] * n)
    res = solve_lp(a, list(q) + [1], [1] + [0] * n)
    return res.status == "optimal" and res.value > 0


# ---------------------------------------------------------------------------
# the indicator identity


def indicator_sides(points: Sequence, q, dim: Optional[int] = None) -> tuple[int, int]:
    """``((-1)^dim [relint Conv X](q), sum over nonempty S of (-1)^(|S|-1) [Conv S](q))``.

    ``points`` is an indexed family: repeated points are separate members.
    """
    pts = [_point(p) for p in points]
    q = _point(q)
    if dim is None:
        dim = affine_dimension(pts)
    lhs = (-1) ** dim if relint_contains(pts, q) else 0
    n = len(pts)
    failed: list[int] = []
    rhs = 0
    for mask in range((1 << n) - 1, 0, -1):
        # supersets come first, so a failed superset rules this subset out
        if any(mask & ~f == 0 for f in failed):
            continue
        subset = [pts[i] for i in range(n) if (mask >> i) & 1]
        if conv_contains(subset, q):
            rhs += (-1) ** (len(subset) - 1)
        else:
            failed.append(mask)
    return lhs, rhs


def generate_samples(points: Sequence, seed: int = 0, n_random: int = 20) -> list:
    """Deterministic sample points: the family, all subset barycenters, pair midpoints, random box points."""
    pts = [_point(p) for p in points]
    n = len(pts)
    d = len(pts[0]) if pts else 0
    out: list = []
    seen: set = set()

    def add(p):
        if p not in seen:
            seen.add(p)
            out.append(p)

    for p in pts:
        add(p)
    for r in range(1, n + 1):
        for subset in itertools.combinations(pts, r):
            add(tuple(sum(c) / r for c in zip(*subset)))
    for p, q in itertools.combinations(pts, 2):
        add(tuple((a + b) / 2 for a, b in zip(p, q)))
    rng = random.Random(seed)
    lo = [min(p[k] for p in pts) - 1 for k in range(d)]
    hi = [max(p[k] for p in pts) + 1 for k in range(d)]
    for _ in range(n_random):
        add(tuple(lo[k] + (hi[k] - lo[k]) * Fraction(rng.randint(0, 24), 24) for k in range(d)))
    return out


def indicator_identity_failures(points: Sequence, samples=None, dedupe: bool = False) -> list:
    """Sample points where the identity fails, as ``(q, lhs, rhs)``."""
    pts = [_point(p) for p in points]
    if dedupe:
        pts = list(dict.fromkeys(pts))
    if len(pts) > MAX_POINTS:
        raise ValueError(f"at most {MAX_POINTS} points supported (2^n subsets), got {len(pts)}")
    if samples is None:
        samples = generate_samples(pts)
    dim = affine_dimension(pts)
    bad = []
    for q in samples:
        lhs, rhs = indicator_sides(pts, q, dim)
        if lhs != rhs:
            bad.append((q, lhs, rhs))
    return bad


def indicator_identity_check(points: Sequence, samples=None, dedupe: bool = False) -> bool:
    return not indicator_identity_failures(points, samples, dedupe)


def standard_pool() -> list[tuple[str, list]]:
    """Fixed configurations (at most 6 points, dimension at most 3), degenerate ones included."""
    F = Fraction
    return [
        ("single point", [(0,)]),
        ("all points equal", [(1, 2), (1, 2), (1, 2)]),
        ("segment", [(0,), (1,)]),
        ("segment with interior point", [(0,), (1,), (F(1, 3),)]),
        ("segment with midpoint", [(0,), (1,), (F(1, 2),)]),
        ("duplicated endpoint", [(0,), (1,), (1,)]),
        ("four collinear in plane", [(0, 0), (1, 1), (2, 2), (F(1, 2), F(1, 2))]),
        ("collinear triple in space", [(0, 0, 0), (1, 2, 3), (2, 4, 6)]),
        ("triangle", [(0, 0), (1, 0), (0, 1)]),
        ("triangle with duplicate vertex", [(0, 0), (1, 0), (0, 1), (1, 0)]),
        ("triangle with interior point", [(0, 0), (3, 0), (0, 3), (1, 1)]),
        ("triangle with edge point", [(0, 0), (2, 0), (0, 2), (1, 0)]),
        ("unit square", [(0, 0), (1, 0), (0, 1), (1, 1)]),
        ("square with center", [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)]),
        ("pentagon", [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)]),
        ("hexagon", [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]),
        ("square with duplicated center", [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 1)]),
        ("tetrahedron", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]),
        ("tetrahedron with centroid", [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (1, 1, 1)]),
        ("planar quadrilateral in space", [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]),
        ("octahedron part", [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]),
        ("square pyramid", [(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 2)]),
        ("triangular prism", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]),
    ]
