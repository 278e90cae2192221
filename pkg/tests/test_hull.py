import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from interiorpoly.hull import (
    HullProblem,
    affine_dimension,
    conv_contains,
    generate_samples,
    indicator_identity_check,
    indicator_identity_failures,
    indicator_sides,
    relint_contains,
    solve_lp,
    standard_pool,
)

F = Fraction


def test_affine_dimension():
    assert affine_dimension([]) == -1
    assert affine_dimension([(1, 2)]) == 0
    assert affine_dimension([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_dimension([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 3
    assert HullProblem.of([(0, 0), (1, 0), (0, 1)]).dim == 2
    with pytest.raises(ValueError):
        HullProblem.of([(0, 0), (1,)])


def test_membership_examples():
    seg = [(0,), (1,)]
    assert relint_contains(seg, (F(1, 2),))
    assert not relint_contains(seg, (0,))
    assert conv_contains(seg, (0,))
    assert not conv_contains(seg, (2,))
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert relint_contains(square, (F(1, 2), F(1, 2)))
    assert not relint_contains(square, (F(1, 2), 0))
    with_inner = [(0,), (1,), (F(1, 3),)]
    assert not relint_contains(with_inner, (0,))
    assert relint_contains(with_inner, (F(1, 2),))
    assert relint_contains([(3, 4)], (3, 4))


def test_indicator_affinely_independent_centroid():
    tri = [(0, 0), (1, 0), (0, 1)]
    assert indicator_sides(tri, (F(1, 3), F(1, 3))) == (1, 1)


@pytest.mark.parametrize("name, points", standard_pool(), ids=[n for n, _ in standard_pool()])
@pytest.mark.parametrize("dedupe", [False, True], ids=["indexed", "deduplicated"])
def test_identity_on_pool(name, points, dedupe):
    assert indicator_identity_failures(points, dedupe=dedupe) == []


def test_pool_shape():
    pool = standard_pool()
    assert all(len(pts) <= 6 and len(pts[0]) <= 3 for _, pts in pool)
    assert any(len(set(map(tuple, pts))) < len(pts) for _, pts in pool)
    assert any(affine_dimension(pts) < len(pts[0]) for _, pts in pool)


def test_samples_are_deterministic_and_distinct():
    pts = [(0, 0), (2, 0), (0, 2)]
    a, b = generate_samples(pts, seed=3), generate_samples(pts, seed=3)
    assert a == b and len(set(a)) == len(a)
    assert (F(2, 3), F(2, 3)) in a  # barycenter of all three


def test_size_cap():
    with pytest.raises(ValueError):
        indicator_identity_check([(i,) for i in range(10)])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4))
def test_identity_on_random_planar_families(points):
    samples = generate_samples(points, n_random=6)
    assert indicator_identity_check(points, samples)


def random_lp(rng):
    m, n = rng.randint(1, 3), rng.randint(2, 5)
    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    x0 = [rng.randint(0, 3) for _ in range(n)]
    feasible = rng.random() < 0.7
    b = [sum(r[j] * x0[j] for j in range(n)) + (0 if feasible else rng.randint(-2, 2)) for r in a]
    c = [rng.randint(-3, 3) for _ in range(n)]
    return a, b, c


@pytest.mark.parametrize("seed", range(40))
def test_simplex_matches_scipy(seed):
    a, b, c = random_lp(random.Random(seed))
    ours = solve_lp(a, b, c)
    ref = linprog(-np.array(c, float), A_eq=np.array(a, float), b_eq=np.array(b, float), bounds=(0, None), method="highs")
    expected = {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
    assert ours.status == expected
    if expected == "optimal":
        assert abs(float(ours.value) - (-ref.fun)) < 1e-7
        assert all(v >= 0 for v in ours.x)
        assert all(sum(F(r[j]) * ours.x[j] for j in range(len(c))) == bi for r, bi in zip(a, b))
