import random

import pytest
from hypothesis import given, settings, strategies as st

from diagrams import FIGURE_EIGHT, RIGHT_TREFOIL, sample_diagrams
from interiorpoly.bigraph import GraphError, SignedBipartiteGraph, canonical_form, negate, parse_graph
from interiorpoly.homfly import (
    CrossingCapError,
    DiagramError,
    LinkDiagram,
    PlaneEmbedding,
    format_pd,
    homfly,
    median_diagram,
    mirror_chain_check,
    mirror_diagram,
    parse_pd,
    parse_plane_graph,
    plane_embedding,
    seifert_analyze,
    seifert_count,
    theorem6_check,
    top_coefficient,
)
from interiorpoly.poly import LaurentPoly2, parse_laurent
from interiorpoly.suites import (
    FIXTURE_5_2,
    FIXTURE_5_2_MIRROR,
    FIXTURE_HOPF,
    diagram_checks,
    five_two_embedding,
    hopf_embedding,
)

K2 = PlaneEmbedding(parse_graph("E: a\nV: p\nedge: a p\n"), {"a": (0,), "p": (0,)})


def square(signs=(1, 1, 1, 1)):
    g = SignedBipartiteGraph(
        ("a", "b"), ("p", "q"), tuple((e, v, s) for (e, v), s in zip((("a", "p"), ("a", "q"), ("b", "p"), ("b", "q")), signs))
    )
    return plane_embedding(g)


# -- median construction and Seifert data ------------------------------------


def test_kink_from_single_edge():
    d = median_diagram(K2)
    sd = seifert_analyze(d)
    assert (sd.circles, sd.crossings, sd.writhe) == (2, 1, 1)
    assert homfly(d) == 1
    assert top_coefficient(d) == 1


def test_hopf_from_double_edge():
    d = median_diagram(hopf_embedding())
    sd = seifert_analyze(d)
    assert (sd.circles, sd.crossings, sd.writhe) == (2, 2, 2)
    assert d.n_components() == 2
    assert homfly(d) == FIXTURE_HOPF
    assert homfly(d).grouped() == "v*z + (v - v^3)*z^-1"


def test_square_median_counts():
    sd = seifert_analyze(median_diagram(square()))
    assert (sd.circles, sd.crossings) == (4, 4)


def test_single_node_gives_unknot():
    pe = PlaneEmbedding(parse_graph("E: a\n"), {"a": ()})
    assert homfly(median_diagram(pe)) == 1


@pytest.mark.parametrize("signs", [(1, 1, 1, 1), (1, -1, 1, 1), (-1, -1, 1, -1), (-1, -1, -1, -1)])
def test_seifert_graph_round_trip(signs):
    pe = square(signs)
    sd = seifert_analyze(median_diagram(pe))
    assert sd.seifert_graph is not None
    assert canonical_form(sd.seifert_graph) == canonical_form(pe.graph)


def test_mirror_seifert_graph_is_negated():
    pe = five_two_embedding()
    sd = seifert_analyze(mirror_diagram(median_diagram(pe)))
    g = sd.seifert_graph
    assert g is not None
    swapped = SignedBipartiteGraph(g.v_nodes, g.e_nodes, tuple((v, e, s) for e, v, s in g.edges))
    assert canonical_form(swapped) == canonical_form(negate(pe.graph)) or canonical_form(g) == canonical_form(
        negate(pe.graph)
    )


# -- HOMFLY values ----------------------------------------------------------


def test_five_two_fixture():
    d = median_diagram(five_two_embedding())
    assert d.n_crossings == 5
    assert homfly(d) == FIXTURE_5_2
    assert homfly(mirror_diagram(d)) == FIXTURE_5_2_MIRROR
    assert top_coefficient(d) == parse_laurent("v^2 + v^4")
    assert top_coefficient(mirror_diagram(d)) == parse_laurent("v^-4 + v^-2")


def test_crossing_convention_is_pinned_by_five_two():
    # the other reading of the positive-edge tangle is the global mirror of ours
    ours = median_diagram(five_two_embedding())
    other = mirror_diagram(ours)
    assert homfly(ours) == FIXTURE_5_2
    assert homfly(other) != FIXTURE_5_2


def test_published_knots():
    samples = sample_diagrams()
    assert homfly(samples["unknot"]) == 1
    assert homfly(samples["trefoil"]) == RIGHT_TREFOIL
    assert homfly(mirror_diagram(samples["trefoil"])) == RIGHT_TREFOIL.mirror()
    assert homfly(samples["figure eight"]) == FIGURE_EIGHT
    assert homfly(samples["two unknots"]) == parse_laurent("v^-1*z^-1 - v*z^-1")


def test_triple_edge_gives_trefoil():
    g = parse_graph("E: a\nV: p\nedge: a p\nedge: a p\nedge: a p\n")
    assert homfly(median_diagram(plane_embedding(g))) == RIGHT_TREFOIL


def test_mirror_twice_is_identity():
    for d in sample_diagrams().values():
        assert mirror_diagram(mirror_diagram(d)) == d


@pytest.mark.parametrize("name", sorted(sample_diagrams()))
def test_sample_diagram_properties(name):
    d = sample_diagrams()[name]
    p, pm, bad = diagram_checks(d)
    assert bad == []
    assert pm == p.mirror()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(sample_diagrams())), st.integers(0, 10**6))
def test_basepoints_do_not_matter(name, seed):
    d = sample_diagrams()[name]
    assert homfly(d, rng=random.Random(seed)) == homfly(d)


def test_crossing_cap():
    g = SignedBipartiteGraph(("a",), ("p",), tuple(("a", "p", 1) for _ in range(13)))
    d = median_diagram(plane_embedding(g))
    with pytest.raises(CrossingCapError):
        homfly(d)


def test_gauss_seifert_count_matches_smoothing():
    for d in sample_diagrams().values():
        assert seifert_count(d.gauss_code(), d.free_loops) == seifert_analyze(d).circles


# -- top coefficient against the interior polynomial -----------------------


def test_top_examples():
    assert theorem6_check(K2)
    assert top_coefficient(median_diagram(hopf_embedding())) == LaurentPoly2.mono(1)
    assert theorem6_check(hopf_embedding())
    assert theorem6_check(five_two_embedding())


@pytest.mark.parametrize("bits", range(16))
def test_square_sign_patterns(bits):
    pe = square(tuple(-1 if (bits >> i) & 1 else 1 for i in range(4)))
    assert theorem6_check(pe)
    assert mirror_chain_check(pe)


# -- text formats -------------------------------------------------------------


def test_pd_round_trip_needs_orientation_seeds():
    # switching one crossing of the Hopf diagram leaves a component that is over at both crossings
    hopf = median_diagram(hopf_embedding())
    (a, b, c, d), rest = hopf.crossings[0], hopf.crossings[1:]
    unlinked = LinkDiagram(((d, a, b, c),) + rest, (-1,) + hopf.signs[1:])
    assert homfly(unlinked) == parse_laurent("v^-1*z^-1 - v*z^-1")
    text = format_pd(unlinked)
    assert "orient:" in text
    assert parse_pd(text) == unlinked
    for dgm in sample_diagrams().values():
        assert parse_pd(format_pd(dgm)) == dgm


@pytest.mark.parametrize(
    "text",
    ["X[1,1,1,2]\n", "X[1,2,3]\n", "Y[1,2,3,4]\n", "loops: many\n", "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\norient: 4 2\n",
     "X[1,5,2,4]\nX[3,1,4,6]\nX[5,3,6,2]\norient: 2 1\n"],
)
def test_pd_errors(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_inconsistent_signs_rejected():
    with pytest.raises(DiagramError):
        LinkDiagram(((4, 2, 3, 1), (2, 4, 1, 3)), (1, -1))


def test_plane_graph_parsing():
    text = "E: a\nV: p\nedge: a p\nedge: a p\nrot: a 0 1\nrot: p 1 0\n"
    pe = parse_plane_graph(text)
    assert pe.rotation == {"a": (0, 1), "p": (1, 0)}
    auto = parse_plane_graph("E: a\nV: p\nedge: a p\nedge: a p\n")
    assert homfly(median_diagram(auto)) == FIXTURE_HOPF


def test_rotation_system_must_be_planar():
    g = parse_graph("E: a b\nV: p q\nedge: a p\nedge: a q\nedge: b p\nedge: b q\nedge: a p\nedge: b q\n")
    # a and p both see their edges in an order that forces a handle
    with pytest.raises(GraphError, match="Euler"):
        PlaneEmbedding(g, {"a": (0, 1, 4), "b": (2, 3, 5), "p": (0, 2, 4), "q": (1, 3, 5)})
    k33 = parse_graph("E: a b c\nV: p q r\n" + "".join(f"edge: {e} {v}\n" for e in "abc" for v in "pqr"))
    with pytest.raises(GraphError, match="planar"):
        plane_embedding(k33)


def test_rotation_must_list_incident_edges():
    with pytest.raises(GraphError):
        PlaneEmbedding(parse_graph("E: a\nV: p\nedge: a p\n"), {"a": (0,), "p": ()})
    with pytest.raises(GraphError, match="connected"):
        PlaneEmbedding(parse_graph("E: a b\nV: p\nedge: a p\n"), {"a": (0,), "p": (0,), "b": ()})
