import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from interiorpoly.bigraph import (
    FlypeDecomposition,
    GraphError,
    MutationDecomposition,
    SignedBipartiteGraph,
    canonical_form,
    components,
    delete_edges,
    find_cycle,
    flype,
    format_graph,
    is_forest,
    mutate,
    negate,
    parse_graph,
    random_cycle,
    swap_classes,
)

C4 = "E: a b\nV: p q\nedge: a p\nedge: a q\nedge: b p\nedge: b q\n"


@st.composite
def graphs(draw, max_nodes=4, max_edges=7):
    ne = draw(st.integers(1, max_nodes))
    nv = draw(st.integers(1, max_nodes))
    m = draw(st.integers(0, max_edges))
    edges = tuple(
        (f"e{draw(st.integers(0, ne - 1))}", f"v{draw(st.integers(0, nv - 1))}", draw(st.sampled_from((1, -1))))
        for _ in range(m)
    )
    return SignedBipartiteGraph(tuple(f"e{i}" for i in range(ne)), tuple(f"v{i}" for i in range(nv)), edges)


def relabeled(g, rng):
    e_perm = list(g.e_nodes)
    v_perm = list(g.v_nodes)
    rng.shuffle(e_perm)
    rng.shuffle(v_perm)
    names = {old: f"x{new}" for old, new in zip(g.e_nodes, e_perm)}
    names.update({old: f"y{new}" for old, new in zip(g.v_nodes, v_perm)})
    edges = [(names[e], names[v], s) for e, v, s in g.edges]
    rng.shuffle(edges)
    return SignedBipartiteGraph(
        tuple(sorted(names[n] for n in g.e_nodes)), tuple(sorted(names[n] for n in g.v_nodes)), tuple(edges)
    )


def nx_isomorphic(g, h):
    def build(x):
        out = nx.Graph()
        for n in x.e_nodes:
            out.add_node(n, color="E")
        for n in x.v_nodes:
            out.add_node(n, color="V")
        for e, v, s in x.edges:
            if not out.has_edge(e, v):
                out.add_edge(e, v, plus=0, minus=0)
            out[e][v]["plus" if s == 1 else "minus"] += 1
        return out

    return nx.is_isomorphic(
        build(g),
        build(h),
        node_match=lambda a, b: a["color"] == b["color"],
        edge_match=lambda a, b: (a["plus"], a["minus"]) == (b["plus"], b["minus"]),
    )


# -- parsing ---------------------------------------------------------------


def test_parse_defaults_and_comments():
    g = parse_graph("# square\nE: a\nE: b\nV: p q  # two V nodes\nedge: a p\nedge: a q -\nedge: b p +\n")
    assert g.e_nodes == ("a", "b")
    assert g.v_nodes == ("p", "q")
    assert [s for _, _, s in g.edges] == [1, -1, 1]


def test_format_round_trip():
    g = parse_graph(C4).with_sign(2, -1)
    assert parse_graph(format_graph(g)) == g


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("E: a\nV: p\nedge: a x\n", "line 3"),
        ("E: a\nV: p\nedge: a p *\n", "bad sign"),
        ("E: a\nV: a\n", "both classes"),
        ("E: a a\nV: p\n", "duplicate"),
        ("E: a\nV: p\nnode: a\n", "unknown key"),
        ("E: a\nV: p\nedge a p\n", "line 3"),
        ("E: a\nV: p\nedge: p a\n", "unknown E-node"),
    ],
)
def test_parse_errors_name_the_problem(text, fragment):
    with pytest.raises(GraphError, match=fragment):
        parse_graph(text)


def test_rotation_lines_are_ignored_by_plain_parser():
    assert parse_graph(C4 + "rot: a 0 1\n") == parse_graph(C4)


def test_constructor_rejects_bad_edges():
    with pytest.raises(GraphError):
        SignedBipartiteGraph(("a",), ("p",), (("p", "a", 1),))
    with pytest.raises(GraphError):
        SignedBipartiteGraph(("a",), ("p",), (("a", "p", 0),))


# -- queries -----------------------------------------------------------------


def test_components_count_isolated_nodes():
    g = parse_graph("E: a b c\nV: p q\nedge: a p\nedge: b q\n")
    assert len(components(g)) == 3
    assert is_forest(g)
    assert not is_forest(parse_graph(C4))


def test_delete_edges_keeps_nodes():
    g = delete_edges(parse_graph(C4), [0, 3])
    assert g.n_nodes == 4 and g.n_edges == 2
    with pytest.raises(GraphError):
        delete_edges(g, [5])


def test_sign_helpers():
    g = parse_graph(C4).with_sign(1, -1)
    assert g.negative_edges() == [1]
    assert negate(g).negative_edges() == [0, 2, 3]
    assert g.unsigned().negative_edges() == []
    assert swap_classes(swap_classes(g)) == g


def test_parallel_edges_form_a_two_cycle():
    g = parse_graph("E: a\nV: p\nedge: a p\nedge: a p\n")
    cyc = find_cycle(g)
    assert cyc.n == 1 and set(cyc.edges) == {0, 1}


def test_find_cycle_on_forest_is_none():
    assert find_cycle(parse_graph("E: a b\nV: p\nedge: a p\nedge: b p\n")) is None


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(0, 1000))
def test_cycles_are_closed_and_alternate(g, seed):
    cyc = random_cycle(g, random.Random(seed))
    if cyc is None:
        assert is_forest(g)
        return
    k = len(cyc.edges)
    assert k % 2 == 0 and len(set(cyc.nodes)) == k and len(set(cyc.edges)) == k
    for i, idx in enumerate(cyc.edges):
        e, v, _ = g.edges[idx]
        assert {e, v} == {cyc.nodes[i], cyc.nodes[(i + 1) % k]}


# -- canonical form --------------------------------------------------------


def test_canonical_form_examples():
    c4 = parse_graph(C4)
    path = parse_graph("E: a b\nV: p q\nedge: a p\nedge: b p\nedge: b q\n")
    assert canonical_form(c4) == canonical_form(relabeled(c4, random.Random(1)))
    assert canonical_form(c4) != canonical_form(path)
    k2 = parse_graph("E: a\nV: p\nedge: a p\n")
    assert canonical_form(k2) != canonical_form(negate(k2))
    assert canonical_form(k2) != canonical_form(swap_classes(parse_graph("E: a b\nV: p\nedge: a p\n")))


@settings(max_examples=80, deadline=None)
@given(graphs(), st.integers(0, 1000))
def test_canonical_form_ignores_labels(g, seed):
    assert canonical_form(g) == canonical_form(relabeled(g, random.Random(seed)))


@settings(max_examples=150, deadline=None)
@given(graphs(max_nodes=3, max_edges=5), graphs(max_nodes=3, max_edges=5))
def test_canonical_form_agrees_with_networkx(g, h):
    assert (canonical_form(g) == canonical_form(h)) == nx_isomorphic(g, h)


# -- flypes and mutations ---------------------------------------------------


def test_flype_conserves_counts_and_signs():
    # a - b inside a square region hanging off c
    g = parse_graph(
        "E: a x\nV: b c\n"
        "edge: a b -\nedge: x b\nedge: x c +\nedge: a c\n"
    )
    fd = FlypeDecomposition(frozenset({"b", "x"}), "a", "b", "c", 0)
    h = flype(g, fd)
    assert (h.n_nodes, h.n_edges) == (g.n_nodes, g.n_edges)
    assert sorted(s for *_, s in h.edges) == sorted(s for *_, s in g.edges)


def test_flype_rejects_bad_region():
    g = parse_graph(C4)
    with pytest.raises(GraphError):
        flype(g, FlypeDecomposition(frozenset({"q"}), "a", "b", "p", 0))


def theta(lengths):
    """Two E hubs joined by paths of the given (even, at least 2) edge lengths."""
    e_nodes, v_nodes, edges = ["h1", "h2"], [], []
    for k, length in enumerate(lengths):
        prev = "h1"
        for i in range(1, length):
            name = f"n{k}_{i}"
            (v_nodes if i % 2 else e_nodes).append(name)
            edges.append((prev, name) if prev in e_nodes else (name, prev))
            prev = name
        edges.append((prev, "h2") if prev in e_nodes else ("h2", prev))
    return SignedBipartiteGraph(tuple(e_nodes), tuple(v_nodes), tuple((e, v, 1) for e, v in edges))


def test_same_color_mutation_swaps_hub_degrees_on_region():
    g = theta([2, 4, 2])
    region = frozenset({"n1_1", "n1_2", "n1_3"})
    h = mutate(g, MutationDecomposition(region, "h1", "h2"))
    assert (h.n_nodes, h.n_edges) == (g.n_nodes, g.n_edges)
    assert h.degree("h1") == g.degree("h1") and h.degree("h2") == g.degree("h2")
    assert {e for e, v, _ in h.edges if v == "n1_1" and e.startswith("h")} == {"h2"}


def test_symmetric_region_gives_isomorphic_result():
    g = theta([2, 2, 2])
    h = mutate(g, MutationDecomposition(frozenset({"n0_1"}), "h1", "h2"))
    assert canonical_form(h) == canonical_form(g)


def test_mutation_rejects_leaky_region():
    g = theta([4, 2])
    with pytest.raises(GraphError):
        mutate(g, MutationDecomposition(frozenset({"n0_1"}), "h1", "h2"))
