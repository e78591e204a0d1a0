import pytest
from hypothesis import given, settings, strategies as st

from wordrep.graph import (
    Graph,
    GraphError,
    T1_EDGES,
    complete_graph,
    contains_induced,
    cycle_graph,
    graph_from_edges,
    induced_subgraph,
    is_induced_embedding,
    path_graph,
    t1_graph,
    t2_graph,
    wheel_graph,
)
from wordrep.polyomino import T2_PATTERN, triangulation_graph

from oracles import contains_induced as brute_contains


def test_graph_from_edges_c4():
    g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert g.vertices == (0, 1, 2, 3)
    assert g.edges == {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_single_vertex():
    g = graph_from_edges(1, [])
    assert g.n == 1 and g.m == 0


def test_duplicates_collapse():
    g = graph_from_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 4)], [(-1, 2)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(GraphError):
        graph_from_edges(4, edges)


def test_duplicate_vertex_ids_rejected():
    with pytest.raises(GraphError):
        Graph((0, 1, 1), frozenset())


def test_t1_from_grid_labels():
    # labels 1..9 read row by row; grid plus four diagonals
    g = t1_graph()
    assert g.n == 9
    assert g.m == 16
    assert g.has_edge(1, 3) and g.has_edge(1, 5) and g.has_edge(4, 6) and g.has_edge(5, 7)
    assert len(T1_EDGES) == 16


def test_induced_subgraph_path():
    p = induced_subgraph(cycle_graph(4), {0, 1, 2})
    assert p.edges == {(0, 1), (1, 2)}


def test_induced_subgraph_identity():
    g = t2_graph()
    assert induced_subgraph(g, g.vertices) == g


def test_induced_subgraph_of_k4():
    assert induced_subgraph(complete_graph(4), {0, 2, 3}).m == 3


def test_induced_subgraph_bad_subset():
    with pytest.raises(GraphError):
        induced_subgraph(path_graph(3), {0, 7})


def test_self_containment():
    g = t1_graph()
    m = contains_induced(g, g)
    assert m is not None and is_induced_embedding(g, g, m)


def test_c4_has_no_triangle():
    assert contains_induced(cycle_graph(4), complete_graph(3)) is None


def test_t2_in_its_triangulation():
    host = triangulation_graph(T2_PATTERN)
    m = contains_induced(host, t2_graph())
    assert m is not None and is_induced_embedding(host, t2_graph(), m)


def test_adding_edge_can_break_induced_containment():
    host = path_graph(4)
    assert contains_induced(host, path_graph(4)) is not None
    assert contains_induced(host.with_edges([(0, 3)]), path_graph(4)) is None


def test_wheel_shape():
    w = wheel_graph(5)
    assert w.n == 6 and w.m == 10 and w.degree(0) == 5


def test_relabel_must_be_injective():
    with pytest.raises(GraphError):
        path_graph(3).relabel({0: 5, 1: 5, 2: 6})


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.build(range(n), edges)


@settings(max_examples=300, deadline=None)
@given(small_graphs(), small_graphs(max_n=4))
def test_contains_induced_matches_brute_force(host, pattern):
    m = contains_induced(host, pattern)
    expected = brute_contains(host.vertices, host.edges, pattern.vertices, pattern.edges)
    assert (m is not None) == expected
    if m is not None:
        assert is_induced_embedding(host, pattern, m)
        image = induced_subgraph(host, m.values())
        assert image.m == pattern.m
