from itertools import combinations

import pytest
from hypothesis import given, settings

from spreadlab.graph import (
    Graph,
    GraphFormatError,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    format_edge_list,
    from_mask,
    is_claw_free,
    is_connected,
    is_cubic,
    parse_edge_list,
    path_graph,
    to_dot,
    to_mask,
)

from conftest import FIXTURES, small_graphs


def brute_claw_free(G: Graph) -> bool:
    for quad in combinations(range(G.n), 4):
        for center in quad:
            leaves = [v for v in quad if v != center]
            if all(v in G.adj[center] for v in leaves) and not any(
                b in G.adj[a] for a, b in combinations(leaves, 2)
            ):
                return False
    return True


def test_adjacency_must_be_symmetric():
    with pytest.raises(ValueError):
        Graph(2, (frozenset({1}), frozenset()))


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])


def test_basic_counts():
    K = complete_graph(4)
    assert K.n == 4 and K.m == 6
    assert is_cubic(K) and is_claw_free(K)
    assert K.edges()[0] == (0, 1)


def test_star_is_a_claw():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not is_claw_free(star)


def test_components_sorted_by_least_vertex():
    G = disjoint_union(path_graph(2), cycle_graph(3))
    comps = connected_components(G)
    assert comps == [frozenset({0, 1}), frozenset({2, 3, 4})]
    assert not is_connected(G)


def test_delete_vertices_reindexes():
    H, index = delete_vertices(cycle_graph(5), [0])
    assert H.n == 4 and H.m == 3
    assert index == {1: 0, 2: 1, 3: 2, 4: 3}


def test_masks_roundtrip():
    assert from_mask(to_mask([0, 3, 7])) == frozenset({0, 3, 7})


def test_parse_comments_and_header():
    G = parse_edge_list("# n = 5\n0 1  # an edge\n\n1 2\n")
    assert G.n == 5 and G.m == 2


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("0 1\n0 1\n", "duplicate"),
        ("1 0\n0 1\n", "duplicate"),
        ("0 0\n", "self-loop"),
        ("0 x\n", "malformed"),
        ("0 1 2\n", "two vertices"),
        ("-1 2\n", "negative"),
        ("# n = 2\n0 5\n", "declared"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        parse_edge_list(text)


def test_parse_error_reports_line():
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_edge_list("0 1\n1 2\n2 two\n")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_roundtrip(name):
    G = FIXTURES[name]
    assert parse_edge_list(format_edge_list(G)) == G


@given(small_graphs(max_n=8))
def test_roundtrip_keeps_isolated_vertices(G):
    assert parse_edge_list(format_edge_list(G)) == G


@settings(max_examples=200)
@given(small_graphs(min_n=4, max_n=8))
def test_claw_free_matches_brute_force(G):
    assert is_claw_free(G) == brute_claw_free(G)


def test_relabel_preserves_edges():
    G = path_graph(4)
    H = G.relabel([3, 2, 1, 0])
    assert H.edges() == [(0, 1), (1, 2), (2, 3)]


def test_dot_highlight():
    dot = to_dot(path_graph(3), highlight=[1], labels={0: "a"})
    assert "graph G {" in dot
    assert '0 [label="a"]' in dot
    assert "1 [style=filled, fillcolor=black, fontcolor=white]" in dot
    assert "0 -- 1;" in dot


def test_dot_rejects_unknown_vertex():
    with pytest.raises(ValueError):
        to_dot(path_graph(2), highlight=[5])
