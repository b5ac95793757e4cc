import random

import pytest
from hypothesis import given, settings

from spreadlab.decomposition import (
    FamilyClass,
    NotInClassError,
    UnitKind,
    bridges,
    classify_family,
    delta_d_partition,
    find_special_triangle_unit,
    partner_unit_for_start,
    unit_count,
)
from spreadlab.families import diamond_necklace, figure6_graph, triangle_necklace
from spreadlab.graph import Graph, complete_graph, cycle_graph, delete_vertices, connected_components

from conftest import CLASS_FIXTURES, bridged_graph, claw_free_cubic


def test_units_cover_vertices(class_fixture):
    _, G = class_fixture
    P = delta_d_partition(G)
    seen = sorted(v for U in P.units for v in U.vertices)
    assert seen == list(range(G.n))
    for i, U in enumerate(P.units):
        assert all(P.unit_of[v] == i for v in U.vertices)
        if U.is_diamond:
            assert len(U.vertices) == 4 and len(U.dominating) == 2
            for d in U.dominating:
                assert U.vertices - {d} <= G.adj[d]
        else:
            assert len(U.vertices) == 3


def test_units_ordered_by_least_vertex(class_fixture):
    _, G = class_fixture
    mins = [min(U.vertices) for U in delta_d_partition(G).units]
    assert mins == sorted(mins)


def test_unit_counts_of_families():
    assert unit_count(diamond_necklace(4).graph) == 4
    assert unit_count(triangle_necklace(3).graph) == 6
    assert unit_count(figure6_graph().graph) == 5


def test_out_of_class_rejected():
    with pytest.raises(NotInClassError):
        delta_d_partition(complete_graph(4))
    with pytest.raises(NotInClassError):
        delta_d_partition(cycle_graph(6))


def test_classification():
    assert classify_family(complete_graph(4)) == FamilyClass("K4")
    assert str(classify_family(CLASS_FIXTURES["N3"])) == "DiamondNecklace(3)"
    assert str(classify_family(CLASS_FIXTURES["F6"])) == "TriangleNecklace(6)"
    assert str(classify_family(CLASS_FIXTURES["H6"])) == "TriangleDiamondNecklace(6)"
    assert classify_family(CLASS_FIXTURES["figure6"]).tag == "generic"


def test_classification_survives_relabeling():
    G = CLASS_FIXTURES["H4"]
    perm = list(range(G.n))
    random.Random(1).shuffle(perm)
    assert classify_family(G.relabel(perm)) == classify_family(G)


@settings(max_examples=80, deadline=None)
@given(claw_free_cubic)
def test_partition_unique_under_relabeling(G):
    perm = list(range(G.n))
    random.Random(G.n).shuffle(perm)
    H = G.relabel(perm)
    mapped = {(U.kind, frozenset(perm[v] for v in U.vertices)) for U in delta_d_partition(G).units}
    assert mapped == {(U.kind, U.vertices) for U in delta_d_partition(H).units}


@settings(max_examples=80, deadline=None)
@given(claw_free_cubic)
def test_unit_edges_are_between_units(G):
    P = delta_d_partition(G)
    inside = sum(1 for x, y in G.edges() if P.unit_of[x] == P.unit_of[y])
    assert inside + len(P.unit_edges) == G.m
    for i, j, (x, y) in P.unit_edges:
        assert i < j and P.unit_of[x] == i and P.unit_of[y] == j
        assert P.units[i].kind is UnitKind.TRIANGLE or x not in P.units[i].dominating


def test_double_bonds_in_prism():
    P = delta_d_partition(triangle_necklace(1).graph)
    assert P.double_bonded() == {(0, 1)}
    assert P.bond_multiplicity()[(0, 1)] == 3
    assert len(P.edges_between(1, 0)) == 3


@settings(max_examples=80, deadline=None)
@given(claw_free_cubic)
def test_special_triangle_leaves_two_components(G):
    P = delta_d_partition(G)
    if not P.triangle_units:
        with pytest.raises(NotInClassError):
            find_special_triangle_unit(G, P)
        return
    T = find_special_triangle_unit(G, P)
    H, _ = delete_vertices(G, T.vertices)
    assert len(connected_components(H)) <= 2
    start = partner_unit_for_start(G, P, T)
    assert start.case in (1, 2, 3)
    t1 = start.names["t1"]
    assert t1 in T.vertices
    assert G.adj[t1] & start.U1.vertices


def test_bridge_detection():
    G = bridged_graph()
    assert bridges(G) == {(0, 3)}
    assert bridges(diamond_necklace(3).graph) == set()
    P = delta_d_partition(G)
    T = find_special_triangle_unit(G, P)
    start = partner_unit_for_start(G, P, T)
    x, y = start.names["t1"], min(G.adj[start.names["t1"]] - T.vertices)
    assert (min(x, y), max(x, y)) not in bridges(G)
