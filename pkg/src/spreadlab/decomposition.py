"""Triangle/diamond unit partition of connected claw-free cubic graphs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import networkx as nx

from .graph import (
    Graph,
    connected_components,
    delete_vertices,
    is_claw_free,
    is_connected,
    is_cubic,
)


class NotInClassError(ValueError):
    """The graph is outside the class the operation is defined on."""


class UnitKind(str, Enum):
    TRIANGLE = "triangle"
    DIAMOND = "diamond"


@dataclass(frozen=True)
class Unit:
    kind: UnitKind
    vertices: frozenset[int]
    dominating: frozenset[int] = frozenset()

    @property
    def is_triangle(self) -> bool:
        return self.kind is UnitKind.TRIANGLE

    @property
    def is_diamond(self) -> bool:
        return self.kind is UnitKind.DIAMOND

    def sorted(self) -> list[int]:
        return sorted(self.vertices)


@dataclass(frozen=True)
class DeltaDPartition:
    units: tuple[Unit, ...]
    unit_of: tuple[int, ...]
    # (i, j, (x, y)) with i < j, x in unit i, y in unit j
    unit_edges: tuple[tuple[int, int, tuple[int, int]], ...]

    @property
    def u(self) -> int:
        return len(self.units)

    @property
    def triangle_units(self) -> list[Unit]:
        return [U for U in self.units if U.is_triangle]

    @property
    def diamond_units(self) -> list[Unit]:
        return [U for U in self.units if U.is_diamond]

    def bond_multiplicity(self) -> Counter:
        return Counter((i, j) for i, j, _ in self.unit_edges)

    def double_bonded(self) -> set[tuple[int, int]]:
        return {pair for pair, c in self.bond_multiplicity().items() if c >= 2}

    def index_of(self, unit: Unit) -> int:
        return self.units.index(unit)

    def edges_between(self, i: int, j: int) -> list[tuple[int, int]]:
        """Connecting edges oriented as (vertex in unit i, vertex in unit j)."""
        out = []
        for a, b, (x, y) in self.unit_edges:
            if (a, b) == (i, j):
                out.append((x, y))
            elif (a, b) == (j, i):
                out.append((y, x))
        return out

    def neighbors_of_unit(self, i: int) -> list[int]:
        out = set()
        for a, b, _ in self.unit_edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return sorted(out)


def require_claw_free_cubic(G: Graph) -> None:
    if not is_connected(G):
        raise NotInClassError("graph is not connected")
    if not is_cubic(G):
        raise NotInClassError("graph is not cubic")
    if not is_claw_free(G):
        raise NotInClassError("graph is not claw-free")


def is_k4(G: Graph) -> bool:
    return G.n == 4 and G.m == 6


def delta_d_partition(G: Graph) -> DeltaDPartition:
    """Collect diamonds first (two triangles on a common edge whose tips are
    non-adjacent), then cover the remaining vertices by disjoint triangles."""
    require_claw_free_cubic(G)
    if is_k4(G):
        raise NotInClassError("K_4 has no triangle-diamond partition")
    adj = G.adj
    owner = [-1] * G.n
    found: list[Unit] = []
    for u, v in G.edges():
        common = adj[u] & adj[v]
        if len(common) != 2:
            continue
        w, x = sorted(common)
        if x in adj[w]:
            continue
        verts = frozenset((u, v, w, x))
        if any(owner[y] >= 0 for y in verts):
            raise NotInClassError("overlapping diamonds")
        for y in verts:
            owner[y] = len(found)
        found.append(Unit(UnitKind.DIAMOND, verts, frozenset((u, v))))
    for v in range(G.n):
        if owner[v] >= 0:
            continue
        free = sorted(y for y in adj[v] if owner[y] < 0)
        tri = None
        for i, a in enumerate(free):
            for b in free[i + 1:]:
                if b in adj[a]:
                    tri = frozenset((v, a, b))
                    break
            if tri:
                break
        if tri is None:
            raise NotInClassError(f"vertex {v} lies in no free triangle")
        for y in tri:
            owner[y] = len(found)
        found.append(Unit(UnitKind.TRIANGLE, tri))

    order = sorted(range(len(found)), key=lambda i: min(found[i].vertices))
    rank = {old: new for new, old in enumerate(order)}
    units = tuple(found[i] for i in order)
    unit_of = tuple(rank[owner[v]] for v in range(G.n))
    unit_edges = []
    for x, y in G.edges():
        i, j = unit_of[x], unit_of[y]
        if i == j:
            continue
        if i > j:
            i, j, x, y = j, i, y, x
        unit_edges.append((i, j, (x, y)))
    unit_edges.sort()
    return DeltaDPartition(units, unit_of, tuple(unit_edges))


def unit_count(G: Graph) -> int:
    return delta_d_partition(G).u


@dataclass(frozen=True)
class FamilyClass:
    tag: str  # "N", "F", "H", "K4" or "generic"
    k: int | None = None

    def __str__(self) -> str:
        if self.tag == "N":
            return f"DiamondNecklace({self.k})"
        if self.tag == "F":
            return f"TriangleNecklace({2 * self.k})"
        if self.tag == "H":
            return f"TriangleDiamondNecklace({2 * self.k})"
        if self.tag == "K4":
            return "K4"
        return "Generic"


def _to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


@lru_cache(maxsize=64)
def _family_graph(tag: str, k: int) -> nx.Graph:
    from .families import by_name

    return _to_nx(by_name(tag, k).graph)


def classify_family(G: Graph, partition: DeltaDPartition | None = None) -> FamilyClass:
    require_claw_free_cubic(G)
    if is_k4(G):
        return FamilyClass("K4")
    P = partition or delta_d_partition(G)
    t, d = len(P.triangle_units), len(P.diamond_units)
    if t == 0:
        # Every diamond has two outgoing edges, so the connected unit graph is
        # a cycle and G is the necklace N_d.
        return FamilyClass("N", d)
    candidate = None
    if d == 0 and t % 2 == 0:
        candidate = ("F", t // 2)
    elif t == 2 * d and d >= 2:
        candidate = ("H", d)
    if candidate and nx.is_isomorphic(_to_nx(G), _family_graph(*candidate)):
        return FamilyClass(*candidate)
    return FamilyClass("generic")


def is_diamond_necklace(G: Graph) -> bool:
    return classify_family(G).tag == "N"


def find_special_triangle_unit(G: Graph, P: DeltaDPartition | None = None) -> Unit:
    """First triangle-unit T (in unit order) with G - T having <= 2 components."""
    P = P or delta_d_partition(G)
    triangles = P.triangle_units
    if not triangles:
        raise NotInClassError("no triangle-unit: the graph is a diamond necklace")
    for T in triangles:
        H, _ = delete_vertices(G, T.vertices)
        if len(connected_components(H)) <= 2:
            return T
    raise NotInClassError("no triangle-unit leaves at most two components")


def bridges(G: Graph) -> set[tuple[int, int]]:
    return {(min(u, v), max(u, v)) for u, v in nx.bridges(_to_nx(G))}


@dataclass(frozen=True)
class StartPair:
    """The opening pair of units for the 2-percolation traversal.

    case 1: U1 triangle, single bond; t1 ~ c1 and a1 is the other tip added.
    case 2: U1 diamond; t1 ~ b1, c1 is a dominating vertex of U1.
    case 3: U1 triangle double-bonded to T1; u ~ t2 with u not adjacent to t1.
    """

    case: int
    T1: Unit
    U1: Unit
    names: dict[str, int]


def partner_unit_for_start(G: Graph, P: DeltaDPartition, T1: Unit) -> StartPair:
    ti = P.index_of(T1)
    multiplicity = P.bond_multiplicity()
    cut = bridges(G)
    for t1 in T1.sorted():
        (y,) = [w for w in G.adj[t1] if w not in T1.vertices]
        j = P.unit_of[y]
        U1 = P.units[j]
        double = multiplicity[(min(ti, j), max(ti, j))] >= 2
        if (min(t1, y), max(t1, y)) in cut and not double:
            continue
        t2, t3 = sorted(T1.vertices - {t1})
        if U1.is_diamond:
            b1 = y
            c1, d1 = sorted(U1.dominating)
            (a1,) = U1.vertices - {b1, c1, d1}
            names = {"t1": t1, "t2": t2, "t3": t3, "a1": a1, "b1": b1, "c1": c1, "d1": d1}
            return StartPair(2, T1, U1, names)
        if double:
            # t1 is joined to c1; another vertex u of U1 is joined to t2 or t3
            for x, u in P.edges_between(ti, j):
                if x != t1:
                    (other,) = T1.vertices - {t1, x}
                    names = {"t1": t1, "t2": x, "t3": other, "u": u, "c1": y}
                    return StartPair(3, T1, U1, names)
        c1 = y
        a1, b1 = sorted(U1.vertices - {c1})
        names = {"t1": t1, "t2": t2, "t3": t3, "a1": a1, "b1": b1, "c1": c1}
        return StartPair(1, T1, U1, names)
    raise NotInClassError("special triangle-unit has no non-bridge neighbor unit")
