"""Generators for diamond-, triangle- and triangle-diamond-necklaces, the
separating example with sigma(2,3) = u and sigma(2,2) = u + 1, and random
connected claw-free cubic graphs assembled from units."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, is_connected

DIAMOND_EDGES = (("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"))
TRIANGLE_EDGES = (("x", "y"), ("x", "z"), ("y", "z"))


class InfeasibleParameters(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: dict[str, int]
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if sorted(self.labels.values()) != list(range(self.graph.n)):
            raise ValueError("labels must be a bijection onto 0..n-1")

    def __getitem__(self, name: str) -> int:
        return self.labels[name]

    def vertices(self, *names: str) -> frozenset[int]:
        return frozenset(self.labels[s] for s in names)

    def names(self) -> dict[int, str]:
        return {v: s for s, v in self.labels.items()}


class _Builder:
    def __init__(self) -> None:
        self.labels: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []

    def vertex(self, name: str) -> int:
        if name not in self.labels:
            self.labels[name] = len(self.labels)
        return self.labels[name]

    def diamond(self, i: int) -> None:
        for s in "abcd":
            self.vertex(f"{s}_{i}")
        for s, t in DIAMOND_EDGES:
            self.edge(f"{s}_{i}", f"{t}_{i}")

    def triangle(self, i: int) -> None:
        for s in "xyz":
            self.vertex(f"{s}_{i}")
        for s, t in TRIANGLE_EDGES:
            self.edge(f"{s}_{i}", f"{t}_{i}")

    def edge(self, s: str, t: str) -> None:
        self.edges.append((self.labels[s], self.labels[t]))

    def build(self, family: str, **params) -> LabeledGraph:
        G = Graph.from_edges(len(self.labels), self.edges)
        return LabeledGraph(G, dict(self.labels), family, params)


def diamond_necklace(k: int) -> LabeledGraph:
    """N_k: k diamonds (a_i b_i missing) joined by a_i b_{i+1} and a_k b_1."""
    if k < 2:
        raise InfeasibleParameters(f"diamond necklace needs k >= 2, got {k}")
    b = _Builder()
    for i in range(1, k + 1):
        b.diamond(i)
    for i in range(1, k):
        b.edge(f"a_{i}", f"b_{i + 1}")
    b.edge(f"a_{k}", "b_1")
    return b.build("N", k=k)


def triangle_necklace(k: int) -> LabeledGraph:
    """F_2k on 6k vertices; the z-edges wrap around modulo 2k."""
    if k < 1:
        raise InfeasibleParameters(f"triangle necklace needs k >= 1, got {k}")
    b = _Builder()
    t = 2 * k
    for i in range(1, t + 1):
        b.triangle(i)
    for i in range(1, k + 1):
        b.edge(f"x_{2 * i - 1}", f"x_{2 * i}")
        b.edge(f"y_{2 * i - 1}", f"y_{2 * i}")
        b.edge(f"z_{2 * i}", f"z_{2 * i % t + 1}")
    return b.build("F", k=k)


def triangle_diamond_necklace(k: int) -> LabeledGraph:
    """H_2k on 10k vertices: 2k triangles and k diamonds."""
    if k < 2:
        raise InfeasibleParameters(f"triangle-diamond necklace needs k >= 2, got {k}")
    b = _Builder()
    for i in range(1, 2 * k + 1):
        b.triangle(i)
    for j in range(1, k + 1):
        b.diamond(j)
    for i in range(1, k + 1):
        b.edge(f"x_{2 * i - 1}", f"a_{i}")
        b.edge(f"x_{2 * i}", f"b_{i}")
    for i in range(1, k):
        b.edge(f"y_{2 * i - 1}", f"z_{2 * i + 1}")
        b.edge(f"y_{2 * i}", f"z_{2 * i + 2}")
    b.edge(f"y_{2 * k - 1}", "z_1")
    b.edge(f"y_{2 * k}", "z_2")
    return b.build("H", k=k)


# Shaded vertices of the separating figure; a (2,3)-spreading set of size u = 5.
FIGURE6_WITNESS = ("c_1", "c_2", "c_3", "y_1", "z_2")


def figure6_graph() -> LabeledGraph:
    """Three diamonds side by side; the bottom triangle (x_1, y_1, z_1) meets
    every a_i and the top triangle (x_2, y_2, z_2) meets every b_i."""
    b = _Builder()
    for i in (1, 2, 3):
        b.diamond(i)
    for i in (1, 2):
        b.triangle(i)
    for s, i in zip("xyz", (1, 2, 3)):
        b.edge(f"{s}_1", f"a_{i}")
        b.edge(f"{s}_2", f"b_{i}")
    return b.build("figure6")


def random_claw_free_cubic(
    num_triangles: int,
    num_diamonds: int,
    seed: int,
    max_tries: int = 10_000,
) -> LabeledGraph:
    """Random connected claw-free cubic graph with the given unit counts.

    Each triangle offers one stub per vertex and each diamond one stub on each
    of its two degree-2 vertices. Stubs are paired by a uniform perfect
    matching; pairings that create a parallel edge, close a diamond into K_4,
    or leave the graph disconnected are rejected and resampled.
    """
    t, d = num_triangles, num_diamonds
    if t < 0 or d < 0:
        raise InfeasibleParameters("unit counts must be nonnegative")
    if t % 2:
        raise InfeasibleParameters(f"number of triangles must be even, got {t}")
    if t + d < 2:
        raise InfeasibleParameters("need at least two units")
    if t == 0 and d < 2:
        raise InfeasibleParameters("need at least two diamonds")

    b = _Builder()
    stubs: list[int] = []
    for i in range(1, t + 1):
        b.triangle(i)
        stubs += [b.labels[f"{s}_{i}"] for s in "xyz"]
    for j in range(1, d + 1):
        b.diamond(j)
        stubs += [b.labels[f"{s}_{j}"] for s in "ab"]
    n = len(b.labels)
    base = [set() for _ in range(n)]
    for u, v in b.edges:
        base[u].add(v)
        base[v].add(u)

    rng = random.Random(seed)
    for _ in range(max_tries):
        order = stubs[:]
        rng.shuffle(order)
        pairs = list(zip(order[::2], order[1::2]))
        if any(v in base[u] or _same_diamond(b, u, v, t) for u, v in pairs):
            continue
        G = Graph.from_edges(n, b.edges + pairs)
        if is_connected(G):
            return LabeledGraph(
                G, dict(b.labels), "random",
                {"triangles": t, "diamonds": d, "seed": seed},
            )
    raise InfeasibleParameters(
        f"no connected stub matching for {t} triangles and {d} diamonds "
        f"after {max_tries} tries (seed={seed})"
    )


def _same_diamond(b: _Builder, u: int, v: int, t: int) -> bool:
    # Diamonds are laid out after all 3t triangle vertices, four vertices each.
    first = 3 * t
    return u >= first and v >= first and (u - first) // 4 == (v - first) // 4


def random_unit_counts(rng: random.Random, max_vertices: int) -> tuple[int, int]:
    """Draw feasible (triangles, diamonds) with 3t + 4d <= max_vertices."""
    options = [
        (t, d)
        for t in range(0, max_vertices // 3 + 1, 2)
        for d in range(0, max_vertices // 4 + 1)
        if 3 * t + 4 * d <= max_vertices and t + d >= 2 and (t > 0 or d >= 2)
    ]
    return rng.choice(options)


def by_name(family: str, k: int) -> LabeledGraph:
    generators = {
        "N": diamond_necklace,
        "F": triangle_necklace,
        "H": triangle_diamond_necklace,
    }
    if family == "figure6":
        return figure6_graph()
    if family not in generators:
        raise InfeasibleParameters(f"unknown family {family!r}")
    return generators[family](k)
