"""Immutable simple graphs on vertices 0..n-1, predicates and edge-list/DOT I/O."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping


class GraphFormatError(ValueError):
    """Raised when edge-list text cannot be parsed into a simple graph."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(frozenset(r) for r in rows))

    @cached_property
    def m(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as bitmasks, used by the hot loops."""
        return tuple(sum(1 << u for u in r) for r in self.adj)

    @cached_property
    def ball2(self) -> tuple[int, ...]:
        """Bitmask of vertices within distance two of each vertex."""
        masks = self.masks
        out = []
        for v in range(self.n):
            b = masks[v]
            for u in self.adj[v]:
                b |= masks[u]
            out.append(b)
        return tuple(out)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, perm: list[int]) -> Graph:
        """Return the graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))


def check_vertex_set(G: Graph, S: Iterable[int]) -> frozenset[int]:
    members = frozenset(S)
    bad = [v for v in members if not 0 <= v < G.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} out of range for n={G.n}")
    return members


def to_mask(S: Iterable[int]) -> int:
    mask = 0
    for v in S:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated vertex pairs; ``#`` starts a comment.

    A ``# n = <int>`` header may declare trailing isolated vertices.
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    declared_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        header = comment.replace(" ", "")
        if not body.strip() and header.startswith("n="):
            try:
                declared_n = int(header[2:])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex-count header") from None
            continue
        tokens = body.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected two vertices, got {len(tokens)} tokens")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: malformed token in {body.strip()!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex index")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    n = 1 + max((v for e in edges for v in e), default=-1)
    if declared_n is not None:
        if declared_n < n:
            raise GraphFormatError(f"declared n={declared_n} but vertex {n - 1} appears")
        n = declared_n
    return Graph.from_edges(n, edges)


def format_edge_list(G: Graph) -> str:
    lines = [f"# n = {G.n}"]
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def is_cubic(G: Graph) -> bool:
    return all(len(r) == 3 for r in G.adj)


def is_claw_free(G: Graph) -> bool:
    for v in range(G.n):
        for a, b, c in combinations(sorted(G.adj[v]), 3):
            if b not in G.adj[a] and c not in G.adj[a] and c not in G.adj[b]:
                return False
    return True


def connected_components(G: Graph) -> list[frozenset[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for u in G.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
                    comp.append(u)
        comps.append(frozenset(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return G.n > 0 and len(connected_components(G)) == 1


def delete_vertices(G: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return G - S and the map from surviving old indices to new ones."""
    removed = check_vertex_set(G, S)
    keep = [v for v in range(G.n) if v not in removed]
    index = {old: new for new, old in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    return Graph.from_edges(len(keep), edges), index


def induced_edges(G: Graph, S: Iterable[int]) -> list[tuple[int, int]]:
    members = set(S)
    return [(u, v) for u, v in G.edges() if u in members and v in members]


def to_dot(
    G: Graph,
    highlight: Iterable[int] = (),
    labels: Mapping[int, str] | None = None,
    name: str = "G",
) -> str:
    marked = check_vertex_set(G, highlight)
    out = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(G.n):
        attrs = []
        if labels and v in labels:
            attrs.append(f'label="{labels[v]}"')
        if v in marked:
            attrs.append("style=filled")
            attrs.append("fillcolor=black")
            attrs.append("fontcolor=white")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        out.append(f"  {v}{suffix};")
    for u, v in G.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for H in graphs:
        edges += [(u + offset, v + offset) for u, v in H.edges()]
        offset += H.n
    return Graph.from_edges(offset, edges)
