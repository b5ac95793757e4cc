"""Exact minimum spreading sets, independence and vertex cover numbers.

The spreading search never consults the closed-form values it is used to
check. Its only pruning is the necessary condition that a vertex set H whose
members each have fewer than p neighbors outside H can never be entered from
outside, so every spreading set must contain a vertex of every such H that is
still entirely white.
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass
from itertools import combinations

from .decomposition import NotInClassError, delta_d_partition, is_k4
from .graph import Graph, from_mask, is_claw_free, is_connected, is_cubic, to_mask
from .spreading import INF, SpreadParams, extend_mask

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**8


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SolveResult:
    value: int | None
    witness: frozenset[int]
    nodes_explored: int
    elapsed: float
    lower: int
    upper: int

    @property
    def complete(self) -> bool:
        return self.value is not None

    def interval(self) -> tuple[int, int]:
        return self.lower, self.upper


# -- independence / vertex cover ------------------------------------------------

def independence_number(G: Graph, within: int | None = None) -> tuple[int, frozenset[int]]:
    """Maximum independent set by bitmask branch and bound, optionally
    restricted to the vertices in ``within``.

    Vertices of degree <= 1 in the candidate set are taken greedily (always
    safe); otherwise branch on a maximum-degree vertex. The bound is the
    number of cliques in a greedy clique cover of the candidates.
    """
    masks = G.masks
    best = [0, 0]

    def clique_cover(cand: int) -> int:
        count = 0
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            clique = low
            common = masks[v] & cand
            while common:
                lu = common & -common
                clique |= lu
                common &= masks[lu.bit_length() - 1]
            cand &= ~clique
            count += 1
        return count

    def search(cand: int, chosen: int, size: int) -> None:
        while True:
            if not cand:
                if size > best[0]:
                    best[0], best[1] = size, chosen
                return
            if size + clique_cover(cand) <= best[0]:
                return
            pick = -1
            top, top_deg = -1, -1
            rest = cand
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                d = (masks[v] & cand).bit_count()
                if d <= 1:
                    pick = v
                    break
                if d > top_deg:
                    top, top_deg = v, d
            if pick < 0:
                break
            chosen |= 1 << pick
            size += 1
            cand &= ~((1 << pick) | masks[pick])
        v = top
        search(cand & ~((1 << v) | masks[v]), chosen | (1 << v), size + 1)
        search(cand & ~(1 << v), chosen, size)

    search((1 << G.n) - 1 if within is None else within, 0, 0)
    return best[0], from_mask(best[1])


def vertex_cover_number(G: Graph) -> tuple[int, frozenset[int]]:
    alpha, I = independence_number(G)
    return G.n - alpha, frozenset(range(G.n)) - I


def is_independent(G: Graph, S) -> bool:
    S = set(S)
    return all(not (G.adj[v] & S) for v in S)


def is_vertex_cover(G: Graph, S) -> bool:
    S = set(S)
    return all(u in S or v in S for u, v in G.edges())


def triangles(G: Graph) -> list[frozenset[int]]:
    out = []
    for u in range(G.n):
        for v, w in combinations(sorted(x for x in G.adj[u] if x > u), 2):
            if w in G.adj[v]:
                out.append(frozenset((u, v, w)))
    return out


def max_independent_set_hitting_triangles(G: Graph) -> tuple[int, frozenset[int]] | None:
    """Largest independent set meeting every triangle of G, or None if none exists."""
    masks = G.masks
    tris = [to_mask(t) for t in triangles(G)]
    best = [-1, 0]

    def search(i: int, chosen: int, blocked: int, size: int) -> None:
        while i < len(tris) and tris[i] & chosen:
            i += 1
        if i == len(tris):
            free = ~(chosen | blocked) & ((1 << G.n) - 1)
            if free:
                # leftover vertices lie in no triangle
                extra, S = independence_number(G, free)
                chosen |= to_mask(S)
                size += extra
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + (G.n - (chosen | blocked).bit_count()) <= best[0]:
            return
        opts = tris[i] & ~blocked
        while opts:
            low = opts & -opts
            opts ^= low
            v = low.bit_length() - 1
            search(i + 1, chosen | low, blocked | low | masks[v], size + 1)

    search(0, 0, 0, 0)
    if best[0] < 0:
        return None
    return best[0], from_mask(best[1])


# -- spreading number -------------------------------------------------------------

def _blocks(G: Graph) -> list[list[int]]:
    """Vertex partition into small cliques: the units when G is a connected
    claw-free cubic graph other than K_4, otherwise a greedy clique cover."""
    if G.n and is_connected(G) and is_cubic(G) and is_claw_free(G) and not is_k4(G):
        try:
            return [U.sorted() for U in delta_d_partition(G).units]
        except NotInClassError:
            pass
    assigned = [False] * G.n
    out = []
    for v in range(G.n):
        if assigned[v]:
            continue
        block = [v]
        assigned[v] = True
        for u in sorted(G.adj[v]):
            if len(block) >= 4:
                break
            if not assigned[u] and all(u in G.adj[w] for w in block):
                block.append(u)
                assigned[u] = True
        out.append(block)
    return out


class _BlockTable:
    """For one block: per white-pattern, the fewest additions inside the block
    needed to hit every trapped subset, and a smallest such subset to branch on."""

    def __init__(self, G: Graph, block: list[int], p: int) -> None:
        self.vertices = block
        k = len(block)
        trapped = []
        for local in range(1, 1 << k):
            members = {block[i] for i in range(k) if local >> i & 1}
            if all(len(G.adj[h] - members) < p for h in members):
                trapped.append(local)
        self.need = [0] * (1 << k)
        self.branch: list[int] = [0] * (1 << k)
        for pattern in range(1 << k):
            inside = [H for H in trapped if H & ~pattern == 0]
            if not inside:
                continue
            smallest = min(inside, key=lambda H: (H.bit_count(), H))
            self.branch[pattern] = smallest
            for size in range(1, k + 1):
                if any(all(H & X for H in inside) for X in _subsets_of_size(pattern, size)):
                    self.need[pattern] = size
                    break

    def pattern(self, white: int) -> int:
        out = 0
        for i, v in enumerate(self.vertices):
            if white >> v & 1:
                out |= 1 << i
        return out

    def to_global(self, local: int) -> list[int]:
        return [self.vertices[i] for i in range(len(self.vertices)) if local >> i & 1]


def _subsets_of_size(pattern: int, size: int):
    bits = [1 << i for i in range(pattern.bit_length()) if pattern >> i & 1]
    for combo in combinations(bits, size):
        yield sum(combo)


class SpreadingSearch:
    """Iterative deepening over closed blue sets.

    A state is a closed set C; a move adds one vertex and re-closes. Because
    closure is monotone and idempotent the order of additions is irrelevant,
    so failed (state, budget) pairs are memoised and each state branches only
    on the members of one trapped white subset when one exists.
    """

    def __init__(self, G: Graph, params: SpreadParams, node_budget: int = DEFAULT_NODE_BUDGET):
        self.G = G
        self.params = params.effective(G.max_degree) if G.n else params
        self.full = (1 << G.n) - 1
        self.tables = [_BlockTable(G, b, self.params.p) for b in _blocks(G)]
        self.node_budget = node_budget
        self.nodes = 0
        self.failed: dict[int, int] = {}

    def bound(self, blue: int) -> int:
        white = self.full & ~blue
        return sum(t.need[t.pattern(white)] for t in self.tables)

    def _branch(self, blue: int) -> list[int]:
        white = self.full & ~blue
        for t in self.tables:
            pat = t.pattern(white)
            if t.need[pat]:
                return t.to_global(t.branch[pat])
        return [v for v in range(self.G.n) if white >> v & 1]

    def _dfs(self, blue: int, k: int) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded
        if blue == self.full:
            return []
        if k <= 0 or self.bound(blue) > k or self.failed.get(blue, -1) >= k:
            return None
        for v in self._branch(blue):
            nxt = extend_mask(self.G, blue, 1 << v, self.params)
            rest = self._dfs(nxt, k - 1)
            if rest is not None:
                return [v] + rest
        self.failed[blue] = k
        return None

    def greedy(self) -> list[int]:
        blue, chosen = 0, []
        while blue != self.full:
            best_v, best_gain = -1, -1
            for v in range(self.G.n):
                if blue >> v & 1:
                    continue
                gain = extend_mask(self.G, blue, 1 << v, self.params).bit_count()
                if gain > best_gain:
                    best_v, best_gain = v, gain
            chosen.append(best_v)
            blue = extend_mask(self.G, blue, 1 << best_v, self.params)
        return chosen

    def solve(self, start: int | None = None) -> SolveResult:
        t0 = time.perf_counter()
        if self.G.n == 0:
            return SolveResult(0, frozenset(), 0, 0.0, 0, 0)
        upper_set = self.greedy()
        upper = len(upper_set)
        lower = max(self.bound(0), 1, start or 0)
        k = lower
        try:
            while k < upper:
                found = self._dfs(0, k)
                if found is not None:
                    upper_set = found
                    upper = k
                    break
                k += 1
                lower = k
        except BudgetExceeded:
            log.info("node budget exhausted at size %d", k)
            return SolveResult(
                None, frozenset(upper_set), self.nodes, time.perf_counter() - t0, lower, upper
            )
        witness = frozenset(upper_set)
        return SolveResult(
            len(witness), witness, self.nodes, time.perf_counter() - t0, len(witness), len(witness)
        )


class ForcingSearch:
    """Uniform-cost search over closed sets for p = 1 (q-forcing).

    A move picks any vertex v whose closed neighborhood is not yet blue and
    pays for making v blue plus all but q of its white neighbors; v then
    forces the rest. Charging each force of an optimal process to the initial
    vertices it first touches shows the cheapest route to V costs exactly the
    forcing number.
    """

    def __init__(self, G: Graph, params: SpreadParams, node_budget: int = DEFAULT_NODE_BUDGET):
        if params.p != 1:
            raise ValueError("ForcingSearch handles p = 1 only")
        self.G = G
        self.params = params.effective(G.max_degree)
        self.q = self.params.q
        self.full = (1 << G.n) - 1
        self.node_budget = node_budget
        self.nodes = 0

    def _move(self, blue: int, v: int) -> tuple[int, int]:
        """Cost and added vertices for letting v force from state ``blue``."""
        masks = self.G.masks
        added = 0 if blue >> v & 1 else 1 << v
        white = masks[v] & ~blue
        extra = white.bit_count() - self.q
        while extra > 0:
            low = white & -white
            white ^= low
            added |= low
            extra -= 1
        return added.bit_count(), added

    def solve(self) -> SolveResult:
        t0 = time.perf_counter()
        G = self.G
        if G.n == 0:
            return SolveResult(0, frozenset(), 0, 0.0, 0, 0)
        start = 0
        dist = {start: 0}
        parent: dict[int, tuple[int, int]] = {}
        heap = [(0, start)]
        lower = 0
        while heap:
            cost, blue = heapq.heappop(heap)
            if cost > dist.get(blue, cost):
                continue
            lower = cost
            if blue == self.full:
                witness = 0
                cur = blue
                while cur != start:
                    prev, added = parent[cur]
                    witness |= added
                    cur = prev
                w = from_mask(witness)
                return SolveResult(
                    len(w), w, self.nodes, time.perf_counter() - t0, len(w), len(w)
                )
            self.nodes += 1
            if self.nodes > self.node_budget:
                break
            for v in range(G.n):
                closed_nbhd = G.masks[v] | (1 << v)
                if closed_nbhd & ~blue == 0:
                    continue
                step, added = self._move(blue, v)
                nxt = extend_mask(G, blue, added, self.params)
                total = cost + step
                if total < dist.get(nxt, total + 1):
                    dist[nxt] = total
                    parent[nxt] = (blue, added)
                    heapq.heappush(heap, (total, nxt))
        upper_set = SpreadingSearch(G, self.params, 0).greedy()
        return SolveResult(
            None, frozenset(upper_set), self.nodes, time.perf_counter() - t0,
            max(lower, 1), len(upper_set),
        )


def sigma_exact(
    G: Graph,
    params: SpreadParams,
    node_budget: int = DEFAULT_NODE_BUDGET,
    method: str = "auto",
) -> SolveResult:
    """The (p, q)-spreading number of G with a minimum witness.

    ``method`` is "auto", "closure" (iterative deepening with trapped-set
    pruning, any p) or "forcing" (uniform-cost search, p = 1 only).
    """
    if method == "auto":
        method = "forcing" if params.p == 1 else "closure"
    if method == "forcing":
        return ForcingSearch(G, params, node_budget).solve()
    if method == "closure":
        return SpreadingSearch(G, params, node_budget).solve()
    raise ValueError(f"unknown method {method!r}")


def percolation_number(G: Graph, r: int, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    return sigma_exact(G, SpreadParams(r, INF), node_budget)


def zero_forcing_number(G: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    return sigma_exact(G, SpreadParams(1, 1), node_budget)


def lower_bound(G: Graph, params: SpreadParams) -> int:
    """Best lower bound from structural necessary conditions.

    On connected claw-free cubic graphs other than K_4 and for p >= 2 every
    unit must be hit; for p = 3 the set must be a vertex cover; for (2, 1) no
    set with one vertex per unit can start the process; p above the maximum
    degree means nothing ever fires.
    """
    if G.n == 0:
        return 0
    bounds = [1, SpreadingSearch(G, params, 1).bound(0)]
    if params.p > G.max_degree:
        bounds.append(G.n)
    in_class = is_connected(G) and is_cubic(G) and is_claw_free(G) and not is_k4(G)
    if in_class and params.p >= 2:
        u = delta_d_partition(G).u
        bounds.append(u)
        if params.p == 2 and params.q == 1:
            bounds.append(u + 1)
    if is_cubic(G) and params.p == 3:
        bounds.append(vertex_cover_number(G)[0])
    return max(bounds)
