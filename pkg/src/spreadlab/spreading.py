"""The (p, q)-spreading color change rule.

A white vertex w turns blue once it has at least p blue neighbors and one of
those blue neighbors has at most q white neighbors. q may be ``INF``, in which
case the rule is r-neighbor bootstrap percolation with r = p; p = 1 gives
q-forcing (zero forcing when q = 1).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, check_vertex_set, from_mask, to_mask

INF = math.inf


@dataclass(frozen=True)
class SpreadParams:
    p: int
    q: int | float = INF

    def __post_init__(self) -> None:
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p!r}")
        if self.q is INF or self.q == INF:
            object.__setattr__(self, "q", INF)
        elif isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise ValueError(f"q must be a positive integer or INF, got {self.q!r}")

    @property
    def q_infinite(self) -> bool:
        return self.q == INF

    def effective(self, max_degree: int) -> SpreadParams:
        """Collapse q >= max degree to INF; both give the same dynamics."""
        if not self.q_infinite and self.q >= max_degree:
            return SpreadParams(self.p, INF)
        return self

    def __str__(self) -> str:
        return f"({self.p},{'inf' if self.q_infinite else self.q})"

    @classmethod
    def parse(cls, p: int | str, q: int | str | float | None) -> SpreadParams:
        if q is None or (isinstance(q, str) and q.lower() in ("inf", "infinity", "∞")):
            return cls(int(p), INF)
        if isinstance(q, float) and q == INF:
            return cls(int(p), INF)
        return cls(int(p), int(q))


@dataclass(frozen=True)
class Step:
    vertex: int
    witness: int
    blue_neighbors: int
    round: int


@dataclass
class SpreadTrace:
    initial: frozenset[int]
    steps: list[Step] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return max((s.round for s in self.steps), default=0)

    def replay(self, G: Graph, params: SpreadParams) -> frozenset[int]:
        """Re-check every step against the rule; raise on the first bad one.

        Steps sharing a round fire simultaneously, so each is checked against
        the colors at the start of its round.
        """
        blue = set(self.initial)
        current_round = None
        snapshot = frozenset(blue)
        for step in self.steps:
            if step.round != current_round:
                current_round = step.round
                snapshot = frozenset(blue)
            if step.vertex in snapshot:
                raise AssertionError(f"vertex {step.vertex} recolored twice")
            ok, _ = eligible(G, snapshot, params, step.vertex)
            if not ok or step.witness not in snapshot or step.witness not in G.adj[step.vertex]:
                raise AssertionError(f"step {step} violates the rule")
            if len(_white_neighbors(G, snapshot, step.witness)) > params.q:
                raise AssertionError(f"witness of {step} has too many white neighbors")
            blue.add(step.vertex)
        return frozenset(blue)


def _white_neighbors(G: Graph, blue: frozenset[int] | set[int], u: int) -> list[int]:
    return [x for x in G.adj[u] if x not in blue]


def eligible(
    G: Graph, blue: Iterable[int], params: SpreadParams, w: int
) -> tuple[bool, int | None]:
    """Whether white w may turn blue now, with the least-index witness."""
    blue = blue if isinstance(blue, (set, frozenset)) else set(blue)
    if w in blue:
        raise ValueError(f"vertex {w} is already blue")
    blue_nbrs = sorted(u for u in G.adj[w] if u in blue)
    if len(blue_nbrs) < params.p:
        return False, None
    for u in blue_nbrs:
        if len(_white_neighbors(G, blue, u)) <= params.q:
            return True, u
    return False, None


def closure(
    G: Graph,
    S: Iterable[int],
    params: SpreadParams,
    synchronous: bool = False,
) -> tuple[frozenset[int], SpreadTrace]:
    """Apply the rule to a fixed point.

    Sequential mode always fires the least-index eligible vertex; synchronous
    mode fires every eligible vertex of a round together. Both reach the same
    set because the rule is monotone in the blue set.
    """
    initial = check_vertex_set(G, S)
    trace = SpreadTrace(initial)
    if synchronous:
        return _closure_synchronous(G, initial, params, trace)

    blue = set(initial)
    nblue = [sum(1 for u in G.adj[v] if u in blue) for v in range(G.n)]
    nwhite = [G.degree(v) - nblue[v] for v in range(G.n)]
    heap = [v for v in range(G.n) if v not in blue]
    heapq.heapify(heap)
    step_no = 0
    while heap:
        w = heapq.heappop(heap)
        if w in blue or nblue[w] < params.p:
            continue
        witness = next(
            (u for u in sorted(G.adj[w]) if u in blue and nwhite[u] <= params.q), None
        )
        if witness is None:
            continue
        step_no += 1
        trace.steps.append(Step(w, witness, nblue[w], step_no))
        blue.add(w)
        for u in G.adj[w]:
            nblue[u] += 1
            nwhite[u] -= 1
        touched = set(G.adj[w])
        for u in G.adj[w]:
            if u in blue:
                touched |= G.adj[u]
        for x in touched:
            if x not in blue:
                heapq.heappush(heap, x)
    return frozenset(blue), trace


def _closure_synchronous(G, initial, params, trace):
    blue = set(initial)
    rnd = 0
    while True:
        frozen = frozenset(blue)
        fired = []
        for w in range(G.n):
            if w in frozen:
                continue
            ok, witness = eligible(G, frozen, params, w)
            if ok:
                fired.append(Step(w, witness, sum(1 for u in G.adj[w] if u in frozen), rnd + 1))
        if not fired:
            return frozenset(blue), trace
        rnd += 1
        trace.steps.extend(fired)
        blue.update(s.vertex for s in fired)


def is_spreading_set(G: Graph, S: Iterable[int], params: SpreadParams) -> bool:
    return closure_mask(G, to_mask(check_vertex_set(G, S)), params) == (1 << G.n) - 1


def zero_forcing_closure(G: Graph, S: Iterable[int]):
    return closure(G, S, SpreadParams(1, 1))


def k_forcing_closure(G: Graph, S: Iterable[int], k: int):
    return closure(G, S, SpreadParams(1, k))


def r_percolation_closure(G: Graph, S: Iterable[int], r: int):
    return closure(G, S, SpreadParams(r, INF))


# Bitmask engine used by the solvers. Independent of the list-based closure
# above so the two can be checked against each other.

def extend_mask(G: Graph, blue: int, added: int, params: SpreadParams) -> int:
    """Closure of ``blue | added`` where ``blue`` is already closed."""
    masks = G.masks
    ball2 = G.ball2
    p = params.p
    q = params.q
    check_q = not params.q_infinite and q < G.max_degree
    blue |= added
    todo = 0
    rest = added
    while rest:
        low = rest & -rest
        todo |= ball2[low.bit_length() - 1]
        rest ^= low
    todo &= ~blue
    while todo:
        low = todo & -todo
        todo ^= low
        w = low.bit_length() - 1
        nb = masks[w] & blue
        if nb.bit_count() < p:
            continue
        if check_q:
            ok = False
            rest = nb
            while rest:
                lu = rest & -rest
                rest ^= lu
                if (masks[lu.bit_length() - 1] & ~blue).bit_count() <= q:
                    ok = True
                    break
            if not ok:
                continue
        blue |= low
        todo = (todo | ball2[w]) & ~blue
    return blue


def closure_mask(G: Graph, S: int, params: SpreadParams) -> int:
    return extend_mask(G, 0, S, params)


def closure_set(G: Graph, S: Iterable[int], params: SpreadParams) -> frozenset[int]:
    return from_mask(closure_mask(G, to_mask(S), params))
