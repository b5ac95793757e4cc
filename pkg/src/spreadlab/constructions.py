"""Polynomial-time spreading sets for connected claw-free cubic graphs.

Each builder returns a ConstructionResult whose set has been run through the
spreading engine at the target parameters. Arbitrary choices always resolve
to the least vertex index so outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomposition import (
    DeltaDPartition,
    NotInClassError,
    StartPair,
    classify_family,
    delta_d_partition,
    find_special_triangle_unit,
    is_k4,
    partner_unit_for_start,
    require_claw_free_cubic,
)
from .graph import Graph
from .solvers import (
    independence_number,
    is_independent,
    max_independent_set_hitting_triangles,
    triangles,
    vertex_cover_number,
)
from .spreading import INF, SpreadParams, closure


@dataclass
class ConstructionResult:
    vertices: frozenset[int]
    params: SpreadParams
    claimed_size_formula: str
    claimed_size: int
    validated: bool = False
    log: list[str] = field(default_factory=list)
    # "eq": |set| must equal claimed_size; "le": |set| <= claimed_size
    relation: str = "eq"

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def size_ok(self) -> bool:
        if self.relation == "le":
            return self.size <= self.claimed_size
        return self.size == self.claimed_size

    @property
    def ok(self) -> bool:
        return self.validated and self.size_ok


def _validate(G: Graph, S, params: SpreadParams) -> bool:
    final, _ = closure(G, S, params)
    return len(final) == G.n


def _finish(G, S, params, formula, claimed, log, relation="eq", also=()) -> ConstructionResult:
    S = frozenset(S)
    ok = _validate(G, S, params)
    log.append(f"engine check under {params}: {'spreads' if ok else 'FAILS'}")
    for extra in also:
        good = _validate(G, S, extra)
        log.append(f"engine check under {extra}: {'spreads' if good else 'FAILS'}")
        ok = ok and good
    return ConstructionResult(S, params, formula, claimed, ok, log, relation)


def _require_not_k4(G: Graph) -> None:
    require_claw_free_cubic(G)
    if is_k4(G):
        raise NotInClassError("construction is undefined on K_4")


# Independent sets meeting every triangle

def triangle_hitting_independent_set(G: Graph) -> frozenset[int]:
    """An independent set with a vertex in every triangle of G.

    Diamonds contribute their least dominating vertex. The rest of the graph
    is peeled one triangle at a time through a vertex of residual degree two.
    Graphs built only from triangles have alpha = n/3, so any maximum
    independent set already hits every triangle.
    """
    _require_not_k4(G)
    P = delta_d_partition(G)
    if not P.diamond_units:
        return independence_number(G)[1]
    chosen: set[int] = set()
    for D in P.diamond_units:
        chosen.add(min(D.dominating))
    alive = set(v for U in P.triangle_units for v in U.vertices)
    while alive:
        pick = None
        for v in sorted(alive):
            deg = sum(1 for w in G.adj[v] if w in alive)
            if deg == 2 and not (G.adj[v] & chosen):
                pick = v
                break
        if pick is None:
            raise AssertionError("no admissible degree-2 vertex in the residual graph")
        chosen.add(pick)
        alive -= P.units[P.unit_of[pick]].vertices
    return frozenset(chosen)


def vertex_cover_two_per_triangle(G: Graph) -> frozenset[int]:
    """Complement of triangle_hitting_independent_set; two vertices per triangle."""
    I = triangle_hitting_independent_set(G)
    return frozenset(range(G.n)) - I


# p = 3

def percolating_set_3(G: Graph) -> ConstructionResult:
    """A minimum vertex cover; it 3-percolates and also (3,2)-spreads."""
    require_claw_free_cubic(G)
    beta, cover = vertex_cover_number(G)
    log = [f"minimum vertex cover of size {beta} from exact search"]
    return _finish(
        G, cover, SpreadParams(3, INF), "β(G)", beta, log, also=(SpreadParams(3, 2),)
    )


def spreading_set_31(G: Graph) -> ConstructionResult:
    """A cover with two vertices per triangle plus the missing vertex of one triangle."""
    require_claw_free_cubic(G)
    params = SpreadParams(3, 1)
    beta, cover = vertex_cover_number(G)
    if is_k4(G):
        log = [f"K_4: the minimum vertex cover {sorted(cover)} already (3,1)-spreads"]
        return _finish(G, cover, params, "β(G)", beta, log)
    found = max_independent_set_hitting_triangles(G)
    if found is None:
        raise AssertionError("no independent set meets every triangle")
    _, I = found
    P = frozenset(range(G.n)) - I
    log = [f"cover with two vertices per triangle: size {len(P)} (β(G) = {beta})"]
    if len(P) > beta:
        log.append(f"restricted cover exceeds β(G) by {len(P) - beta}")
    T = min(triangles(G), key=sorted)
    (v,) = T - P
    log.append(f"complete triangle {sorted(T)} by adding {v}")
    formula = "β(G)+1" if len(P) == beta else "β'(G)+1"
    return _finish(G, P | {v}, params, formula, len(P) + 1, log)


# p = 2

def _traverse(
    G: Graph,
    P: DeltaDPartition,
    S: set[int],
    infected: set[int],
    log: list[str],
    pending: tuple[int, int] | None = None,
) -> None:
    """Infect every remaining unit from an already infected one.

    A unit entered along an edge u-v (u infected) gets one extra vertex at
    distance two from u: another vertex of a triangle, or the least dominating
    vertex of a diamond. ``pending`` is (unit index, t1) for the starting
    triangle that so far holds only t1; it must be entered through a vertex
    other than t1 and then needs nothing new.
    """
    while len(infected) < P.u:
        step = None
        for i, j, (x, y) in P.unit_edges:
            if (i in infected) == (j in infected):
                continue
            u, v, target = (x, y, j) if i in infected else (y, x, i)
            if pending and target == pending[0] and v == pending[1]:
                continue
            step = (u, v, target)
            break
        if step is None:
            raise AssertionError(f"traversal stuck with {len(infected)} of {P.u} units infected")
        u, v, target = step
        U = P.units[target]
        if pending and target == pending[0]:
            log.append(f"enter start triangle {U.sorted()} at {v} from {u}; {pending[1]} already blue")
            pending = None
        else:
            if U.is_triangle:
                v1 = min(U.vertices - {v})
            else:
                v1 = min(U.dominating)
            S.add(v1)
            log.append(f"enter {U.kind.value} {U.sorted()} at {v} from {u}; add {v1}")
        infected.add(target)


def _necklace_set(P: DeltaDPartition, log: list[str]) -> set[int]:
    first, *rest = P.units
    S = set(first.dominating)
    log.append(f"both dominating vertices of diamond {first.sorted()}")
    for D in rest:
        S.add(min(D.dominating))
    log.append(f"least dominating vertex of each of the other {len(rest)} diamonds")
    return S


def _start(G: Graph, P: DeltaDPartition, log: list[str]) -> tuple[StartPair, set[int], set[int], tuple | None]:
    T1 = find_special_triangle_unit(G, P)
    sp = partner_unit_for_start(G, P, T1)
    nm = sp.names
    ti, uj = P.index_of(T1), P.index_of(sp.U1)
    log.append(f"start triangle {T1.sorted()}, partner {sp.U1.kind.value} {sp.U1.sorted()} (case {sp.case})")
    if sp.case == 1:
        S = {nm["t1"], nm["a1"]}
        return sp, S, {uj}, (ti, nm["t1"])
    if sp.case == 2:
        S = {nm["t1"], nm["c1"]}
        return sp, S, {uj}, (ti, nm["t1"])
    S = {nm["t1"], nm["u"]}
    return sp, S, {ti, uj}, None


def percolating_set_2(G: Graph) -> ConstructionResult:
    require_claw_free_cubic(G)
    params = SpreadParams(2, INF)
    log: list[str] = []
    if is_k4(G):
        log.append("K_4: any two vertices")
        return _finish(G, {0, 1}, params, "2", 2, log)
    P = delta_d_partition(G)
    if classify_family(G, P).tag == "N":
        S = _necklace_set(P, log)
        return _finish(G, S, params, "u(G)+1", P.u + 1, log)
    sp, S, infected, pending = _start(G, P, log)
    log.append(f"initial vertices {sorted(S)}")
    _traverse(G, P, S, infected, log, pending)
    return _finish(G, S, params, "u(G)", P.u, log)


def spreading_set_22(G: Graph) -> ConstructionResult:
    require_claw_free_cubic(G)
    params = SpreadParams(2, 2)
    log: list[str] = []
    if is_k4(G):
        log.append("K_4: any two vertices")
        return _finish(G, {0, 1}, params, "2", 2, log)
    P = delta_d_partition(G)
    if classify_family(G, P).tag == "N":
        S = _necklace_set(P, log)
        return _finish(G, S, params, "u(G)+1", P.u + 1, log)
    sp, S, infected, pending = _start(G, P, log)
    nm = sp.names
    if sp.case == 1:
        S.add(nm["c1"])
        log.append(f"add common neighbor {nm['c1']} of t1 and a1")
    elif sp.case == 2:
        S.add(nm["b1"])
        log.append(f"add common neighbor {nm['b1']} of t1 and c1")
    log.append(f"initial vertices {sorted(S)}")
    _traverse(G, P, S, infected, log, pending)
    if sp.case == 3 and not _validate(G, S, params):
        S.add(nm["t2"])
        log.append(f"double bond start stalls; add common neighbor {nm['t2']} of t1 and u")
    return _finish(G, S, params, "u(G)+1", P.u + 1, log, relation="le")


def spreading_set_21(G: Graph) -> ConstructionResult:
    _require_not_k4(G)
    params = SpreadParams(2, 1)
    P = delta_d_partition(G)
    T = min(triangles(G), key=sorted)
    S = set(T)
    start = P.unit_of[min(T)]
    log = [f"all of triangle {sorted(T)} inside {P.units[start].kind.value} {P.units[start].sorted()}"]
    _traverse(G, P, S, {start}, log)
    return _finish(G, S, params, "u(G)+2", P.u + 2, log)


METHODS = {
    "perc3": percolating_set_3,
    "s31": spreading_set_31,
    "perc2": percolating_set_2,
    "s22": spreading_set_22,
    "s21": spreading_set_21,
}


def check_independent_hitting(G: Graph, I) -> bool:
    return is_independent(G, I) and all(T & I for T in triangles(G))
