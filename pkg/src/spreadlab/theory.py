"""Closed-form predictions of sigma_(p,q) on connected claw-free cubic graphs,
and their cross-check against the exact solver."""

from __future__ import annotations

import os
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .decomposition import classify_family, delta_d_partition, is_k4, require_claw_free_cubic
from .graph import Graph
from .solvers import DEFAULT_NODE_BUDGET, independence_number, sigma_exact
from .spreading import INF, SpreadParams

EXACT = "exact"
TWO_VALUES = "two_values"
UPPER_BOUND = "upper_bound"
TRIVIAL = "trivial"

TABLE_CELLS = (
    (1, 1), (1, 2), (1, 3),
    (2, 1), (2, 2), (2, 3),
    (3, 1), (3, 2), (3, 3),
    (4, 1),
)

# sigma on K_4 by exhaustive search; K_4 has no unit partition so the
# general rows do not apply.
K4_TABLE = {
    (1, 1): 3, (1, 2): 2, (1, 3): 1,
    (2, 1): 3, (2, 2): 2, (2, 3): 2,
    (3, 1): 3, (3, 2): 3, (3, 3): 3,
}


@dataclass(frozen=True)
class Prediction:
    kind: str
    values: tuple[int, ...]
    provenance: str
    # what each value means, e.g. ("u+1", "u+2")
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == TWO_VALUES and not (len(self.values) == 2 and self.values[0] < self.values[1]):
            raise ValueError(f"two-valued prediction needs v1 < v2, got {self.values}")
        if self.kind != TWO_VALUES and len(self.values) != 1:
            raise ValueError(f"{self.kind} prediction takes one value")

    def contains(self, value: int) -> bool:
        if self.kind == UPPER_BOUND:
            return value <= self.values[0]
        return value in self.values

    def label_of(self, value: int) -> str | None:
        if value in self.values and self.labels:
            return self.labels[self.values.index(value)]
        return None

    def __str__(self) -> str:
        if self.kind == TWO_VALUES:
            return f"{{{self.values[0]}, {self.values[1]}}}"
        if self.kind == UPPER_BOUND:
            return f"<= {self.values[0]}"
        return str(self.values[0])

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "values": list(self.values),
            "labels": list(self.labels),
            "provenance": self.provenance,
        }


def _cell_key(params: SpreadParams) -> tuple[int, int | float]:
    return params.p, (3 if params.q >= 3 else params.q)


def predict(G: Graph, params: SpreadParams) -> Prediction:
    require_claw_free_cubic(G)
    p, q = params.p, params.q
    n = G.n
    if p >= 4:
        return Prediction(TRIVIAL, (n,), "p exceeds the degree: only V(G) spreads", ("n",))
    if is_k4(G):
        value = K4_TABLE[_cell_key(params)]
        return Prediction(EXACT, (value,), "K4 table (exhaustive search)")
    if p == 1:
        if q == 2:
            return Prediction(TRIVIAL, (2,), "any two adjacent vertices 2-force a cubic graph")
        if q >= 3:
            return Prediction(TRIVIAL, (1,), "one vertex forces all of its neighbors")
        alpha = independence_number(G)[0]
        if n >= 14:
            return Prediction(UPPER_BOUND, (alpha,), "zero forcing at most alpha for order >= 14", ("alpha",))
        return Prediction(UPPER_BOUND, (alpha + 1,), "zero forcing at most alpha + 1", ("alpha+1",))

    if p == 2:
        P = delta_d_partition(G)
        u = P.u
        if q == 1:
            return Prediction(TWO_VALUES, (u + 1, u + 2), "(2,1) between u+1 and u+2", ("u+1", "u+2"))
        if q == 2:
            return Prediction(TWO_VALUES, (u, u + 1), "(2,2) between u and u+1", ("u", "u+1"))
        if classify_family(G, P).tag == "N":
            return Prediction(EXACT, (u + 1,), "diamond necklace 2-percolation", ("u+1",))
        return Prediction(EXACT, (u,), "2-percolation equals the unit count", ("u",))

    beta = n - independence_number(G)[0]
    if q == 1:
        return Prediction(TWO_VALUES, (beta, beta + 1), "(3,1) between beta and beta+1", ("beta", "beta+1"))
    return Prediction(EXACT, (beta,), "3-spreading sets are vertex covers", ("beta",))


@dataclass
class GraphInfo:
    name: str
    n: int
    m: int
    family: str
    units: int | None

    @classmethod
    def of(cls, G: Graph, name: str = "") -> GraphInfo:
        require_claw_free_cubic(G)
        if is_k4(G):
            return cls(name, G.n, G.m, "K4", None)
        P = delta_d_partition(G)
        return cls(name, G.n, G.m, str(classify_family(G, P)), P.u)

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "m": self.m, "family": self.family, "units": self.units}


@dataclass
class CellReport:
    params: SpreadParams
    prediction: Prediction
    value: int | None
    interval: tuple[int, int]
    verdict: str  # consistent, violated or skipped
    witness: frozenset[int] = frozenset()
    attained: str | None = None
    nodes: int = 0
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "p": self.params.p,
            "q": None if self.params.q_infinite else self.params.q,
            "q_infinite": self.params.q_infinite,
            "prediction": self.prediction.to_json(),
            "value": self.value,
            "interval": list(self.interval),
            "verdict": self.verdict,
            "attained": self.attained,
            "witness": sorted(self.witness),
            "nodes": self.nodes,
        }


@dataclass
class VerificationReport:
    graph: GraphInfo
    cells: list[CellReport] = field(default_factory=list)

    @property
    def violations(self) -> list[CellReport]:
        return [c for c in self.cells if c.verdict == "violated"]

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(), "cells": [c.to_json() for c in self.cells]}


def verify(G: Graph, params: SpreadParams, budget: int = DEFAULT_NODE_BUDGET) -> CellReport:
    pred = predict(G, params)
    t0 = time.perf_counter()
    res = sigma_exact(G, params, node_budget=budget)
    elapsed = time.perf_counter() - t0
    if res.value is None:
        return CellReport(params, pred, None, res.interval(), "skipped",
                          nodes=res.nodes_explored, elapsed=elapsed)
    verdict = "consistent" if pred.contains(res.value) else "violated"
    return CellReport(
        params, pred, res.value, res.interval(), verdict, res.witness,
        pred.label_of(res.value), res.nodes_explored, elapsed,
    )


def verify_graph(
    G: Graph,
    cells: Iterable[SpreadParams],
    budget: int = DEFAULT_NODE_BUDGET,
    name: str = "",
) -> VerificationReport:
    report = VerificationReport(GraphInfo.of(G, name))
    for params in cells:
        report.cells.append(verify(G, params, budget))
    return report


def parse_cells(text: str | Sequence[str]) -> list[SpreadParams]:
    """Parse cells such as "2,2;3,inf" or ["2,2", "3,inf"]."""
    parts = text.replace(";", " ").split() if isinstance(text, str) else list(text)
    out = []
    for part in parts:
        p, _, q = part.partition(",")
        if not q:
            raise ValueError(f"cell {part!r} must look like p,q")
        out.append(SpreadParams.parse(p, q))
    return out


def table_cells() -> list[SpreadParams]:
    return [SpreadParams(p, q) for p, q in TABLE_CELLS]


@dataclass
class SurveyReport:
    reports: list[VerificationReport]

    @property
    def violations(self) -> int:
        return sum(len(r.violations) for r in self.reports)

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.reports for c in r.cells if c.verdict == "skipped")

    def attainment(self) -> dict[str, Counter]:
        """For each two-valued cell, how often each value was attained."""
        stats: dict[str, Counter] = defaultdict(Counter)
        for r in self.reports:
            for c in r.cells:
                if c.prediction.kind == TWO_VALUES and c.attained:
                    stats[str(c.params)][c.attained] += 1
        return dict(sorted(stats.items()))

    def to_json(self) -> dict:
        return {
            "instances": [r.to_json() for r in self.reports],
            "violations": self.violations,
            "skipped": self.skipped,
            "attainment": {k: dict(sorted(v.items())) for k, v in self.attainment().items()},
        }


def worker_count(requested: int | None = None) -> int:
    cap = os.environ.get("SPREADLAB_THREADS")
    limit = int(cap) if cap and cap.isdigit() and int(cap) > 0 else (os.cpu_count() or 1)
    return max(1, min(limit, requested or limit))


def _survey_one(args) -> VerificationReport:
    name, G, cells, budget = args
    return verify_graph(G, cells, budget, name)


def survey(
    instances: Iterable[tuple[str, Graph]],
    cells: Sequence[SpreadParams],
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int | None = 1,
) -> SurveyReport:
    """Verify every instance on every cell; reports come back sorted by name."""
    jobs = [(name, G, list(cells), budget) for name, G in instances]
    nworkers = worker_count(workers)
    if nworkers <= 1 or len(jobs) <= 1:
        reports = [_survey_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            reports = list(pool.map(_survey_one, jobs))
    reports.sort(key=lambda r: r.graph.name)
    return SurveyReport(reports)


__all__ = [
    "EXACT", "TWO_VALUES", "UPPER_BOUND", "TRIVIAL", "INF", "K4_TABLE", "TABLE_CELLS",
    "Prediction", "GraphInfo", "CellReport", "VerificationReport", "SurveyReport",
    "predict", "verify", "verify_graph", "survey", "parse_cells", "table_cells", "worker_count",
]
