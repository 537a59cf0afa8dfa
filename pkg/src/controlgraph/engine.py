"""Graph test of controllability: initial graph, commutator passes, subalgebra passes."""

from __future__ import annotations

import itertools
import json
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decouple import run_commutator_pass, run_subalgebra_pass
from .graph import DEFAULT_DELTA_E, DEFAULT_DELTA_H, TransitionGraph, build_initial_graph
from .model import ArraySpec, Control, build_controls, build_drift
from .spectral import degeneracy_report, diagonalize_drift, transform_control

CONTROLLABLE = "Controllable"
NOT_CONTROLLABLE = "NotControllable"
INCONCLUSIVE = "Inconclusive"

EIGENBASIS_AMBIGUOUS = "eigenbasis-ambiguous"


@dataclass
class Stage:
    name: str
    edges_added: int
    decoupled_edges: int
    components: int

    def to_dict(self) -> dict:
        return {
            "stage": self.name,
            "edges_added": self.edges_added,
            "decoupled_edges": self.decoupled_edges,
            "components": self.components,
        }


@dataclass
class AnalysisReport:
    spec: ArraySpec
    delta_H: float
    delta_E: float
    verdict: str
    initial_decoupled_edges: int
    initial_components: int
    commutator_edges: int
    subalgebra_edges: int
    final_decoupled_edges: int
    final_components: int
    warnings: list[str] = field(default_factory=list)
    degenerate_clusters: list[list[int]] = field(default_factory=list)
    stages: list[Stage] = field(default_factory=list)
    set_tests: list = field(default_factory=list)
    skipped_overlapping: int = 0
    graph: TransitionGraph | None = None
    timing: dict = field(default_factory=dict)

    @property
    def controllable(self) -> bool:
        return self.verdict == CONTROLLABLE

    def to_dict(self, include_timing: bool = True, include_graph: bool = False) -> dict:
        d = {
            "spec": self.spec.to_dict(),
            "tolerances": {"delta_h": self.delta_H, "delta_e": self.delta_E},
            "n_vertices": self.spec.dim,
            "verdict": self.verdict,
            "warnings": list(self.warnings),
            "degenerate_clusters": self.degenerate_clusters,
            "initial_decoupled_edges": self.initial_decoupled_edges,
            "initial_components": self.initial_components,
            "commutator_edges": self.commutator_edges,
            "subalgebra_edges": self.subalgebra_edges,
            "final_decoupled_edges": self.final_decoupled_edges,
            "final_components": self.final_components,
            "stages": [s.to_dict() for s in self.stages],
            "subalgebra_tests": [t.to_dict() for t in self.set_tests],
            "skipped_overlapping_sets": self.skipped_overlapping,
        }
        if self.graph is not None:
            d["edges"] = [e.to_dict() for e in self.graph.decoupled_edges]
            if include_graph:
                d["graph"] = self.graph.to_dict()
        if include_timing:
            d["timing"] = dict(self.timing)
        return d

    def to_json(self, include_timing: bool = True, **kw) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing, **kw), indent=2, sort_keys=False)

    def summary(self) -> str:
        lines = [
            f"verdict: {self.verdict}" + (f" ({', '.join(self.warnings)})" if self.warnings else ""),
            f"vertices: {self.spec.dim}  controls: {', '.join(c.label for c in self.spec.controls) or '-'}",
            f"tolerances: delta_H={self.delta_H:g}  delta_E={self.delta_E:g} GHz",
        ]
        for s in self.stages:
            lines.append(
                f"  {s.name:<12} +{s.edges_added:<4d} edges -> {s.decoupled_edges:4d} decoupled, "
                f"{s.components:3d} components"
            )
        return "\n".join(lines)


def initial_graph(spec: ArraySpec, delta_H: float = DEFAULT_DELTA_H, delta_E: float = DEFAULT_DELTA_E):
    """Eigensystem and initial transition graph of `spec`."""
    eig = diagonalize_drift(build_drift(spec))
    controls = [transform_control(eig, h, j) for j, h in enumerate(build_controls(spec))]
    return eig, build_initial_graph(eig, controls, delta_H, delta_E)


def _bridging_coupled(g: TransitionGraph) -> bool:
    return any(g.bridging(p) for s in g.coupled_sets for p in s.transitions)


def analyze(
    spec: ArraySpec,
    delta_H: float = DEFAULT_DELTA_H,
    delta_E: float = DEFAULT_DELTA_E,
    overlapping: bool = True,
) -> AnalysisReport:
    """Run the graph test on `spec`.

    Commutator passes repeat until none adds an edge; the subalgebra pass then
    runs, and both alternate until the graph is connected or nothing changes.
    """
    if delta_H <= 0 or delta_E <= 0:
        raise ValueError("tolerances must be positive")
    t0 = time.perf_counter()
    eig, g = initial_graph(spec, delta_H, delta_E)
    t1 = time.perf_counter()
    clusters = degeneracy_report(eig, delta_E)
    warnings = [EIGENBASIS_AMBIGUOUS] if clusters else []

    stages = [Stage("initial", g.n_decoupled, g.n_decoupled, g.n_components)]
    n_comm = n_sub = 0
    tests, skipped = [], 0
    verdict = None
    while verdict is None:
        if g.is_connected():
            verdict = CONTROLLABLE
            break
        added = 0
        while not g.is_connected():
            res = run_commutator_pass(g)
            if not res.transition_added:
                break
            added += 1
        if added:
            n_comm += added
            stages.append(Stage("commutator", added, g.n_decoupled, g.n_components))
        if g.is_connected():
            verdict = CONTROLLABLE
            break
        if not _bridging_coupled(g):
            verdict = NOT_CONTROLLABLE
            break
        sub = run_subalgebra_pass(g, eig.energies, overlapping=overlapping)
        tests.extend(sub.tests)
        skipped += len(sub.skipped_overlapping)
        stages.append(Stage("subalgebra", sub.edges_added, g.n_decoupled, g.n_components))
        n_sub += sub.edges_added
        if sub.edges_added == 0:
            verdict = INCONCLUSIVE
    if verdict == NOT_CONTROLLABLE and warnings:
        verdict = INCONCLUSIVE
    t2 = time.perf_counter()

    return AnalysisReport(
        spec=spec,
        delta_H=delta_H,
        delta_E=delta_E,
        verdict=verdict,
        initial_decoupled_edges=stages[0].decoupled_edges,
        initial_components=stages[0].components,
        commutator_edges=n_comm,
        subalgebra_edges=n_sub,
        final_decoupled_edges=g.n_decoupled,
        final_components=g.n_components,
        warnings=warnings,
        degenerate_clusters=clusters,
        stages=stages,
        set_tests=tests,
        skipped_overlapping=skipped,
        graph=g,
        timing={"initial_graph_s": t1 - t0, "total_s": t2 - t0},
    )


def qubit_distance(spec: ArraySpec, p: int, q: int) -> int | None:
    """Number of couplings on the shortest path between qubits `p` and `q`."""
    adj = spec.coupling_graph()
    dist = {p: 0}
    queue = deque([p])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist.get(q)


@dataclass(frozen=True)
class SweepRow:
    placement: tuple[int, ...]
    distance: int | None
    verdict: str
    initial_decoupled_edges: int
    initial_components: int
    commutator_edges: int
    subalgebra_edges: int
    final_components: int

    def to_dict(self) -> dict:
        return {
            "placement": list(self.placement),
            "distance": self.distance,
            "verdict": self.verdict,
            "initial_decoupled_edges": self.initial_decoupled_edges,
            "initial_components": self.initial_components,
            "commutator_edges": self.commutator_edges,
            "subalgebra_edges": self.subalgebra_edges,
            "final_components": self.final_components,
        }


def _sweep_one(args) -> SweepRow:
    template, placement, axis, delta_H, delta_E = args
    spec = template.with_controls(Control(q, axis) for q in placement)
    r = analyze(spec, delta_H, delta_E)
    distance = qubit_distance(spec, *placement) if len(placement) == 2 else None
    return SweepRow(
        placement, distance, r.verdict, r.initial_decoupled_edges, r.initial_components,
        r.commutator_edges, r.subalgebra_edges, r.final_components,
    )


def sweep_controls(
    template: ArraySpec,
    k: int,
    axis: str = "X",
    delta_H: float = DEFAULT_DELTA_H,
    delta_E: float = DEFAULT_DELTA_E,
    workers: int | None = None,
) -> list[SweepRow]:
    """Analyze every placement of `k` identical local controls.

    Rows are in lexicographic placement order. `workers > 1` runs placements
    in separate processes.
    """
    n = template.n_qubits
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    jobs = [(template, p, axis, delta_H, delta_E) for p in itertools.combinations(range(n), k)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_one, jobs))
    return [_sweep_one(j) for j in jobs]


def sweep_table(rows: list[SweepRow]) -> str:
    lines = [f"{'placement':<16}{'distance':>9}  verdict"]
    for r in rows:
        d = "-" if r.distance is None else str(r.distance)
        lines.append(f"{str(r.placement):<16}{d:>9}  {r.verdict}")
    return "\n".join(lines)


def summarize_by_distance(rows: list[SweepRow]) -> dict[int, dict[str, int]]:
    out: dict[int, dict[str, int]] = {}
    for r in rows:
        bucket = out.setdefault(r.distance, {})
        bucket[r.verdict] = bucket.get(r.verdict, 0) + 1
    return dict(sorted(out.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)))
