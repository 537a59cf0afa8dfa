"""Transition graph of a driven system: decoupled edges, coupled sets, components."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import ControlInEigenbasis, Eigensystem

DEFAULT_DELTA_H = 1e-6
DEFAULT_DELTA_E = 0.01  # GHz

Pair = tuple[int, int]


def canonical(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Edge:
    """A decoupled transition between eigenstates ``a < b``.

    ``kind`` is ``"control"`` (read off a control matrix element),
    ``"commutator"`` or ``"subalgebra"``. ``controls`` lists the driving
    control indices involved and ``parents`` the transitions it was derived from.
    """

    a: int
    b: int
    kind: str = "control"
    controls: tuple[int, ...] = ()
    parents: tuple[Pair, ...] = ()

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("an edge needs two distinct vertices")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def pair(self) -> Pair:
        return (self.a, self.b)

    def to_dict(self) -> dict:
        d = {"a": self.a, "b": self.b, "kind": self.kind, "controls": list(self.controls)}
        if self.parents:
            d["parents"] = [list(p) for p in self.parents]
        return d


@dataclass(frozen=True)
class CoupledSet:
    """Resonant transitions driven by one control, with their matrix elements."""

    control: int
    gap: float
    transitions: tuple[Pair, ...]
    coefficients: tuple[complex, ...]

    @property
    def key(self) -> frozenset:
        return frozenset(self.transitions)

    def is_disjoint(self) -> bool:
        verts = [v for p in self.transitions for v in p]
        return len(set(verts)) == len(verts)

    def coefficient(self, pair: Pair) -> complex:
        return self.coefficients[self.transitions.index(pair)]

    def to_dict(self) -> dict:
        return {
            "control": self.control,
            "gap": self.gap,
            "transitions": [list(p) for p in self.transitions],
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller root survives, keeps labels stable
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.count -= 1
        return True


@dataclass
class TransitionGraph:
    n_vertices: int
    energies: np.ndarray | None = None
    decoupled_edges: list[Edge] = field(default_factory=list)
    coupled_sets: list[CoupledSet] = field(default_factory=list)

    def __post_init__(self):
        self._uf = UnionFind(self.n_vertices)
        self._by_pair: dict[Pair, list[Edge]] = {}
        edges, self.decoupled_edges = self.decoupled_edges, []
        for e in edges:
            self.add_edge(e)

    def add_edge(self, e: Edge) -> bool:
        """Insert `e`; return True when its vertex pair was not yet decoupled.

        A second edge with the same pair and a different source is kept as
        provenance; an exact duplicate is ignored.
        """
        if not (0 <= e.a < self.n_vertices and 0 <= e.b < self.n_vertices):
            raise IndexError(f"edge {e.pair} out of range for {self.n_vertices} vertices")
        known = self._by_pair.setdefault(e.pair, [])
        new_pair = not known
        if e not in known:
            known.append(e)
            self.decoupled_edges.append(e)
        self._uf.union(e.a, e.b)
        return new_pair

    def has_pair(self, a: int, b: int) -> bool:
        return canonical(a, b) in self._by_pair

    @property
    def decoupled_pairs(self) -> list[Pair]:
        return list(self._by_pair)

    @property
    def n_decoupled(self) -> int:
        """Number of distinct decoupled vertex pairs."""
        return len(self._by_pair)

    def find(self, v: int) -> int:
        return self._uf.find(v)

    def same_component(self, a: int, b: int) -> bool:
        return self._uf.find(a) == self._uf.find(b)

    @property
    def n_components(self) -> int:
        return self._uf.count

    def is_connected(self) -> bool:
        return self._uf.count == 1

    @property
    def components(self) -> list[list[int]]:
        blocks: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            blocks.setdefault(self._uf.find(v), []).append(v)
        return sorted(blocks.values())

    def bridging(self, pair: Pair) -> bool:
        return not self.same_component(*pair)

    def to_dict(self) -> dict:
        d = {"n_vertices": self.n_vertices}
        if self.energies is not None:
            d["energies"] = [float(x) for x in self.energies]
        d["decoupled_edges"] = [e.to_dict() for e in self.decoupled_edges]
        d["coupled_sets"] = [s.to_dict() for s in self.coupled_sets]
        d["components"] = self.components
        return d

    def to_dot(self, name: str = "transitions") -> str:
        return to_dot(self, name)


def add_decoupled_edge(g: TransitionGraph, e: Edge) -> TransitionGraph:
    g.add_edge(e)
    return g


def resonant_clusters(transitions, delta_E: float) -> list[list]:
    """Group ``(gap, a, b, coef)`` tuples by gap.

    Transitions are sorted by ``(gap, a, b)``; the first remaining one seeds a
    cluster holding every remaining transition within `delta_E` of the seed.
    """
    pending = sorted(transitions, key=lambda t: (t[0], t[1], t[2]))
    clusters = []
    start = 0
    while start < len(pending):
        seed_gap = pending[start][0]
        stop = start + 1
        while stop < len(pending) and pending[stop][0] - seed_gap <= delta_E:
            stop += 1
        clusters.append(pending[start:stop])
        start = stop
    return clusters


def build_initial_graph(
    eig: Eigensystem,
    controls: list[ControlInEigenbasis],
    delta_H: float = DEFAULT_DELTA_H,
    delta_E: float = DEFAULT_DELTA_E,
) -> TransitionGraph:
    if delta_H <= 0 or delta_E <= 0:
        raise ValueError("tolerances must be positive")
    n = eig.dim
    energies = eig.energies
    g = TransitionGraph(n, energies=energies.copy())
    a_idx, b_idx = np.triu_indices(n, k=1)
    for ctrl in controls:
        m = ctrl.matrix
        coefs = m[a_idx, b_idx]
        keep = np.abs(coefs) >= delta_H
        transitions = [
            (abs(float(energies[b] - energies[a])), int(a), int(b), complex(c))
            for a, b, c in zip(a_idx[keep], b_idx[keep], coefs[keep])
        ]
        for cluster in resonant_clusters(transitions, delta_E):
            if len(cluster) == 1:
                _, a, b, _ = cluster[0]
                g.add_edge(Edge(a, b, "control", (ctrl.control_index,)))
            else:
                g.coupled_sets.append(
                    CoupledSet(
                        control=ctrl.control_index,
                        gap=cluster[0][0],
                        transitions=tuple((a, b) for _, a, b, _ in cluster),
                        coefficients=tuple(c for *_, c in cluster),
                    )
                )
    return g


def connected_components(g: TransitionGraph) -> list[list[int]]:
    """Components of the decoupled-edge graph by iterative depth-first search."""
    adj: list[set[int]] = [set() for _ in range(g.n_vertices)]
    for e in g.decoupled_edges:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    seen = [False] * g.n_vertices
    blocks = []
    for start in range(g.n_vertices):
        if seen[start]:
            continue
        seen[start] = True
        stack, block = [start], []
        while stack:
            v = stack.pop()
            block.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        blocks.append(sorted(block))
    return blocks


_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def to_dot(g: TransitionGraph, name: str = "transitions") -> str:
    """Graphviz DOT text: decoupled edges solid, coupled-set members dashed and coloured per set."""
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v in range(g.n_vertices):
        label = f"{v}"
        if g.energies is not None:
            label += f"\\nE={g.energies[v]:.4f}"
        lines.append(f'  {v} [label="{label}"];')
    for e in g.decoupled_edges:
        ctrl = ",".join(str(c) for c in e.controls)
        lines.append(f'  {e.a} -- {e.b} [style=solid, label="{e.kind}:{ctrl}"];')
    for k, s in enumerate(g.coupled_sets):
        colour = _PALETTE[k % len(_PALETTE)]
        for a, b in s.transitions:
            lines.append(
                f'  {a} -- {b} [style=dashed, color="{colour}", label="set{k}:c{s.control}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
