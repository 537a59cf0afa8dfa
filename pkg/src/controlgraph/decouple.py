"""Decoupling resonant transitions.

Two mechanisms add decoupled edges to a :class:`TransitionGraph`:

- graphical commutators of a coupled set with a decoupled edge, decided from
  vertex overlaps alone;
- the Lie closure of a resonant set driven by several controls. For a set of
  ``n_t`` pairwise disjoint transitions every element lives in the span of
  ``{F_t, G_t, D_t}`` per transition plus one central drift direction, so the
  closure is computed in that ``3 n_t + 1`` dimensional real space using the
  su(2) structure constants

      [G, F] = 2 D,   [D, G] = 2 F,   [D, F] = -2 G.

A matrix element ``<e_a|H_j|e_b> = alpha - i beta`` (``a < b``) maps to the
element ``alpha F_ab + beta G_ab``. Swapping ``a`` and ``b`` leaves ``F``
unchanged and flips the sign of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import CoupledSet, Edge, Pair, TransitionGraph, canonical

RANK_RTOL = 1e-9

SINGLE = "single"
COUPLED = "coupled"
NONE = "none"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class CommutatorOutcome:
    kind: str
    edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        if self.kind == SINGLE and len(self.edges) != 1:
            raise ValueError("a single-transition outcome carries exactly one edge")

    @property
    def edge(self) -> Pair:
        return self.edges[0]


def _pairs(x) -> list[Pair]:
    if isinstance(x, CoupledSet):
        return list(x.transitions)
    if isinstance(x, Edge):
        return [x.pair]
    if len(x) == 2 and all(isinstance(v, (int, np.integer)) for v in x):
        return [canonical(int(x[0]), int(x[1]))]
    return [canonical(*p) for p in x]


def graphical_commutator(first, second) -> CommutatorOutcome:
    """Transitions produced by commuting two groups of transitions.

    Each argument is a single pair, an :class:`Edge`, a :class:`CoupledSet` or a
    sequence of pairs. Two transitions sharing exactly one vertex produce the
    transition between their other vertices. When the same transition arises
    twice its coefficients might cancel, and the outcome is undetermined.
    """
    results = []
    for p in _pairs(first):
        for q in _pairs(second):
            shared = set(p) & set(q)
            if len(shared) == 1:
                (v,) = shared
                x = p[0] if p[1] == v else p[1]
                y = q[0] if q[1] == v else q[1]
                results.append(canonical(x, y))
    if len(results) != len(set(results)):
        return CommutatorOutcome(UNDETERMINED, tuple(sorted(set(results))))
    if not results:
        return CommutatorOutcome(NONE)
    if len(results) == 1:
        return CommutatorOutcome(SINGLE, (results[0],))
    return CommutatorOutcome(COUPLED, tuple(results))


def scan_order(sets: Iterable[CoupledSet]) -> list[CoupledSet]:
    return sorted(sets, key=lambda s: (s.gap, s.control, s.transitions))


@dataclass
class CommutatorPass:
    transition_added: bool = False
    connecting_found: bool = False
    edge: Edge | None = None


def run_commutator_pass(g: TransitionGraph) -> CommutatorPass:
    """Add at most one decoupled edge that joins two components.

    For every coupled transition bridging two components, commute its set with
    each decoupled edge lying inside one of those components. The first
    single-transition result that itself bridges two components is added.
    """
    out = CommutatorPass()
    decoupled = sorted(g.decoupled_pairs)
    for s in scan_order(g.coupled_sets):
        for b0, b1 in s.transitions:
            r0, r1 = g.find(b0), g.find(b1)
            if r0 == r1:
                continue
            out.connecting_found = True
            for c0, c1 in decoupled:
                rc = g.find(c0)
                if rc != g.find(c1) or rc not in (r0, r1):
                    continue
                res = graphical_commutator(s, (c0, c1))
                if res.kind == SINGLE and g.bridging(res.edge):
                    parent = _contributor(s, (c0, c1), res.edge)
                    edge = Edge(*res.edge, "commutator", (s.control,), (parent, (c0, c1)))
                    g.add_edge(edge)
                    out.transition_added = True
                    out.edge = edge
                    return out
    return out


def _contributor(s: CoupledSet, e: Pair, result: Pair) -> Pair:
    for p in s.transitions:
        if len(set(p) & set(e)) == 1 and set(result) == set(p) ^ set(e):
            return p
    raise AssertionError("result not produced by any member")


# ---------------------------------------------------------------------------
# Lie closure in a real coordinate space


def span_rank(vectors: np.ndarray, rtol: float = RANK_RTOL) -> tuple[int, np.ndarray]:
    """Rank and an orthonormal row basis of the span of `vectors`."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vectors.size == 0:
        return 0, vectors[:0]
    _, s, vt = np.linalg.svd(vectors, full_matrices=False)
    if s[0] == 0:
        return 0, vt[:0]
    r = int(np.sum(s > rtol * s[0]))
    return r, vt[:r]


def lie_closure(generators: np.ndarray, bracket, ambient: int, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the Lie algebra generated by `generators`.

    `bracket(x, y)` returns the commutator coordinates of two elements.
    """
    gens = [np.asarray(v, dtype=float) for v in generators]
    gens = [v / np.linalg.norm(v) for v in gens if np.linalg.norm(v) > 0]
    if not gens:
        return np.zeros((0, ambient))
    rank, basis = span_rank(np.array(gens), rtol)
    for _ in range(10 * ambient):
        # raw brackets of orthonormal elements: round-off stays far below the
        # unit singular values of the basis, so it never reads as a new direction
        new = [bracket(x, y) for x, y in combinations(basis, 2)]
        if not new:
            return basis
        grown, grown_basis = span_rank(np.vstack([basis, *new]), rtol)
        if grown == rank:
            return basis
        rank, basis = grown, grown_basis
    raise RuntimeError("Lie closure did not converge within the iteration cap")


def gfd_bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Commutator in ``(f, g, d)`` per transition plus central ``h`` coordinates."""
    n_t = (len(x) - 1) // 3
    xs = x[:-1].reshape(n_t, 3)
    ys = y[:-1].reshape(n_t, 3)
    out = np.zeros_like(x)
    out[:-1] = (-2.0 * np.cross(xs, ys)).ravel()
    return out


def drift_vector(gaps: Sequence[float]) -> np.ndarray:
    """Drift in GFD coordinates; ``gaps[t] = E_b - E_a`` for transition ``(a, b)``."""
    v = np.zeros(3 * len(gaps) + 1)
    v[2:-1:3] = -np.asarray(gaps, dtype=float) / 2
    v[-1] = 1.0
    return v


def gfd_vector(coefficients: Sequence[complex]) -> np.ndarray:
    """GFD coordinates ``(alpha, beta, 0)`` per transition from ``alpha - i beta``."""
    c = np.asarray(coefficients, dtype=complex)
    v = np.zeros(3 * len(c) + 1)
    v[0:-1:3] = c.real
    v[1:-1:3] = -c.imag
    return v


def subalgebra_rank(gaps: Sequence[float], generators: Sequence[np.ndarray], pairs: Sequence[Pair] | None = None) -> int:
    """Dimension of the Lie closure of the drift and `generators`.

    `generators` are GFD vectors over the same ordered list of disjoint
    transitions; at most ``3 n_t + 1``.
    """
    if pairs is not None:
        verts = [v for p in pairs for v in p]
        if len(set(verts)) != len(verts):
            raise ValueError("transitions must be pairwise disjoint")
        if len(pairs) != len(gaps):
            raise ValueError("one gap per transition is required")
    ambient = 3 * len(gaps) + 1
    vecs = [drift_vector(gaps)] + [np.asarray(g, dtype=float) for g in generators]
    for v in vecs:
        if v.shape != (ambient,):
            raise ValueError(f"generator has length {v.shape}, expected {ambient}")
    return len(lie_closure(np.array(vecs), gfd_bracket, ambient))


def _skew_coords(m: np.ndarray) -> np.ndarray:
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def _skew_matrix(v: np.ndarray, n: int) -> np.ndarray:
    return v[: n * n].reshape(n, n) + 1j * v[n * n :].reshape(n, n)


def resonant_energies(energies, pairs: Sequence[Pair], gap: float) -> dict[int, float] | None:
    """Vertex energies on which every transition of `pairs` has exactly `gap`.

    Each connected piece of the set keeps the true energy of its lowest vertex.
    Returns None if the set contains a cycle inconsistent with a common gap.
    """
    adj: dict[int, list[tuple[int, float]]] = {}
    for a, b in pairs:
        adj.setdefault(a, []).append((b, gap))
        adj.setdefault(b, []).append((a, -gap))
    out: dict[int, float] = {}
    for root in sorted(adj):
        if root in out:
            continue
        out[root] = float(energies[root])
        stack = [root]
        while stack:
            v = stack.pop()
            for w, step in adj[v]:
                if w not in out:
                    out[w] = out[v] + step
                    stack.append(w)
                elif abs(out[w] - out[v] - step) > 1e-9 * max(1.0, abs(gap)):
                    return None
    return out


def block_decouples(energies, pairs: Sequence[Pair], rows: Sequence[Sequence[complex]]) -> tuple[bool, int]:
    """Decide decoupling of a resonant set whose transitions may share vertices.

    The closure of the drift and one element per control is computed on the
    subspace of involved eigenstates; the set is decoupled when ``F`` and ``G``
    of every transition lie in it. Returns ``(decoupled, dimension)``.
    """
    verts = sorted({v for p in pairs for v in p})
    pos = {v: k for k, v in enumerate(verts)}
    m = len(verts)
    gens = [np.diag([1j * energies[v] for v in verts])]
    for row in rows:
        t = np.zeros((m, m), dtype=complex)
        for (a, b), c in zip(pairs, row):
            t[pos[a], pos[b]] = 1j * c
            t[pos[b], pos[a]] = 1j * np.conj(c)
        gens.append(t)

    def bracket(x, y):
        X, Y = _skew_matrix(x, m), _skew_matrix(y, m)
        return _skew_coords(X @ Y - Y @ X)

    basis = lie_closure(np.array([_skew_coords(t) for t in gens]), bracket, 2 * m * m)
    for a, b in pairs:
        for f in (1j, 1.0):
            t = np.zeros((m, m), dtype=complex)
            t[pos[a], pos[b]] = f
            t[pos[b], pos[a]] = -np.conj(f)
            v = _skew_coords(t)
            v /= np.linalg.norm(v)
            if np.linalg.norm(v - basis.T @ (basis @ v)) > 1e-6:
                return False, len(basis)
    return True, len(basis)


@dataclass
class SetTest:
    transitions: tuple[Pair, ...]
    controls: tuple[int, ...]
    disjoint: bool
    rank: int
    max_rank: int | None
    decoupled: bool

    def to_dict(self) -> dict:
        return {
            "transitions": [list(p) for p in self.transitions],
            "controls": list(self.controls),
            "disjoint": self.disjoint,
            "rank": self.rank,
            "max_rank": self.max_rank,
            "decoupled": self.decoupled,
        }


@dataclass
class SubalgebraPass:
    edges_added: int = 0
    tests: list[SetTest] = field(default_factory=list)
    skipped_overlapping: list[tuple[Pair, ...]] = field(default_factory=list)


def repeated_sets(g: TransitionGraph) -> list[list[CoupledSet]]:
    """Coupled sets grouped by identical transition sets, in scan order."""
    groups: dict[frozenset, list[CoupledSet]] = {}
    for s in scan_order(g.coupled_sets):
        groups.setdefault(s.key, []).append(s)
    return list(groups.values())


def run_subalgebra_pass(g: TransitionGraph, energies=None, overlapping: bool = True) -> SubalgebraPass:
    """Decouple resonant sets driven by two or more controls.

    A set qualifies when it bridges components (as they stand when the pass
    starts) and appears under at least two controls. Disjoint sets are tested
    by the structure-constant rank; sets sharing vertices go through
    :func:`block_decouples` when `overlapping` is true and are skipped otherwise.
    """
    if energies is None:
        energies = g.energies
    energies = np.asarray(getattr(energies, "energies", energies))
    roots = [g.find(v) for v in range(g.n_vertices)]
    out = SubalgebraPass()
    for occurrences in repeated_sets(g):
        first = occurrences[0]
        pairs = tuple(sorted(first.transitions))
        if all(g.has_pair(*p) for p in pairs):
            continue
        if not any(roots[a] != roots[b] for a, b in pairs):
            continue
        controls = tuple(sorted({s.control for s in occurrences}))
        if len(controls) < 2:
            continue
        rows = [[s.coefficient(p) for p in pairs] for s in occurrences]
        # resonant members are treated as sharing one gap: the drift must not
        # tell apart transitions the tolerance has declared identical
        gap = float(np.mean([energies[b] - energies[a] for a, b in pairs]))
        disjoint = first.is_disjoint()
        if disjoint:
            rank = subalgebra_rank([gap] * len(pairs), [gfd_vector(r) for r in rows], pairs)
            max_rank = 3 * len(pairs) + 1
            ok = rank == max_rank
        elif overlapping:
            levels = resonant_energies(energies, pairs, gap)
            if levels is None:
                out.skipped_overlapping.append(pairs)
                continue
            ok, rank = block_decouples(levels, pairs, rows)
            max_rank = None
        else:
            out.skipped_overlapping.append(pairs)
            continue
        out.tests.append(SetTest(pairs, controls, disjoint, rank, max_rank, ok))
        if ok:
            for p in pairs:
                if g.add_edge(Edge(*p, "subalgebra", controls)):
                    out.edges_added += 1
    return out
