import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from controlgraph.engine import initial_graph
from controlgraph.graph import (
    CoupledSet,
    Edge,
    TransitionGraph,
    UnionFind,
    add_decoupled_edge,
    build_initial_graph,
    connected_components,
    resonant_clusters,
)
from controlgraph.model import build_controls, build_drift, quito_spec, two_qubit_spec
from controlgraph.spectral import diagonalize_drift, transform_control


def test_edge_orders_vertices():
    assert Edge(3, 1).pair == (1, 3)
    with pytest.raises(ValueError):
        Edge(2, 2)


def test_xxzz_pair_fully_decoupled(xxzz_pair):
    _, g = initial_graph(xxzz_pair)
    assert g.n_decoupled == 4
    assert g.coupled_sets == []
    assert g.is_connected()


def test_xx_pair_has_only_coupled_sets(xx_pair):
    _, g = initial_graph(xx_pair)
    assert g.n_decoupled == 0
    assert g.n_components == 4
    assert sorted((s.control, s.transitions) for s in g.coupled_sets) == [
        (0, ((0, 1), (2, 3))),
        (0, ((0, 2), (1, 3))),
        (1, ((0, 1), (2, 3))),
        (1, ((0, 2), (1, 3))),
    ]


def test_quito_initial_counts(quito_a):
    _, g = initial_graph(quito_a, delta_E=0.01)
    assert g.n_decoupled == 7
    assert g.n_components == 25


def test_components_examples():
    g = TransitionGraph(4, decoupled_edges=[Edge(0, 1), Edge(1, 2)])
    assert g.components == [[0, 1, 2], [3]]
    assert connected_components(g) == [[0, 1, 2], [3]]
    assert connected_components(TransitionGraph(3)) == [[0], [1], [2]]


def test_union_and_idempotence():
    g = TransitionGraph(4, decoupled_edges=[Edge(0, 1), Edge(2, 3)])
    assert g.n_components == 2
    add_decoupled_edge(g, Edge(1, 2))
    assert g.components == [[0, 1, 2, 3]]
    assert not g.add_edge(Edge(0, 1, "commutator"))
    assert g.n_components == 1


def test_duplicate_edge_stored_once_per_source():
    g = TransitionGraph(3)
    assert g.add_edge(Edge(0, 1, "control", (0,)))
    assert not g.add_edge(Edge(0, 1, "control", (0,)))
    assert not g.add_edge(Edge(0, 1, "control", (1,)))
    assert len(g.decoupled_edges) == 2
    assert g.n_decoupled == 1


def test_edge_out_of_range():
    with pytest.raises(IndexError):
        TransitionGraph(2).add_edge(Edge(0, 2))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 12), data=st.data())
def test_union_find_matches_dfs(n, data):
    pairs = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]), max_size=20))
    g = TransitionGraph(n)
    before = g.n_components
    for p in pairs:
        g.add_edge(Edge(*p))
        assert before - g.n_components in (0, 1)
        before = g.n_components
    assert g.components == sorted(connected_components(g))


def test_seeded_clustering():
    trans = [(1.0, 0, 1, 1), (1.008, 2, 3, 1), (1.016, 4, 5, 1), (2.0, 6, 7, 1)]
    clusters = resonant_clusters(trans, 0.01)
    # the third gap is within tolerance of its neighbour but not of the seed
    assert [[t[1:3] for t in c] for c in clusters] == [[(0, 1), (2, 3)], [(4, 5)], [(6, 7)]]


def test_tolerances_must_be_positive(xx_pair):
    eig = diagonalize_drift(build_drift(xx_pair))
    with pytest.raises(ValueError):
        build_initial_graph(eig, [], 0.0, 0.01)
    with pytest.raises(ValueError):
        build_initial_graph(eig, [], 1e-6, -1.0)


def _above_threshold(spec, dH):
    eig = diagonalize_drift(build_drift(spec))
    out = {}
    for j, h in enumerate(build_controls(spec)):
        m = transform_control(eig, h, j).matrix
        out[j] = {(a, b) for a, b in itertools.combinations(range(eig.dim), 2) if abs(m[a, b]) >= dH}
    return out


@pytest.mark.parametrize("spec", [two_qubit_spec("XX"), two_qubit_spec("XX+YY+ZZ"), quito_spec("XX+YY")])
def test_no_transition_lost_or_duplicated(spec):
    _, g = initial_graph(spec)
    expected = _above_threshold(spec, 1e-6)
    for j, pairs in expected.items():
        edges = [e.pair for e in g.decoupled_edges if e.controls == (j,)]
        members = [p for s in g.coupled_sets if s.control == j for p in s.transitions]
        assert len(edges) + len(members) == len(set(edges) | set(members))
        assert set(edges) | set(members) == pairs


def test_coupled_set_invariants(quito_a):
    eig, g = initial_graph(quito_a, delta_E=0.01)
    for s in g.coupled_sets:
        assert len(s.transitions) >= 2
        gaps = [eig.gap(*p) for p in s.transitions]
        assert max(gaps) - min(gaps) <= 0.01
        assert all(abs(c) >= 1e-6 for c in s.coefficients)


def test_control_order_only_relabels_sources():
    a = quito_spec(controls=(0, 1, 2, 3, 4))
    b = quito_spec(controls=(4, 2, 0, 3, 1))
    _, ga = initial_graph(a)
    _, gb = initial_graph(b)
    label = {k: c.qubit for k, c in enumerate(a.controls)}
    label_b = {k: c.qubit for k, c in enumerate(b.controls)}
    sa = {(label[e.controls[0]], e.pair) for e in ga.decoupled_edges}
    sb = {(label_b[e.controls[0]], e.pair) for e in gb.decoupled_edges}
    assert sa == sb
    ca = {(label[s.control], s.transitions) for s in ga.coupled_sets}
    cb = {(label_b[s.control], s.transitions) for s in gb.coupled_sets}
    assert ca == cb


def test_dot_output(xx_pair):
    _, g = initial_graph(xx_pair)
    g.add_edge(Edge(0, 1, "subalgebra", (0, 1)))
    dot = g.to_dot("demo")
    assert dot.startswith('graph "demo" {')
    assert dot.rstrip().endswith("}")
    assert dot.count("style=solid") == 1
    assert dot.count("style=dashed") == 8
    assert 'label="subalgebra:0,1"' in dot


def test_graph_dict_roundtrips_counts(quito_a):
    _, g = initial_graph(quito_a)
    d = g.to_dict()
    assert d["n_vertices"] == 32
    assert len(d["components"]) == 25
    assert len(d["energies"]) == 32
    s = CoupledSet(0, 1.0, ((0, 1), (2, 3)), (0.5 + 0.1j, -0.5))
    assert s.to_dict()["coefficients"] == [[0.5, 0.1], [-0.5, 0.0]]
    assert s.is_disjoint() and not CoupledSet(0, 1.0, ((0, 1), (1, 2)), (1, 1)).is_disjoint()


def test_union_find_keeps_smaller_root():
    uf = UnionFind(5)
    uf.union(4, 2)
    uf.union(2, 3)
    assert uf.find(4) == 2 and uf.find(3) == 2
    assert uf.count == 3
