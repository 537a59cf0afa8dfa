import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from controlgraph.model import build_control, build_drift, quito_spec, two_qubit_spec
from controlgraph.spectral import degeneracy_report, diagonalize_drift, fix_phases, transform_control


def test_diagonal_drift_is_untouched():
    eig = diagonalize_drift(np.diag([-2.5, 2.5]))
    np.testing.assert_allclose(eig.energies, [-2.5, 2.5])
    np.testing.assert_allclose(eig.vectors, np.eye(2))


def test_xx_pair_spectrum():
    h = build_drift(two_qubit_spec("XX"))
    eig = diagonalize_drift(h)
    assert np.all(np.diff(eig.energies) > 0.1)
    # middle states mix |01> and |10> only
    for a in (1, 2):
        v = np.abs(eig.vectors[:, a])
        assert v[0] < 1e-12 and v[3] < 1e-12
        assert v[1] > 0.1 and v[2] > 0.1


def test_shift_by_identity():
    h = build_drift(two_qubit_spec("XX"))
    e1, e2 = diagonalize_drift(h), diagonalize_drift(h + 0.7 * np.eye(4))
    np.testing.assert_allclose(e2.energies, e1.energies + 0.7, atol=1e-12)
    np.testing.assert_allclose(e2.vectors, e1.vectors, atol=1e-10)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        diagonalize_drift(np.array([[0, 1], [0, 0]]))


def test_identity_transform_keeps_control():
    eig = diagonalize_drift(np.diag([1.0, 2.0, 3.0, 4.0]))
    c = build_control(two_qubit_spec(), 0)
    np.testing.assert_allclose(transform_control(eig, c).matrix, c)


def test_transform_rejects_wrong_shape():
    eig = diagonalize_drift(np.diag([1.0, 2.0]))
    with pytest.raises(ValueError):
        transform_control(eig, np.eye(4))


def test_xx_pair_coefficient_magnitudes():
    spec = two_qubit_spec("XX", controls=(1, 0))
    eig = diagonalize_drift(build_drift(spec))
    on_q1 = np.abs(transform_control(eig, build_control(spec, 0)).matrix)
    on_q0 = np.abs(transform_control(eig, build_control(spec, 1)).matrix)
    assert on_q0[0, 1] == pytest.approx(0.967, abs=1e-3)
    assert on_q0[0, 2] == pytest.approx(0.253, abs=1e-3)
    assert on_q1[0, 2] == pytest.approx(0.960, abs=1e-3)
    assert on_q1[0, 1] == pytest.approx(0.281, abs=1e-3)


def test_degeneracy_report_examples():
    assert degeneracy_report(np.array([-5.25, 0.25, -0.25, 5.25]), 0.01) == []
    assert degeneracy_report(np.array([0.0, 0.0, 1.0]), 0.01) == [[0, 1]]
    with pytest.raises(ValueError):
        degeneracy_report(np.array([0.0, 1.0]), 0.0)


def test_quito_spectrum_nondegenerate():
    eig = diagonalize_drift(build_drift(quito_spec()))
    assert degeneracy_report(eig, 0.01) == []


def hermitian(n):
    return arrays(np.complex128, (n, n), elements=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)).map(
        lambda m: (m + m.conj().T) / 2
    )


@settings(max_examples=40, deadline=None)
@given(h=hermitian(4), c=hermitian(4))
def test_spectral_invariants(h, c):
    eig = diagonalize_drift(h)
    v = eig.vectors
    assert np.all(np.diff(eig.energies) >= 0)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(v @ np.diag(eig.energies) @ v.conj().T, h, atol=1e-10)
    assert eig.energies.sum() == pytest.approx(np.trace(h).real, abs=1e-9)
    t = transform_control(eig, c).matrix
    np.testing.assert_allclose(t, t.conj().T, atol=1e-9)
    assert np.linalg.norm(t) == pytest.approx(np.linalg.norm(c), abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(h=hermitian(3))
def test_phase_fix_makes_pivot_real_positive(h):
    v = diagonalize_drift(h).vectors
    idx = np.argmax(np.abs(v), axis=0)
    piv = v[idx, range(3)]
    assert np.all(np.abs(piv.imag) < 1e-12) and np.all(piv.real > 0)


def test_phase_fix_undoes_random_phases():
    rng = np.random.default_rng(7)
    v = diagonalize_drift(build_drift(two_qubit_spec("XX+YY"))).vectors
    rotated = v * np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
    np.testing.assert_allclose(fix_phases(rotated), v, atol=1e-12)


def test_repeat_runs_bitwise_identical():
    h = build_drift(quito_spec("XX+YY+ZZ"))
    a, b = diagonalize_drift(h), diagonalize_drift(h)
    assert a.vectors.tobytes() == b.vectors.tobytes()
    assert a.energies.tobytes() == b.energies.tobytes()
