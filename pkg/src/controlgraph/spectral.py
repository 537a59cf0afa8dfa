"""Eigendecomposition of the drift and controls in its eigenbasis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class Eigensystem:
    energies: np.ndarray  # ascending, GHz
    vectors: np.ndarray  # column a is |e_a>

    @property
    def dim(self) -> int:
        return len(self.energies)

    def gap(self, a: int, b: int) -> float:
        return abs(float(self.energies[b] - self.energies[a]))


@dataclass(frozen=True)
class ControlInEigenbasis:
    control_index: int
    matrix: np.ndarray  # <e_a|H_j|e_b>


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T), initial=0.0) <= tol


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude component is real positive.

    Ties go to the lowest index (``np.argmax`` semantics).
    """
    idx = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[idx, np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivots) / pivots)


def diagonalize_drift(drift: np.ndarray) -> Eigensystem:
    drift = np.asarray(drift, dtype=complex)
    if not is_hermitian(drift):
        raise ValueError("drift is not Hermitian")
    # symmetrize so eigh sees an exactly Hermitian matrix
    energies, vectors = np.linalg.eigh((drift + drift.conj().T) / 2)
    return Eigensystem(energies=energies, vectors=fix_phases(vectors))


def transform_control(eig: Eigensystem, control: np.ndarray, control_index: int = 0) -> ControlInEigenbasis:
    control = np.asarray(control, dtype=complex)
    if control.shape != (eig.dim, eig.dim):
        raise ValueError(f"control has shape {control.shape}, expected {(eig.dim, eig.dim)}")
    v = eig.vectors
    return ControlInEigenbasis(control_index, v.conj().T @ control @ v)


def degeneracy_report(energies, delta_E: float) -> list[list[int]]:
    """Clusters of eigenvalue indices whose consecutive spacing is below `delta_E`.

    An empty list means the eigenbasis is unambiguous at that tolerance.
    """
    if delta_E <= 0:
        raise ValueError("delta_E must be positive")
    energies = np.asarray(getattr(energies, "energies", energies), dtype=float)
    order = np.argsort(energies, kind="stable")
    clusters, run = [], [int(order[0])] if len(order) else []
    for prev, cur in zip(order[:-1], order[1:]):
        if energies[cur] - energies[prev] < delta_E:
            run.append(int(cur))
        else:
            if len(run) > 1:
                clusters.append(run)
            run = [int(cur)]
    if len(run) > 1:
        clusters.append(run)
    return clusters
