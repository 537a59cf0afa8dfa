"""Brute-force dynamical Lie algebra dimension for small systems.

Ground truth for the graph test. Skew-Hermitian n x n matrices are encoded as
n^2 real coordinates (imaginary diagonal, real and imaginary upper triangle,
off-diagonal entries scaled by sqrt(2) so the encoding is an isometry for the
Frobenius inner product).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 64

CONTROLLABLE = "Controllable"
NOT_CONTROLLABLE = "NotControllable"


def encode(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    iu = np.triu_indices(n, k=1)
    s = np.sqrt(2.0)
    return np.concatenate([np.diagonal(m).imag, s * m[iu].real, s * m[iu].imag])


def decode(v: np.ndarray, n: int) -> np.ndarray:
    iu = np.triu_indices(n, k=1)
    k = len(iu[0])
    s = np.sqrt(2.0)
    m = np.zeros((n, n), dtype=complex)
    m[np.diag_indices(n)] = 1j * v[:n]
    upper = (v[n : n + k] + 1j * v[n + k :]) / s
    m[iu] = upper
    m[(iu[1], iu[0])] = -np.conj(upper)
    return m


class LieBasis:
    """Orthonormal real coordinates of a growing set of skew-Hermitian matrices."""

    def __init__(self, n: int, tol: float = 1e-9):
        self.n = n
        self.tol = tol
        self.vectors: list[np.ndarray] = []
        self.matrices: list[np.ndarray] = []

    def __len__(self):
        return len(self.vectors)

    def add(self, m: np.ndarray) -> bool:
        v = encode(m)
        scale = max(1.0, np.linalg.norm(v))
        # two Gram-Schmidt sweeps against round-off
        for _ in range(2):
            for b in self.vectors:
                v = v - (b @ v) * b
        r = np.linalg.norm(v)
        if r <= self.tol * scale:
            return False
        v = v / r
        self.vectors.append(v)
        self.matrices.append(decode(v, self.n))
        return True


def lie_dimension(drift: np.ndarray, controls, tol: float = 1e-9) -> int:
    """Dimension of Lie(i H_0, i H_1, ..., i H_m) by breadth-first commutators."""
    drift = np.asarray(drift, dtype=complex)
    n = drift.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds oracle cap {MAX_DIM}")
    basis = LieBasis(n, tol)
    for h in [drift, *controls]:
        basis.add(1j * np.asarray(h, dtype=complex))
    frontier = list(range(len(basis)))
    while frontier:
        new = []
        for i in frontier:
            # commute with every element, old and new
            for j in range(len(basis)):
                if j == i:
                    continue
                a, b = basis.matrices[i], basis.matrices[j]
                if basis.add(a @ b - b @ a):
                    new.append(len(basis) - 1)
        frontier = new
    return len(basis)


def oracle_verdict(dim: int, n: int) -> str:
    if dim > n * n:
        raise ValueError("Lie algebra dimension cannot exceed n^2")
    return CONTROLLABLE if dim >= n * n - 1 else NOT_CONTROLLABLE


def spec_dimension(spec, tol: float = 1e-9) -> int:
    """Oracle dimension for an array description (drift plus its local controls)."""
    from .model import build_controls, build_drift

    if spec.dim > MAX_DIM:
        raise ValueError(f"{spec.n_qubits} qubits exceed oracle cap of {MAX_DIM} levels")
    return lie_dimension(build_drift(spec), build_controls(spec), tol)


def random_two_qubit_spec(rng: np.random.Generator):
    """Random 2-qubit array: frequencies, strength, coupling form and a non-empty control subset."""
    from .model import AXES, COUPLING_FORMS, ArraySpec, Control, Coupling

    freqs = tuple(float(f) for f in rng.uniform(4.0, 6.0, size=2))
    form = sorted(COUPLING_FORMS)[rng.integers(len(COUPLING_FORMS))]
    strength = float(rng.uniform(0.05, 0.4))
    candidates = [Control(q, a) for q in range(2) for a in AXES]
    mask = rng.random(len(candidates)) < 0.3
    if not mask.any():
        mask[rng.integers(len(candidates))] = True
    controls = tuple(c for c, m in zip(candidates, mask) if m)
    return ArraySpec(freqs, (Coupling(0, 1, strength, form),), controls, name="random")


@dataclass(frozen=True)
class CrossCheck:
    spec: object
    graph_verdict: str
    dimension: int
    violation: bool

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "graph_verdict": self.graph_verdict,
            "oracle_dimension": self.dimension,
            "violation": self.violation,
        }


def cross_validate(count: int, seed: int = 0) -> list[CrossCheck]:
    """Compare the graph test with the oracle on `count` random 2-qubit systems.

    A violation is a definite graph verdict that the oracle contradicts;
    Inconclusive never counts as one.
    """
    from .engine import CONTROLLABLE as G_YES, NOT_CONTROLLABLE as G_NO, analyze

    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        spec = random_two_qubit_spec(rng)
        verdict = analyze(spec).verdict
        n = spec.dim
        dim = spec_dimension(spec)
        bad = (verdict == G_YES and dim < n * n - 1) or (verdict == G_NO and dim >= n * n - 1)
        out.append(CrossCheck(spec, verdict, dim, bad))
    return out
