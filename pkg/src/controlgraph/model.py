"""Drift and control operators for arrays of coupled qubits.

Conventions
-----------
- Energies in GHz with hbar = 1.
- Logical basis index = integer whose binary digits are the qubit states,
  qubit 0 most significant (leftmost tensor factor).
- Drift: sum_j (-w_j / 2) Z_j + sum_couplings J_ij * (Pauli products of the form).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# closed vocabulary of two-qubit coupling forms
COUPLING_FORMS = {
    "XX": ("X",),
    "XX+YY": ("X", "Y"),
    "XX+ZZ": ("X", "Z"),
    "XX+YY+ZZ": ("X", "Y", "Z"),
}

AXES = ("X", "Y", "Z")


class SpecError(ValueError):
    """Raised for an invalid array description."""


@dataclass(frozen=True)
class Coupling:
    i: int
    j: int
    strength: float  # GHz
    form: str = "XX+YY"

    @property
    def pair(self) -> tuple[int, int]:
        return (min(self.i, self.j), max(self.i, self.j))


@dataclass(frozen=True)
class Control:
    qubit: int
    axis: str = "X"

    @property
    def label(self) -> str:
        return f"{self.axis}{self.qubit}"


@dataclass(frozen=True)
class ArraySpec:
    """Declarative description of a driven qubit array.

    Parameters
    ----------
    frequencies : tuple of float
        Qubit frequencies in GHz; their count fixes the number of qubits.
    couplings : tuple of Coupling
        Static two-qubit couplings, strengths in GHz.
    controls : tuple of Control
        Local single-qubit controls.
    """

    frequencies: tuple[float, ...]
    couplings: tuple[Coupling, ...] = ()
    controls: tuple[Control, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "frequencies", tuple(float(w) for w in self.frequencies))
        object.__setattr__(self, "couplings", tuple(self.couplings))
        object.__setattr__(self, "controls", tuple(self.controls))
        self.validate()

    @property
    def n_qubits(self) -> int:
        return len(self.frequencies)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def validate(self) -> None:
        n = self.n_qubits
        if n < 1:
            raise SpecError("at least one qubit is required")
        for k, w in enumerate(self.frequencies):
            if not math.isfinite(w):
                raise SpecError(f"frequencies[{k}] is not finite")
        seen = set()
        for k, c in enumerate(self.couplings):
            if not (0 <= c.i < n and 0 <= c.j < n):
                raise SpecError(f"couplings[{k}]: qubit index out of range [0, {n})")
            if c.i == c.j:
                raise SpecError(f"couplings[{k}]: a qubit cannot couple to itself")
            if c.pair in seen:
                raise SpecError(f"couplings[{k}]: duplicate coupling {c.pair}")
            seen.add(c.pair)
            if not math.isfinite(c.strength):
                raise SpecError(f"couplings[{k}]: strength is not finite")
            if c.form not in COUPLING_FORMS:
                raise SpecError(
                    f"couplings[{k}]: unknown form {c.form!r}, expected one of {sorted(COUPLING_FORMS)}"
                )
        for k, c in enumerate(self.controls):
            if not 0 <= c.qubit < n:
                raise SpecError(f"controls[{k}]: qubit index out of range [0, {n})")
            if c.axis not in AXES:
                raise SpecError(f"controls[{k}]: unknown axis {c.axis!r}")

    def with_controls(self, controls) -> "ArraySpec":
        return ArraySpec(self.frequencies, self.couplings, tuple(controls), name=self.name)

    def coupling_graph(self) -> dict[int, set[int]]:
        adj = {q: set() for q in range(self.n_qubits)}
        for c in self.couplings:
            adj[c.i].add(c.j)
            adj[c.j].add(c.i)
        return adj

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "frequencies": list(self.frequencies),
            "couplings": [
                {"i": c.i, "j": c.j, "strength": c.strength, "form": c.form} for c in self.couplings
            ],
            "controls": [{"qubit": c.qubit, "axis": c.axis} for c in self.controls],
        }


def embed_single_qubit(pauli_axis: str, qubit: int, n_qubits: int) -> np.ndarray:
    """Pauli `pauli_axis` acting on `qubit`, identity on the other qubits."""
    if pauli_axis not in AXES:
        raise ValueError(f"unknown Pauli axis {pauli_axis!r}")
    if not 0 <= qubit < n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {n_qubits} qubits")
    factors = [PAULI[pauli_axis] if q == qubit else PAULI["I"] for q in range(n_qubits)]
    return reduce(np.kron, factors)


def pauli_product(axis: str, i: int, j: int, n_qubits: int) -> np.ndarray:
    return embed_single_qubit(axis, i, n_qubits) @ embed_single_qubit(axis, j, n_qubits)


def build_drift(spec: ArraySpec) -> np.ndarray:
    n = spec.n_qubits
    h0 = np.zeros((spec.dim, spec.dim), dtype=complex)
    for q, w in enumerate(spec.frequencies):
        h0 += (-w / 2) * embed_single_qubit("Z", q, n)
    for c in spec.couplings:
        # strength applied once to the whole bracket
        bracket = sum(pauli_product(ax, c.i, c.j, n) for ax in COUPLING_FORMS[c.form])
        h0 += c.strength * bracket
    return h0


def build_control(spec: ArraySpec, control_index: int) -> np.ndarray:
    if not 0 <= control_index < len(spec.controls):
        raise IndexError(f"control index {control_index} out of range")
    c = spec.controls[control_index]
    return embed_single_qubit(c.axis, c.qubit, spec.n_qubits)


def build_controls(spec: ArraySpec) -> list[np.ndarray]:
    return [build_control(spec, k) for k in range(len(spec.controls))]


def quito_spec(form: str = "XX+YY", controls=(0, 1, 2, 3, 4), axis: str = "X") -> ArraySpec:
    """Five-qubit array with the quito coupling topology (1-0, 1-2, 1-3, 3-4)."""
    strengths_mhz = {(0, 1): 100, (1, 2): 250, (1, 3): 170, (3, 4): 300}
    couplings = tuple(Coupling(i, j, mhz / 1000, form) for (i, j), mhz in strengths_mhz.items())
    return ArraySpec(
        frequencies=(5.301, 5.081, 5.322, 5.164, 5.052),
        couplings=couplings,
        controls=tuple(Control(q, axis) for q in controls),
        name=f"quito {form}",
    )


def two_qubit_spec(form: str = "XX", controls=(1, 0), omega=(5.0, 5.5), strength=0.15) -> ArraySpec:
    """Two coupled qubits; default parameters w0 = 5 GHz, w1 = 5.5 GHz, J = 150 MHz."""
    return ArraySpec(
        frequencies=omega,
        couplings=(Coupling(0, 1, strength, form),),
        controls=tuple(Control(q, "X") for q in controls),
        name=f"two-qubit {form}",
    )
