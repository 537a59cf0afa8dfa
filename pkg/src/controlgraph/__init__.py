"""Graph-based controllability test for driven qubit arrays."""

from .config import ConfigError, RunConfig, emit_config, load_config, parse_config
from .decouple import graphical_commutator, run_commutator_pass, run_subalgebra_pass, subalgebra_rank
from .engine import (
    CONTROLLABLE,
    INCONCLUSIVE,
    NOT_CONTROLLABLE,
    AnalysisReport,
    analyze,
    initial_graph,
    qubit_distance,
    sweep_controls,
)
from .graph import DEFAULT_DELTA_E, DEFAULT_DELTA_H, CoupledSet, Edge, TransitionGraph, build_initial_graph
from .model import ArraySpec, Control, Coupling, SpecError, build_controls, build_drift, quito_spec, two_qubit_spec
from .oracle import lie_dimension, oracle_verdict, spec_dimension
from .spectral import diagonalize_drift, transform_control

__all__ = [
    "AnalysisReport", "ArraySpec", "CONTROLLABLE", "ConfigError", "Control", "CoupledSet", "Coupling",
    "DEFAULT_DELTA_E", "DEFAULT_DELTA_H", "Edge", "INCONCLUSIVE", "NOT_CONTROLLABLE", "RunConfig",
    "SpecError", "TransitionGraph", "analyze", "build_controls", "build_drift", "build_initial_graph",
    "diagonalize_drift", "emit_config", "graphical_commutator", "initial_graph", "lie_dimension",
    "load_config", "oracle_verdict", "parse_config", "quito_spec", "qubit_distance",
    "run_commutator_pass", "run_subalgebra_pass", "spec_dimension", "subalgebra_rank",
    "sweep_controls", "transform_control", "two_qubit_spec",
]
__version__ = "0.1.0"
