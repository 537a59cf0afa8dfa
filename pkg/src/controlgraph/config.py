"""Run configuration files.

A configuration is a YAML document::

    name: quito example A          # optional
    qubits:
      frequencies: [5.301, 5.081, 5.322, 5.164, 5.052]   # GHz
    couplings:
      - {i: 0, j: 1, strength: 100 MHz, form: XX+YY}
    controls:
      - {qubit: 0, axis: X}
    tolerances:                    # optional
      delta_h: 1.0e-6
      delta_e: 0.01                # GHz, or e.g. "10 MHz"
    sweep:                         # optional, used by the sweep command
      k: 2
      axis: X

Energies given as bare numbers are GHz; strings carry a unit (GHz or MHz).
Unknown keys are rejected.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import yaml

from .graph import DEFAULT_DELTA_E, DEFAULT_DELTA_H
from .model import AXES, COUPLING_FORMS, ArraySpec, Control, Coupling, SpecError

UNITS = {"ghz": 1.0, "mhz": 1e-3}
_QUANTITY = re.compile(r"^\s*([-+0-9.eE]+)\s*([A-Za-z]+)?\s*$")


class ConfigError(ValueError):
    """Invalid configuration, with line and field context when known."""


@dataclass(frozen=True)
class RunConfig:
    spec: ArraySpec
    delta_H: float = DEFAULT_DELTA_H
    delta_E: float = DEFAULT_DELTA_E
    sweep_k: int | None = None
    sweep_axis: str = "X"
    name: str = ""


def _fail(node, field: str, msg: str):
    line = f"line {node.start_mark.line + 1}: " if node is not None else ""
    raise ConfigError(f"{line}{field}: {msg}")


def _mapping(node, field: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(node, yaml.MappingNode):
        _fail(node, field, "expected a mapping")
    out = {}
    for k, v in node.value:
        key = k.value
        if key not in allowed:
            _fail(k, f"{field}.{key}" if field else key, f"unknown field (allowed: {', '.join(sorted(allowed))})")
        if key in out:
            _fail(k, f"{field}.{key}" if field else key, "duplicate field")
        out[key] = v
    for key in sorted(required - out.keys()):
        _fail(node, f"{field}.{key}" if field else key, "missing required field")
    return out


def _sequence(node, field: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, field, "expected a list")
    return node.value


def _scalar(node, field: str):
    if not isinstance(node, yaml.ScalarNode):
        _fail(node, field, "expected a scalar")
    return yaml.safe_load(yaml.serialize(node))


def _int(node, field: str) -> int:
    v = _scalar(node, field)
    if isinstance(v, bool) or not isinstance(v, int):
        _fail(node, field, f"expected an integer, got {v!r}")
    return v


def _str(node, field: str) -> str:
    v = _scalar(node, field)
    if not isinstance(v, str):
        _fail(node, field, f"expected a string, got {v!r}")
    return v


def _number(node, field: str) -> float:
    v = _scalar(node, field)
    # YAML 1.1 reads exponent forms without a dot (1e-6) as strings
    if isinstance(v, str):
        try:
            v = float(v)
        except ValueError:
            pass
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        _fail(node, field, f"expected a finite number, got {v!r}")
    return float(v)


def _energy(node, field: str) -> float:
    """Number in GHz, or a string such as '250 MHz'."""
    v = _scalar(node, field)
    if isinstance(v, bool):
        _fail(node, field, "expected a number")
    if isinstance(v, (int, float)):
        value = float(v)
    elif isinstance(v, str):
        m = _QUANTITY.match(v)
        if not m:
            _fail(node, field, f"cannot read quantity {v!r}")
        unit = (m.group(2) or "GHz").lower()
        if unit not in UNITS:
            _fail(node, field, f"unknown unit {m.group(2)!r} (use GHz or MHz)")
        try:
            value = float(m.group(1)) * UNITS[unit]
        except ValueError:
            _fail(node, field, f"cannot read number in {v!r}")
    else:
        _fail(node, field, f"expected a number, got {v!r}")
    if not math.isfinite(value):
        _fail(node, field, "value is not finite")
    return value


def _positive(node, field: str, value: float) -> float:
    if value <= 0:
        _fail(node, field, "must be positive")
    return value


def parse_config(text: str) -> RunConfig:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}: " if mark is not None else ""
        raise ConfigError(f"{where}syntax error: {getattr(exc, 'problem', exc)}") from None
    if root is None:
        raise ConfigError("empty configuration")
    top = _mapping(root, "", {"name", "qubits", "couplings", "controls", "tolerances", "sweep"}, {"qubits"})

    name = _str(top["name"], "name") if "name" in top else ""

    q = _mapping(top["qubits"], "qubits", {"frequencies", "n_qubits"}, {"frequencies"})
    freqs = [
        _energy(v, f"qubits.frequencies[{k}]") for k, v in enumerate(_sequence(q["frequencies"], "qubits.frequencies"))
    ]
    if not freqs:
        _fail(q["frequencies"], "qubits.frequencies", "at least one qubit is required")
    n = len(freqs)
    if "n_qubits" in q and _int(q["n_qubits"], "qubits.n_qubits") != n:
        _fail(q["n_qubits"], "qubits.n_qubits", f"does not match {n} frequencies")

    def index(node, field):
        v = _int(node, field)
        if not 0 <= v < n:
            _fail(node, field, f"qubit index {v} out of range [0, {n})")
        return v

    couplings, seen = [], {}
    for k, item in enumerate(_sequence(top["couplings"], "couplings") if "couplings" in top else []):
        f = f"couplings[{k}]"
        c = _mapping(item, f, {"i", "j", "strength", "form"}, {"i", "j", "strength"})
        i, j = index(c["i"], f + ".i"), index(c["j"], f + ".j")
        if i == j:
            _fail(c["j"], f + ".j", "a qubit cannot couple to itself")
        pair = (min(i, j), max(i, j))
        if pair in seen:
            _fail(item, f, f"duplicate coupling {pair} (first at couplings[{seen[pair]}])")
        seen[pair] = k
        form = _str(c["form"], f + ".form") if "form" in c else "XX+YY"
        if form not in COUPLING_FORMS:
            _fail(c["form"], f + ".form", f"unknown form {form!r}, expected one of {sorted(COUPLING_FORMS)}")
        couplings.append(Coupling(i, j, _energy(c["strength"], f + ".strength"), form))

    controls = []
    for k, item in enumerate(_sequence(top["controls"], "controls") if "controls" in top else []):
        f = f"controls[{k}]"
        c = _mapping(item, f, {"qubit", "axis"}, {"qubit"})
        axis = _str(c["axis"], f + ".axis") if "axis" in c else "X"
        if axis not in AXES:
            _fail(c["axis"], f + ".axis", f"unknown axis {axis!r}")
        controls.append(Control(index(c["qubit"], f + ".qubit"), axis))

    delta_H, delta_E = DEFAULT_DELTA_H, DEFAULT_DELTA_E
    if "tolerances" in top:
        t = _mapping(top["tolerances"], "tolerances", {"delta_h", "delta_e"})
        if "delta_h" in t:
            delta_H = _positive(t["delta_h"], "tolerances.delta_h", _number(t["delta_h"], "tolerances.delta_h"))
        if "delta_e" in t:
            delta_E = _positive(t["delta_e"], "tolerances.delta_e", _energy(t["delta_e"], "tolerances.delta_e"))

    sweep_k, sweep_axis = None, "X"
    if "sweep" in top:
        s = _mapping(top["sweep"], "sweep", {"k", "axis"})
        if "k" in s:
            sweep_k = _int(s["k"], "sweep.k")
            if not 1 <= sweep_k <= n:
                _fail(s["k"], "sweep.k", f"must be in [1, {n}]")
        if "axis" in s:
            sweep_axis = _str(s["axis"], "sweep.axis")
            if sweep_axis not in AXES:
                _fail(s["axis"], "sweep.axis", f"unknown axis {sweep_axis!r}")

    try:
        spec = ArraySpec(tuple(freqs), tuple(couplings), tuple(controls), name=name)
    except SpecError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(spec, delta_H, delta_E, sweep_k, sweep_axis, name)


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_config(text)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def emit_config(cfg: RunConfig) -> str:
    """YAML text that parses back to `cfg` (energies written in GHz)."""
    spec = cfg.spec
    doc: dict = {}
    if cfg.name:
        doc["name"] = cfg.name
    doc["qubits"] = {"frequencies": list(spec.frequencies)}
    if spec.couplings:
        doc["couplings"] = [{"i": c.i, "j": c.j, "strength": c.strength, "form": c.form} for c in spec.couplings]
    if spec.controls:
        doc["controls"] = [{"qubit": c.qubit, "axis": c.axis} for c in spec.controls]
    doc["tolerances"] = {"delta_h": cfg.delta_H, "delta_e": cfg.delta_E}
    if cfg.sweep_k is not None:
        doc["sweep"] = {"k": cfg.sweep_k, "axis": cfg.sweep_axis}
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
