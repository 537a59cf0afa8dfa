"""Command-line entry point: ``controlgraph {analyze,sweep,oracle,export-graph}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, load_config
from .engine import analyze, initial_graph, summarize_by_distance, sweep_controls, sweep_table
from .model import AXES
from .oracle import cross_validate, oracle_verdict, spec_dimension

ORACLE_MAX_QUBITS = 3

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CONFIG = 2


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text, encoding="utf-8")


def _tolerances(cfg: RunConfig, args) -> tuple[float, float]:
    dH = cfg.delta_H if args.delta_h is None else args.delta_h
    dE = cfg.delta_E if args.delta_e is None else args.delta_e
    if dH <= 0 or dE <= 0:
        raise ConfigError("tolerances must be positive")
    return dH, dE


def _dump(d) -> str:
    return json.dumps(d, indent=2) + "\n"


def cmd_analyze(args) -> int:
    cfg = load_config(args.config)
    dH, dE = _tolerances(cfg, args)
    if not cfg.spec.controls:
        raise ConfigError(f"{args.config}: analyze needs at least one control")
    report = analyze(cfg.spec, dH, dE)
    text = report.to_json(include_timing=not args.no_timing) + "\n"
    _write(args.out, text)
    if args.dot:
        _write(args.dot, report.graph.to_dot(cfg.name or "transitions"))
    print(text if args.json else report.summary(), end="" if args.json else "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    dH, dE = _tolerances(cfg, args)
    k = args.k if args.k is not None else cfg.sweep_k
    if k is None:
        raise ConfigError(f"{args.config}: no sweep size; pass --k or set sweep.k")
    axis = args.axis or cfg.sweep_axis
    rows = sweep_controls(cfg.spec, k, axis, dH, dE, workers=args.workers)
    doc = {
        "k": k,
        "axis": axis,
        "tolerances": {"delta_h": dH, "delta_e": dE},
        "rows": [r.to_dict() for r in rows],
        "by_distance": {str(d): v for d, v in summarize_by_distance(rows).items()},
    }
    text = _dump(doc)
    _write(args.out, text)
    print(text if args.json else sweep_table(rows), end="" if args.json else "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.random is not None:
        checks = cross_validate(args.random, args.seed)
        bad = [c for c in checks if c.violation]
        doc = {
            "seed": args.seed,
            "systems": len(checks),
            "violations": len(bad),
            "checks": [c.to_dict() for c in checks],
        }
        _write(args.out, _dump(doc))
        if args.json:
            print(_dump(doc), end="")
        else:
            print(f"cross-checked {len(checks)} random 2-qubit systems (seed {args.seed}): {len(bad)} violations")
        return EXIT_OK if not bad else EXIT_COMPUTE
    if args.config is None:
        raise ConfigError("oracle needs a config file or --random N")
    cfg = load_config(args.config)
    if cfg.spec.n_qubits > ORACLE_MAX_QUBITS:
        raise ConfigError(f"oracle is limited to {ORACLE_MAX_QUBITS} qubits, got {cfg.spec.n_qubits}")
    dim = spec_dimension(cfg.spec, args.tol)
    n = cfg.spec.dim
    doc = {"levels": n, "dimension": dim, "threshold": n * n - 1, "verdict": oracle_verdict(dim, n)}
    _write(args.out, _dump(doc))
    if args.json:
        print(_dump(doc), end="")
    else:
        print(f"dimension {dim} (threshold {n * n - 1}): {doc['verdict']}")
    return EXIT_OK


def cmd_export_graph(args) -> int:
    cfg = load_config(args.config)
    dH, dE = _tolerances(cfg, args)
    name = cfg.name or "transitions"
    if args.stage == "initial":
        _, g = initial_graph(cfg.spec, dH, dE)
    else:
        g = analyze(cfg.spec, dH, dE).graph
    text = _dump(g.to_dict()) if args.json else g.to_dot(name)
    if args.out or args.dot:
        _write(args.out or args.dot, text)
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--delta-e", type=float, default=None, metavar="GHZ", help="energy-gap tolerance (GHz)")
    common.add_argument("--delta-h", type=float, default=None, metavar="VALUE", help="coefficient tolerance")
    common.add_argument("--out", default=None, metavar="PATH", help="write the JSON result here")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")

    p = argparse.ArgumentParser(prog="controlgraph", description="Graph test of qubit-array controllability.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    a = sub.add_parser("analyze", parents=[common], help="run the graph test on a config")
    a.add_argument("config")
    a.add_argument("--dot", default=None, metavar="PATH", help="write the final graph as DOT")
    a.add_argument("--no-timing", action="store_true", help="omit timing from the JSON report")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", parents=[common], help="test every placement of k local controls")
    s.add_argument("config")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--axis", choices=AXES, default=None)
    s.add_argument("--workers", type=int, default=None, help="worker processes")
    s.set_defaults(func=cmd_sweep)

    o = sub.add_parser("oracle", parents=[common], help="brute-force Lie algebra dimension (<= 3 qubits)")
    o.add_argument("config", nargs="?")
    o.add_argument("--tol", type=float, default=1e-9)
    o.add_argument("--random", type=int, default=None, metavar="N", help="cross-check N random 2-qubit systems")
    o.add_argument("--seed", type=int, default=0, help="seed for --random")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("export-graph", parents=[common], help="emit the initial or final graph as DOT")
    e.add_argument("config")
    e.add_argument("--stage", choices=("initial", "final"), default="final")
    e.add_argument("--dot", default=None, metavar="PATH", help="same as --out")
    e.set_defaults(func=cmd_export_graph)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"controlgraph: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"controlgraph: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
