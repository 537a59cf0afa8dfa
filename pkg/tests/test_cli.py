import json

import pytest

from controlgraph.cli import EXIT_COMPUTE, EXIT_CONFIG, EXIT_OK, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text_and_outputs(capsys, configs_dir, tmp_path):
    report, dot = tmp_path / "r.json", tmp_path / "g.dot"
    code, out, _ = run(capsys, "analyze", configs_dir / "twoqubit_xx.yaml", "--out", report, "--dot", dot)
    assert code == EXIT_OK
    assert out.startswith("verdict: Controllable")
    d = json.loads(report.read_text())
    assert d["verdict"] == "Controllable" and d["subalgebra_edges"] == 4
    assert dot.read_text().startswith('graph "twoqubit_xx"')


def test_analyze_json_flag(capsys, configs_dir):
    code, out, _ = run(capsys, "analyze", configs_dir / "twoqubit_xxzz.yaml", "--json", "--no-timing")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["final_decoupled_edges"] == 4 and "timing" not in d


def test_inconclusive_still_exits_zero(capsys, configs_dir):
    code, out, _ = run(capsys, "analyze", configs_dir / "twoqubit_xx_single.yaml")
    assert code == EXIT_OK and "Inconclusive" in out


def test_tolerance_overrides(capsys, configs_dir):
    code, out, _ = run(capsys, "analyze", configs_dir / "twoqubit_xx.yaml", "--delta-e", "0.5", "--delta-h", "1e-3", "--json")
    d = json.loads(out)
    assert d["tolerances"] == {"delta_h": 1e-3, "delta_e": 0.5}


def test_bad_tolerance_override(capsys, configs_dir):
    code, _, err = run(capsys, "analyze", configs_dir / "twoqubit_xx.yaml", "--delta-e", "0")
    assert code == EXIT_CONFIG and "positive" in err


def test_sweep(capsys, configs_dir, tmp_path):
    out_path = tmp_path / "sweep.json"
    code, out, _ = run(capsys, "sweep", configs_dir / "quito_xxyy.yaml", "--k", 2, "--out", out_path)
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 11
    d = json.loads(out_path.read_text())
    assert len(d["rows"]) == 10
    assert d["by_distance"] == {"1": {"Controllable": 4}, "2": {"Inconclusive": 4}, "3": {"Controllable": 2}}


def test_sweep_needs_k(capsys, configs_dir):
    code, _, err = run(capsys, "sweep", configs_dir / "twoqubit_xx.yaml")
    assert code == EXIT_CONFIG and "--k" in err


def test_oracle(capsys, configs_dir):
    code, out, _ = run(capsys, "oracle", configs_dir / "twoqubit_xx_single.yaml", "--json")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["dimension"] < 15 and d["verdict"] == "NotControllable"


def test_oracle_refuses_large_arrays(capsys, configs_dir):
    code, _, err = run(capsys, "oracle", configs_dir / "quito_exampleA.yaml")
    assert code == EXIT_CONFIG and "3 qubits" in err


def test_oracle_random_is_seeded(capsys):
    code, first, _ = run(capsys, "oracle", "--random", 5, "--seed", 9, "--json")
    _, second, _ = run(capsys, "oracle", "--random", 5, "--seed", 9, "--json")
    assert code == EXIT_OK and first == second
    assert json.loads(first)["violations"] == 0


def test_oracle_without_input(capsys):
    code, _, err = run(capsys, "oracle")
    assert code == EXIT_CONFIG


@pytest.mark.parametrize("stage,solid", [("initial", 0), ("final", 4)])
def test_export_graph(capsys, configs_dir, stage, solid):
    code, out, _ = run(capsys, "export-graph", configs_dir / "twoqubit_xx.yaml", "--stage", stage)
    assert code == EXIT_OK
    assert out.count("style=solid") == solid
    assert out.count("style=dashed") == 8


def test_export_graph_json_to_file(capsys, configs_dir, tmp_path):
    p = tmp_path / "g.json"
    code, _, _ = run(capsys, "export-graph", configs_dir / "twoqubit_xxzz.yaml", "--json", "--out", p)
    assert code == EXIT_OK and json.loads(p.read_text())["n_vertices"] == 4


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "absent.yaml")
    assert code == EXIT_CONFIG and "absent.yaml" in err


def test_invalid_config(capsys, tmp_path):
    p = tmp_path / "c.yaml"
    p.write_text("qubits:\n  frequencies: [5.0]\n  extra: 1\n")
    code, _, err = run(capsys, "analyze", p)
    assert code == EXIT_CONFIG and "line 3" in err and "qubits.extra" in err


def test_analyze_without_controls(capsys, configs_dir):
    code, _, err = run(capsys, "analyze", configs_dir / "quito_xxyy.yaml")
    assert code == EXIT_CONFIG


@pytest.mark.parametrize("argv", [[], ["bogus"], ["analyze"], ["sweep", "x.yaml", "--axis", "Q"]])
def test_usage_errors_print_synopsis(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage:" in capsys.readouterr().err


def test_help(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    assert "analyze" in capsys.readouterr().out


def test_golden_report(capsys, configs_dir):
    from pathlib import Path

    golden = Path(__file__).parent / "golden" / "twoqubit_xx.json"
    code, out, _ = run(capsys, "analyze", configs_dir / "twoqubit_xx.yaml", "--json", "--no-timing")
    assert code == EXIT_OK
    assert out == golden.read_text()
