from __future__ import annotations

import json
from pathlib import Path

import pytest

from minkpot.cli import CSV_HEADER, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_dimension_six(capsys):
    code, out, _ = run(capsys, "list", "--dim", "6", "--kind", "P")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 9
    assert sum("EMPTY" in r for r in rows) == 2


def test_list_maxwell_json(capsys):
    code, out, _ = run(capsys, "list", "--kind", "C", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 7
    assert rows[0]["id"] == "C3.19"


def test_list_bad_dimension(capsys):
    code, _, err = run(capsys, "list", "--dim", "7")
    assert code == 2 and "dimension out of range 1..6" in err


def test_bad_kind_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["list", "--kind", "Q"])
    assert e.value.code == 2


def test_verify_empty_class(capsys):
    code, out, _ = run(capsys, "verify", "--class", "P5.2")
    assert code == 0 and "SKIP(EMPTY)" in out


def test_verify_with_params(capsys):
    code, out, _ = run(capsys, "verify", "--class", "C5.9", "--param", "C=1", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("C5.9,5,100,") and lines[1].endswith(",true,42")


def test_config_constraint_violation(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"class": "P1.4", "params": {"lambda": 1, "mu": 1}}))
    code, _, err = run(capsys, "verify", "--config", str(cfg))
    assert code == 2 and "constraint λμ=0 violated" in err


def test_config_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"class": "P6.3", "params": {"A": 1}, "colour": "red"}))
    code, _, err = run(capsys, "verify", "--config", str(cfg))
    assert code == 2 and "unknown config keys" in err


def test_config_bad_class(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"class": "Q1.1"}))
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2
    cfg.write_text("{not json")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2


def test_config_slot_tables_and_preset(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps([
        {"class": "P6.8", "slots": {"Phi": {"0": 1.0, "2": -0.5}}, "points": 20},
        {"class": "P3.19", "params": {"lambda": 1.0}, "slots": "example", "seed": 7},
    ]))
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["class_id"] for r in rows] == ["P6.8", "P3.19"]
    assert rows[0]["n_points"] == 20 and rows[1]["seed"] == 7


def test_config_slot_arity_error(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"class": "P6.8", "slots": {"Phi": {"1,1": 1.0}}}))
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2


def test_json_field_names_are_stable(capsys):
    code, out, _ = run(capsys, "verify", "--class", "P3.20", "--format", "json")
    fields = sorted(json.loads(out.splitlines()[0]))
    assert fields == json.loads((GOLDEN / "report_fields.json").read_text())


def test_verify_failure_exit_code(capsys):
    # with zero tolerance the rounding-level residual counts as a failure
    code, out, _ = run(capsys, "verify", "--class", "C4.20", "--tol", "0")
    assert code == 1 and "FAIL" in out


def test_detect_outputs(capsys):
    code, out, _ = run(capsys, "detect", "--class", "P3.20")
    assert code == 0 and "dim ≥ 3; contains e12, e13, e23" in out
    code, out, _ = run(capsys, "detect", "--class", "C5.9", "--param", "C=1")
    assert "dim = 5" in out
    code, out, _ = run(capsys, "detect", "--zero")
    assert "dim = 10" in out
    code, out, _ = run(capsys, "detect", "--zero", "--format", "json")
    d = json.loads(out)
    assert d["dim"] == 10 and len(d["basis"]) == 10 and len(d["basis"][0]) == 10


def test_detect_needs_a_field(capsys):
    assert run(capsys, "detect")[0] == 2
    assert run(capsys, "detect", "--class", "P6.1")[0] == 2


def test_appendix_runs(capsys):
    code, out, _ = run(capsys, "appendix", "--jobs", "3")
    rows = out.strip().splitlines()[1:]
    assert code == 0 and len(rows) == 9 and all("PASS" in r for r in rows)


def test_appendix_genericity_and_zero_field(capsys):
    code, out, _ = run(capsys, "appendix", "--phi-constant", "1.0", "--c65-lambda", "0")
    lines = {ln.split()[0]: ln for ln in out.strip().splitlines()[1:]}
    assert "genericity φ′≠0 violated" in lines["C319_example"]
    assert int(lines["C319_example"].split()[5]) > 3
    assert "ZERO-FIELD" in lines["C6.5"]


def test_parallel_output_is_ordered_and_identical(capsys):
    _, a, _ = run(capsys, "verify", "--all", "--format", "json")
    _, b, _ = run(capsys, "verify", "--all", "--format", "json", "--jobs", "4")
    assert a == b
