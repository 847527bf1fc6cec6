import json
from importlib import resources

import jsonschema
import pytest

from sctree.cli import emit_report, main

SCHEMA = json.loads(resources.files("sctree").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_factorize(capsys):
    code, r = run_json(capsys, "factorize", "--prime", "5", "--map", "(x^2-y, x)")
    assert code == 0 and r["command"] == "factorize"
    assert r["timing"] is None


def test_wpd_over_f7(capsys):
    code, r = run_json(capsys, "wpd", "--map", "(x^2-y,x)", "--prime", "7", "--width", "6")
    assert code == 0
    assert r["results"]["stabilizer_order"] == 3


def test_stab_expectation(capsys):
    path = "tbt.B,tb.A,t.B,id.A,id.B,b.A,bt.B"
    assert run(capsys, "stab", "--prime", "7", "--path", path, "--expect-order", "3")[0] == 0
    assert run(capsys, "stab", "--prime", "5", "--path", path, "--expect-order", "3")[0] == 1


def test_failing_check_prints_fail_line(capsys):
    path = "tbt.B,tb.A,t.B,id.A,id.B,b.A,bt.B"
    code, out, _ = run(capsys, "--format", "text", "stab", "--prime", "5", "--path", path, "--expect-order", "3")
    assert code == 1
    assert any(line.startswith("FAIL ") for line in out.splitlines())


@pytest.mark.parametrize(
    "argv, code",
    [
        (["translen", "--map", "(x^2, y)"], 3),
        (["translen", "--map", "(x, y"], 3),
        (["translen", "--prime", "4"], 4),
        (["translen", "--prime", "3", "--ext", "7"], 4),
        (["wpd", "--prime", "3", "--enum-cap", "10"], 5),
        (["sct", "--samples", "0", "--seed", "1"], 2),
        (["coneoff", "verify", "--samples", "2"], 2),
        (["dist", "--x", "tz.A", "--y", "id.A"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_usage_errors_from_argparse(capsys):
    with pytest.raises(SystemExit) as err:
        main(["nonsense"])
    assert err.value.code == 2
    with pytest.raises(SystemExit):
        main(["sct"])  # seed is mandatory


def test_global_options_either_side(capsys):
    a = run(capsys, "--format", "text", "translen", "--map", "bt")[1]
    b = run(capsys, "translen", "--map", "bt", "--format", "text")[1]
    assert a == b and "length" in a


def test_byte_identical_reports(capsys):
    argv = ["coneoff", "verify", "--prime", "3", "--samples", "6", "--seed", "7"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    report = json.loads(first)
    jsonschema.validate(report, SCHEMA)
    assert all(row["distance"] == row["oracle"] for row in report["results"]["pairs"])


def test_timing_is_opt_in(capsys):
    code, r = run_json(capsys, "--timing", "dist", "--x", "tb.A", "--y", "id.B")
    assert code == 0 and r["timing"]["seconds"] >= 0
    assert r["results"]["distance"] == 3


def test_report_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SCTREE_REPORT_DIR", str(tmp_path))
    _, out, _ = run(capsys, "translen", "--map", "bt^3")
    files = list(tmp_path.glob("translen-*.json"))
    assert len(files) == 1 and files[0].read_text() == out


def test_emit_round_trip():
    r = {"schema_version": 1, "command": "dist", "config": {"a": 1}, "results": {}, "checks": [], "timing": None}
    text = emit_report(r)
    assert json.loads(text) == r
    jsonschema.validate(json.loads(text), SCHEMA)
    assert emit_report(r, "text").startswith("dist:")


@pytest.mark.parametrize(
    "argv",
    [
        ["normalize", "--prime", "5", "--word", "b; t; t; b"],
        ["tight", "--prime", "3", "--b", "6"],
        ["params", "--prime", "3", "--b", "6", "--mode", "coneoff"],
        ["coneoff", "dist", "--b", "6", "--x", "id.A", "--y", "tbtbtb.A"],
        ["twpath", "--b", "6", "--samples", "2", "--seed", "3", "--k-max", "2"],
        ["admissible", "--b", "6", "--seed", "3", "--m", "2"],
        ["pingpong", "--prime", "3", "--max-len", "3"],
    ],
)
def test_commands_produce_valid_reports(capsys, argv):
    code, r = run_json(capsys, *argv)
    assert code == 0, r["checks"]
