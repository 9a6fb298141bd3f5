import json
import subprocess
import sys

import pytest

from gapvir.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_bracket_golden_output(capsys):
    code, out = run_cli(capsys, ["bracket", "--p", "2", "--x", "L[2]", "--y", "L[-2]"])
    assert code == 0
    report = json.loads(out)
    assert report["result"] == "4*L[0] + 1/2*C[0]"
    assert report["schema"] == "gapvir/1"
    assert report["tool"]["name"] == "gapvir"


BRACKET_GOLDEN = """\
{
  "command": "bracket",
  "config": {
    "outputFormat": "json",
    "p": 2,
    "seed": 0,
    "x": "I[0,1]",
    "y": "I[-1,1]"
  },
  "result": "1/2*C[1]",
  "rules": [
    "defining-bracket-relations"
  ],
  "schema": "gapvir/1",
  "tool": {
    "name": "gapvir",
    "version": "0.1.0"
  }
}
"""


def test_report_schema_golden_file(capsys):
    # pins the versioned report envelope byte for byte
    code, out = run_cli(capsys, ["bracket", "--p", "2", "--x", "I[0,1]",
                                 "--y", "I[-1,1]"])
    assert code == 0
    assert out == BRACKET_GOLDEN


def test_dynamic_flags_inline_and_p3(capsys):
    code, out = run_cli(capsys, ["unitary-check", "--p", "3", "--c0", "3",
                                 "--l0", "1/9", "--c1=1", "--beta1", "2",
                                 "--beta2", "1/2", "--max-level", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "unitary"
    assert report["config"]["beta"] == ["2", "1/2"]
    assert report["config"]["weights"]["c1"] == "1"


def test_verma_dims_golden(capsys):
    code, out = run_cli(capsys, ["verma-dims", "--p", "2", "--max-level", "10"])
    assert code == 0
    assert json.loads(out)["dims"] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_unitary_check_agreement(capsys):
    code, out = run_cli(capsys, ["unitary-check", "--p", "2", "--c0", "2",
                                 "--l0", "1/16", "--c1", "1", "--beta1", "1",
                                 "--max-level", "6"])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "unitary" and report["agreement"]


def test_usage_error_exit_code(capsys):
    code, _ = run_cli(capsys, ["bracket", "--p", "2", "--x", "L[2]", "--y", "nope"])
    assert code == 2
    code, _ = run_cli(capsys, ["unitary-check", "--p", "2", "--l0", "1/0x"])
    assert code == 2
    # a zero denominator is reported, never a traceback
    code, _ = run_cli(capsys, ["gram", "--p", "2", "--l0", "1/0"])
    assert code == 2


def test_verdict_failure_exit_code(capsys):
    code, out = run_cli(capsys, ["series-check", "--p", "3", "--a", "1/3",
                                 "--b", "1/2", "--window", "2",
                                 "--f", '[["1","1","1"],["1","1","2"]]'])
    assert code == 1
    assert not json.loads(out)["pass"]


def test_guardrail_on_max_level(capsys, monkeypatch):
    code, _ = run_cli(capsys, ["verma-dims", "--p", "2", "--max-level", "40"])
    assert code == 2
    monkeypatch.setenv("GAPVIR_MAX_LEVEL", "40")
    code, out = run_cli(capsys, ["verma-dims", "--p", "2", "--max-level", "26"])
    assert code == 0 and len(json.loads(out)["dims"]) == 27


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "p": 2,
        "weights": {"l0": "1/16", "c0": "2", "c1": "1"},
        "beta": {"beta1": "1"},
        "maxLevel": 2,
        "seed": 5,
        "outputFormat": "json",
    }))
    code, out = run_cli(capsys, ["unitary-check", "--config", str(cfg)])
    assert code == 0
    report = json.loads(out)
    assert report["config"]["weights"]["l0"] == "1/16"
    assert report["config"]["maxLevel"] == 2
    assert report["config"]["seed"] == 5
    assert report["verdict"] == "unitary"


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"weights": {"l0": "0", "c0": "2", "c1": "1"}}))
    code, out = run_cli(capsys, ["unitary-check", "--config", str(cfg),
                                 "--l0", "1/16", "--max-level", "1"])
    assert code == 0
    assert json.loads(out)["config"]["weights"]["l0"] == "1/16"


def test_f_matrix_file_input(tmp_path, capsys):
    f_file = tmp_path / "f.json"
    f_file.write_text(json.dumps({"p": 2, "rows": [["1", "1"]]}))
    code, out = run_cli(capsys, ["series-check", "--p", "2", "--a", "1/3",
                                 "--b", "1/2", "--f-file", str(f_file),
                                 "--window", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["predicates"]["unitary"] and report["axioms"]["pass"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 3, "rows": [["1", "1"]]}))
    code, _ = run_cli(capsys, ["series-check", "--p", "2", "--a", "0",
                               "--b", "1/2", "--f-file", str(bad)])
    assert code == 2


def test_sector_flags(capsys):
    code, out = run_cli(capsys, ["reducibility", "--p", "2", "--l0", "0",
                                 "--c0", "1", "--sector", "virasoro",
                                 "--max-level", "4"])
    assert code == 0
    report = json.loads(out)
    assert report["firstSingularLevel"] == 2
    assert [e["dim"] for e in report["levels"]] == [1, 0, 1, 0, 2]
    code, out = run_cli(capsys, ["gram", "--p", "2", "--l0", "1/16", "--c1", "1",
                                 "--sector", "heisenberg", "--level", "3"])
    assert code == 0
    assert json.loads(out)["basis"] == ["I[-2,1]|hw", "I[-1,1]I[-1,1]I[-1,1]|hw"]


def test_gram_reports_non_hermitian_form(capsys):
    code, out = run_cli(capsys, ["gram", "--p", "2", "--l0", "1", "--c0", "3",
                                 "--c1", "1", "--beta1", "3/5+4/5*i",
                                 "--level", "1"])
    assert code == 0
    assert json.loads(out)["verdict"] == {"kind": "not-hermitian"}


def test_reports_carry_no_floats(capsys):
    for argv in (
        ["gram", "--p", "2", "--l0", "1/16", "--c0", "2", "--c1", "1",
         "--level", "3"],
        ["reducibility", "--p", "2", "--l0", "0", "--c0", "1", "--c1", "1",
         "--max-level", "4"],
    ):
        code, out = run_cli(capsys, argv)
        assert code == 0

        def no_floats(node):
            if isinstance(node, float):
                return False
            if isinstance(node, dict):
                return all(no_floats(v) for v in node.values())
            if isinstance(node, list):
                return all(no_floats(v) for v in node)
            return True

        assert no_floats(json.loads(out))


def test_output_file_and_text_format(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(capsys, ["bracket", "--p", "2", "--x", "I[0,1]",
                                 "--y", "I[-1,1]", "--output", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"] == "1/2*C[1]"
    code, out = run_cli(capsys, ["bracket", "--p", "2", "--x", "L[0]",
                                 "--y", "I[3,1]", "--format", "text"])
    assert code == 0 and "result: -7/2*I[3,1]" in out


@pytest.mark.parametrize("argv", [
    ["bracket", "--p", "3", "--x", "L[1]", "--y", "I[-1,2]"],
    ["involution-check", "--p", "2", "--count", "4", "--seed", "11"],
    ["verma-dims", "--p", "3", "--max-level", "8"],
    ["kac-scan", "--p", "2", "--central", "1/2", "--grid", "16/16",
     "--max-level", "2", "--max-ab", "2"],
])
def test_repeat_runs_are_byte_identical(capsys, argv):
    _, first = run_cli(capsys, argv)
    _, second = run_cli(capsys, argv)
    assert first == second


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "gapvir.cli", "verma-dims", "--p", "2",
         "--max-level", "4"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dims"] == [1, 1, 2, 3, 5]
