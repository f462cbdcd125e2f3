import io
import json
import os
import re
import subprocess
import sys
from collections import Counter

import pytest

from logjets.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, EXIT_PRECISION, run

from helpers import FIXTURES

with open(os.path.join(FIXTURES, "golden", "cases.json")) as _fh:
    CASES = json.load(_fh)


def invoke(argv):
    argv = list(argv)
    if len(argv) > 1 and not os.path.isabs(argv[1]):
        argv[1] = os.path.join(FIXTURES, argv[1])
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("case", CASES, ids=[c["id"] for c in CASES])
def test_golden(case):
    code, out, err = invoke(case["argv"])
    assert code == case["exit"]
    with open(os.path.join(FIXTURES, "golden", case["id"] + ".txt")) as fh:
        assert out + err == fh.read()


@pytest.mark.parametrize("case", [c for c in CASES if c["exit"] in (0, 1)], ids=lambda c: c["id"])
def test_json_and_text_carry_the_same_numbers(case):
    _, text, _ = invoke(case["argv"])
    _, js, _ = invoke(case["argv"] + ["--format", "json"])
    json.loads(js)
    ints = lambda s: Counter(re.findall(r"\d+", s))
    assert ints(text) == ints(js)


def test_reports_are_deterministic():
    argv = ["evsp", "toricQ.json", "--bound", "4", "--format", "json"]
    assert invoke(argv) == invoke(argv)


def test_spec_cli_examples():
    code, out, _ = invoke(["evsp", "axes.json", "--bound", "2", "--format", "json"])
    assert code == EXIT_OK and json.loads(out)["results"]["component_count"] == 9
    code, out, _ = invoke(["embdim", "cusp.json", "-m", "5", "--oracle", "--format", "json"])
    rep = json.loads(out)["results"]["reports"][0]
    assert code == EXIT_OK and rep["formula"] == rep["oracle"] == 9
    code, out, _ = invoke(["jets", "toricQ.json", "-m", "0", "--component", "2,2,2"])
    assert code == EXIT_OK and "u_x_0*u_y_0 - u_z_0^2" in out


def test_precision_guard_exit():
    code, out, _ = invoke(["module", "cusp_module_low.json", "--format", "json"])
    guard = json.loads(out)["results"]["guard"]
    assert code == EXIT_PRECISION
    assert guard["ok"] is False and guard["suggested_precision"] == 6


def test_relative_oracle_mismatch_exit():
    code, out, _ = invoke(["embdim", "node_over_base.json", "-m", "3", "--relative", "--oracle", "--format", "json"])
    assert code == EXIT_MISMATCH
    rep = json.loads(out)["results"]["reports"][0]
    assert rep["formula"] == 5 and rep["flag"] == "interpretation"


def _write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_unknown_keys_rejected(tmp_path):
    doc = json.load(open(os.path.join(FIXTURES, "cusp.json")))
    doc["scheme"]["colour"] = "red"
    code, _, err = invoke(["embdim", _write(tmp_path, doc), "-m", "2"])
    assert code == EXIT_INVALID and "unknown key 'colour'" in err
    doc = json.load(open(os.path.join(FIXTURES, "cusp.json")))
    doc["extra"] = 1
    code, _, err = invoke(["embdim", _write(tmp_path, doc), "-m", "2"])
    assert code == EXIT_INVALID and "unknown key 'extra'" in err


def test_expression_error_has_column(tmp_path):
    doc = json.load(open(os.path.join(FIXTURES, "cusp.json")))
    doc["scheme"]["equations"] = ["y^2 - x^^3"]
    code, _, err = invoke(["jets", _write(tmp_path, doc), "-m", "1"])
    assert code == EXIT_INVALID
    assert re.search(r"scheme\.equations\[0\]: column \d+", err)


def test_json_syntax_error_has_line_and_column(tmp_path):
    code, _, err = invoke(["monoid", _write(tmp_path, '{\n  "monoid": [1,,]\n}')])
    assert code == EXIT_INVALID and "line 2 column" in err


def test_validation_errors_are_forwarded():
    code, _, err = invoke(["evsp", "bad_scheme.json"])
    assert code == EXIT_INVALID and err.startswith("error: ")


def test_missing_file():
    code, _, err = invoke(["monoid", "/nonexistent/doc.json"])
    assert code == EXIT_INVALID


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "logjets", "monoid", os.path.join(FIXTURES, "toricQ.json"),
                           "--bound", "2", "--format", "json"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["N"] == 3
