import json
import subprocess
import sys

import pytest

from ranktwist.cli import main
from ranktwist.pipeline import REGRESSION_CERTIFICATE, REGRESSION_CONFIG


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_selmer(capsys):
    code, out = run(capsys, "selmer", "0", "5", "-5", "--chain", "11", "--reduce")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 3
    assert data["chain"][0]["prime"] == 11
    assert data["reduction"]["dims"][-1] == 1


def test_selmer_bad_curve(capsys):
    assert main(["selmer", "0", "1", "1"]) == 4


def test_tables(capsys):
    code, out = run(capsys, "tables")
    data = json.loads(out)
    assert code == 0 and data["matching"] == 24 and data["cascade"] == [6, 4, 2, 0]
    assert data["final_dim"] == 2


def test_constellation(capsys):
    code, out = run(capsys, "constellation", "0", "1", "2", "--N", "20", "--cutoff", "200")
    data = json.loads(out)
    assert code == 0 and data["admissible"] and data["betas"][0] == [2, "16/1"]
    code, out = run(capsys, "constellation", "0", "1", "2", "--m", "2")
    assert json.loads(out) == {"admissible": False, "prime": 3}
    assert main(["constellation", "0", "1", "2", "--lam", "3"]) == 4


def test_twist_search_and_verify(capsys, tmp_path):
    out_path = tmp_path / "cert.json"
    code, out = run(capsys, "twist-search", str(REGRESSION_CONFIG), "-o", str(out_path))
    assert code == 0
    assert out_path.read_text() == REGRESSION_CERTIFICATE.read_text() == out
    code, out = run(capsys, "verify", str(out_path), "--probe")
    assert code == 0 and out.strip() == "pass"


def test_verify_failure_exit_code(capsys, tmp_path):
    cert = json.loads(REGRESSION_CERTIFICATE.read_text())
    cert["selmer"]["dim"] = 4
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cert))
    code, out = run(capsys, "verify", str(path))
    assert code == 3 and out.strip() == "fail(Sel-recompute)"
    assert main(["verify", str(tmp_path / "missing.json")]) == 4


def test_exit_codes_for_search(tmp_path):
    small = tmp_path / "small.json"
    small.write_text(json.dumps({"curve": [0, 2, 6], "m": 1, "lam": 1, "N": 3}))
    assert main(["twist-search", str(small)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"curve": [0, 1, 2], "m": 2, "lam": 1}))
    assert main(["twist-search", str(bad)]) == 4


@pytest.mark.parametrize("args", [["tables"], ["--help"]])
def test_module_entry_point(args):
    res = subprocess.run([sys.executable, "-m", "ranktwist", *args], capture_output=True, text=True)
    assert res.returncode == 0
