import io
import json
import subprocess
import sys

import pytest

from singwalks.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_seq_tangent():
    code, out, _ = run("seq", "--kind", "tangent", "--n", "5")
    assert code == 0 and out.split() == ["1", "2", "16", "272", "7936"]


def test_seq_bernoulli_json():
    code, out, _ = run("seq", "--kind", "bernoulli", "--n", "4", "--format", "json")
    assert json.loads(out) == ["1", "-1/2", "1/6", "0"]


def test_series_trivial():
    code, out, _ = run("series", "--model", "A", "--t", "1/2", "--kmax", "0", "--format", "json")
    assert code == 0 and json.loads(out) == {"(0,0)": "1"}


def test_series_formal():
    code, out, _ = run("series", "--model", "A", "--kmax", "2", "--formal-order", "4", "--format", "json")
    data = json.loads(out)
    assert data["(1,1)"] == ["0", "1", "0", "2"]


def test_series_csv():
    code, out, _ = run("series", "--model", "B", "--kmax", "1", "--format", "csv")
    assert out.splitlines() == ["i,j,value", "0,0,1", "1,0,1", "0,1,1"]


def test_refuses_beyond_half():
    code, out, err = run("series", "--model", "A", "--t", "0.51", "--kmax", "3")
    assert code == 1 and out == ""
    rec = json.loads(err)
    assert rec["error"] == "outside-convergence-region"
    assert "accumulate at 1/2" in rec["message"]


def test_invalid_model():
    code, _, err = run("count", "--model", "Q", "--n", "2")
    assert code == 1 and json.loads(err)["error"] == "invalid-model"


def test_bad_flags_exit_one():
    code, _, err = run("count", "--model", "A")
    assert code == 1 and json.loads(err)["error"] == "usage"


def test_count():
    code, out, _ = run("count", "--model", "A", "--n", "3")
    assert out.split() == ["1", "1", "3", "7"]
    code, out, _ = run("count", "--model", "A", "--n", "5", "--endpoint", "1,1", "--format", "json")
    assert json.loads(out) == {"(1,1)": ["0", "1", "0", "2", "0", "4"]}


def test_segment():
    code, out, _ = run("segment", "--k", "1", "--t", "1/2", "--format", "json")
    assert json.loads(out) == [["4/3", "2/3"], ["2/3", "4/3"]]


def test_verify_single_model():
    code, out, _ = run("verify", "--suite", "funceq", "--model", "E", "--v", "1/3", "--order", "10",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and any("v=1/3" in c["name"] for c in data["checks"])


def test_verify_v1_only():
    code, out, _ = run("verify", "--suite", "funceq", "--model", "A", "--v", "1", "--order", "10")
    assert code == 0 and "v=1" in out and "v=1/" not in out


def test_verify_reports_first_nonzero(monkeypatch):
    from singwalks import funceq

    orig = funceq.q_sections

    def corrupted(m, t, n):
        qx, qy = orig(m, t, n)
        cs = list(qx.coeffs)
        cs[2] += 1
        return qx.__class__(cs, qx.order, qx.var), qy

    monkeypatch.setattr(funceq, "q_sections", corrupted)
    code, out, _ = run("verify", "--suite", "funceq", "--model", "B", "--v", "1/2", "--order", "10",
                       "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["ok"]
    failing = [c for c in data["checks"] if not c["ok"]]
    assert failing and all(isinstance(c["first_nonzero"], int) for c in failing)


def test_simulate_json():
    args = ("simulate", "--model", "A", "--offspring", "1:1/2,2:1/2", "--targets", "1,1;2,0",
            "--ancestors", "3000", "--seed", "7", "--format", "json")
    code, out, _ = run(*args)
    data = json.loads(out)
    assert code == 0
    assert [r["exact"] for r in data["results"]] == ["1", "1/2"]
    assert all(isinstance(r["estimate"], float) for r in data["results"])
    assert run(*args)[1] == out


def test_simulate_rejects_bad_mean():
    code, _, err = run("simulate", "--offspring", "1:1", "--ancestors", "10")
    assert code == 1 and "mean" in json.loads(err)["message"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "singwalks", "seq", "--kind", "dellac", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == ["1", "1", "2"]


def test_verify_all_order_16():
    code, out, _ = run("verify", "--suite", "all", "--order", "16")
    assert code == 0 and "ALL PASS" in out
