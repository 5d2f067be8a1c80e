import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True)


def test_tabulate_half(tmp_path):
    out = tmp_path / "t.json"
    proc = run("tabulate_half.py", "--terms", "8", "--out", str(out))
    assert proc.returncode == 0 and "MISMATCH" not in proc.stdout
    assert '"A"' in out.read_text()


def test_run_brw():
    proc = run("run_brw.py", "--runs", "2", "--ancestors", "2000")
    assert proc.returncode == 0 and "(2,0): exact 1/2" in proc.stdout


def test_residue_fit():
    proc = run("residue_fit.py", "--kmax", "2")
    assert proc.returncode == 0 and "worst relative error" in proc.stdout
