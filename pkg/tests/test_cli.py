import subprocess
import sys

import pytest

from gstar import cli, grid, search
from gstar.profile import parse_profile


def run(capsys, *argv):
    status = cli.run(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_compute_exact(capsys):
    status, out, _ = run(capsys, "compute", "--r", "2", "--exact")
    assert status == 0
    assert out == "value=3/2 mode=exact\n"


def test_compute_writes_certificate(tmp_path, capsys):
    path = tmp_path / "c3.txt"
    status, out, _ = run(capsys, "compute", "--r", "3", "--out", str(path))
    assert status == 0 and out == "value=5/4 mode=exact\n"
    assert search.certify(search.parse_certificate(path.read_text()))
    status, out, _ = run(capsys, "certify", "--certificate", str(path))
    assert (status, out) == (0, "true\n")


def test_compute_exact_flag_needs_proof(capsys):
    status, out, err = run(capsys, "compute", "--r", "5", "--exact")
    assert status == 2
    assert out == "value=11/12 mode=upper-bound-only\n"
    assert "budget" in err


def test_certify_detects_tampering(tmp_path, capsys):
    path = tmp_path / "c.txt"
    run(capsys, "compute", "--r", "2", "--out", str(path))
    path.write_text(path.read_text().replace("value=3/2", "value=1"))
    status, out, _ = run(capsys, "certify", "--certificate", str(path))
    assert (status, out) == (1, "false\n")
    path.write_text("nonsense")
    status, out, _ = run(capsys, "certify", "--certificate", str(path))
    assert (status, out) == (1, "false\n")


def test_bounds(capsys):
    status, out, _ = run(capsys, "bounds", "--r", "8")
    assert status == 0
    assert out.splitlines() == ["r,lower_sq,upper,exact", "8,1/2,13/18,13/18"]
    status, out, _ = run(capsys, "bounds", "--r", "9", "--through", "10")
    assert out.splitlines()[1:] == ["9,4/9,2/3,2/3", "10,2/5,23/36,"]
    status, _, err = run(capsys, "bounds", "--r", "5", "--through", "4")
    assert status == 1 and "--through" in err


def test_oracle(capsys):
    assert run(capsys, "oracle", "--n", "2", "--r", "2")[:2] == (0, "3\n")
    status, _, err = run(capsys, "oracle", "--n", "5", "--r", "3")
    assert status == 2 and "budget" in err


def test_construct_verify_discretize_extend(tmp_path, capsys):
    prof = tmp_path / "p.txt"
    sq = tmp_path / "s.csv"
    big = tmp_path / "b.csv"
    for r in range(1, 13):
        assert run(capsys, "construct", "--r", str(r), "--out", str(prof))[0] == 0
        status, out, _ = run(capsys, "verify", "--profile", str(prof))
        assert status == 0 and "valid=true" in out
        assert "violation" not in out
    assert run(capsys, "construct", "--r", "2", "--out", str(prof))[0] == 0
    assert run(capsys, "discretize", "--profile", str(prof), "--t", "2", "--out", str(sq))[0] == 0
    assert grid.touched_counts(grid.parse_square(sq.read_text())).touched == (6, 6)
    assert run(capsys, "extend", "--square", str(sq), "--n", "6", "--out", str(big))[0] == 0
    status, out, _ = run(capsys, "verify", "--square", str(big))
    assert status == 0 and "n=6 r=2" in out and "max_touched=" in out


def test_construct_families(capsys):
    status, out, _ = run(capsys, "construct", "--r", "8", "--family", "square-minus-one")
    assert status == 0 and parse_profile(out).r == 8
    status, _, err = run(capsys, "construct", "--r", "8", "--family", "square")
    assert status == 1 and "perfect square" in err


def test_verify_reports_violations(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("r=2\na {1} 1\nb {2} 1\n")
    status, out, _ = run(capsys, "verify", "--profile", str(bad))
    assert status == 1
    assert "valid=false" in out and "cross-intersection" in out


def test_domain_errors_exit_1(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["bounds", "--r", "0"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.run(["oracle", "--n", "x", "--r", "2"])
    assert exc.value.code == 1
    status, _, err = run(capsys, "verify", "--profile", str(tmp_path / "missing.txt"))
    assert status == 1 and "cannot read" in err


def test_outputs_are_deterministic(capsys):
    first = run(capsys, "construct", "--r", "28")[1]
    second = run(capsys, "construct", "--r", "28")[1]
    assert first == second


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gstar.cli", "bounds", "--r", "4"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "4,1,1,1"
