import csv
import io
import json
import math
import subprocess

import pytest

from conftest import PYTHON
from lerchneg.cli import UsageError, parse_complex, parse_range


def run(*args):
    return subprocess.run([PYTHON, "-m", "lerchneg", *args], capture_output=True, text=True)


def records(proc):
    return [json.loads(line) for line in proc.stdout.splitlines()]


def one(*args):
    proc = run(*args)
    assert proc.returncode == 0, proc.stderr
    (rec,) = records(proc)
    return rec


def test_eval_examples():
    assert one("eval", "polylog", "-m", "1", "-z", "0.5")["value_re"] == 2.0
    rec = one("eval", "hurwitz", "-k", "2", "-b", "0.25", "--method", "integral_v2")
    assert abs(rec["value_re"] - 17.1973291548) < 1e-9
    assert rec["method"] == "integral_v2"
    assert one("eval", "lerch", "-m", "0", "-z", "0.5", "-u", "9")["value_re"] == 2.0


def test_record_fields():
    rec = one("eval", "lerch", "-m", "2", "-z", "0.3-0.2i", "-u", "1.5")
    assert list(rec) == ["function", "params", "value_re", "value_im", "condition", "method", "elapsed_us"]
    assert rec["params"] == {"m": "2", "z": "0.3-0.2i", "u": "1.5"}
    assert rec["elapsed_us"] == 0
    assert all(isinstance(v, str) for v in rec["params"].values())


def test_polylog_forms_and_genfunc():
    for form in ("closed", "stirling", "transf"):
        rec = one("eval", "polylog", "-m", "3", "-z", "2+1i", "--form", form)
        assert rec["method"] == f"polylog_{form}"
    rec = one("eval", "genfunc", "-x", "0.05", "-b", "0.3")
    assert abs(rec["value_re"] - 0.0362464655588) < 1e-12


def test_precision_flag():
    rec = one("eval", "polylog", "-m", "20", "-z", "-1.1", "--precision", "dd")
    assert math.isfinite(rec["value_re"])


def test_deriv_examples():
    assert abs(one("deriv", "cot", "-k", "1", "-a", "1", "-x", "0.7853981633974483")["value_re"] + 2) < 1e-14
    assert one("deriv", "sec", "-k", "0", "-a", "1", "-x", "0")["value_re"] == 1.0
    rec = one("deriv", "tan", "-k", "1", "-a", "1", "-x", "0", "--oracle")
    assert rec["value_re"] == 1.0 and rec["oracle_re"] == 1.0 and rec["discrepancy"] <= 1e-12
    rec = one("deriv", "expratio", "-k", "2", "-a", "1", "-b", "0+3.141592653589793i", "--oracle")
    assert abs(rec["value_re"] - 0.5) < 1e-14 and rec["discrepancy"] < 1e-10
    rec = one("deriv", "csc", "-k", "3", "-a", "1.5", "-x", "0.4", "--shift", "0.1", "--oracle")
    assert rec["discrepancy"] < 1e-12 * abs(rec["oracle_re"])


def test_check_commands():
    proc = run("check", "exact", "--max-k", "12")
    assert proc.returncode == 0
    recs = records(proc)
    assert recs and all(r["passed"] and r["worst"] == 0 for r in recs)
    proc = run("check", "identities", "--max-k", "8", "--seed", "42")
    assert proc.returncode == 0 and all(r["worst"] <= 1e-9 for r in records(proc))
    assert run("check", "hurwitz", "--tol", "1e-7").returncode == 0


def test_check_failure_exit_code():
    proc = run("check", "identities", "--max-k", "3", "--tol", "0")
    assert proc.returncode == 4
    assert any(not r["passed"] for r in records(proc))


@pytest.mark.parametrize(
    "args,code",
    [
        (["eval", "lerch", "-m", "0", "-z", "1", "-u", "9"], 2),
        (["eval", "hurwitz", "-k", "2", "-b", "3", "--method", "integral_v1"], 2),
        (["eval", "hurwitz", "-k", "2", "-b", "-3"], 2),
        (["eval", "hurwitz", "-k", "2", "-b", "0.5", "--method", "integral_v2"], 2),
        (["eval", "hurwitz", "-k", "2", "-b", "0.3+5i", "--method", "integral_v1"], 2),
        (["deriv", "cot", "-k", "2", "-a", "1", "-x", "0"], 2),
        (["eval", "hurwitz", "-k", "3", "-b", "0.3", "--method", "analytic_final", "--quad-max-subdiv", "1",
          "--quad-order", "2"], 3),
        (["eval", "lerch", "-m", "0", "-z", "abc", "-u", "1"], 1),
        (["eval", "lerch", "-m", "1.5", "-z", "0.3", "-u", "1"], 1),
        (["eval", "lerch", "-m", "1"], 1),
        (["eval", "zeta", "-k", "2"], 1),
        (["frobnicate"], 1),
        ([], 1),
        (["sweep", "hurwitz", "k=2..4"], 1),
        (["sweep", "hurwitz", "k=2", "q=1..3", "b=0.3"], 1),
        (["eval", "hurwitz", "-k", "2", "-b", "0.3", "--quad-tol", "-1"], 1),
    ],
)
def test_exit_codes(args, code):
    proc = run(*args)
    assert proc.returncode == code, proc.stderr
    if code:
        assert proc.stderr and not proc.stdout


def test_sweep_cardinalities():
    proc = run("sweep", "hurwitz", "k=2..4", "b=0.1..0.9:0.2", "--method", "series")
    recs = records(proc)
    assert proc.returncode == 0 and len(recs) == 12
    assert [r["params"]["b"] for r in recs[:4]] == ["0.1", "0.3", "0.5", "0.7"]
    assert len(records(run("sweep", "polylog", "m=0..3", "z=circle:2:8"))) == 32


def test_sweep_error_isolation():
    recs = records(run("sweep", "hurwitz", "k=2", "b=0.3,1,0.6", "--method", "integral_v1"))
    assert [r.get("error") for r in recs] == [None, "domain", None]
    assert recs[1]["value_re"] is None and recs[0]["value_re"] > 0


def test_sweep_jobs_same_order():
    args = ["sweep", "hurwitz", "k=2..5", "b=0.1..0.9:0.1", "--method", "analytic_final"]
    assert run(*args).stdout == run(*args, "--jobs", "4").stdout


def test_sweep_trig():
    recs = records(run("sweep", "cot", "k=0..3", "a=1", "x=0.2,0.7", "shift=0,0.1"))
    assert len(recs) == 16


def test_determinism():
    for args in (
        ["check", "trig", "--seed", "7", "--max-k", "6"],
        ["sweep", "polylog", "m=0..5", "z=circle:1.5:7", "--format", "csv"],
        ["eval", "hurwitz", "-k", "4", "-b", "0.26+0.05i", "--method", "elementary"],
    ):
        a, b = run(*args), run(*args)
        assert a.returncode == 0 and a.stdout == b.stdout


def test_timing_flag():
    rec = one("eval", "hurwitz", "-k", "3", "-b", "0.4", "--method", "integral_v1", "--timing")
    assert rec["elapsed_us"] > 0


def test_round_trip_json():
    proc = run("sweep", "lerch", "m=0..4", "z=circle:0.7:5", "u=0.1..1:0.3")
    for rec in records(proc):
        for key in ("value_re", "value_im", "condition"):
            v = rec[key]
            assert float(repr(v)) == v
    # the printed text is exactly the shortest repr
    line = proc.stdout.splitlines()[0]
    rec = json.loads(line)
    assert f'"value_re": {rec["value_re"]!r}' in line


def test_csv_output():
    proc = run("sweep", "polylog", "m=0..2", "z=0.5,-2+1i", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(proc.stdout)))
    assert len(rows) == 6
    assert rows[1]["params"] == "m=0;z=-2+1i"
    for row in rows:
        assert repr(float(row["value_re"])) == row["value_re"]


def test_parse_complex():
    assert parse_complex("0.3") == 0.3
    assert parse_complex("-1e-3+2.5i") == complex(-1e-3, 2.5)
    assert parse_complex("0.3-0.2i") == complex(0.3, -0.2)
    assert parse_complex(".5E2-.1i") == complex(50, -0.1)
    for bad in ("i", "1+i", "1+2j", "abc", "", "1 + 2i", "--1"):
        with pytest.raises(UsageError):
            parse_complex(bad)


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("0.1..0.9:0.2") == [0.1, 0.3, 0.5, 0.7]
    assert parse_range("0..1:0.25") == [0, 0.25, 0.5, 0.75]
    assert parse_range("1,2.5,3-1i") == [1, 2.5, 3 - 1j]
    pts = parse_range("circle:2:8")
    assert len(pts) == 8 and all(abs(abs(p) - 2) < 1e-15 for p in pts)
    assert pts[0] == 2
    for bad in ("1..x", "0..1:0", "circle:2", "0..1:-0.1"):
        with pytest.raises(UsageError):
            parse_range(bad)
