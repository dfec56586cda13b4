"""Acceptance criteria, one test each, at the stated tolerances.

Each test prints a single ``[PASS]``/``[FAIL]`` line with the worst
discrepancy it saw. Run ``python3 tests/test_acceptance.py`` for the
summary without pytest.
"""
import json
import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from lerchneg import exactmath as ex
from lerchneg.checks import HURWITZ_B, RAT_GRID, U_GRID, random_z, suite_trig
from lerchneg.hurwitz import (
    genfunc_f,
    hurwitz_analytic_final,
    hurwitz_elementary,
    hurwitz_half_integer,
    hurwitz_integral_v1,
    hurwitz_integral_v2,
    hurwitz_series,
    integral_v1_bracket,
)
from lerchneg.neglerch import (
    lerch_neg,
    lerch_neg_cot_form,
    polylog_neg_closed,
    polylog_neg_stirling,
    polylog_neg_transf,
    sum_lerch_identity,
    sum_polylog_identity,
)
from lerchneg.numcore import EvalResult, scaled_discrepancy, unit_phase
from lerchneg.quadrature import QuadratureSpec

SEED = 20240611


LINES = {}


def report(number, title, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title}: {detail}"
    LINES[number] = line
    print(line)
    return passed


def test_01_exact_identities():
    bad = 0
    for k in range(16):
        for q in range(k + 1):
            for u in U_GRID:
                lhs, rhs = ex.stirling_binomial_identity(k, q, u)
                bad += lhs != rhs
    for k in range(1, 13):
        for q in range(1, k + 1):
            for u in U_GRID:
                if u != 0:
                    bad += ex.stirling_weighted_sum_lhs(k, q, u) != ex.stirling_weighted_sum_rhs(k, q, u)
    for k in range(11):
        for u in RAT_GRID:
            lhs, rhs = ex.zeta_shift_identity(k, u)
            bad += lhs != rhs
            for v in RAT_GRID:
                rec = ex.factorial(k) * sum(
                    ex.bernoulli_poly(j)(v) * u ** (k - j) / (ex.factorial(j) * ex.factorial(k - j)) for j in range(k + 1)
                )
                bad += ex.bernoulli_poly(k)(u + v) != rec
    for k in range(9):
        for x in RAT_GRID:
            for y in RAT_GRID:
                lhs, rhs = ex.factorial_power_binomial(x, y, k)
                bad += lhs != rhs
    assert report(1, "exact Stirling/Bernoulli/zeta identities", bad == 0, f"{bad} mismatches (tol 0)")


def test_02_polylog_cross_method():
    rng = np.random.default_rng(SEED)
    zs = random_z(rng, 20)
    worst = 0.0
    for m in range(13):
        for z in zs:
            res = [polylog_neg_stirling(m, z), polylog_neg_closed(m, z)]
            if m >= 1:
                res.append(polylog_neg_transf(m, z))
            worst = max(worst, max(scaled_discrepancy(a, b) for i, a in enumerate(res) for b in res[i + 1:]))
    bs = [complex(rng.uniform(0.05, 0.95), rng.uniform(-0.3, 0.3)) for _ in range(20)]
    us = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(20)]
    worst_cot = 0.0
    for k in range(1, 13):
        for b, u in zip(bs, us):
            worst_cot = max(worst_cot, scaled_discrepancy(lerch_neg_cot_form(k, b, u), lerch_neg(k - 1, unit_phase(b), u + 1)))
    ok = worst <= 1e-9 and worst_cot <= 1e-9
    assert report(2, "polylog three-way and Lerch cot form", ok,
                  f"worst {worst:.2e} / cot {worst_cot:.2e} (tol 1e-9)")


def test_03_sum_identities():
    rng = np.random.default_rng(SEED + 3)
    zs = random_z(rng, 25)
    us = [complex(*rng.uniform(-2, 2, 2)) for _ in range(25)]
    vs = [complex(*rng.uniform(-2, 2, 2)) for _ in range(25)]
    worst_p = max(scaled_discrepancy(*sum_polylog_identity(k, z, u)) for k in range(9) for z, u in zip(zs, us))
    worst_l = max(scaled_discrepancy(*sum_lerch_identity(k, z, u, v)) for k in range(9) for z, u, v in zip(zs, us, vs))
    ok = worst_p <= 1e-9 and worst_l <= 1e-9
    assert report(3, "polylog and Lerch binomial sums", ok, f"worst {worst_p:.2e} / {worst_l:.2e} (tol 1e-9)")


def test_04_lerch_recurrence():
    rng = np.random.default_rng(SEED + 4)
    zs = random_z(rng, 25)
    us = [complex(*rng.uniform(-2, 2, 2)) for _ in range(25)] + [complex(u) for u in U_GRID]
    worst = 0.0
    for m in range(11):
        for z in zs:
            for u in us:
                a, b = lerch_neg(m, z, u), lerch_neg(m, z, u + 1)
                rhs = EvalResult(u**m + z * b.value, max(b.condition, 1.0), "")
                worst = max(worst, scaled_discrepancy(a, rhs))
    assert report(4, "Lerch recurrence", worst <= 1e-9, f"worst {worst:.2e} (tol 1e-9)")


def test_05_trig_derivatives():
    res = {r.name: r for r in suite_trig(max_k=10, seed=SEED)}
    oracle = max(res[f"{n}_vs_oracle"].worst for n in ("cot", "csc", "tan", "sec"))
    residue = res["imaginary_residue"].worst
    adam = res["adamchik_vs_polylog"].worst
    cases = res["cot_vs_oracle"].cases
    ok = oracle <= 1e-8 and residue <= 1e-10 and adam <= 1e-10 and cases == 11 * 25
    assert report(5, "trig derivatives vs exact oracles", ok,
                  f"oracle {oracle:.2e} (1e-8), residue {residue:.2e} (1e-10), Adamchik {adam:.2e} (1e-10)")


def test_06_hurwitz_methods():
    spec = QuadratureSpec(tol=1e-10)
    methods = [hurwitz_integral_v1, hurwitz_elementary, hurwitz_integral_v2, hurwitz_analytic_final]
    worst = 0.0
    for k in range(2, 7):
        for b in HURWITZ_B:
            ref = complex(hurwitz_series(k, b).value)
            for fn in methods:
                worst = max(worst, abs(complex(fn(k, b, spec).value) - ref) / abs(ref))
    anchor = max(abs(fn(2, 0.25, spec).real - 17.1973291548) for fn in methods)
    ok = worst <= 1e-7 and anchor <= 2e-6
    assert report(6, "Hurwitz zeta, four integral forms vs series", ok,
                  f"worst rel {worst:.2e} (1e-7), zeta(2,1/4) anchor off by {anchor:.2e} (2e-6)")


def test_07_half_integer():
    worst = 0.0
    for k in range(2, 9):
        ref = (2**k - 1) * hurwitz_series(k, 1).real
        worst = max(worst, abs(complex(hurwitz_half_integer(k, 0.5).value) - ref) / abs(ref))
    assert report(7, "half-integer closure", worst <= 1e-9, f"worst rel {worst:.2e} (tol 1e-9)")


def test_08_generating_function():
    x, b = 0.05, 0.3
    ref = math.fsum(x**k * hurwitz_series(k, b).real for k in range(2, 41))
    err = abs(complex(genfunc_f(x, b).value) - ref)
    assert report(8, "generating function", err <= 1e-10, f"abs error {err:.2e} (tol 1e-10)")


def test_09_endpoint_cancellation():
    br = integral_v1_bracket(3, 0.3)
    peak = float(np.max(np.abs(br(np.linspace(0.4, 0.6, 201)))))
    ends = np.abs(br(np.array([1e-6, 1 - 1e-6])))
    ratio = float(np.max(ends)) / peak
    assert report(9, "integral_v1 bracket endpoint cancellation", ratio <= 1e-4, f"ratio {ratio:.2e} (tol 1e-4)")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "lerchneg", *args], capture_output=True, text=True)


def test_10_cli_contract():
    problems = []
    runs = [
        ["check", "identities", "--max-k", "4", "--seed", "99"],
        ["sweep", "hurwitz", "k=2..4", "b=0.1..0.9:0.2", "--method", "elementary", "--jobs", "3"],
        ["sweep", "polylog", "m=0..3", "z=circle:2:8", "--format", "csv"],
    ]
    for args in runs:
        a, b = _cli(*args), _cli(*args)
        if a.returncode != 0 or a.stdout != b.stdout:
            problems.append(f"nondeterministic: {' '.join(args)}")
    codes = {
        ("eval", "polylog", "-m", "1", "-z", "0.5"): 0,
        ("eval", "polylog", "-m", "1", "-z", "x"): 1,
        ("eval", "lerch", "-m", "2", "-z", "1", "-u", "0.5"): 2,
        ("eval", "hurwitz", "-k", "3", "-b", "0.3", "--method", "integral_v1", "--quad-order", "2",
         "--quad-max-subdiv", "1"): 3,
        ("check", "exact", "--max-k", "3", "--tol", "0"): 0,
        ("check", "identities", "--max-k", "2", "--tol", "0"): 4,
    }
    for args, code in codes.items():
        got = _cli(*args).returncode
        if got != code:
            problems.append(f"exit {got} != {code}: {' '.join(args)}")
    for line in _cli("sweep", "lerch", "m=0..6", "z=circle:0.8:9", "u=-1.5,0.3,2+1i").stdout.splitlines():
        rec = json.loads(line)
        for key in ("value_re", "value_im", "condition"):
            v = rec[key]
            if float(repr(v)) != v or f'"{key}": {v!r}' not in line:
                problems.append(f"round-trip {key}={v!r}")
    assert report(10, "CLI determinism, exit codes, round-trip", not problems,
                  "; ".join(problems[:3]) if problems else "all checks held")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
