"""Property suites behind ``lerchneg check``.

Each suite returns one :class:`PropertyResult` per property, with the
worst discrepancy seen over a seeded grid. Exact suites use tolerance 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from . import exactmath as ex
from .hurwitz import (
    hurwitz_analytic_final,
    hurwitz_elementary,
    hurwitz_half_integer,
    hurwitz_integral_v1,
    hurwitz_integral_v2,
    hurwitz_series,
    integral_v1_bracket,
)
from .neglerch import (
    lerch_neg,
    lerch_neg_cot_form,
    polylog_neg_closed,
    polylog_neg_stirling,
    polylog_neg_transf,
    sum_lerch_identity,
    sum_polylog_identity,
)
from .numcore import EvalResult, scaled_discrepancy, to_complex, unit_phase
from .quadrature import QuadratureSpec
from .trigderiv import (
    cot_deriv,
    cot_deriv_adamchik,
    csc_deriv,
    oracle_deriv,
    sec_deriv,
    tan_deriv,
)

__all__ = ["PropertyResult", "SUITES", "run_suite", "DEFAULT_TOL", "U_GRID", "random_z", "trig_points"]

U_GRID = [Fraction(-2), Fraction(-7, 3), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3)]
RAT_GRID = [Fraction(-3, 2), Fraction(-1, 3), Fraction(0), Fraction(2, 5), Fraction(1), Fraction(7, 4)]
HURWITZ_B = [0.25, 1 / 3, 0.4, 2 / 3, 0.7, 0.26 + 0.05j]

DEFAULT_TOL = {"exact": 0.0, "identities": 1e-9, "trig": 1e-8, "hurwitz": 1e-7}


@dataclass(frozen=True)
class PropertyResult:
    suite: str
    name: str
    passed: bool
    worst: float
    tol: float
    cases: int


def _exact_result(suite, name, pairs: Iterable) -> PropertyResult:
    worst, n = 0.0, 0
    for a, b in pairs:
        n += 1
        worst = max(worst, float(abs(Fraction(a) - Fraction(b))))
    return PropertyResult(suite, name, worst == 0.0, worst, 0.0, n)


def _float_result(suite, name, errors: Iterable[float], tol: float) -> PropertyResult:
    errs = list(errors)
    worst = max(errs) if errs else 0.0
    return PropertyResult(suite, name, bool(worst <= tol), worst, tol, len(errs))


def random_z(rng: np.random.Generator, n: int, min_dist: float = 0.3) -> List[complex]:
    """n complex points with modulus in [0.1, 3] and |z - 1| >= min_dist."""
    out = []
    while len(out) < n:
        z = complex(rng.uniform(0.1, 3.0) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
        if abs(z - 1) >= min_dist:
            out.append(z)
    return out


def _random_c(rng, n, half=2.0):
    return [complex(rng.uniform(-half, half), rng.uniform(-half, half)) for _ in range(n)]


def trig_points(rng: np.random.Generator, n: int, margin: float = 0.1):
    """(a, x, shift) with a x + shift at least ``margin`` from every multiple of pi/2."""
    pts = []
    while len(pts) < n:
        a, x, s = rng.uniform(0.5, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0)
        y = a * x + s
        r = (y / (math.pi / 2)) - round(y / (math.pi / 2))
        if abs(r) * math.pi / 2 >= margin:
            pts.append((a, x, s))
    return pts


def suite_exact(max_k: int = 15, **_) -> List[PropertyResult]:
    s = "exact"
    nmax = max(20, max_k)
    out = [
        _exact_result(s, "stirling2_recurrence_vs_explicit",
                      ((ex.stirling2(n, q), ex.stirling2_explicit(n, q)) for n in range(nmax + 1) for q in range(n + 1))),
        _exact_result(s, "stirling_binomial_identity",
                      (ex.stirling_binomial_identity(k, q, u) for k in range(max_k + 1) for q in range(k + 1) for u in U_GRID)),
        _exact_result(s, "stirling_weighted_sum",
                      ((ex.stirling_weighted_sum_lhs(k, q, u), ex.stirling_weighted_sum_rhs(k, q, u))
                       for k in range(1, min(max_k, 12) + 1) for q in range(1, k + 1) for u in U_GRID if u != 0)),
    ]

    def bern_pairs():
        for k in range(min(max_k, 12) + 1):
            bk = ex.bernoulli_poly(k)
            for u in RAT_GRID:
                for v in RAT_GRID:
                    rhs = ex.factorial(k) * sum(
                        ex.bernoulli_poly(j)(v) * u ** (k - j) / (ex.factorial(j) * ex.factorial(k - j)) for j in range(k + 1)
                    )
                    yield bk(u + v), rhs

    out.append(_exact_result(s, "bernoulli_shift_recurrence", bern_pairs()))
    out.append(_exact_result(s, "zeta_shift_identity",
                             (ex.zeta_shift_identity(k, u) for k in range(min(max_k, 10) + 1) for u in RAT_GRID)))
    out.append(_exact_result(s, "factorial_power_binomial",
                             (ex.factorial_power_binomial(x, y, k) for k in range(min(max_k, 8) + 1) for x in RAT_GRID for y in RAT_GRID)))
    return out


def suite_identities(max_k: int = 8, seed: int = 0, tol: Optional[float] = None, **_) -> List[PropertyResult]:
    s = "identities"
    tol = DEFAULT_TOL[s] if tol is None else tol
    rng = np.random.default_rng(seed)
    zs = random_z(rng, 25)
    us, vs = _random_c(rng, 25), _random_c(rng, 25)

    def pair_err(pairs):
        return (scaled_discrepancy(a, b) for a, b in pairs)

    out = [
        _float_result(s, "sum_polylog_identity",
                      pair_err(sum_polylog_identity(k, z, u) for k in range(max_k + 1) for z, u in zip(zs, us)), tol),
        _float_result(s, "sum_lerch_identity",
                      pair_err(sum_lerch_identity(k, z, u, v) for k in range(max_k + 1) for z, u, v in zip(zs, us, vs)), tol),
    ]

    def recurrence():
        for m in range(max_k + 1):
            for z, u in zip(zs, us):
                lhs = lerch_neg(m, z, u)
                nxt = lerch_neg(m, z, u + 1)
                rhs = EvalResult(u**m + z * nxt.value, max(nxt.condition, 1.0), "recurrence")
                yield scaled_discrepancy(lhs, rhs)

    out.append(_float_result(s, "lerch_recurrence", recurrence(), tol))
    out.append(_float_result(s, "lerch_polylog_reduction",
                             (scaled_discrepancy(EvalResult(z * lerch_neg(m, z, 1).value, lerch_neg(m, z, 1).condition, ""),
                                                 polylog_neg_closed(m, z))
                              for m in range(max_k + 1) for z in zs), tol))

    def cross():
        for m in range(max(max_k, 1) + 1):
            for z in zs[:20]:
                a, b = polylog_neg_stirling(m, z), polylog_neg_closed(m, z)
                yield scaled_discrepancy(a, b)
                if m >= 1:
                    c = polylog_neg_transf(m, z)
                    yield scaled_discrepancy(a, c)
                    yield scaled_discrepancy(b, c)

    out.append(_float_result(s, "polylog_cross_method", cross(), tol))

    bs = [complex(rng.uniform(0.05, 0.95), rng.uniform(-0.3, 0.3)) for _ in range(20)]

    def cot_vs_z():
        for k in range(1, max_k + 2):
            for b, u in zip(bs, us):
                yield scaled_discrepancy(lerch_neg_cot_form(k, b, u), lerch_neg(k - 1, unit_phase(b), u + 1))

    out.append(_float_result(s, "lerch_cot_form_vs_closed", cot_vs_z(), tol))

    def conj():
        for m in range(max_k + 1):
            for z, u in zip(zs, us):
                a = lerch_neg(m, z.conjugate(), u.conjugate())
                b = lerch_neg(m, z, u)
                yield scaled_discrepancy(a, EvalResult(to_complex(b.value).conjugate(), b.condition, ""))

    out.append(_float_result(s, "lerch_conjugate_symmetry", conj(), tol))
    return out


def suite_trig(max_k: int = 10, seed: int = 0, tol: Optional[float] = None, **_) -> List[PropertyResult]:
    s = "trig"
    tol = DEFAULT_TOL[s] if tol is None else tol
    rng = np.random.default_rng(seed)
    pts = trig_points(rng, 25)
    funcs: Dict[str, Callable] = {"cot": cot_deriv, "csc": csc_deriv, "tan": tan_deriv, "sec": sec_deriv}
    out = []
    residues = []
    for name, fn in funcs.items():
        errs = []
        for k in range(max_k + 1):
            for a, x, sh in pts:
                r = fn(k, a, x, sh)
                o = oracle_deriv(name, k, a, x, sh)
                errs.append(abs(r.real - o) / (max(abs(o), 1e-300) * r.condition))
                residues.append(abs(r.imag) / (1 + abs(r.real)))
        out.append(_float_result(s, f"{name}_vs_oracle", errs, tol))
    out.append(_float_result(s, "imaginary_residue", residues, 1e-10))
    out.append(_float_result(s, "adamchik_vs_polylog",
                             (scaled_discrepancy(cot_deriv_adamchik(k, a, x), cot_deriv(k, a, x, 0.0))
                              for k in range(1, max_k + 1) for a, x, _ in pts
                              if abs(math.sin(a * x)) > 0.1), 1e-10))
    out.append(_float_result(s, "tan_reflection",
                             (scaled_discrepancy(tan_deriv(k, a, x, 0.0),
                                                 EvalResult(-to_complex(cot_deriv(k, a, x, math.pi / 2).value), 1.0, ""))
                              for k in range(min(max_k, 8) + 1) for a, x, _ in pts
                              if abs(math.cos(a * x)) > 0.1), tol))
    return out


def suite_hurwitz(max_k: int = 6, tol: Optional[float] = None, quad: Optional[QuadratureSpec] = None, **_) -> List[PropertyResult]:
    s = "hurwitz"
    tol = DEFAULT_TOL[s] if tol is None else tol
    quad = quad or QuadratureSpec(tol=1e-10)
    ks = range(2, max(2, min(max_k, 6)) + 1)
    out = []
    methods = {
        "integral_v1": hurwitz_integral_v1,
        "elementary": hurwitz_elementary,
        "integral_v2": hurwitz_integral_v2,
        "analytic_final": hurwitz_analytic_final,
    }
    for name, fn in methods.items():
        errs = []
        for k in ks:
            for b in HURWITZ_B:
                ref = complex(hurwitz_series(k, b).value)
                val = complex(fn(k, b, quad).value)
                errs.append(abs(val - ref) / abs(ref))
        out.append(_float_result(s, f"{name}_vs_series", errs, tol))
    cross = []
    for k in ks:
        for b in HURWITZ_B:
            vals = [complex(fn(k, b, quad).value) for fn in methods.values()]
            cross.extend(abs(x - y) / abs(y) for i, x in enumerate(vals) for y in vals[i + 1:])
    out.append(_float_result(s, "method_cross_agreement", cross, min(tol, 1e-8)))

    shift = []
    for k in (2, 3, 4):
        for b in (0.3, 0.7, 0.26 + 0.05j):
            fns = dict(methods, series=lambda k, b, q: hurwitz_series(k, b))
            for fn in fns.values():
                lo, hi = complex(fn(k, b, quad).value), complex(fn(k, b + 1, quad).value)
                shift.append(abs(lo - hi - b ** (-k)) / abs(lo))
    out.append(_float_result(s, "hurwitz_shift", shift, tol))

    ends = []
    for k in ks:
        for b in HURWITZ_B:
            br = integral_v1_bracket(k, b)
            peak = float(np.max(np.abs(br(np.linspace(0.4, 0.6, 41)))))
            ends.append(float(np.max(np.abs(br(np.array([1e-6, 1 - 1e-6]))))) / peak)
    out.append(_float_result(s, "integral_v1_endpoint_cancellation", ends, 1e-4))

    half = []
    for k in range(2, 9):
        val = complex(hurwitz_half_integer(k, 0.5, quad).value)
        ref = (2**k - 1) * complex(hurwitz_series(k, 1).value)
        half.append(abs(val - ref) / abs(ref))
    out.append(_float_result(s, "half_integer_closure", half, min(tol, 1e-9)))
    return out


SUITES: Dict[str, Callable[..., List[PropertyResult]]] = {
    "exact": suite_exact,
    "identities": suite_identities,
    "trig": suite_trig,
    "hurwitz": suite_hurwitz,
}


def run_suite(name: str, **kwargs) -> List[PropertyResult]:
    if name == "all":
        out = []
        for suite in SUITES.values():
            out.extend(suite(**kwargs))
        return out
    return SUITES[name](**kwargs)
