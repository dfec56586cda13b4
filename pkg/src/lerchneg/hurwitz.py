"""Hurwitz zeta zeta(k, b) at integer k >= 2 from integrals against cot(pi u).

All representations share the outer part

    1/(2 b^k) + (2 pi i)^k/(4 (k-1)!) (z + z^2 Phi(z, 1-k, 2) + Li_{1-k}(z)),

with z = exp(-2 pi i b), and differ in the integrand. ``hurwitz_series``
is the defining series and serves as the oracle.
"""
from __future__ import annotations

import cmath
import enum
import math
from typing import Callable

import numpy as np

from .exactmath import bernoulli_number, factorial
from .neglerch import (
    cot_weights,
    lerch_neg,
    lerch_weights,
    polylog_neg_closed,
)
from .numcore import (
    DOUBLE,
    ConvergenceError,
    DomainError,
    EvalResult,
    EvaluationOverflow,
    PrecisionConfig,
    condition_of,
    cot_c,
    unit_phase,
)
from .quadrature import QuadratureSpec, integrate_open

__all__ = [
    "HurwitzMethod",
    "hurwitz_series",
    "hurwitz_integral_v1",
    "hurwitz_elementary",
    "hurwitz_half_integer",
    "hurwitz_integral_v2",
    "hurwitz_analytic_final",
    "hurwitz_zeta",
    "genfunc_f",
    "integral_v1_bracket",
]

IM_CAP = 1.0
_EM_TERMS = 8
_SERIES_MAX_N = 1 << 22


class HurwitzMethod(str, enum.Enum):
    SERIES = "series"
    INTEGRAL_V1 = "integral_v1"
    ELEMENTARY = "elementary"
    HALF_INTEGER = "half_integer"
    INTEGRAL_V2 = "integral_v2"
    ANALYTIC_FINAL = "analytic_final"
    GENFUNC = "genfunc"


def hurwitz_series(k, b, tol: float = 1e-12) -> EvalResult:
    """sum_{n>=0} (n+b)^(-k) by direct summation plus an Euler-Maclaurin tail.

    The head runs to N; the tail from N on is the integral (N+b)^(1-k)/(k-1)
    plus half the first term plus Bernoulli corrections. N doubles until the
    last correction is below ``tol`` relative to the sum.
    """
    k, b = complex(k), complex(b)
    if k.real <= 1:
        raise DomainError(f"the series needs re(k) > 1, got {k}")
    if b.imag == 0 and b.real <= 0 and b.real == round(b.real):
        raise DomainError(f"b = {b.real} is a non-positive integer")
    n = 16 + int(max(0.0, -b.real)) + int(abs(k))
    while n <= _SERIES_MAX_N:
        x = n + b
        head = (np.arange(n) + b) ** (-k)
        tail = [x ** (1 - k) / (k - 1), x ** (-k) / 2]
        # rising factorial k (k+1) ... (k+r-1), times x^(-k-r), r = 2p-1
        deriv = -k * x ** (-k - 1)  # f'(x)
        last = 0j
        for p in range(1, _EM_TERMS + 1):
            r = 2 * p - 1
            if p > 1:
                deriv = deriv * (-(k + r - 2)) * (-(k + r - 1)) / (x * x)
            last = -float(bernoulli_number(2 * p)) / math.factorial(2 * p) * deriv
            tail.append(last)
        terms = list(head) + tail
        total = complex(
            math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
        )
        if abs(last) <= 0.1 * tol * abs(total):
            return EvalResult(total, condition_of(head, total), HurwitzMethod.SERIES.value)
        n *= 2
    raise ConvergenceError(f"Hurwitz series for k={k}, b={b} did not converge")


def _check_k(k) -> int:
    if int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    return int(k)


def _check_b(b: complex, config: PrecisionConfig, half: bool, im_cap: float) -> None:
    if abs(b - round(b.real)) < config.guard:
        raise DomainError(f"b = {b} is an integer")
    if half and abs(b - (math.floor(b.real) + 0.5)) < config.guard:
        raise DomainError(f"b = {b} is a half-integer")
    if abs(b.imag) > im_cap:
        raise EvaluationOverflow(f"|im(b)| = {abs(b.imag)} exceeds the cap {im_cap}")


def _outer(k: int, b: complex, z: complex, config: PrecisionConfig):
    phi2 = lerch_neg(k - 1, z, 2, config)
    li = polylog_neg_closed(k - 1, z, config)
    bracket = z + z * z * complex(phi2.value) + complex(li.value)
    val = 1 / (2 * b**k) + (2j * math.pi) ** k / (4 * factorial(k - 1)) * bracket
    return val, max(phi2.condition, li.condition)


def _cot(u):
    return 1 / np.tan(np.pi * u)


def _phase(b: complex, u):
    # exp(-2 pi i b u) for array u
    return np.exp(-2j * np.pi * b * u)


def _assemble(outer, cond, prefactor, quad, method: str) -> EvalResult:
    integral = prefactor * quad.value
    value = outer + integral
    # int|f| scaled by the prefactor, relative to the final value: a near-zero
    # integral that barely moves the sum should not inflate the estimate
    quad_mass = abs(prefactor) * quad.condition * abs(quad.value)
    quad_cond = quad_mass / abs(value) if value != 0 else math.inf
    cond = max(cond, quad_cond, condition_of([outer, integral], value))
    return EvalResult(value, cond, method)


def integral_v1_bracket(k: int, b, config: PrecisionConfig = DOUBLE) -> Callable:
    """The factor multiplying cot(pi u) in the first integral representation.

    u^(k-1) e^(-2 pi i b u) - z + e^(-2 pi i b (u+1)) Phi(z, 1-k, u+1) - z^2 Phi(z, 1-k, 2).
    Vanishes at u = 0 and u = 1. Accepts and returns arrays.
    """
    k = _check_k(k)
    b = complex(b)
    z = complex(unit_phase(b, config))
    phi2 = complex(lerch_neg(k - 1, z, 2, config).value)

    weights = lerch_weights(k - 1, z)
    j = np.arange(k)

    def bracket(u, with_magnitude=False):
        u = np.asarray(u, dtype=float)
        e = _phase(b, u)
        powers = (j[:, None] + u[None, :] + 1) ** (k - 1)
        value = u ** (k - 1) * e - z + e * z * (weights @ powers) - z * z * phi2
        if not with_magnitude:
            return value
        mag = (np.abs(u ** (k - 1) * e) + abs(z) + np.abs(e * z) * (np.abs(weights) @ np.abs(powers))
               + abs(z * z * phi2))
        return value, mag

    return bracket


def hurwitz_integral_v1(
    k: int, b, spec: QuadratureSpec = QuadratureSpec(), config: PrecisionConfig = DOUBLE,
    im_cap: float = IM_CAP,
) -> EvalResult:
    k = _check_k(k)
    b = complex(b)
    _check_b(b, config, False, im_cap)
    z = complex(unit_phase(b, config))
    outer, cond = _outer(k, b, z, config)
    bracket = integral_v1_bracket(k, b, config)
    def integrand(u):
        value, mag = bracket(u, with_magnitude=True)
        cot = _cot(u)
        return value * cot, mag * np.abs(cot)

    quad = integrate_open(integrand, spec, vectorized=True)
    pref = -1j * (2j * math.pi) ** k / (2 * factorial(k - 1))
    return _assemble(outer, cond, pref, quad, HurwitzMethod.INTEGRAL_V1.value)


def hurwitz_elementary(
    k: int, b, spec: QuadratureSpec = QuadratureSpec(), config: PrecisionConfig = DOUBLE,
    im_cap: float = IM_CAP,
) -> EvalResult:
    """Elementary-function form: Phi and Li replaced by their cotangent double sums.

    Written in the compact shape where the q = j = 0 term (the (-1)!/(-1)!
    convention) carries the lone z and the u^(k-1) e^(-2 pi i b u) - z terms.
    """
    k = _check_k(k)
    b = complex(b)
    _check_b(b, config, False, im_cap)
    z = complex(unit_phase(b, config))
    c = (1 + 1j * complex(cot_c(math.pi * b, config))) / 2
    d = cot_weights(c, k)
    j = np.arange(k + 1)
    jp = j.astype(float) ** (k - 1)
    jp[0] = 0.0 if k > 1 else 1.0
    outer_terms = d * (z * (j + 1.0) ** (k - 1) + jp)
    outer_sum = complex(np.sum(outer_terms))
    outer = 1 / (2 * b**k) + (2j * math.pi) ** k / (4 * factorial(k - 1)) * outer_sum
    cond = condition_of(outer_terms, outer_sum)

    def integrand(u):
        e = _phase(b, u)
        powers = (j[:, None] + u[None, :]) ** (k - 1)
        left = e[None, :] * powers
        right = z * ((j + 1.0) ** (k - 1))[:, None]
        cot = _cot(u)
        mag = np.abs(d) @ (np.abs(left) + np.abs(right))
        return (d @ (left - right)) * cot, mag * np.abs(cot)

    quad = integrate_open(integrand, spec, vectorized=True)
    pref = -1j * (2j * math.pi) ** k / (2 * factorial(k - 1))
    return _assemble(outer, cond, pref, quad, HurwitzMethod.ELEMENTARY.value)


def hurwitz_half_integer(
    k: int, b, spec: QuadratureSpec = QuadratureSpec(), config: PrecisionConfig = DOUBLE
) -> EvalResult:
    """b = n + 1/2, where exp(-2 pi i b) = -1 and cot(pi b) = 0 exactly."""
    k = _check_k(k)
    b = complex(b)
    if b.imag != 0 or b.real < 0.5 or (b.real - 0.5) != round(b.real - 0.5):
        raise DomainError(f"b = {b} is not a non-negative half-odd-integer")
    b = b.real
    d = cot_weights(0.5, k)[1:]
    j = np.arange(1, k + 1)
    outer_terms = d * ((j + 1.0) ** (k - 1) - j.astype(float) ** (k - 1))
    outer_sum = 1 + complex(np.sum(outer_terms))
    outer = 1 / (2 * b**k) - (2j * math.pi) ** k / (4 * factorial(k - 1)) * outer_sum
    cond = condition_of(list(outer_terms) + [1], outer_sum)

    def integrand(u):
        e = _phase(b, u)
        powers = (j[:, None] + u[None, :]) ** (k - 1)
        left = e[None, :] * powers
        right = ((j + 1.0) ** (k - 1))[:, None]
        cot = _cot(u)
        value = u ** (k - 1) * e + 1 + d @ (left + right)
        mag = np.abs(u ** (k - 1) * e) + 1 + np.abs(d) @ (np.abs(left) + right)
        return value * cot, mag * np.abs(cot)

    quad = integrate_open(integrand, spec, vectorized=True)
    pref = -1j * (2j * math.pi) ** k / (2 * factorial(k - 1))
    return _assemble(outer, cond, pref, quad, HurwitzMethod.HALF_INTEGER.value)


def hurwitz_integral_v2(
    k: int, b, spec: QuadratureSpec = QuadratureSpec(), config: PrecisionConfig = DOUBLE,
    im_cap: float = IM_CAP,
) -> EvalResult:
    """Integrand weighted by Phi(exp(-4 pi i b), 1-j, 1/2), j = 1..k."""
    k = _check_k(k)
    b = complex(b)
    _check_b(b, config, True, im_cap)
    z = complex(unit_phase(b, config))
    outer, cond = _outer(k, b, z, config)
    zz = z * z
    phis = [lerch_neg(j - 1, zz, 0.5, config) for j in range(1, k + 1)]
    scale = np.array([2**j / (factorial(j - 1) * factorial(k - j)) for j in range(1, k + 1)])
    coef = scale * np.array([complex(p.value) for p in phis])
    # absolute size of each Phi sum; some Phi values vanish exactly (b = 1/4)
    mass = scale * np.array(
        [np.abs(lerch_weights(j - 1, zz)) @ (np.arange(j) + 0.5) ** (j - 1) for j in range(1, k + 1)]
    )
    sign = np.array([(-1) ** (k - j) for j in range(1, k + 1)])
    expo = np.array([k - j for j in range(1, k + 1)])

    def integrand(u):
        e = _phase(b, u)
        upow = u[None, :] ** expo[:, None]
        inner = upow * (e[None, :] - sign[:, None] / e[None, :])
        cot = _cot(u)
        mag = mass @ (upow * (np.abs(e) + 1 / np.abs(e))[None, :])
        return (coef @ inner) * cot, mag * np.abs(cot)

    quad = integrate_open(integrand, spec, vectorized=True)
    pref = -1j * (2j * math.pi) ** k * z / 4
    return _assemble(outer, cond, pref, quad, HurwitzMethod.INTEGRAL_V2.value)


def hurwitz_analytic_final(
    k: int, b, spec: QuadratureSpec = QuadratureSpec(), config: PrecisionConfig = DOUBLE,
    im_cap: float = IM_CAP,
) -> EvalResult:
    """Integrand with Phi(exp(-4 pi i b), 1-k, (1 +- u)/2)."""
    k = _check_k(k)
    b = complex(b)
    _check_b(b, config, True, im_cap)
    z = complex(unit_phase(b, config))
    outer, cond = _outer(k, b, z, config)
    zz = z * z
    weights = lerch_weights(k - 1, zz)
    j = np.arange(k)

    def integrand(u):
        e = _phase(b, u)
        pp = (j[:, None] + (u[None, :] + 1) / 2) ** (k - 1)
        pm = (j[:, None] + (1 - u[None, :]) / 2) ** (k - 1)
        aw = np.abs(weights)
        cot = _cot(u)
        value = e * (weights @ pp) - (weights @ pm) / e
        mag = np.abs(e) * (aw @ np.abs(pp)) + (aw @ np.abs(pm)) / np.abs(e)
        return value * cot, mag * np.abs(cot)

    quad = integrate_open(integrand, spec, vectorized=True)
    pref = -1j * (4j * math.pi) ** k * z / (4 * factorial(k - 1))
    return _assemble(outer, cond, pref, quad, HurwitzMethod.ANALYTIC_FINAL.value)


def genfunc_f(
    x, b, spec: QuadratureSpec = QuadratureSpec(), config: PrecisionConfig = DOUBLE
) -> EvalResult:
    """f(x) = sum_{k>=2} x^k zeta(k, b), in closed form with one integral."""
    x, b = complex(x), complex(b)
    _check_b(b, config, True, math.inf)
    if abs(x - b) < config.guard:
        raise DomainError("x = b is a pole of the generating function")
    s2 = cmath.sin(2 * math.pi * (x - b))
    if abs(s2) < config.guard:
        raise DomainError(f"sin(2 pi (x - b)) vanishes at x = {x}, b = {b}")
    if x == 0:
        return EvalResult(0j, 1.0, HurwitzMethod.GENFUNC.value)
    sb2 = cmath.sin(2 * math.pi * b)

    def integrand(u):
        return (np.sin(2 * np.pi * u * (x - b)) / s2 - np.sin(2 * np.pi * b * u) / sb2) * _cot(u)

    quad = integrate_open(integrand, spec, vectorized=True)
    parts = [
        -x * x / (2 * b * (x - b)),
        -math.pi * x * cmath.sin(math.pi * x) / (2 * cmath.sin(math.pi * b) * cmath.sin(math.pi * (x - b))),
        -math.pi * x * quad.value,
    ]
    value = sum(parts)
    cond = max(quad.condition, condition_of(parts, value))
    return EvalResult(value, cond, HurwitzMethod.GENFUNC.value)


_DISPATCH = {
    HurwitzMethod.INTEGRAL_V1: hurwitz_integral_v1,
    HurwitzMethod.ELEMENTARY: hurwitz_elementary,
    HurwitzMethod.INTEGRAL_V2: hurwitz_integral_v2,
    HurwitzMethod.ANALYTIC_FINAL: hurwitz_analytic_final,
}


def hurwitz_zeta(
    k, b, method="series", spec: QuadratureSpec = QuadratureSpec(),
    config: PrecisionConfig = DOUBLE, tol: float = 1e-12,
) -> EvalResult:
    """zeta(k, b) by the named method."""
    method = HurwitzMethod(method)
    if method is HurwitzMethod.SERIES:
        return hurwitz_series(k, b, tol)
    if method is HurwitzMethod.HALF_INTEGER:
        return hurwitz_half_integer(k, b, spec, config)
    if method is HurwitzMethod.GENFUNC:
        raise ValueError("the generating function is evaluated with genfunc_f, not per order k")
    return _DISPATCH[method](k, b, spec, config)
