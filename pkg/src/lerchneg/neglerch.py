"""Lerch transcendent and polylogarithm at negative integer order.

Order is written ``m >= 0`` for Li_{-m} and Phi(., -m, .). The functions
taking a ``b`` parameter (``z = exp(-2 pi i b)``) keep the ``k = m + 1``
indexing of the cotangent forms, so ``lerch_neg_cot_form(k, b, u)`` returns
Phi(z, -k+1, u+1).

Every evaluator flattens its finite double sum into one correctly rounded
sum and reports the cancellation condition of that sum.
"""
from __future__ import annotations

import math
from math import comb
from fractions import Fraction
from typing import List, Tuple

import mpmath
import numpy as np

from .exactmath import factorial, stirling2
from .numcore import (
    DOUBLE,
    ConvergenceError,
    DomainError,
    EvalResult,
    PrecisionConfig,
    backend,
    condition_of,
    cot_c,
    unit_phase,
)

__all__ = [
    "polylog_neg_stirling",
    "polylog_neg_closed",
    "polylog_neg_cot_form",
    "polylog_neg_transf",
    "lerch_neg",
    "lerch_neg_cot_form",
    "lerch_pos_series",
    "series_inner_sum",
    "sum_polylog_identity",
    "sum_lerch_identity",
    "lerch_weights",
    "lerch_neg_array",
    "cot_weights",
]

POS_SERIES_MARGIN = 1e-3
POS_SERIES_CAP = 10000


def _check_order(m: int, low: int = 0) -> None:
    if int(m) != m or m < low:
        raise ValueError(f"order must be an integer >= {low}, got {m!r}")


def _check_z(z, config: PrecisionConfig) -> None:
    if abs(z - 1) < config.guard:
        raise DomainError(f"z = {complex(z)} is at the pole z = 1")


def _check_b(b, config: PrecisionConfig) -> None:
    if abs(b - round(b.real)) < config.guard:
        raise DomainError(f"b = {complex(b)} is an integer; the cotangent form is undefined")


def _finish(be, terms: List, scale, method: str) -> EvalResult:
    total = be.fsum(terms) if terms else be.num(0)
    return EvalResult(scale * total, condition_of(terms, total), method)


def polylog_neg_stirling(m: int, z, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Li_{-m}(z) = sum_{q=1}^{m+1} (q-1)! S(m+1, q) (z/(1-z))^q."""
    _check_order(m)
    be = backend(config)
    z = be.num(z)
    _check_z(z, config)
    w = z / (1 - z)
    terms = []
    p = be.num(1)
    for q in range(1, m + 2):
        p = p * w
        terms.append(factorial(q - 1) * stirling2(m + 1, q) * p)
    return _finish(be, terms, 1, "polylog_stirling")


def _exact_real(x):
    """x as a Fraction when it is a real number (every finite float is), else None."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x) if math.isfinite(x) else None
    if isinstance(x, complex):
        return _exact_real(x.real) if x.imag == 0 else None
    if isinstance(x, mpmath.mpc):
        return _exact_real(x.real) if x.imag == 0 else None
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        return Fraction(man) * Fraction(2) ** exp
    return None


def _nested_terms(be, factors, inner, values) -> List:
    """Terms of sum_q factors[q] * sum_{(j, c) in inner(q)} c * values[j].

    ``factors`` is a list of (q, floating factor) and ``c`` are integers. If
    every value is a Fraction, each inner sum is formed exactly and rounded
    once, so only the outer sum is subject to cancellation; otherwise the
    double sum is flattened into one list of products.
    """
    exact = all(isinstance(v, Fraction) for v in values if v is not None)
    terms = []
    for q, fq in factors:
        if exact:
            s = sum((c * values[j] for j, c in inner(q)), Fraction(0))
            terms.append(be.from_fraction(s) * fq)
        else:
            terms.extend(c * values[j] * fq for j, c in inner(q))
    return terms


def _powers(be, c, qs):
    out, p = [], be.num(1)
    for q in range(qs[-1] + 1):
        if q >= qs[0]:
            out.append((q, p))
        p = p * c
    return out


def _cot_inner(q):
    # (q-1)!/((j-1)!(q-j)!) (-1)^j = (-1)^j C(q-1, j-1), j = 1..q
    return ((j, -comb(q - 1, j - 1) if j % 2 else comb(q - 1, j - 1)) for j in range(1, q + 1))


def _cot_sum(c, k: int, values, be) -> List:
    # terms of sum_{q=1}^{k} (q-1)! c^q sum_{j=1}^{q} (-1)^j values[j] / ((j-1)! (q-j)!)
    return _nested_terms(be, _powers(be, c, [1, k]), _cot_inner, values)


def _shifted_powers(be, u, m: int, n: int) -> List:
    """[(j+u)^m for j in 0..n], exact Fractions when u is real."""
    ue = _exact_real(u)
    if ue is not None:
        return [(j + ue) ** m for j in range(n + 1)]
    return [(j + u) ** m for j in range(n + 1)]


def polylog_neg_closed(m: int, z, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Li_{-m}(z) via the double sum with inner j^m powers.

    The cotangent factor (1 + i cot(pi b))/2 is written as z/(z-1), which is
    the same number for z = exp(-2 pi i b) and stays defined for every z != 1.
    """
    _check_order(m)
    be = backend(config)
    z = be.num(z)
    _check_z(z, config)
    c = z / (z - 1)
    terms = _cot_sum(c, m + 1, _shifted_powers(be, 0, m, m + 1), be)
    return _finish(be, terms, 1, "polylog_closed")


def polylog_neg_cot_form(k: int, b, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Li_{-k+1}(exp(-2 pi i b)) with the factor (1 + i cot(pi b))/2 taken literally."""
    _check_order(k, 1)
    be = backend(config)
    b = be.num(b)
    _check_b(b, config)
    c = (1 + 1j * cot_c(be.pi * b, config)) / 2
    terms = _cot_sum(c, k, _shifted_powers(be, 0, k - 1, k), be)
    return _finish(be, terms, 1, "polylog_cot")


def polylog_neg_transf(m: int, z, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Li_{-m}(z) = 1/(1-z) sum_{q=1}^{m} q! c^q sum_j (-1)^j j^(m-1)/((j-1)!(q-j)!), c = z/(z-1)."""
    _check_order(m, 1)
    be = backend(config)
    z = be.num(z)
    _check_z(z, config)
    c = z / (z - 1)

    def inner(q):
        return ((j, q * c_) for j, c_ in _cot_inner(q))

    terms = _nested_terms(be, _powers(be, c, [1, m]), inner, _shifted_powers(be, 0, m - 1, m))
    return _finish(be, terms, 1 / (1 - z), "polylog_transf")


def lerch_neg(m: int, z, u, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Phi(z, -m, u) = -1/(z-1) sum_{q=0}^{m} q! w^q sum_{j=0}^{q} (-1)^j (j+u)^m / (j!(q-j)!).

    ``w = z/(z-1)``. The q! is folded into the binomial C(q, j).
    """
    _check_order(m)
    be = backend(config)
    z, u = be.num(z), be.num(u)
    _check_z(z, config)
    w = z / (z - 1)

    def inner(q):
        return ((j, -comb(q, j) if j % 2 else comb(q, j)) for j in range(q + 1))

    terms = _nested_terms(be, _powers(be, w, [0, m]), inner, _shifted_powers(be, u, m, m))
    return _finish(be, terms, -1 / (z - 1), "lerch_closed")


def lerch_neg_cot_form(k: int, b, u, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Phi(exp(-2 pi i b), -k+1, u+1) in the cotangent parameterization."""
    _check_order(k, 1)
    be = backend(config)
    b, u = be.num(b), be.num(u)
    _check_b(b, config)
    c = (1 + 1j * cot_c(be.pi * b, config)) / 2
    terms = _cot_sum(c, k, _shifted_powers(be, u, k - 1, k), be)
    return _finish(be, terms, 1 / unit_phase(b, config), "lerch_cot")


def series_inner_sum(q: int, power: int, u, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """sum_{j=0}^{q} (-1)^j (j+u)^power / (j! (q-j)!), summed directly.

    For ``power = m >= 0`` this is a q-th finite difference of a degree-m
    polynomial and vanishes for q > m.
    """
    be = backend(config)
    u = be.num(u)
    terms = [
        (-1) ** j * (j + u) ** power / (factorial(j) * factorial(q - j)) for j in range(q + 1)
    ]
    return _finish(be, terms, 1, "finite_difference")


def _bell_complete(ys: List) -> object:
    # Complete Bell polynomial Y_n(y_1..y_n), n = len(ys):
    # Y_{n+1} = sum_{i=0}^{n} C(n, i) Y_{n-i} y_{i+1}
    Y = [1]
    for n in range(len(ys)):
        Y.append(sum(comb(n, i) * Y[n - i] * ys[i] for i in range(n + 1)))
    return Y[-1]


def lerch_pos_series(
    k: int, z, u, tol: float = 1e-12, config: PrecisionConfig = DOUBLE
) -> EvalResult:
    """Phi(z, k, u) for integer k >= 1 from the series in powers of w = z/(z-1).

    Term q is w^q times sum_j (-1)^j C(q,j) (j+u)^(-k). That alternating sum
    is evaluated without cancellation as

        q!/prod_{i=0}^{q}(u+i) * Y_{k-1}(0! S_1, 1! S_2, ...) / (k-1)!,

    where S_r = sum_{i=0}^{q} (u+i)^(-r) and Y is the complete Bell
    polynomial; this is (-1)^(k-1)/(k-1)! times the (k-1)-th u-derivative of
    the k = 1 closed form.
    """
    _check_order(k, 1)
    be = backend(config)
    z, u = be.num(z), be.num(u)
    _check_z(z, config)
    ur = complex(u)
    if ur.imag == 0 and ur.real <= 0 and ur.real == round(ur.real):
        raise DomainError(f"u = {ur.real} is a non-positive integer")
    w = z / (z - 1)
    if abs(w) >= 1 - POS_SERIES_MARGIN:
        raise DomainError(f"|z/(z-1)| = {float(abs(w)):.6g} is outside the convergence disc")
    scale_k = factorial(k - 1)
    sums = [be.num(0)] * k  # sums[r] = S_{r}, r = 1..k-1
    prod = 1 / u  # q!/prod_{i<=q}(u+i) at q = 0
    wq = be.num(1)
    terms = []
    running = be.num(0)  # stopping test only; the result is re-summed exactly
    small = 0
    for q in range(POS_SERIES_CAP):
        if q:
            prod = prod * q / (u + q)
            wq = wq * w
        inv = 1 / (u + q)
        ip = be.num(1)
        for r in range(1, k):
            ip = ip * inv
            sums[r] = sums[r] + ip
        ys = [math.factorial(r - 1) * sums[r] for r in range(1, k)]
        term = wq * prod * _bell_complete(ys) / scale_k
        terms.append(term)
        running = running + term
        if abs(term) <= tol * abs(running):
            small += 1
            if small >= 2:
                return _finish(be, terms, -1 / (z - 1), "lerch_pos_series")
        else:
            small = 0
    raise ConvergenceError(f"positive-order Lerch series did not reach tol={tol} in {POS_SERIES_CAP} terms")


def _combine(parts: List[EvalResult], coeffs: List, be, method: str) -> EvalResult:
    terms = [c * p.value for c, p in zip(coeffs, parts)]
    total = be.fsum(terms)
    cond = max([condition_of(terms, total)] + [p.condition for p in parts])
    return EvalResult(total, cond, method)


def sum_polylog_identity(k: int, z, u, config: PrecisionConfig = DOUBLE) -> Tuple[EvalResult, EvalResult]:
    """(sum_j Li_{-j}(z) u^(k-j)/(j!(k-j)!), z Phi(z, -k, u+1)/k!)."""
    _check_order(k)
    be = backend(config)
    z, u = be.num(z), be.num(u)
    parts = [polylog_neg_closed(j, z, config) for j in range(k + 1)]
    coeffs = [u ** (k - j) / (factorial(j) * factorial(k - j)) for j in range(k + 1)]
    lhs = _combine(parts, coeffs, be, "sum_polylog")
    phi = lerch_neg(k, z, u + 1, config)
    rhs = EvalResult(z * phi.value / factorial(k), phi.condition, "lerch_closed")
    return lhs, rhs


def sum_lerch_identity(k: int, z, u, v, config: PrecisionConfig = DOUBLE) -> Tuple[EvalResult, EvalResult]:
    """(sum_j Phi(z,-j,v) u^(k-j)/(j!(k-j)!), Phi(z, -k, u+v)/k!)."""
    _check_order(k)
    be = backend(config)
    z, u, v = be.num(z), be.num(u), be.num(v)
    parts = [lerch_neg(j, z, v, config) for j in range(k + 1)]
    coeffs = [u ** (k - j) / (factorial(j) * factorial(k - j)) for j in range(k + 1)]
    lhs = _combine(parts, coeffs, be, "sum_lerch")
    phi = lerch_neg(k, z, u + v, config)
    rhs = EvalResult(phi.value / factorial(k), phi.condition, "lerch_closed")
    return lhs, rhs


# Array forms for quadrature integrands. The q-sum is collapsed into one
# scalar weight per j, so each node costs a single dot product.

def lerch_weights(m: int, z) -> "np.ndarray":
    """c_j with Phi(z, -m, u) = sum_j c_j (j+u)^m, j = 0..m."""
    z = complex(z)
    w = z / (z - 1)
    wp = [w**q for q in range(m + 1)]
    c = [(-1) ** j * sum(comb(q, j) * wp[q] for q in range(j, m + 1)) for j in range(m + 1)]
    return -np.array(c, dtype=complex) / (z - 1)


def lerch_neg_array(m: int, z, u) -> "np.ndarray":
    """Phi(z, -m, u) for an array of u at double precision."""
    u = np.asarray(u, dtype=complex)
    j = np.arange(m + 1)
    return lerch_weights(m, z) @ (j[:, None] + u[None, :]) ** m


def cot_weights(c, k: int) -> "np.ndarray":
    """d_j, j = 0..k, with sum_{q=1}^{k} (q-1)! c^q sum_{j=1}^{q} (-1)^j f(j)/((j-1)!(q-j)!) = sum_{j>=1} d_j f(j).

    d_0 = 1 stands for the q = j = 0 term of the compact form that uses the
    convention (-1)!/(-1)! = 1; callers that do not want it slice it off.
    """
    c = complex(c)
    cp = [c**q for q in range(k + 1)]
    d = [1 + 0j]
    for j in range(1, k + 1):
        d.append((-1) ** j * sum(comb(q - 1, j - 1) * cp[q] for q in range(j, k + 1)))
    return np.array(d, dtype=complex)
