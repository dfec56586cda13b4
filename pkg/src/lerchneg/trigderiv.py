"""k-th derivatives of cot, csc, tan and sec through negative-order Li and Phi.

Each derivative is returned as the complex value the formula produces; the
imaginary part should vanish for real arguments and is left in place as an
accuracy diagnostic. ``cot_poly`` and ``csc_poly`` give exact polynomial
oracles in cot(y).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Tuple

from .exactmath import factorial, stirling2
from .neglerch import lerch_neg, polylog_neg_closed
from .numcore import (
    DOUBLE,
    DomainError,
    EvalResult,
    PrecisionConfig,
    backend,
    condition_of,
)

__all__ = [
    "PolyKind",
    "CotPolynomial",
    "cot_poly",
    "csc_poly",
    "cot_deriv_adamchik",
    "cot_deriv",
    "csc_deriv",
    "tan_deriv",
    "sec_deriv",
    "exp_ratio_deriv_at_zero",
    "oracle_deriv",
]


class PolyKind(str, enum.Enum):
    COT = "poly-in-cot"
    CSC = "csc-times-poly-in-cot"


@dataclass(frozen=True)
class CotPolynomial:
    """Integer polynomial in c = cot(y), optionally times csc(y)."""

    kind: PolyKind
    coefficients: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, c: float) -> float:
        acc = 0.0
        for a in reversed(self.coefficients):
            acc = acc * c + a
        return acc

    def derivative(self) -> "CotPolynomial":
        """d/dy, using cot' = -1 - cot^2 and csc' = -csc cot."""
        p = self.coefficients
        dp = [i * p[i] for i in range(1, len(p))]
        # -(1 + c^2) dP/dc
        out = [0] * (len(p) + 1)
        for i, a in enumerate(dp):
            out[i] -= a
            out[i + 2] -= a
        if self.kind is PolyKind.CSC:
            for i, a in enumerate(p):
                out[i + 1] -= a
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return CotPolynomial(self.kind, tuple(out))


def cot_poly(k: int) -> CotPolynomial:
    """P_k with d^k cot(y)/dy^k = P_k(cot y)."""
    p = CotPolynomial(PolyKind.COT, (0, 1))
    for _ in range(k):
        p = p.derivative()
    return p


def csc_poly(k: int) -> CotPolynomial:
    """Q_k with d^k csc(y)/dy^k = csc(y) Q_k(cot y)."""
    p = CotPolynomial(PolyKind.CSC, (1,))
    for _ in range(k):
        p = p.derivative()
    return p


def oracle_deriv(func: str, k: int, a: float, x: float, shift: float = 0.0) -> float:
    """d^k f(a x + shift)/dx^k from the exact polynomials, f in cot/csc/tan/sec.

    tan(y) = -cot(y + pi/2) and sec(y) = csc(y + pi/2), so the tan and sec
    oracles evaluate the same polynomials at cot(y + pi/2) = -tan(y).
    """
    y = a * x + shift
    scale = a**k
    if func == "cot":
        return scale * cot_poly(k)(math.cos(y) / math.sin(y))
    if func == "csc":
        return scale * csc_poly(k)(math.cos(y) / math.sin(y)) / math.sin(y)
    if func == "tan":
        return -scale * cot_poly(k)(-math.tan(y))
    if func == "sec":
        return scale * csc_poly(k)(-math.tan(y)) / math.cos(y)
    raise ValueError(f"unknown function {func!r}")


def _check_sin(y: float, config: PrecisionConfig) -> None:
    if abs(math.sin(y)) < config.guard:
        raise DomainError(f"sin({y}) vanishes")


def _check_cos(y: float, config: PrecisionConfig) -> None:
    if abs(math.cos(y)) < config.guard:
        raise DomainError(f"cos({y}) vanishes")


def _check_k(k: int, low: int) -> None:
    if int(k) != k or k < low:
        raise ValueError(f"derivative order must be an integer >= {low}")


def cot_deriv_adamchik(k: int, a: float, x: float, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """(2ia)^k (-i + cot ax) sum_{q=1}^{k} q! S(k,q) ((-1 + i cot ax)/2)^q."""
    _check_k(k, 1)
    y = a * x
    _check_sin(y, config)
    be = backend(config)
    y = be.real(y)
    c = be.cos(y) / be.sin(y)
    r = (-1 + 1j * c) / 2
    terms = []
    p = be.num(1)
    for q in range(1, k + 1):
        p = p * r
        terms.append(factorial(q) * stirling2(k, q) * p)
    s = be.fsum(terms)
    value = (2j * a) ** k * (-1j + c) * s
    return EvalResult(value, condition_of(terms, s), "cot_adamchik")


def _unit(y, be):
    return be.exp(1j * be.real(y))


def cot_deriv(k: int, a: float, x: float, shift: float = 0.0, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """-i delta_{0k} - 2i (2ia)^k Li_{-k}(exp(2i(ax + shift)))."""
    _check_k(k, 0)
    y = a * x + shift
    _check_sin(y, config)
    be = backend(config)
    e = _unit(y, be)
    li = polylog_neg_closed(k, e * e, config)
    value = -2j * (2j * a) ** k * li.value
    if k == 0:
        value = value - 1j
    return EvalResult(value, li.condition, "cot_polylog")


def csc_deriv(k: int, a: float, x: float, shift: float = 0.0, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """-2i (2ia)^k exp(i(ax + shift)) Phi(exp(2i(ax + shift)), -k, 1/2)."""
    _check_k(k, 0)
    y = a * x + shift
    _check_sin(y, config)
    be = backend(config)
    e = _unit(y, be)
    phi = lerch_neg(k, e * e, 0.5, config)
    value = -2j * (2j * a) ** k * e * phi.value
    return EvalResult(value, phi.condition, "csc_lerch")


def tan_deriv(k: int, a: float, x: float, shift: float = 0.0, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """i delta_{0k} + 2i (2ia)^k Li_{-k}(-exp(2i(ax + shift)))."""
    _check_k(k, 0)
    y = a * x + shift
    _check_cos(y, config)
    be = backend(config)
    e = _unit(y, be)
    li = polylog_neg_closed(k, -e * e, config)
    value = 2j * (2j * a) ** k * li.value
    if k == 0:
        value = value + 1j
    return EvalResult(value, li.condition, "tan_polylog")


def sec_deriv(k: int, a: float, x: float, shift: float = 0.0, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """2 (2ia)^k exp(i(ax + shift)) Phi(-exp(2i(ax + shift)), -k, 1/2)."""
    _check_k(k, 0)
    y = a * x + shift
    _check_cos(y, config)
    be = backend(config)
    e = _unit(y, be)
    phi = lerch_neg(k, -e * e, 0.5, config)
    value = 2 * (2j * a) ** k * e * phi.value
    return EvalResult(value, phi.condition, "sec_lerch")


def exp_ratio_deriv_at_zero(k: int, a, b, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """d^k/dx^k x/(exp(ax + b) - 1) at x = 0, as -k (delta_{1k} + Li_{1-k}(e^b)) a^(k-1)."""
    _check_k(k, 1)
    be = backend(config)
    eb = be.exp(be.num(b))
    if abs(eb - 1) < config.guard:
        raise DomainError("exp(b) = 1 is a pole")
    li = polylog_neg_closed(k - 1, eb, config)
    delta = 1 if k == 1 else 0
    value = -k * (delta + li.value) * be.num(a) ** (k - 1)
    return EvalResult(value, li.condition, "exp_ratio_polylog")
