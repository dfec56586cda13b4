"""Shared floating-point machinery.

Values are plain Python ``complex`` at standard precision. The extended
("dd") precision runs the same arithmetic on :mod:`mpmath` numbers at 106
bits, the significand width of a double-double. Each thread gets its own
mpmath context so no global precision state is touched.
"""
from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import mpmath

__all__ = [
    "DomainError",
    "EvaluationOverflow",
    "ConvergenceError",
    "PrecisionConfig",
    "DOUBLE",
    "EXTENDED",
    "EvalResult",
    "Backend",
    "backend",
    "unit_phase",
    "cot_c",
    "compensated_sum",
    "condition_of",
    "to_complex",
    "scaled_discrepancy",
]

DD_BITS = 106


class DomainError(ValueError):
    """Argument lies on (or within the guard distance of) a singularity."""


class EvaluationOverflow(DomainError):
    """An intermediate exceeded the floating-point range."""


class ConvergenceError(ArithmeticError):
    """An iterative evaluation hit its cap before reaching the tolerance."""


@dataclass(frozen=True)
class PrecisionConfig:
    precision: str = "double"
    guard: float = 1e-12

    def __post_init__(self):
        if self.precision not in ("double", "dd"):
            raise ValueError(f"unknown precision {self.precision!r}")
        if not self.guard > 0:
            raise ValueError("guard distance must be positive")


DOUBLE = PrecisionConfig()
EXTENDED = PrecisionConfig("dd")


@dataclass(frozen=True)
class EvalResult:
    """A computed value with its cancellation condition and the formula used.

    ``value`` is a ``complex`` at double precision and an ``mpmath.mpc`` in
    extended precision. ``condition`` is sum|terms| / |sum| for the dominant
    sum of the method (1.0 when nothing cancels).
    """

    value: Any
    condition: float
    method: str

    @property
    def real(self) -> float:
        return float(to_complex(self.value).real)

    @property
    def imag(self) -> float:
        return float(to_complex(self.value).imag)

    def __complex__(self) -> complex:
        return to_complex(self.value)


def to_complex(x) -> complex:
    if isinstance(x, EvalResult):
        x = x.value
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return complex(x)
    return complex(x)


class Backend:
    """Arithmetic namespace for one working precision."""

    def __init__(self, precision: str):
        self.precision = precision
        if precision == "double":
            self.ctx = None
            self.pi = math.pi
        else:
            self.ctx = mpmath.MPContext()
            self.ctx.prec = DD_BITS
            self.pi = self.ctx.pi

    @property
    def extended(self) -> bool:
        return self.ctx is not None

    def num(self, x) -> Any:
        if self.ctx is None:
            return complex(x)
        if isinstance(x, complex):
            return self.ctx.mpc(x.real, x.imag)
        return self.ctx.mpc(x)

    def real(self, x) -> Any:
        return float(x) if self.ctx is None else self.ctx.mpf(x)

    def from_fraction(self, x: Fraction) -> Any:
        if self.ctx is None:
            try:
                return complex(float(x))
            except OverflowError:
                raise EvaluationOverflow("exact intermediate exceeds the double range") from None
        return self.ctx.mpc(self.ctx.mpf(x.numerator) / x.denominator)

    def exp(self, x):
        return cmath.exp(x) if self.ctx is None else self.ctx.exp(x)

    def cos(self, x):
        return cmath.cos(x) if self.ctx is None else self.ctx.cos(x)

    def sin(self, x):
        return cmath.sin(x) if self.ctx is None else self.ctx.sin(x)

    def fsum(self, terms: Sequence) -> Any:
        """Correctly rounded sum (per component) of complex terms."""
        if self.ctx is None:
            return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        return self.ctx.fsum(terms)


_local = threading.local()


def backend(config: PrecisionConfig = DOUBLE) -> Backend:
    cache = getattr(_local, "backends", None)
    if cache is None:
        cache = _local.backends = {}
    b = cache.get(config.precision)
    if b is None:
        b = cache[config.precision] = Backend(config.precision)
    return b


def condition_of(terms: Iterable, total) -> float:
    """sum|t| / |total|, with 1 for a vanishing or trivial sum."""
    mag = math.fsum(float(abs(t)) for t in terms)
    tot = float(abs(total))
    if mag == 0.0:
        return 1.0
    if tot == 0.0:
        return math.inf
    return max(1.0, mag / tot)


def compensated_sum(terms: Sequence, config: PrecisionConfig = DOUBLE) -> EvalResult:
    """Sum complex terms with error-free accumulation.

    Real and imaginary parts are summed separately with :func:`math.fsum`
    (correct rounding of the exact sum), so the result does not depend on
    the order of ``terms``.
    """
    be = backend(config)
    terms = [be.num(t) for t in terms]
    if not terms:
        return EvalResult(be.num(0), 1.0, "compensated_sum")
    total = be.fsum(terms)
    cond = 1.0 if len(terms) == 1 else condition_of(terms, total)
    return EvalResult(total, cond, "compensated_sum")


def unit_phase(b, config: PrecisionConfig = DOUBLE):
    """exp(-2 pi i b), with the modulus and the phase computed separately."""
    be = backend(config)
    b = be.num(b)
    scale = 2 * be.pi * b.imag
    if be.ctx is None:
        try:
            mod = math.exp(scale)
        except OverflowError:
            raise EvaluationOverflow(f"exp(-2 pi i b) overflows for im(b) = {b.imag}") from None
        ang = -2 * math.pi * b.real
        return complex(mod * math.cos(ang), mod * math.sin(ang))
    ctx = be.ctx
    ang = -2 * be.pi * b.real
    return ctx.mpc(ctx.exp(scale) * ctx.cos(ang), ctx.exp(scale) * ctx.sin(ang))


def cot_c(w, config: PrecisionConfig = DOUBLE):
    """Complex cotangent, rejecting arguments within the guard of a pole."""
    be = backend(config)
    w = be.num(w)
    s = be.sin(w)
    if abs(s) < config.guard:
        raise DomainError(f"cot({to_complex(w)}) is at a pole")
    return be.cos(w) / s


def scaled_discrepancy(a, b) -> float:
    """|a - b| relative to the larger of |a| cond(a) and |b| cond(b).

    For a sum, |value| * condition is sum|terms|, so this stays meaningful
    when the value itself is zero. Plain numbers count as condition 1.
    """
    def mag(x):
        if isinstance(x, EvalResult):
            v = to_complex(x.value)
            m = abs(v) * x.condition if math.isfinite(x.condition) else 0.0
            return m, v
        return abs(complex(x)), complex(x)

    (ma, va), (mb, vb) = mag(a), mag(b)
    diff = abs(va - vb)
    if diff == 0:
        return 0.0
    scale = max(ma, mb)
    return diff / scale if scale > 0 else math.inf
