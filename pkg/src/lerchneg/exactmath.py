"""Exact combinatorics over the integers and rationals.

Everything here works on ``int`` and :class:`fractions.Fraction`, so results
carry no rounding error. These routines are the oracle layer for the
floating-point evaluators elsewhere in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

Rational = Union[int, Fraction]

__all__ = [
    "BernoulliPoly",
    "factorial",
    "binomial",
    "stirling2",
    "stirling2_explicit",
    "stirling_weighted_sum_lhs",
    "stirling_weighted_sum_rhs",
    "stirling_binomial_identity",
    "bernoulli_poly",
    "bernoulli_number",
    "zeta_nonpositive",
    "zeta_shift_identity",
    "falling_factorial",
    "factorial_power_binomial",
    "polylog_neg_rational",
    "lerch_neg_rational",
]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> Tuple[int, ...]:
    # Row n of the triangle, built from row n-1. lru_cache is safe to read
    # concurrently; a race only costs a duplicate computation.
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    row = [0] * (n + 1)
    for q in range(1, n + 1):
        left = prev[q] if q < len(prev) else 0
        row[q] = q * left + prev[q - 1]
    return tuple(row)


def stirling2(n: int, q: int) -> int:
    """Stirling number of the second kind S(n, q).

    Counts partitions of an n-set into q non-empty blocks. Out-of-range
    arguments (``q > n``, or ``q == 0 < n``) give 0.
    """
    if n < 0 or q < 0:
        raise ValueError("stirling2 needs non-negative arguments")
    if q > n:
        return 0
    if n > 200:
        # keep the recursion depth of the row cache bounded
        for m in range(0, n, 200):
            _stirling2_row(m)
    return _stirling2_row(n)[q]


def stirling2_explicit(n: int, q: int) -> int:
    """S(n, q) from the alternating binomial sum, as a cross-check."""
    if q > n or q < 0:
        return 0
    total = sum((-1) ** (q - j) * math.comb(q, j) * j**n for j in range(q + 1))
    quotient, remainder = divmod(total, math.factorial(q))
    if remainder:
        raise ArithmeticError(f"alternating sum for S({n},{q}) not divisible by {q}!")
    return quotient


def stirling_weighted_sum_lhs(k: int, q: int, u: Rational) -> Fraction:
    """sum_{j=q..k} u^j S(j,q) / ((j-1)! (k-j)!)."""
    if not 1 <= q <= k:
        raise ValueError("need 1 <= q <= k")
    u = Fraction(u)
    return sum(
        (Fraction(stirling2(j, q), factorial(j - 1) * factorial(k - j)) * u**j
         for j in range(q, k + 1)),
        Fraction(0),
    )


def stirling_weighted_sum_rhs(k: int, q: int, u: Rational) -> Fraction:
    """Closed form of :func:`stirling_weighted_sum_lhs` without Stirling numbers."""
    if not 1 <= q <= k:
        raise ValueError("need 1 <= q <= k")
    u = Fraction(u)
    inner = sum(
        (Fraction((-1) ** (q - j), factorial(j - 1) * factorial(q - j)) * (j * u + 1) ** (k - 1)
         for j in range(1, q + 1)),
        Fraction(0),
    )
    return u * inner / factorial(k - 1)


def stirling_binomial_identity(k: int, q: int, u: Rational) -> Tuple[Fraction, Fraction]:
    """Both sides of the binomial-type Stirling identity.

    Left: sum_{j=q..k} u^j S(j,q) / (j! (k-j)!).
    Right: (1/k!) sum_{j=0..q} (-1)^(q-j) (j u + 1)^k / (j! (q-j)!).
    """
    if not 0 <= q <= k:
        raise ValueError("need 0 <= q <= k")
    u = Fraction(u)
    lhs = sum(
        (Fraction(stirling2(j, q), factorial(j) * factorial(k - j)) * u**j
         for j in range(q, k + 1)),
        Fraction(0),
    )
    rhs = sum(
        (Fraction((-1) ** (q - j), factorial(j) * factorial(q - j)) * (j * u + 1) ** k
         for j in range(q + 1)),
        Fraction(0),
    ) / factorial(k)
    return lhs, rhs


@dataclass(frozen=True)
class BernoulliPoly:
    """Bernoulli polynomial B_k with exact coefficients (index = power)."""

    degree: int
    coefficients: Tuple[Fraction, ...]

    def __call__(self, x: Rational) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def _bernoulli_numbers(n: int) -> Tuple[Fraction, ...]:
    # sum_{j<k} C(k+1, j) B_j = -(k+1) B_k, i.e. sum_{j<=k} C(k+1,j) B_j = 0,
    # which fixes B_1 = -1/2.
    nums = [Fraction(1)]
    for k in range(1, n + 1):
        s = sum((math.comb(k + 1, j) * nums[j] for j in range(k)), Fraction(0))
        nums.append(-s / (k + 1))
    return tuple(nums)


def bernoulli_number(k: int) -> Fraction:
    """B_k with the B_1 = -1/2 convention."""
    return _bernoulli_numbers(k)[k]


def bernoulli_poly(k: int) -> BernoulliPoly:
    """B_k(x) = sum_j C(k, j) B_{k-j} x^j."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    nums = _bernoulli_numbers(k)
    coeffs = tuple(math.comb(k, j) * nums[k - j] for j in range(k + 1))
    return BernoulliPoly(k, coeffs)


def zeta_nonpositive(j: int, v: Rational) -> Fraction:
    """Hurwitz zeta at the non-positive integer 1 - j: -B_j(v)/j."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    return -bernoulli_poly(j)(v) / j


def zeta_shift_identity(k: int, u: Rational) -> Tuple[Fraction, Fraction]:
    """zeta(-k, u+1) directly, and rebuilt from Riemann zeta values at 0, -1, ..., -k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    u = Fraction(u)
    direct = zeta_nonpositive(k + 1, u + 1)
    rebuilt = -u ** (k + 1) / (k + 1) + factorial(k) * sum(
        (zeta_nonpositive(j + 1, 1) * u ** (k - j) / (factorial(j) * factorial(k - j))
         for j in range(k + 1)),
        Fraction(0),
    )
    return direct, rebuilt


def falling_factorial(x: Rational, j: int) -> Fraction:
    """x (x-1) ... (x-j+1); 1 for j = 0."""
    x = Fraction(x)
    acc = Fraction(1)
    for i in range(j):
        acc *= x - i
    return acc


def factorial_power_binomial(x: Rational, y: Rational, k: int) -> Tuple[Fraction, Fraction]:
    """(x+y) falling k, and its Vandermonde expansion in x and y falling powers."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x, y = Fraction(x), Fraction(y)
    direct = falling_factorial(x + y, k)
    expanded = factorial(k) * sum(
        (falling_factorial(x, j) * falling_factorial(y, k - j) / (factorial(j) * factorial(k - j))
         for j in range(k + 1)),
        Fraction(0),
    )
    return direct, expanded


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _polylog_numerator(m: int) -> Tuple[int, ...]:
    # Li_{-m}(z) = N_m(z) / (1-z)^(m+1). Applying z d/dz:
    # N_{m+1} = z [ N_m' (1-z) + (m+1) N_m ].
    if m == 0:
        return (0, 1)
    prev = _polylog_numerator(m - 1)
    deriv = [i * c for i, c in enumerate(prev)][1:] or [0]
    # N' (1 - z)
    t = [0] * (len(deriv) + 1)
    for i, c in enumerate(deriv):
        t[i] += c
        t[i + 1] -= c
    for i, c in enumerate(prev):
        if i >= len(t):
            t.append(0)
        t[i] += m * c
    return tuple([0] + t)


def polylog_neg_rational(m: int, z: Rational) -> Fraction:
    """Exact Li_{-m}(z) for rational z != 1, via the Eulerian numerator recurrence.

    Independent of any Stirling-number formula; used as an oracle.
    """
    z = Fraction(z)
    if z == 1:
        raise ZeroDivisionError("Li_{-m}(z) has a pole at z = 1")
    return _poly_eval(_polylog_numerator(m), z) / (1 - z) ** (m + 1)


def lerch_neg_rational(m: int, z: Rational, u: Rational) -> Fraction:
    """Exact Phi(z, -m, u) = sum_i C(m,i) u^(m-i) sum_{n>=0} n^i z^n for rational z != 1."""
    z, u = Fraction(z), Fraction(u)
    if z == 1:
        raise ZeroDivisionError("Phi(z, -m, u) has a pole at z = 1")
    total = u**m / (1 - z)
    for i in range(1, m + 1):
        total += math.comb(m, i) * u ** (m - i) * polylog_neg_rational(i, z)
    return total
