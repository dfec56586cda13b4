"""Adaptive open-panel quadrature on (0, 1).

The integrands of interest are bounded but built from a bracket that
vanishes at the endpoints times cot(pi u), which blows up there. Gauss-
Legendre nodes are strictly interior, so the removable 0/0 at u = 0 and
u = 1 is never evaluated.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .numcore import ConvergenceError, EvalResult

__all__ = ["QuadratureSpec", "QuadratureResult", "integrate_open"]

MIN_WIDTH = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    order: int = 15
    tol: float = 1e-10
    max_subdiv: int = 2000
    endpoint_guard: float = 0.0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("rule order must be positive")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.max_subdiv < 1:
            raise ValueError("max_subdiv must be >= 1")
        if not 0 <= self.endpoint_guard < 0.5:
            raise ValueError("endpoint guard must lie in [0, 0.5)")


@dataclass(frozen=True)
class QuadratureResult(EvalResult):
    """EvalResult plus the absolute error estimate and the work done.

    ``condition`` is int|f| / |int f|.
    """

    error: float = 0.0
    subdivisions: int = 0
    evaluations: int = 0


@lru_cache(maxsize=None)
def _rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1) / 2, w / 2


def integrate_open(
    f: Callable, spec: QuadratureSpec = QuadratureSpec(), vectorized: bool = False
) -> QuadratureResult:
    """Integrate a complex-valued f over (0, 1).

    Each interval is integrated by one panel and by its two halves; the
    difference is the error estimate and the halves are kept as the value.
    The interval with the largest estimate is bisected until the summed
    estimate drops below ``tol * |integral|`` or below the roundoff floor.

    With ``vectorized=True`` f receives a numpy array of nodes and returns
    an array, or a pair ``(values, magnitudes)`` where ``magnitudes`` bounds
    the absolute size of the parts summed to form each value. The roundoff
    floor is 50 eps times the integral of those magnitudes (of |f| when
    none are given). Panels narrower than ``MIN_WIDTH`` are never split.
    """
    nodes, weights = _rule(spec.order)
    evals = 0

    def panel(a, b):
        nonlocal evals
        x = a + (b - a) * nodes
        if vectorized:
            out = f(x)
            if isinstance(out, tuple):
                y, mag = np.asarray(out[0], dtype=complex), np.asarray(out[1], dtype=float)
            else:
                y = np.asarray(out, dtype=complex)
                mag = np.abs(y)
        else:
            y = np.array([complex(f(float(t))) for t in x])
            mag = np.abs(y)
        evals += len(x)
        if not np.all(np.isfinite(y)):
            raise FloatingPointError(f"integrand not finite on ({a}, {b})")
        h = b - a
        return complex(h * np.dot(weights, y)), float(h * np.dot(weights, np.maximum(mag, np.abs(y))))

    def refine(a, b, coarse):
        m = (a + b) / 2
        left, right = panel(a, m), panel(m, b)
        fine = left[0] + right[0]
        d = fine - coarse
        return (a, b, fine, left[1] + right[1], max(abs(d.real), abs(d.imag)), left, right)

    lo, hi = spec.endpoint_guard, 1.0 - spec.endpoint_guard
    root = refine(lo, hi, panel(lo, hi)[0])
    heap = [(-root[4], lo, root)]
    frozen = []
    subdiv = 1
    eps = np.finfo(float).eps
    while heap:
        items = [item[2] for item in heap] + frozen
        total = sum(it[2] for it in items)
        err = math.fsum(it[4] for it in items)
        l1 = math.fsum(it[3] for it in items)
        if err <= max(spec.tol * abs(total), 50 * eps * l1):
            break
        if subdiv >= spec.max_subdiv:
            raise ConvergenceError(
                f"quadrature reached {subdiv} subdivisions with error {err:.3g} "
                f"(target {spec.tol * abs(total):.3g})"
            )
        _, _, worst = heapq.heappop(heap)
        a, b, _, _, _, left, right = worst
        if b - a < MIN_WIDTH:
            frozen.append(worst)
            continue
        m = (a + b) / 2
        for (x0, x1, half) in ((a, m, left), (m, b, right)):
            child = refine(x0, x1, half[0])
            heapq.heappush(heap, (-child[4], x0, child))
        subdiv += 1
    else:
        # only frozen panels remain: the estimate is at the resolution limit
        items = frozen
        err = math.fsum(it[4] for it in items)
        total = sum(it[2] for it in items)
        if err > max(spec.tol * abs(total), 50 * eps * math.fsum(it[3] for it in items)):
            raise ConvergenceError(f"quadrature error {err:.3g} stuck at the minimum panel width")

    items = sorted([item[2] for item in heap] + frozen, key=lambda it: it[0])
    value = complex(
        math.fsum(it[2].real for it in items), math.fsum(it[2].imag for it in items)
    )
    l1 = math.fsum(it[3] for it in items)
    err = math.fsum(it[4] for it in items)
    if abs(value) == 0:
        cond = 1.0 if l1 == 0 else math.inf
    else:
        cond = max(1.0, l1 / abs(value))
    return QuadratureResult(value, cond, "gauss_legendre_adaptive", err, subdiv, evals)
