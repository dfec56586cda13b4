# Hurwitz zeta at integer k >= 2, four integral representations.
#
# Each representation is an elementary part plus one integral over (0, 1)
# against cot(pi u). The integrand has removable singularities at both ends,
# so an open Gauss-Legendre rule never needs the endpoint limits.

import math

import numpy as np

from lerchneg import (
    QuadratureSpec,
    hurwitz_analytic_final,
    hurwitz_elementary,
    hurwitz_half_integer,
    hurwitz_integral_v1,
    hurwitz_integral_v2,
    hurwitz_series,
    integral_v1_bracket,
)

CATALAN = 0.915965594177219015
spec = QuadratureSpec(tol=1e-10)

# zeta(2, 1/4) = pi^2 + 8 G
print(f"pi^2 + 8G        {math.pi**2 + 8 * CATALAN:.15f}")
for fn in (hurwitz_series, hurwitz_integral_v1, hurwitz_elementary, hurwitz_integral_v2, hurwitz_analytic_final):
    r = fn(2, 0.25) if fn is hurwitz_series else fn(2, 0.25, spec)
    print(f"{r.method:16s} {r.real:.15f}   condition {r.condition:.3g}")

# Complex b works too, with |im b| capped to keep exp(2 pi |im b| u) tame.
b = 0.26 + 0.05j
for k in (3, 6):
    ref = complex(hurwitz_series(k, b).value)
    got = complex(hurwitz_analytic_final(k, b, spec).value)
    print(f"k={k} b={b}: relative gap {abs(got - ref) / abs(ref):.2e}")

# The bracket multiplying cot(pi u) vanishes at both ends, which is what
# makes the integrand finite there.
br = integral_v1_bracket(3, 0.3)
u = np.array([1e-8, 1e-6, 1e-4, 0.5, 1 - 1e-4, 1 - 1e-6])
for ui, vi in zip(u, br(u)):
    print(f"  bracket({ui:.8f}) = {abs(vi):.3e}")

# Half-integer b: exp(-2 pi i b) = -1 and cot(pi b) = 0, and for b = 1/2
# zeta(k, 1/2) = (2^k - 1) zeta(k).
for k in range(2, 6):
    print(k, hurwitz_half_integer(k, 0.5).real, (2**k - 1) * hurwitz_series(k, 1).real)
