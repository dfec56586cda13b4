# Polylogarithms and Lerch Phi at negative integer order.
#
# At s = -m both functions collapse to rational functions of z, so the
# defining series (which only converges for |z| < 1) can be replaced by a
# finite sum valid everywhere except the pole z = 1.

from fractions import Fraction

import mpmath

from lerchneg import (
    exactmath,
    lerch_neg,
    polylog_neg_closed,
    polylog_neg_stirling,
    polylog_neg_transf,
    sum_lerch_identity,
)

# Li_{-1}(z) = z/(1-z)^2.  At z = 1/2 the series sum n/2^n = 2.
print("Li_-1(1/2) =", polylog_neg_closed(1, 0.5).value)

# Three closed forms for the same thing, here far outside the unit disc.
z = 2.5 - 1.5j
for fn in (polylog_neg_stirling, polylog_neg_closed, polylog_neg_transf):
    r = fn(6, z)
    print(f"{r.method:18s} {complex(r.value):.15g}   condition {r.condition:.3g}")
print(f"{'mpmath':18s} {complex(mpmath.polylog(-6, z)):.15g}")

# The rational oracle: exact numerator polynomial, no floating point at all.
print("Li_-4(3/7) exactly:", exactmath.polylog_neg_rational(4, Fraction(3, 7)))

# Phi(z, -m, u) is a polynomial in u of degree m for fixed z.
# Phi(1/2, -1, 3) = sum (n+3)/2^n = 8.
print("Phi(1/2, -1, 3) =", lerch_neg(1, 0.5, 3).value)

# The binomial sum over orders reproduces the shifted Phi.
lhs, rhs = sum_lerch_identity(4, -2.0, 0.4, 1.1)
print("sum of Lerches:", complex(lhs.value), "vs", complex(rhs.value))

# Defining recurrence Phi(z,-m,u) = u^m + z Phi(z,-m,u+1), off the disc.
m, z, u = 5, -3 + 1j, 0.75
left = complex(lerch_neg(m, z, u).value)
right = u**m + z * complex(lerch_neg(m, z, u + 1).value)
print("recurrence residual:", abs(left - right) / abs(left))
