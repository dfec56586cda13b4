# Any-order derivatives of cot, csc, tan and sec from negative-order polylogs.
#
# d^k cot(ax + s)/dx^k = -i delta_{0k} - 2i (2ia)^k Li_{-k}(exp(2i(ax + s)))
# and similar expressions with Phi(., -k, 1/2) for csc and sec. The result
# is complex in floating point; its imaginary part measures the rounding.

import math

from lerchneg import cot_deriv, cot_deriv_adamchik, cot_poly, exp_ratio_deriv_at_zero, oracle_deriv, sec_deriv

# cot'' (pi/4) = 2 csc^2 cot = 4
print("cot''(pi/4) =", cot_deriv(2, 1.0, math.pi / 4).real)

# The exact oracle is a polynomial in cot with integer coefficients.
for k in range(5):
    print(f"d^{k} cot = P_{k}(cot) with coefficients {cot_poly(k).coefficients}")

# High orders, compared against the integer-polynomial oracle.
a, x, s = 1.3, 0.4, -0.2
for k in (5, 10, 15):
    r = cot_deriv(k, a, x, s)
    o = oracle_deriv("cot", k, a, x, s)
    print(f"k={k:2d}  {r.real:.12e}  oracle {o:.12e}  relative imag residue {abs(r.imag) / abs(r.real):.1e}")

# Adamchik's Stirling-number form gives the same numbers.
print(cot_deriv_adamchik(7, 0.8, 0.9).real, cot_deriv(7, 0.8, 0.9).real)

# sec^(2n)(0) are the Euler numbers 1, 1, 5, 61, 1385, ...
print([round(sec_deriv(2 * n, 1.0, 0.0).real) for n in range(7)])

# x/(e^(ax+b) - 1) at x = 0, derivative k, from Li_{1-k}(e^b).
print([exp_ratio_deriv_at_zero(k, 1.0, math.log(2)).real for k in range(1, 6)])
