# Cancellation, condition numbers and extended precision.
#
# The alternating inner sums in the closed forms lose digits as the order
# grows. Every evaluation reports sum|terms| / |sum| so the loss is visible.

import mpmath

from lerchneg import EXTENDED, compensated_sum, polylog_neg_stirling

print(compensated_sum([1.0, 1e-16, -1.0]))  # recovers 1e-16 exactly

z = -1.0 + 0.05j
for m in (8, 16, 24, 32):
    ref = complex(mpmath.polylog(-m, mpmath.mpc(z)))
    dbl = polylog_neg_stirling(m, z)
    ext = polylog_neg_stirling(m, z, EXTENDED)
    e_dbl = abs(complex(dbl.value) - ref) / abs(ref)
    e_ext = abs(complex(ext.value) - ref) / abs(ref)
    print(f"m={m:2d}  condition {dbl.condition:9.3g}  double err {e_dbl:.1e}  106-bit err {e_ext:.1e}")

# The same thing from the command line:
#   lerchneg eval polylog -m 32 -z -1+0.05i --form stirling --precision dd
