"""Euler sums and multiple T-values: notation, decomposition and certified values.

Run: python3 demos/01_values.py
"""
import mpmath

from tvf import PrecisionCtx, eval_euler, eval_mtv, mtv_decompose, parse_index
from tvf.index import to_integral_word
from tvf.numeric import oracle_extrapolated

ctx = PrecisionCtx(40)
mpmath.mp.dps = 50  # so printed differences are not rounded to double precision

# An index is written with commas; a trailing "b" puts a bar (a sign -1) on that slot.
c = parse_index("2b,1")
print("index", c, "weight", c.weight, "depth", c.depth, "admissible", c.admissible)
print("as an iterated-integral word:", to_integral_word(c))
print("zeta(2b,1) =", mpmath.nstr(eval_euler(c, ctx).value, 40))

# Euler's classic: zeta(2,1) = zeta(3).
print("zeta(2,1) - zeta(3) =", mpmath.nstr(eval_euler(parse_index("2,1"), ctx).value
                                           - eval_euler(parse_index("3"), ctx).value, 5))

# A multiple T-value restricts the summation to alternating parities. Over the
# Euler sums it is a signed combination of 2^depth terms.
t = parse_index("T:2,1,1")
print(f"{t} =", mtv_decompose(t))

# The smallest instance of the weighted sum formula says T(2,1,1) = T(4).
a, b = eval_mtv(t, ctx).value, eval_mtv(parse_index("T:4"), ctx).value
print("T(2,1,1) =", mpmath.nstr(a, 30))
print("T(4)     =", mpmath.nstr(b, 30))

# A slow check that shares nothing with the fast evaluator: sum the defining
# series directly and extrapolate in the cutoff.
print("direct summation, 10 digits:", mpmath.nstr(oracle_extrapolated(t, 10), 10))
