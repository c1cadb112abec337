"""From a generating-function equation to a sum formula.

The product of generating functions, expanded once by stuffle and once by
shuffle, gives a polynomial identity in x, y (and z for depth 3). Setting the
variables to 0 or 1 picks out sum formulas.

Run: python3 demos/03_functional_equations.py
"""
from tvf import catalog
from tvf.genfunc import depth2_equation, depth3A_equation, depth3A_functional, depth3B_equation
from tvf.relations import check_membership

w = 5

# Depth 2, both factors unbarred, at (x, y) = (0, 1): the classical sum formula.
d = depth2_equation((1, 1), w, (0, 1))
print("derived:    ", d.lhs, "=", d.rhs)
t = catalog.build("sum-depth2-pp", w)
print("transcribed:", t.lhs, "=", t.rhs)

# Depth 2 x 1. The equation has one coefficient per monomial in x, y, z.
fe = depth3A_functional((1, 1, 1), w, resolve=True)
print(f"the depth-3 equation at weight {w} has {len(fe.coefficients())} monomial coefficients")

# Specializing at x = 1, y = z = 0 gives the sum over zeta(a,b,1).
d = depth3A_equation((1, 1, 1), w, (1, 0, 0))
t = catalog.build("sum-ab1-ppp", w)
print("derived identity equals the transcription:", d.difference() == -t.difference())

# In general the two agree only up to known relations, so compare modulo the span.
for name in ("sum-1bc-pmp", "weighted-2b-mxm", "weighted-3a2b-pmp"):
    e = catalog.get(name)
    eq = {"depth3A": depth3A_equation, "depth3B": depth3B_equation}[e.source[0]]
    derived = eq(e.source[1], w, e.source[2])
    same = check_membership(derived.difference() - e.build(w).difference(), w, certificate=False)
    print(f"{name}: derived and transcribed agree modulo double shuffle: {bool(same)}")
