"""Two products, two regularizations, and the linear relations they force.

Run: python3 demos/02_double_shuffle.py
"""
from tvf import SignedComposition, dsh_identity, reg, rho, shuffle, stuffle
from tvf.algebra import RegPoly
from tvf.relations import check_identity, generate_dsh_system
from tvf import catalog

SC = SignedComposition.of

# Multiplying nested sums gives the stuffle product; multiplying iterated integrals
# gives the shuffle product. Both expand zeta(2) zeta(2).
print("stuffle:", stuffle(SC(2), SC(2)))
print("shuffle:", shuffle(SC(2), SC(2)))

# Divergent indices get polynomials in T. The two products regularize differently,
# and rho converts one convention into the other.
print("zeta_*(1,1)   =", reg(SC(1, 1), "*"))
print("zeta_sha(1,1) =", reg(SC(1, 1), "sha"))
print("rho(T^2)      =", rho(RegPoly.T(2)))

# Comparing the two expansions yields a relation: here 4 zeta(3,1) = zeta(4).
print("double shuffle for (2),(2):", dsh_identity(SC(2), SC(2)).difference(), "= 0")

# Collect every such relation of a weight and eliminate over the rationals.
for W in range(2, 7):
    s = generate_dsh_system(W)
    print(f"weight {W}: {len(s.basis):4d} symbols, rank {s.rank:4d}, at most {s.dimension_bound()} independent values")

# Any identity of the catalog can be tested for membership; a certificate lists
# the generating relations and their exact multipliers.
res = check_identity(catalog.build("KT-main", 4))
cert = res.certificates[0]
print("T(2,1,1) = T(4) follows from", len(cert.multipliers), "relations, e.g.", cert.multipliers[:3])
