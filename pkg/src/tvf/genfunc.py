"""Generating-function functional equations for double and triple Euler sums.

Each equation is a polynomial identity in x, y, z (homogeneous of degree
w - depth) whose coefficients are regularized polynomials. Substituting a point
turns it into one Identity between Q-linear combinations of regularized values.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .algebra import RegPoly, reg, rho
from .identity import Identity
from .index import SignedComposition, compositions

__all__ = [
    "QPoly", "SpecPoint", "FunctionalEquation", "FSeries",
    "depth2_equation", "depth3A_equation", "depth3B_equation",
    "depth2_functional", "depth3A_functional", "depth3B_functional",
    "zsym",
]

NVARS = 3


class QPoly:
    """Polynomial in x, y, z with rational coefficients, keyed by exponent triples."""

    __slots__ = ("c",)

    def __init__(self, c: dict | None = None):
        self.c = {m: Fraction(q) for m, q in (c or {}).items() if q}

    @classmethod
    def const(cls, q) -> "QPoly":
        return cls({(0, 0, 0): q})

    @classmethod
    def var(cls, i: int) -> "QPoly":
        m = [0] * NVARS
        m[i] = 1
        return cls({tuple(m): 1})

    def __add__(self, other: "QPoly") -> "QPoly":
        d = dict(self.c)
        for m, q in other.c.items():
            d[m] = d.get(m, 0) + q
        return QPoly(d)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + other.scale(-1)

    def scale(self, k) -> "QPoly":
        return QPoly({m: q * k for m, q in self.c.items()})

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return self.scale(other)
        d: dict = {}
        for m1, q1 in self.c.items():
            for m2, q2 in other.c.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, 0) + q1 * q2
        return QPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        out = QPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, q in self.c.items():
            t = q
            for e, v in zip(m, point):
                if e:
                    t *= Fraction(v) ** e
            total += t
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.c == other.c

    def __repr__(self) -> str:
        return f"QPoly({self.c})"


X, Y, Z = QPoly.var(0), QPoly.var(1), QPoly.var(2)
ONE = QPoly.const(1)


def complete_h(n: int, u: QPoly, v: QPoly) -> QPoly:
    """(u^{n+1} - v^{n+1}) / (u - v) = sum_{i+j=n} u^i v^j; zero for n < 0."""
    out = QPoly()
    for i in range(n + 1):
        out = out + (u ** i) * (v ** (n - i))
    return out


@dataclass(frozen=True)
class SpecPoint:
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(0)

    def __post_init__(self):
        for f in ("x", "y", "z"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        if not (self.x or self.y or self.z):
            raise ValueError("specialization point must have a nonzero coordinate")

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def __str__(self) -> str:
        return f"(x,y,z)=({self.x},{self.y},{self.z})"


def zsym(exps: Sequence[int], signs: Sequence[int], kind: str = "*",
         resolve: bool = False) -> RegPoly:
    """Regularized symbol; with ``resolve`` a zeta_sha(c) is built as rho(zeta_*(c))."""
    c = SignedComposition(zip(exps, signs))
    if kind == "sha" and resolve:
        return rho(reg(c, "*"))
    return reg(c, kind)


class FunctionalEquation:
    """sum_i p_i(x,y,z) L_i = sum_j q_j(x,y,z) R_j with RegPoly L_i, R_j."""

    def __init__(self, name: str, weight: int, provenance: str = ""):
        self.name = name
        self.weight = weight
        self.provenance = provenance
        self.lhs: list[tuple[QPoly, RegPoly]] = []
        self.rhs: list[tuple[QPoly, RegPoly]] = []

    def add(self, side: str, poly: QPoly, value: RegPoly) -> None:
        if poly.c and value:
            (self.lhs if side == "lhs" else self.rhs).append((poly, value))

    @staticmethod
    def _at(terms, point) -> RegPoly:
        out = RegPoly.zero()
        for poly, value in terms:
            k = poly(point)
            if k:
                out = out + value.scale(k)
        return out

    def at(self, point: SpecPoint | Sequence) -> Identity:
        pt = point.coords() if isinstance(point, SpecPoint) else tuple(Fraction(v) for v in point)
        pt = tuple(pt) + (Fraction(0),) * (NVARS - len(pt))
        return Identity(
            name=f"{self.name}@{pt}",
            weight=self.weight,
            lhs=self._at(self.lhs, pt),
            rhs=self._at(self.rhs, pt),
            provenance=self.provenance,
            derivation="derived-from-functional-equation",
        )

    @staticmethod
    def _coefficients(terms) -> dict:
        out: dict = {}
        for poly, value in terms:
            for m, q in poly.c.items():
                out[m] = out[m] + value.scale(q) if m in out else value.scale(q)
        return out

    def coefficients(self) -> dict[tuple, tuple[RegPoly, RegPoly]]:
        """Monomial -> (lhs coefficient, rhs coefficient)."""
        lc, rc = self._coefficients(self.lhs), self._coefficients(self.rhs)
        zero = RegPoly.zero()
        return {m: (lc.get(m, zero), rc.get(m, zero)) for m in sorted(set(lc) | set(rc))}


class FSeries:
    """Truncated generating function sum_s zeta_#(s; z) x_1^{s_1-1} ... x_d^{s_d-1}.

    Only the homogeneous slice of total weight ``W`` is stored, keyed by
    (s_1 - 1, ..., s_d - 1).
    """

    def __init__(self, signs: Sequence[int], W: int, kind: str = "*"):
        self.signs = tuple(signs)
        self.W = W
        self.kind = kind
        d = len(self.signs)
        self.coeffs: dict[tuple[int, ...], RegPoly] = {}
        for exps in compositions(W, d):
            self.coeffs[tuple(s - 1 for s in exps)] = zsym(exps, self.signs, kind)

    def substitute(self, forms: Sequence[QPoly]) -> list[tuple[QPoly, RegPoly]]:
        """F(forms) as (polynomial, value) pairs."""
        out = []
        for m, value in self.coeffs.items():
            poly = ONE
            for f, e in zip(forms, m):
                poly = poly * f ** e
            out.append((poly, value))
        return out

    def divided_difference(self, u: QPoly, v: QPoly) -> list[tuple[QPoly, RegPoly]]:
        """(F(u) - F(v)) / (u - v) for a depth-1 series."""
        if len(self.signs) != 1:
            raise ValueError("divided difference is defined for depth 1")
        return [(complete_h(m[0] - 1, u, v), value) for m, value in self.coeffs.items()]


def _check_weight(w: int, minimum: int) -> None:
    if w < minimum:
        raise ValueError(f"weight {w} is below the minimum {minimum}")


def _point(p) -> tuple:
    if isinstance(p, SpecPoint):
        return p.coords()
    return tuple(Fraction(v) for v in p) + (Fraction(0),) * (NVARS - len(p))


# -- depth 2 ------------------------------------------------------------------

DEPTH2_CASES = ((1, 1), (1, -1), (-1, -1))


def depth2_functional(case: tuple[int, int], w: int, resolve: bool = False) -> FunctionalEquation:
    """Weight-w slice of the product zeta(a; z1) zeta(b; z2) expanded both ways.

    Shuffle side on the left, stuffle side plus the merged term on the right.
    """
    _check_weight(w, 3)
    sym = partial(zsym, resolve=resolve)
    case = tuple(case)
    if case not in DEPTH2_CASES:
        raise ValueError(f"depth-2 case must be one of {DEPTH2_CASES}")
    fe = FunctionalEquation(f"depth2{_signs_name(case)}", w, "depth-2 functional equation")
    xy = X + Y
    for a, b in compositions(w, 2):
        ta, tb = a - 1, b - 1
        if case == (1, 1):
            fe.add("lhs", xy ** ta * (Y ** tb + X ** tb), sym((a, b), (1, 1), "sha"))
            fe.add("rhs", X ** ta * Y ** tb + Y ** ta * X ** tb, sym((a, b), (1, 1), "*"))
        elif case == (1, -1):
            fe.add("lhs", xy ** ta * Y ** tb, sym((a, b), (1, -1), "sha"))
            fe.add("lhs", xy ** ta * X ** tb, sym((a, b), (-1, -1)))
            fe.add("rhs", X ** ta * Y ** tb, sym((a, b), (1, -1), "*"))
            fe.add("rhs", Y ** ta * X ** tb, sym((a, b), (-1, 1)))
        else:
            fe.add("lhs", xy ** ta * (Y ** tb + X ** tb), sym((a, b), (-1, 1)))
            fe.add("rhs", X ** ta * Y ** tb + Y ** ta * X ** tb, sym((a, b), (-1, -1)))
    merged = case[0] * case[1]
    fe.add("rhs", complete_h(w - 2, X, Y), sym((w,), (merged,)))
    return fe


def depth2_equation(case: tuple[int, int], w: int, p, resolve: bool = True) -> Identity:
    """Weight-w depth-2 identity at p; shuffle-regularized symbols resolved through rho."""
    pt = _point(p)
    if pt[2] != 0:
        raise ValueError("depth-2 points live in the (x, y) plane; z must be 0")
    return depth2_functional(case, w, resolve).at(pt)


# -- depth 3, double times single ---------------------------------------------

def depth3A_functional(signs: tuple[int, int, int], w: int, resolve: bool = False) -> FunctionalEquation:
    """zeta(s1, s2; z1, z2) zeta(s3; z3): stuffle side left, shuffle side right."""
    _check_weight(w, 3)
    sym = partial(zsym, resolve=resolve)
    z1, z2, z3 = signs
    fe = FunctionalEquation(f"depth3A{_signs_name(signs)}", w, "depth-3 double-times-single equation")
    if z1 == 1 and z2 == 1:
        fe.add("lhs", Z ** (w - 3) * Fraction(1, 2), sym((2,), (1,)) * sym((w - 2,), (z3,), "*"))
    for b, c in compositions(w, 2):
        tb, tc = b - 1, c - 1
        fe.add("lhs", complete_h(tb - 1, X, Z) * Y ** tc, sym((b, c), (z1 * z3, z2), "*"))
        fe.add("lhs", X ** tb * complete_h(tc - 1, Y, Z), sym((b, c), (z1, z2 * z3), "*"))
    for a, b, c in compositions(w, 3):
        ta, tb, tc = a - 1, b - 1, c - 1
        e = (a, b, c)
        fe.add("lhs", X ** ta * Y ** tb * Z ** tc, sym(e, (z1, z2, z3), "*"))
        fe.add("lhs", X ** ta * Z ** tb * Y ** tc, sym(e, (z1, z3, z2), "*"))
        fe.add("lhs", Z ** ta * X ** tb * Y ** tc, sym(e, (z3, z1, z2), "*"))
        xz, yz = (X + Z) ** ta, (Y + Z) ** tb
        fe.add("rhs", xz * yz * Y ** tc, sym(e, (z1, z3 * z1, z1 * z2 * z3), "sha"))
        fe.add("rhs", xz * yz * Z ** tc, sym(e, (z1, z2, z3 * z1 * z2), "sha"))
        fe.add("rhs", xz * X ** tb * Y ** tc, sym(e, (z3, z1 * z3, z2), "sha"))
    return fe


def depth3A_equation(signs: tuple[int, int, int], w: int, p, resolve: bool = True) -> Identity:
    _check_weight(w, 4)
    return depth3A_functional(tuple(signs), w, resolve).at(_point(p))


# -- depth 3, triple product --------------------------------------------------

def depth3B_functional(signs: tuple[int, int, int], w: int, resolve: bool = False) -> FunctionalEquation:
    """zeta(s1; z1) zeta(s2; z2) zeta(s3; z3): shuffle side left, stuffle side right."""
    _check_weight(w, 3)
    sym = partial(zsym, resolve=resolve)
    z1, z2, z3 = signs
    fe = FunctionalEquation(f"depth3B{_signs_name(signs)}", w, "depth-3 triple-product equation")
    xyz = X + Y + Z
    for a, b, c in compositions(w, 3):
        ta, tb, tc = a - 1, b - 1, c - 1
        e = (a, b, c)
        head = xyz ** ta
        # shuffle: the three poles in every order; a ratio of signs is their product
        for (p1, p2, p3), mid, last in (
            ((z1, z3, z2), Z + Y, Y), ((z1, z2, z3), Z + Y, Z),
            ((z2, z3, z1), Z + X, X), ((z2, z1, z3), Z + X, Z),
            ((z3, z1, z2), X + Y, Y), ((z3, z2, z1), X + Y, X),
        ):
            fe.add("lhs", head * mid ** tb * last ** tc, sym(e, (p1, p1 * p2, p2 * p3), "sha"))
        for (v1, v2, v3), (s1, s2, s3) in (
            ((X, Y, Z), (z1, z2, z3)), ((X, Z, Y), (z1, z3, z2)),
            ((Y, X, Z), (z2, z1, z3)), ((Y, Z, X), (z2, z3, z1)),
            ((Z, X, Y), (z3, z1, z2)), ((Z, Y, X), (z3, z2, z1)),
        ):
            fe.add("rhs", v1 ** ta * v2 ** tb * v3 ** tc, sym(e, (s1, s2, s3), "*"))
    for k, c in compositions(w, 2):
        if k < 2:
            continue
        tc = c - 1
        inner_xy = QPoly()
        inner_xz = QPoly()
        inner_yz = QPoly()
        for a, b in compositions(k, 2):
            inner_xy = inner_xy + X ** (a - 1) * Y ** (b - 1)
            inner_xz = inner_xz + X ** (a - 1) * Z ** (b - 1)
            inner_yz = inner_yz + Y ** (a - 1) * Z ** (b - 1)
        for inner, last, merged, other in (
            (inner_xy, Z, z1 * z2, z3), (inner_xz, Y, z3 * z1, z2), (inner_yz, X, z2 * z3, z1),
        ):
            value = sym((k, c), (merged, other), "*") + sym((c, k), (other, merged), "*")
            fe.add("rhs", inner * last ** tc, value)
    all_xyz = QPoly()
    for a, b, c in compositions(w, 3):
        all_xyz = all_xyz + X ** (a - 1) * Y ** (b - 1) * Z ** (c - 1)
    fe.add("rhs", all_xyz, sym((w,), (z1 * z2 * z3,)))
    return fe


def depth3B_equation(signs: tuple[int, int, int], w: int, p, resolve: bool = True) -> Identity:
    _check_weight(w, 4)
    return depth3B_functional(tuple(signs), w, resolve).at(_point(p))


def _signs_name(signs: Iterable[int]) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signs) + ")"


def all_sign_cases(depth: int) -> list[tuple[int, ...]]:
    return list(product((1, -1), repeat=depth))
