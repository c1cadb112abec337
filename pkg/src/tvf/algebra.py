"""Stuffle and shuffle products, regularization to polynomials in T, and the map rho.

Compositions multiply by the quasi-shuffle (stuffle) product that mirrors
multiplying nested sums; integral words multiply by the riffle shuffle. A
non-admissible index is assigned a polynomial in T (``zeta(1) -> T``) by peeling
leading divergent letters, separately for each product.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable

from .index import (
    LinComb, SignedComposition, IntegralWord, WP,
    from_integral_word, to_integral_word,
)

__all__ = [
    "RegPoly", "RhoMap", "CapacityError",
    "stuffle", "shuffle", "stuffle_lincomb", "shuffle_lincomb",
    "reg_stuffle", "reg_shuffle", "reg", "rho", "rho_T_power",
    "dsh_identity", "rho_identity",
]

DEFAULT_WEIGHT_CAP = 16

_ONE = SignedComposition._trusted(())
_Y1 = SignedComposition._trusted(((1, 1),))


class CapacityError(ValueError):
    pass


# -- products on raw tuples ---------------------------------------------------

@lru_cache(maxsize=None)
def _stuffle(u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    (s, z), (t, y) = u[0], v[0]
    acc: dict[tuple, int] = {}
    for head, left, right in (((s, z), u[1:], v), ((t, y), u, v[1:]), ((s + t, z * y), u[1:], v[1:])):
        for w, m in _stuffle(left, right):
            key = (head,) + w
            acc[key] = acc.get(key, 0) + m
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _shuffle(u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[tuple, int] = {}
    for head, left, right in ((u[0], u[1:], v), (v[0], u, v[1:])):
        for w, m in _shuffle(left, right):
            key = (head,) + w
            acc[key] = acc.get(key, 0) + m
    return tuple(acc.items())


def stuffle(u: SignedComposition, v: SignedComposition) -> LinComb:
    """Quasi-shuffle product, e.g. z(2)*z(3) = z(5) + z(2,3) + z(3,2)."""
    return LinComb._wrap({SignedComposition._trusted(w): Fraction(m)
                          for w, m in _stuffle(tuple(u), tuple(v))})


def shuffle(u, v) -> LinComb:
    """Riffle shuffle of two words, each result read back as a composition.

    Signed compositions are accepted and converted to words first.
    """
    if isinstance(u, SignedComposition):
        u = to_integral_word(u)
    if isinstance(v, SignedComposition):
        v = to_integral_word(v)
    acc: dict[SignedComposition, Fraction] = {}
    for w, m in _shuffle(tuple(u), tuple(v)):
        c = from_integral_word(w)
        acc[c] = acc.get(c, 0) + m
    return LinComb._wrap(acc)


def shuffle_lincomb(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear extension of the shuffle product to combinations of compositions."""
    acc: dict[SignedComposition, Fraction] = {}
    for u, p in a.items():
        wu = tuple(to_integral_word(u))
        for v, q in b.items():
            pq = p * q
            for w, m in _shuffle(wu, tuple(to_integral_word(v))):
                c = from_integral_word(w)
                acc[c] = acc.get(c, 0) + pq * m
    return LinComb._wrap(acc)


def stuffle_lincomb(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear extension of the stuffle product."""
    acc: dict[SignedComposition, Fraction] = {}
    for u, p in a.items():
        for v, q in b.items():
            pq = p * q
            for w, m in _stuffle(u, v):
                w = SignedComposition._trusted(w)
                acc[w] = acc.get(w, 0) + pq * m
    return LinComb._wrap(acc)


# -- polynomials in T ---------------------------------------------------------

class RegPoly:
    """Polynomial in T whose coefficients are LinCombs of admissible compositions.

    The empty composition is the rational constant 1. Coefficient products are
    taken with the stuffle product.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: dict[int, LinComb] | None = None):
        self._c = {k: v for k, v in (coeffs or {}).items() if v}
        for lc in self._c.values():
            for c in lc:
                if not c.admissible:
                    raise ValueError(f"non-admissible symbol {c!r} in RegPoly")

    @classmethod
    def _wrap(cls, coeffs: dict[int, LinComb]) -> "RegPoly":
        obj = object.__new__(cls)
        obj._c = {k: v for k, v in coeffs.items() if v}
        return obj

    @classmethod
    def zero(cls) -> "RegPoly":
        return cls._wrap({})

    @classmethod
    def const(cls, q) -> "RegPoly":
        return cls._wrap({0: LinComb.one().scale(q)})

    @classmethod
    def T(cls, power: int = 1) -> "RegPoly":
        return cls._wrap({power: LinComb.one()})

    @classmethod
    def of(cls, lc: LinComb, degree: int = 0) -> "RegPoly":
        return cls({degree: lc})

    @classmethod
    def symbol(cls, c: SignedComposition, coeff=1) -> "RegPoly":
        if not c.admissible:
            raise ValueError(f"{c!r} is not admissible; regularize it first")
        return cls._wrap({0: LinComb.symbol(c, coeff)})

    @property
    def coeffs(self) -> dict[int, LinComb]:
        return dict(self._c)

    def coeff(self, k: int) -> LinComb:
        return self._c.get(k, LinComb())

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, RegPoly):
            return self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "RegPoly") -> "RegPoly":
        d = dict(self._c)
        for k, lc in other._c.items():
            d[k] = d[k] + lc if k in d else lc
        return RegPoly._wrap(d)

    def __sub__(self, other: "RegPoly") -> "RegPoly":
        return self + (-other)

    def __neg__(self) -> "RegPoly":
        return RegPoly._wrap({k: -v for k, v in self._c.items()})

    def scale(self, q) -> "RegPoly":
        return RegPoly._wrap({k: v.scale(q) for k, v in self._c.items()})

    def shift(self, n: int = 1) -> "RegPoly":
        """Multiply by T^n."""
        return RegPoly._wrap({k + n: v for k, v in self._c.items()})

    def mul_lincomb(self, lc: LinComb) -> "RegPoly":
        return RegPoly._wrap({k: stuffle_lincomb(v, lc) for k, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, RegPoly):
            d: dict[int, LinComb] = {}
            for i, a in self._c.items():
                for j, b in other._c.items():
                    ab = stuffle_lincomb(a, b)
                    d[i + j] = d[i + j] + ab if i + j in d else ab
            return RegPoly._wrap(d)
        if isinstance(other, LinComb):
            return self.mul_lincomb(other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, (RegPoly, LinComb)):
            return self * other
        return self.scale(other)

    def symbols(self) -> set[SignedComposition]:
        return {c for lc in self._c.values() for c in lc}

    def weights(self) -> set[int]:
        """Total weights of all monomials, counting T as weight 1."""
        return {k + c.weight for k, lc in self._c.items() for c in lc}

    def is_homogeneous(self, weight: int | None = None) -> bool:
        ws = self.weights()
        if not ws:
            return True
        return len(ws) == 1 and (weight is None or ws == {weight})

    def terms(self) -> list[tuple[int, Fraction, SignedComposition]]:
        """``(T-degree, coefficient, composition)`` triples in canonical order."""
        return [(k, q, c) for k in sorted(self._c) for c, q in self._c[k].sorted_items()]

    def __repr__(self) -> str:
        return f"RegPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            body = str(self._c[k])
            if k == 0:
                parts.append(body)
            else:
                tp = "T" if k == 1 else f"T^{k}"
                parts.append(f"{tp}*({body})" if body != "1" else tp)
        return " + ".join(parts).replace("+ -", "- ")


# -- regularization -----------------------------------------------------------

def _leading(seq: tuple, letter) -> int:
    k = 0
    while k < len(seq) and seq[k] == letter:
        k += 1
    return k


@lru_cache(maxsize=None)
def _reg_stuffle(c: tuple) -> RegPoly:
    k = _leading(c, (1, 1))
    if k == 0:
        return RegPoly._wrap({0: LinComb.symbol(SignedComposition._trusted(c))})
    rest = c[1:]
    # (1) * rest = k * c + terms with fewer leading (1,+) letters
    out = _reg_stuffle(rest).shift(1)
    for w, m in _stuffle(((1, 1),), rest):
        if w == c:
            assert m == k
            continue
        out = out - _reg_stuffle(w).scale(m)
    return out.scale(Fraction(1, k))


@lru_cache(maxsize=None)
def _reg_shuffle_word(word: tuple) -> RegPoly:
    k = _leading(word, WP)
    if k == 0:
        return RegPoly._wrap({0: LinComb.symbol(from_integral_word(word))})
    rest = word[1:]
    out = _reg_shuffle_word(rest).shift(1)
    for w, m in _shuffle((WP,), rest):
        if w == word:
            assert m == k
            continue
        out = out - _reg_shuffle_word(w).scale(m)
    return out.scale(Fraction(1, k))


def reg_stuffle(c: SignedComposition) -> RegPoly:
    """Stuffle-regularized value: admissible c is fixed, zeta(1) -> T."""
    return _reg_stuffle(tuple(c))


def reg_shuffle(c: SignedComposition) -> RegPoly:
    """Shuffle-regularized value: admissible c is fixed, zeta(1) -> T."""
    return _reg_shuffle_word(tuple(to_integral_word(c)))


def reg(c: SignedComposition, kind: str = "*") -> RegPoly:
    """``kind`` is ``"*"`` (stuffle) or ``"sha"`` (shuffle)."""
    if kind in ("*", "star", "stuffle"):
        return reg_stuffle(c)
    if kind in ("sha", "shuffle"):
        return reg_shuffle(c)
    raise ValueError(f"unknown regularization {kind!r}")


def regularize(lc: LinComb, kind: str = "*") -> RegPoly:
    out = RegPoly.zero()
    for c, q in lc.items():
        out = out + reg(c, kind).scale(q)
    return out


# -- rho ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _alpha(m: int) -> LinComb:
    """Coefficient of u^m in A(u) = exp(sum_{n>=2} (-1)^n zeta(n) u^n / n)."""
    if m == 0:
        return LinComb.one()
    acc = LinComb()
    for n in range(2, m + 1):
        zn = LinComb.symbol(SignedComposition._trusted(((n, 1),)), (-1) ** n)
        acc = acc + stuffle_lincomb(zn, _alpha(m - n))
    return acc.scale(Fraction(1, m))


@lru_cache(maxsize=None)
def rho_T_power(k: int) -> RegPoly:
    """rho(T^k) = sum_m k!/(k-m)! alpha_m T^{k-m}; rho(T^2) = T^2 + zeta(2)."""
    d = {}
    for m in range(k + 1):
        a = _alpha(m)
        if a:
            d[k - m] = a.scale(factorial(k) // factorial(k - m))
    return RegPoly._wrap(d)


class RhoMap:
    """R-linear map with rho(e^{Tu}) = A(u) e^{Tu}, restricted to a weight cap."""

    def __init__(self, weight_cap: int = DEFAULT_WEIGHT_CAP):
        self.weight_cap = weight_cap

    def __call__(self, p: RegPoly) -> RegPoly:
        ws = p.weights()
        if ws and max(ws) > self.weight_cap:
            raise CapacityError(f"weight {max(ws)} exceeds rho weight cap {self.weight_cap}")
        out = RegPoly.zero()
        for k, lc in p._c.items():
            if k <= 1:
                out = out + RegPoly._wrap({k: lc})
            else:
                out = out + rho_T_power(k).mul_lincomb(lc)
        return out


rho = RhoMap()


# -- double shuffle -----------------------------------------------------------

def dsh_identity(u: SignedComposition, v: SignedComposition):
    """Regularized double shuffle relation for the pair (u, v).

    Both product expansions are regularized with the shuffle regularization, so
    the relation does not collapse to 0 = 0. When neither factor is admissible,
    the sha-regularized stuffle side equals rho(P Q) with P, Q the stuffle
    regularizations of u, v, while the shuffle side equals rho(P) rho(Q); their
    difference is subtracted from the left-hand side.
    """
    from .identity import Identity

    u = SignedComposition(u)
    v = SignedComposition(v)
    lhs = regularize(stuffle(u, v), "sha")
    if not (u.admissible or v.admissible):
        p, q = reg_stuffle(u), reg_stuffle(v)
        lhs = lhs - (rho(p * q) - rho(p) * rho(q))
    rhs = regularize(shuffle(to_integral_word(u), to_integral_word(v)), "sha")
    return Identity(
        name=f"dsh({u};{v})",
        weight=u.weight + v.weight,
        lhs=lhs,
        rhs=rhs,
        provenance="regularized double shuffle",
        derivation="derived",
    )


def rho_identity(c: SignedComposition):
    """rho(reg_stuffle(c)) = reg_shuffle(c), the comparison between regularizations."""
    from .identity import Identity

    c = SignedComposition(c)
    return Identity(
        name=f"rho({c})",
        weight=c.weight,
        lhs=rho(reg_stuffle(c)),
        rhs=reg_shuffle(c),
        provenance="regularization comparison",
        derivation="derived",
    )
