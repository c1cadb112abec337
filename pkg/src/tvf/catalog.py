"""Transcriptions of every weighted and unweighted sum formula, parameterized by weight.

Each entry builds an :class:`Identity` at a chosen weight ``w`` (with ``u = w - 2``,
``v = w - 1``). Symbols are written in index text, e.g. ``z(f"{u}b,1,1")``; an unmarked
symbol must be admissible, ``zs``/``zh`` give the stuffle/shuffle-regularized value.
MTVs are expanded into Euler sums on construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .algebra import RegPoly, reg
from .identity import Identity
from .index import MtvIndex, SignedComposition, compositions, mtv_decompose, parse_index

__all__ = ["CatalogEntry", "catalog", "entries", "get", "names", "build", "RangeError"]


class RangeError(ValueError):
    """Weight outside the range where an identity is stated."""


# -- transcription helpers ------------------------------------------------------

def _comp(text: str) -> SignedComposition:
    c = parse_index(text)
    if not isinstance(c, SignedComposition):
        raise ValueError(f"expected an Euler sum index, got {text!r}")
    return c


def z(text: str) -> RegPoly:
    """Convergent Euler sum; refuses non-admissible indices."""
    c = _comp(text)
    if not c.admissible:
        raise ValueError(f"z({text}) is not admissible; use zs or zh")
    return RegPoly.symbol(c)


def zs(text: str) -> RegPoly:
    return reg(_comp(text), "*")


def zh(text: str) -> RegPoly:
    return reg(_comp(text), "sha")


def T(*parts: int) -> RegPoly:
    return RegPoly.of(mtv_decompose(MtvIndex(parts)))


_SYM = {None: lambda c: z(c), "*": zs, "sha": zh}


def _fmt(exps, signs: str) -> str:
    return ",".join(f"{e}b" if s == "-" else str(e) for e, s in zip(exps, signs))


def S(w: int, signs: str, coef: Callable[..., object] = None, kind: Optional[str] = None,
      prime: bool = False, where: Callable[..., bool] = None) -> RegPoly:
    """Sum over a_1 + ... + a_d = w of coef(a) * zeta(a; signs).

    ``prime`` drops a_1 = 1; ``where`` restricts the range further.
    """
    out = RegPoly.zero()
    for e in compositions(w, len(signs)):
        if prime and e[0] == 1:
            continue
        if where is not None and not where(*e):
            continue
        k = Fraction(1) if coef is None else Fraction(coef(*e))
        if k:
            out = out + _SYM[kind](_fmt(e, signs)).scale(k)
    return out


def ST(w: int, depth: int, coef: Callable[..., object] = None, prime: bool = False,
       where: Callable[..., bool] = None) -> RegPoly:
    """Sum of MTVs over compositions of w; terms with zero weight are skipped."""
    out = RegPoly.zero()
    for e in compositions(w, depth):
        if prime and e[0] == 1:
            continue
        if where is not None and not where(*e):
            continue
        k = Fraction(1) if coef is None else Fraction(coef(*e))
        if k:
            out = out + T(*e).scale(k)
    return out


Q = Fraction


# -- entries --------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    provenance: str
    min_weight: int
    build_sides: Callable[[int], tuple[RegPoly, RegPoly]] = field(repr=False)
    source: Optional[tuple] = None          # (equation family, signs, point) of the cited specialization
    fixed_weight: Optional[int] = None
    auxiliary: bool = False

    def weights(self, up_to: int) -> list[int]:
        if self.fixed_weight is not None:
            return [self.fixed_weight] if self.fixed_weight <= up_to else []
        return list(range(self.min_weight, up_to + 1))

    def build(self, w: int) -> Identity:
        if self.fixed_weight is not None and w != self.fixed_weight:
            raise RangeError(f"{self.name} holds only at weight {self.fixed_weight}")
        if w < self.min_weight:
            raise RangeError(f"{self.name} needs w >= {self.min_weight}, got {w}")
        lhs, rhs = self.build_sides(w)
        return Identity(self.name, w, lhs, rhs, self.provenance, "transcribed",
                        {"auxiliary": self.auxiliary, "source": self.source})


_ENTRIES: list[CatalogEntry] = []


def _entry(name, provenance, min_weight, source=None, fixed_weight=None, auxiliary=False):
    def deco(fn):
        _ENTRIES.append(CatalogEntry(name, provenance, min_weight, fn, source, fixed_weight, auxiliary))
        return fn
    return deco


P10, P01, P11 = (1, 0, 0), (0, 1, 0), (1, 1, 0)
X1, Y1, Z1, XY1, YZ1, XYZ1 = (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)
PP, PM, MM = (1, 1), (1, -1), (-1, -1)


# depth-2 sum formulas ------------------------------------------------------------

@_entry("sum-depth2-pp", "depth-2 sum formula for zeta(a,b)", 3, ("depth2", PP, P01))
def _(w):
    return S(w, "++", prime=True), z(f"{w}")


@_entry("sum-depth2-mm", "depth-2 sum formula for zeta(a-bar,b-bar)", 3, ("depth2", PM, P10))
def _(w):
    v = w - 1
    return S(w, "--", prime=True), z(f"1b,{v}") - z(f"1b,{v}b") + z(f"{w}b")


@_entry("sum-depth2-mp", "depth-2 sum formula for zeta(a-bar,b)", 3, ("depth2", MM, P01))
def _(w):
    v = w - 1
    return (S(w, "-+", prime=True),
            z(f"{v}b,1b") + z(f"1b,{v}b") - z(f"{v}b,1") - z(f"1b,{v}") + z(f"{w}"))


@_entry("sum-depth2-pm", "depth-2 sum formula for zeta(a,b-bar)", 3, ("depth2", PM, P01))
def _(w):
    v = w - 1
    return S(w, "+-", prime=True), z(f"{v}b,1") - z(f"{v}b,1b") + z(f"{w}b")


@_entry("T-sum-depth2", "sum formula for double T-values", 3)
def _(w):
    v = w - 1
    return (ST(w, 2, prime=True),
            (z(f"{w}") - z(f"{w}b") + z(f"{v}b,1b") + z(f"1b,{v}b") - z(f"{v}b,1") - z(f"1b,{v}")).scale(2))


@_entry("T-weighted-depth2", "weighted sum 2^(a-1) T(a,b) for double T-values", 3)
def _(w):
    return ST(w, 2, coef=lambda a, b: 2 ** (a - 1), prime=True), T(w).scale(w - 1)


@_entry("T-weighted-depth2-euler", "weighted sum 2^(a-1) T(a,b), Euler-sum form", 3, auxiliary=True)
def _(w):
    return ST(w, 2, coef=lambda a, b: 2 ** (a - 1), prime=True), (z(f"{w}") - z(f"{w}b")).scale(w - 1)


@_entry("weighted-depth2-pp", "weighted depth-2 sum 2^(a-1) zeta(a,b)", 3, ("depth2", PP, (1, 1)), auxiliary=True)
def _(w):
    return S(w, "++", coef=lambda a, b: 2 ** (a - 1), prime=True), z(f"{w}").scale(Q(w + 1, 2))


@_entry("weighted-depth2-pm", "weighted depth-2 sum 2^(a-1) (zeta(a,b-bar) + zeta(a-bar,b-bar))", 3,
        ("depth2", PM, (1, 1)), auxiliary=True)
def _(w):
    c = lambda a, b: 2 ** (a - 1)
    return S(w, "+-", c, prime=True) + S(w, "--", c, prime=True), z(f"{w}") + z(f"{w}b").scale(w)


@_entry("weighted-depth2-mp", "weighted depth-2 sum 2^(a-1) zeta(a-bar,b)", 3, ("depth2", MM, (1, 1)), auxiliary=True)
def _(w):
    return S(w, "-+", coef=lambda a, b: 2 ** (a - 1), prime=True), z(f"{w}b") + z(f"{w}").scale(Q(w - 1, 2))


# triple sums with last index 1 -----------------------------------------------------

def _ab1(signs):
    return lambda w: S(w, signs, prime=True, where=lambda a, b, c: c == 1)


def _register_ab1():
    rows = {
        "+++": lambda u, v: z(f"{v},1") + z(f"{u},2"),
        "+-+": lambda u, v: (z(f"{v}b,1") + z(f"{u}b,2") + z(f"{u}b,1,1").scale(2)
                             - z(f"{u}b,1b,1b") - z(f"{u}b,1,1b")),
        "-++": lambda u, v: (z(f"{v},1") + z(f"{u}b,2b") + z(f"{u}b,1,1b") + z(f"{u}b,1b,1")
                             + z(f"1b,{u}b,1") - z(f"{u}b,1,1").scale(2) - z(f"1b,{u},1")),
        "--+": lambda u, v: (z(f"{v}b,1") + z(f"{u},2b") + z(f"{u},1b,1") + z(f"1b,{u},1")
                             - z(f"{u},1b,1b") - z(f"1b,{u}b,1")),
        "---": lambda u, v: z(f"{v},1b") + z(f"{u}b,2") + z(f"{u}b,1b,1b") - z(f"{u}b,1,1b"),
        "++-": lambda u, v: z(f"{v},1b") + z(f"{u},2b") + z(f"{u},1b,1") - z(f"{u},1b,1b"),
        "+--": lambda u, v: z(f"{v}b,1b") + z(f"{u}b,2b") + z(f"{u}b,1,1b") - z(f"{u}b,1b,1"),
        "-+-": lambda u, v: (z(f"{v},1b") + z(f"{u}b,2") + z(f"{u}b,1b,1b") + z(f"1b,{u}b,1b")
                             - z(f"{u}b,1,1b") - z(f"1b,{u},1b")),
    }
    for signs, rhs in rows.items():
        _ENTRIES.append(CatalogEntry(
            f"sum-ab1-{_tag(signs)}", f"restricted triple sum zeta({_pretty('ab1', signs)})", 4,
            (lambda s, r: lambda w: (_ab1(s)(w), r(w - 2, w - 1)))(signs, rhs),
            ("depth3A", _case_for(X1, signs), X1)))


def _sg(signs: str) -> tuple[int, ...]:
    return tuple(1 if ch == "+" else -1 for ch in signs)


def _case_for(point, signs: str) -> tuple[int, int, int]:
    """Sign case (z1, z2, z3) of the double-times-single equation whose surviving term
    at ``point`` carries the summed family ``signs``."""
    s1, s2, s3 = _sg(signs)
    if point == X1:       # third shuffle term, signs (z3, z1 z3, z2)
        return (s1 * s2, s3, s1)
    if point == Y1:       # first shuffle term, signs (z1, z1 z3, z1 z2 z3)
        return (s1, s2 * s3, s1 * s2)
    if point == Z1:       # second shuffle term, signs (z1, z2, z1 z2 z3)
        return (s1, s2, s1 * s2 * s3)
    if point == XY1:      # stuffle term x^a z^b y^c, signs (z1, z3, z2)
        return (s1, s3, s2)
    raise ValueError(point)


def _tag(signs: str) -> str:
    return signs.replace("+", "p").replace("-", "m")


def _pretty(letters: str, signs: str) -> str:
    return ",".join(f"{l}-bar" if s == "-" else l for l, s in zip(letters, signs))


_register_ab1()


@_entry("sum-ab1-mmm-corrected", "restricted triple sum zeta(a-bar,b-bar,1-bar), right side re-derived", 4,
        ("depth3A", (1, -1, -1), X1), auxiliary=True)
def _(w):
    u, v = w - 2, w - 1
    return (_ab1("---")(w),
            z(f"{v}b,1b") + z(f"{u},2") + z(f"1b,{u},1b") - z(f"1b,{u}b,1b")
            + z(f"{u},1b,1b").scale(2) - z(f"{u},1b,1").scale(2))


@_entry("T-sum-ab1", "sum formula for T(a,b,1)", 4)
def _(w):
    u = w - 2
    return (ST(w, 3, prime=True, where=lambda a, b, c: c == 1),
            T(u, 2).scale(2) + (z(f"{u},1b,1b") + z(f"{u}b,1,1") - z(f"{u}b,1,1b") - z(f"{u},1b,1")).scale(4))


@_entry("z11rel", "weight-2 relation 2 zeta(2-bar) = -zeta(2)", 2, fixed_weight=2)
def _(w):
    return z("2b").scale(2), -z("2")


@_entry("z11rel-diff", "weight-2 relation zeta(1-bar,1-bar) - zeta(1-bar,1) = zeta(2-bar)", 2, fixed_weight=2)
def _(w):
    return z("1b,1b") - z("1b,1"), z("2b")


# triple sums with first index 1 ----------------------------------------------------

def _register_1bc():
    half = Q(1, 2)
    rows = {
        "+++": ("sha", lambda u, v: z(f"2,{u}") + zs(f"1,{v}") + zs(f"1,1,{u}") - (z("2") * z(f"{u}")).scale(half)),
        "+-+": ("sha", lambda u, v: (z(f"2b,{u}b") + zs(f"1,{v}") + zs(f"1,1b,{u}b") + zs(f"1,{u}b,1b")
                                     + z(f"1b,1,{u}b") - z(f"1b,1b,{u}b") - zs(f"1,{u}b,1"))),
        "-++": (None, lambda u, v: (z(f"2,{u}") + z(f"1b,{v}b") + z(f"1b,{u},1b") + z(f"1b,1b,{u}").scale(2)
                                    - z(f"1b,1,{u}") - z(f"1b,{u},1"))),
        "--+": (None, lambda u, v: z(f"2b,{u}b") + z(f"1b,{v}b") + z(f"1b,1,{u}b")),
        "---": (None, lambda u, v: (z(f"2b,{u}") + z(f"1b,{v}") + z(f"1b,{u},1") + z(f"1b,1,{u}")
                                    - z(f"1b,{u},1b"))),
        "++-": ("sha", lambda u, v: (z(f"2,{u}b") + zs(f"1,{v}b") + zs(f"1,{u}b,1") + zs(f"1,1,{u}b")
                                     - zh(f"1,{u}b,1b") - (z("2") * z(f"{u}b")).scale(half))),
        "+--": ("sha", lambda u, v: (z(f"2b,{u}") + zs(f"1,{v}b") + zs(f"1,1b,{u}") + z(f"1b,1,{u}")
                                     - z(f"1b,1b,{u}"))),
        "-+-": (None, lambda u, v: (z(f"2,{u}b") + z(f"1b,{v}") + z(f"1b,1b,{u}b").scale(2)
                                    - z(f"1b,1,{u}b"))),
    }
    for signs, (kind, rhs) in rows.items():
        _ENTRIES.append(CatalogEntry(
            f"sum-1bc-{_tag(signs)}", f"restricted triple sum zeta({_pretty('1bc', signs)})", 4,
            (lambda s, k, r: lambda w: (S(w, s, kind=k, where=lambda a, b, c: a == 1), r(w - 2, w - 1)))(
                signs, kind, rhs),
            ("depth3A", _case_for(Y1, signs), Y1)))


_register_1bc()


# full triple sums ---------------------------------------------------------------

@_entry("T-sum-depth3", "sum formula for triple T-values", 4)
def _(w):
    u = w - 2
    return (ST(w, 3, prime=True),
            (T(2) * T(u)).scale(Q(2, 3)) - T(u, 2).scale(2)
            + (z(f"{u},1b,1") - z(f"{u}b,1,1") + z(f"{u}b,1,1b") - z(f"{u},1b,1b")).scale(4))


def _register_abc():
    rows = {
        "+++": lambda u, v, w: z(f"{w}"),
        "+-+": lambda u, v, w: (z(f"{u}b,1,1b").scale(2) - z(f"{u}b,1,1").scale(2) - z(f"1b,1,{u}b")
                                + z(f"1b,1b,{u}b") + z(f"{v}b,1b") - z(f"{v}b,1") - z(f"{u}b,2") - z(f"2b,{u}b")),
        "-++": lambda u, v, w: (z(f"{u}b,1,1") - z(f"{u}b,1,1b") + z(f"1b,{u},1") - z(f"1b,{u},1b")
                                + z(f"1b,1,{u}b") + z(f"1b,1,{u}") - z(f"1b,1b,{u}").scale(2)
                                - z(f"{u}b,2b") - z(f"2,{u}")),
        "--+": lambda u, v, w: (z(f"1b,1,{u}") - z(f"1b,1,{u}b") + z(f"1b,{v}") - z(f"1b,{v}b")
                                + z(f"2b,{u}") - z(f"2b,{u}b") + z(f"{w}b")),
        "-+-": lambda u, v, w: (z(f"{u},1b,1") - z(f"{u},1b,1b") + z(f"1b,1,{u}b") - z(f"1b,1b,{u}b").scale(2)
                                + z(f"1b,1b,{u}") + z(f"1b,{v}b") - z(f"1b,{v}") - z(f"{u},2") - z(f"2,{u}b")
                                - z(f"{u}") * z("2b")),
        "+--": lambda u, v, w: (z(f"{u},1b,1b") - z(f"{u},1b,1") + z(f"1b,1b,{u}") - z(f"1b,1,{u}")
                                - z(f"{u},2b") - z(f"2b,{u}")),
        "++-": lambda u, v, w: (z(f"{u}b,1,1") - z(f"{u}b,1,1b") + z(f"{v}b,1") - z(f"{v}b,1b")
                                - z(f"{u}b,2b") + z(f"{u}b,2") + z(f"{w}b")),
        "---": lambda u, v, w: (z(f"1b,{u},1b") - z(f"1b,{u},1") + z(f"1b,1b,{u}b") - z(f"1b,1,{u}")
                                - z(f"{u}b,2") - z(f"2b,{u}")),
    }
    for signs, rhs in rows.items():
        _ENTRIES.append(CatalogEntry(
            f"sum-depth3-{_tag(signs)}", f"triple sum formula for zeta({_pretty('abc', signs)})", 4,
            (lambda s, r: lambda w: (S(w, s, prime=True), r(w - 2, w - 1, w)))(signs, rhs),
            ("depth3A", _case_for(Z1, signs), Z1)))


_register_abc()


@_entry("T-sum-depth3-ab1", "sum of T(a,b,c) plus sum of T(a,b,1)", 4)
def _(w):
    return (ST(w, 3, prime=True) + ST(w, 3, prime=True, where=lambda a, b, c: c == 1),
            (T(2) * T(w - 2)).scale(Q(2, 3)))


# triple sums with middle index 1 ---------------------------------------------------

def _register_a1c():
    rows = {
        "+++": ("*", lambda u, v, w: zs(f"1,1,{u}") + z(f"{v},1") + z(f"2,{u}")),
        "+--": ("*", lambda u, v, w: (zs(f"1,1b,{u}b") + z(f"1b,{u}b,1b") - z(f"1b,{u}b,1") + z(f"{v},1b")
                                      + z(f"2b,{u}b"))),
        "--+": (None, lambda u, v, w: z(f"1b,1b,{u}b") + z(f"2,{u}b") + z(f"{v}b,1b")),
        "-+-": (None, lambda u, v, w: (z(f"1b,{u},1") + z(f"1b,1,{u}") - z(f"1b,{u},1b") + z(f"{v}b,1")
                                       + z(f"2b,{u}"))),
        "-++": (None, lambda u, v, w: (z(f"1b,1b,{u}b") + z(f"{v}b,1").scale(2) + z(f"1b,{v}") - z(f"1b,{v}b")
                                       - z(f"{v}b,1b") - z(f"{u}b,2") - z(f"{w}"))),
        "++-": ("*", lambda u, v, w: (z(f"{u}b,1b,1b") - z(f"{u}b,1b,1") + zs(f"1,1,{u}b") - z(f"{v}b,1b")
                                      + z(f"{v},1b") + z(f"{v}b,1b").scale(2) - z(f"{v}b,1") - z(f"{u}b,2b")
                                      + z("2") * z(f"{u}b") - z(f"{w}b"))),
        "+-+": ("*", lambda u, v, w: (z(f"{u},1b,1b").scale(2) - z(f"{u},1b,1").scale(2) + z(f"1b,1,{u}")
                                      + zs(f"1,1b,{u}") - z(f"1b,1b,{u}") + z(f"{v}b,1b") + z(f"{v},1b")
                                      + z(f"1b,{v}") - z(f"{v}b,1") - z(f"1b,{v}b") - z(f"2,{u}")
                                      - z(f"{u},2b").scale(2) - z(f"{w}b") - z(f"{w}"))),
        "---": (None, lambda u, v, w: (z(f"{u},1b,1").scale(3) - z(f"{u},1b,1b").scale(3) + z(f"1b,1b,{u}")
                                       + z(f"{v}b,1").scale(2) - z(f"{v}b,1b") + z(f"{u},2b") + z(f"2,{u}")
                                       - z(f"{u},2"))),
    }
    for signs, (kind, rhs) in rows.items():
        _ENTRIES.append(CatalogEntry(
            f"sum-a1c-{_tag(signs)}", f"restricted triple sum zeta({_pretty('a1c', signs)})", 4,
            (lambda s, k, r: lambda w: (S(w, s, kind=k, where=lambda a, b, c: b == 1), r(w - 2, w - 1, w)))(
                signs, kind, rhs),
            ("depth3A", _case_for(XY1, signs), XY1)))


_register_a1c()


# weighted triple sums with weight 2^(b-1) -------------------------------------------

def _w2b(k):
    return lambda a, b, c: k * 2 ** (b - 1)


def _register_2b():
    rows = [
        ("pp", (1, 1, 1), lambda w: S(w, "+++", _w2b(2), "sha"),
         lambda u, v, w: zs(f"1,1,{u}").scale(2) + zs(f"1,{v}").scale(w) - z(f"{u},2").scale(2) - z(f"{w}")),
        ("pm", (1, -1, -1), lambda w: S(w, "+-+", _w2b(2), "sha"),
         lambda u, v, w: (z(f"{u},1b,1b").scale(4) - z(f"{u},1b,1").scale(4) - z(f"1b,1b,{u}").scale(2)
                          + z(f"1b,1,{u}").scale(2) + zs(f"1,1b,{u}").scale(2) + z(f"{v}b,1b").scale(2)
                          - z(f"{v}b,1").scale(2) + zs(f"1,{v}").scale(u) + zs(f"1,{v}b").scale(2)
                          + z(f"2b,{u}").scale(4) + z(f"{u},2").scale(2) + z(f"{w}") + z(f"{w}b").scale(2))),
        ("mp", (-1, 1, -1), lambda w: S(w, "-++", _w2b(2)),
         lambda u, v, w: (z(f"1b,1b,{u}b").scale(2) + z(f"1b,{v}b").scale(w) + z(f"{v}b,1b").scale(2)
                          - z(f"{v}b,1").scale(2) + z(f"2b,{u}b") + z(f"2,{u}b") + z(f"{w}").scale(2)
                          - z(f"{w}b") + z("2") * z(f"{u}b"))),
        ("mm", (-1, -1, 1), lambda w: S(w, "--+", _w2b(2)),
         lambda u, v, w: (z(f"1b,1b,{u}b").scale(2) + z(f"1b,{v}b").scale(u) + z(f"1b,{v}").scale(2)
                          + z(f"2b,{u}b") + z(f"2,{u}b") + z(f"{w}b"))),
        ("mxm", (-1, 1, 1), lambda w: S(w, "---", _w2b(1), "sha") + S(w, "-+-", _w2b(1), "sha"),
         lambda u, v, w: (z(f"{u},1b,1").scale(2) + z(f"1b,1b,{u}").scale(2) - z(f"{u},1b,1b").scale(2)
                          + z(f"1b,{v}").scale(v) + z(f"{v}b,1") + z(f"1b,{v}b") - z(f"{v}b,1b")
                          + z(f"2,{u}") - z(f"{u},2"))),
        ("pxm", (1, 1, -1), lambda w: S(w, "++-", _w2b(1), "sha") + S(w, "+--", _w2b(1), "sha"),
         lambda u, v, w: (zs(f"1,1b,{u}b") + z(f"1b,1,{u}b") - z(f"1b,1b,{u}b") + zs(f"1,1,{u}b")
                          - z(f"{v}b,1b") + z(f"{v}b,1") + zs(f"1,{v}") + zs(f"1,{v}b").scale(v)
                          + z(f"2b,{u}b") + z(f"2,{u}b") + z(f"{w}b") + (z("2b") * z(f"{u}b")).scale(3))),
    ]
    for tag, case, lhs, rhs in rows:
        _ENTRIES.append(CatalogEntry(
            f"weighted-2b-{tag}", f"weighted triple sum with weights 2^(b-1), case {tag}", 4,
            (lambda l, r: lambda w: (l(w), r(w - 2, w - 1, w)))(lhs, rhs),
            ("depth3A", case, YZ1)))


_register_2b()


# weighted triple sums with weight 3^(a-1) 2^(b-1) -----------------------------------

def _w32(k):
    return lambda a, b, c: k * 3 ** (a - 1) * 2 ** (b - 1)


def _register_3a2b():
    C = lambda v: comb(v, 2)
    rows = [
        ("ppp", (1, 1, 1), lambda w: S(w, "+++", _w32(2), "sha"),
         lambda u, v, w: (z(f"{w}").scale(Q(C(v), 3) + u) + zs(f"1,1,{u}").scale(2) - z(f"{u},2").scale(2)
                          + zs(f"1,{v}").scale(w))),
        ("pmp", (1, -1, -1), lambda w: S(w, "+-+", _w32(2), "sha") + S(w, "-+-", _w32(2)) + S(w, "---", _w32(2)),
         lambda u, v, w: (z(f"1b,1,{u}").scale(2) + zs(f"1,1b,{u}").scale(2) + z(f"1b,1b,{u}").scale(2)
                          + z(f"{w}").scale(C(v)) + z(f"1b,{v}").scale(2) + zs(f"1,{v}b").scale(2)
                          + z(f"1b,{v}b").scale(2) - z(f"{u},2").scale(2) - z(f"{u},2b").scale(4)
                          + (z(f"1b,{v}").scale(2) + z(f"{w}b").scale(2) + z(f"{w}") + zs(f"1,{v}")).scale(u))),
        ("pmm", (1, 1, -1), lambda w: S(w, "+--", _w32(2), "sha") + S(w, "++-", _w32(2), "sha") + S(w, "--+", _w32(2)),
         lambda u, v, w: (zs(f"1,1,{u}b").scale(2) + zs(f"1,1b,{u}b").scale(2) + z(f"1b,1,{u}b").scale(2)
                          + zs(f"1,{v}b").scale(2) + z(f"1b,{v}b").scale(2) + zs(f"1,{v}").scale(2)
                          + z(f"2b,{u}b") - z(f"2,{u}b") - z(f"{u}b,2").scale(4) - z(f"{u}b,2b").scale(2)
                          + (zs(f"1,{v}b").scale(2) + z(f"1b,{v}b") + z(f"{w}") + z(f"{w}b").scale(2)).scale(u)
                          + z(f"{w}b").scale(C(v)) + z(f"{w}") - z(f"{w}b"))),
        ("mpp", (-1, -1, -1), lambda w: S(w, "-++", _w32(2)),
         lambda u, v, w: (z(f"1b,1b,{u}b").scale(2) + z(f"1b,{v}b").scale(u) + z(f"1b,{v}").scale(2)
                          + z(f"2,{u}b") - z(f"{u}b,2b").scale(2) - z(f"2b,{u}b")
                          + z(f"{w}b").scale(Q(C(v), 3) + 1) + z(f"{w}").scale(w - 3))),
    ]
    for tag, case, lhs, rhs in rows:
        _ENTRIES.append(CatalogEntry(
            f"weighted-3a2b-{tag}", f"weighted triple sum with weights 3^(a-1) 2^(b-1), case {tag}", 4,
            (lambda l, r: lambda w: (l(w), r(w - 2, w - 1, w)))(lhs, rhs),
            ("depth3B", case, XYZ1)))


_register_3a2b()


def _kbar(w, pair):
    """sum over k + c = w of (k - 1) * pair(k, c)."""
    out = RegPoly.zero()
    for k, c in compositions(w, 2):
        if k > 1:
            out = out + pair(k, c).scale(k - 1)
    return out


def _register_3a2b_proof():
    C = lambda v: comb(v, 2)
    rows = [
        ("ppp", (1, 1, 1),
         lambda w: S(w, "+++", _w32(6), "sha"),
         lambda w: (z(f"{w}").scale(C(w - 1)) + S(w, "+++", kind="*").scale(6)
                    + _kbar(w, lambda k, c: zs(f"{k},{c}") + zs(f"{c},{k}")).scale(3))),
        ("pmp", (1, -1, -1),
         lambda w: S(w, "+-+", _w32(2), "sha") + S(w, "-+-", _w32(2), "sha") + S(w, "---", _w32(2), "sha"),
         lambda w: ((S(w, "-+-") + S(w, "--+") + S(w, "+--", kind="*")).scale(2) + z(f"{w}").scale(C(w - 1))
                    + _kbar(w, lambda k, c: (z(f"{k}b,{c}b") + z(f"{c}b,{k}b")).scale(2)
                            + zs(f"{k},{c}") + zs(f"{c},{k}")))),
        ("pmm", (1, 1, -1),
         lambda w: S(w, "+--", _w32(2), "sha") + S(w, "++-", _w32(2), "sha") + S(w, "--+", _w32(2), "sha"),
         lambda w: ((S(w, "++-", kind="*") + S(w, "+-+", kind="*") + S(w, "-++")).scale(2)
                    + z(f"{w}b").scale(C(w - 1))
                    + _kbar(w, lambda k, c: (zs(f"{k},{c}b") + zs(f"{c},{k}b")).scale(2)
                            + z(f"{c}b,{k}") + z(f"{k}b,{c}") + z(f"{k}b,{c}") - zs(f"{k},{c}b")))),
        ("mpp", (-1, -1, -1),
         lambda w: S(w, "-++", _w32(6), "sha"),
         lambda w: (z(f"{w}b").scale(C(w - 1)) + S(w, "---").scale(6)
                    + _kbar(w, lambda k, c: z(f"{k}b,{c}") + z(f"{c}b,{k}") + zs(f"{k},{c}b")
                            - z(f"{k}b,{c}")).scale(3))),
    ]
    for tag, case, lhs, rhs in rows:
        _ENTRIES.append(CatalogEntry(
            f"weighted-3a2b-{tag}-expanded", f"triple-product specialization at x=y=z=1, case {tag}", 4,
            (lambda l, r: lambda w: (l(w), r(w)))(lhs, rhs), ("depth3B", case, XYZ1), auxiliary=True))

    def prime_a(w, fn):
        out = RegPoly.zero()
        for a, b in compositions(w, 2):
            if a > 1:
                out = out + fn(a, b).scale(a - 1)
        return out

    reduced = [
        ("ppp",
         lambda w: S(w, "+++", _w32(2), "sha"),
         lambda w: (z(f"{w}").scale(Q(C(w - 1), 3)) + S(w, "+++", kind="*").scale(2)
                    + S(w, "++", kind="*").scale(w - 2))),
        ("pmp",
         lambda w: S(w, "+-+", _w32(2), "sha") + S(w, "-+-", _w32(2)) + S(w, "---", _w32(2)),
         lambda w: ((S(w, "-+-") + S(w, "--+") + S(w, "+--", kind="*")).scale(2) + z(f"{w}").scale(C(w - 1))
                    + (S(w, "--").scale(2) + S(w, "++", kind="*")).scale(w - 2))),
        ("pmm",
         lambda w: S(w, "+--", _w32(2), "sha") + S(w, "++-", _w32(2), "sha") + S(w, "--+", _w32(2)),
         lambda w: ((S(w, "++-", kind="*") + S(w, "+-+", kind="*") + S(w, "-++")).scale(2)
                    + z(f"{w}b").scale(C(w - 1))
                    + (S(w, "+-", kind="*").scale(2) + S(w, "-+")).scale(w - 2)
                    + prime_a(w, lambda a, b: zs(f"{a}b,{b}") - z(f"{a},{b}b")))),
        ("mpp",
         lambda w: S(w, "-++", _w32(2)),
         lambda w: (z(f"{w}b").scale(Q(C(w - 1), 3)) + S(w, "---").scale(2)
                    + S(w, "-+", kind="*").scale(w - 2)
                    + prime_a(w, lambda a, b: zs(f"{a},{b}b") - z(f"{a}b,{b}")))),
    ]
    for tag, lhs, rhs in reduced:
        _ENTRIES.append(CatalogEntry(
            f"weighted-3a2b-{tag}-reduced", f"triple-product specialization after index exchange, case {tag}", 4,
            (lambda l, r: lambda w: (l(w), r(w)))(lhs, rhs), auxiliary=True))


_register_3a2b_proof()


# the main weighted sum ----------------------------------------------------------

def _kt_lhs(w):
    return ST(w, 3, coef=lambda a, b, c: 2 ** b * (3 ** (a - 1) - 1))


@_entry("KT-main", "weighted sum 2^b (3^(a-1) - 1) T(a,b,c) for triple T-values", 4)
def _(w):
    return _kt_lhs(w), T(w).scale(Q(2, 3) * (w - 1) * (w - 2))


@_entry("KT-main-expanded", "weighted sum 2^b (3^(a-1) - 1) T(a,b,c), Euler-sum expansion", 4, auxiliary=True)
def _(w):
    u, v = w - 2, w - 1
    terms = [
        (Q(2, 3) * v * u, f"{w}"), (-Q(2, 3) * v * u, f"{w}b"), (-2, f"{w}"), (2, f"{w}b"),
        (-2, f"{u}b,1b,1b"), (-2, f"1b,1b,{u}b"), (-2, f"1b,{u}b,1b"), (-2, f"1b,{v}"), (-2, f"{v},1b"),
        (2, f"1b,1,{u}b"), (2, f"{u}b,1b,1"), (2, f"1b,{u}b,1"), (6, f"1b,{u},1"), (6, f"{u},1b,1"),
        (6, f"1b,1,{u}"), (6, f"1b,{v}"),
        (-6, f"1b,1b,{u}"), (-6, f"1b,{u},1b"), (-6, f"{u},1b,1b"), (-6, f"{v}b,1b"), (-4, f"1b,{v}b"),
        (2, f"{v},1"), (6, f"{v}b,1"),
        (-2, f"{u},2b"), (-2, f"2b,{u}"), (4, f"{u}b,2"), (4, f"2b,{u}b"), (4, f"{u}b,2b"), (4, f"2,{u}b"),
        (-6, f"2,{u}"), (-6, f"{u},2"),
    ]
    rhs = (z("2") * z(f"{u}")).scale(2) - (z("2") * z(f"{u}b")).scale(3)
    for k, text in terms:
        rhs = rhs + z(text).scale(k)
    return _kt_lhs(w), rhs


@_entry("KT-main-reduced", "weighted sum 2^b (3^(a-1) - 1) T(a,b,c), product form", 4, auxiliary=True)
def _(w):
    u, v = w - 2, w - 1
    d11 = z("1b,1b") - z("1b,1")
    rhs = ((z(f"{w}") - z(f"{w}b")).scale(Q(4, 3) * comb(v, 2))
           - (z("2") * z(f"{u}")).scale(4) + z("2") * z(f"{u}b")
           + (z("2b") * z(f"{u}b")).scale(4) - (z("2b") * z(f"{u}")).scale(2)
           - (z(f"{u}b") * d11).scale(2) - (z(f"{u}") * d11).scale(6))
    return _kt_lhs(w), rhs


# -- public access ----------------------------------------------------------------

def entries(include_auxiliary: bool = True) -> list[CatalogEntry]:
    return [e for e in _ENTRIES if include_auxiliary or not e.auxiliary]


def names() -> list[str]:
    return [e.name for e in _ENTRIES]


def get(name: str) -> CatalogEntry:
    for e in _ENTRIES:
        if e.name == name:
            return e
    raise KeyError(f"no catalog identity named {name!r}")


def build(name: str, w: int) -> Identity:
    return get(name).build(w)


def catalog(w: Optional[int] = None, include_auxiliary: bool = True) -> list[Identity]:
    """Every entry instantiated at weight ``w`` (entries whose range excludes w are skipped).

    Without ``w`` each entry is instantiated at its minimum weight.
    """
    out = []
    for e in entries(include_auxiliary):
        if w is None:
            out.append(e.build(e.fixed_weight or e.min_weight))
        elif w in e.weights(w):
            out.append(e.build(w))
    return out
