"""Indices of Euler sums and multiple T-values, and exact linear combinations of them.

A signed composition ``((s_1, z_1), ..., (s_d, z_d))`` with ``z_j = +-1`` names the
Euler sum

    zeta(s; z) = sum_{n_1 > ... > n_d > 0} z_1^{n_1} ... z_d^{n_d} / (n_1^{s_1} ... n_d^{s_d}).

Text form: ``"2b,3,1b,4"`` (a trailing ``b`` is a bar, i.e. ``z_j = -1``).
MTV indices carry a ``T:`` prefix, e.g. ``"T:2,1,1"``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "W0", "WP", "WM",
    "IndexError_", "ParseError",
    "SignedComposition", "IntegralWord", "MtvIndex", "LinComb",
    "parse_index", "classify", "to_integral_word", "from_integral_word",
    "mtv_decompose", "compositions", "signed_compositions",
]

# Letters of the integral alphabet. Wp/Wm are stored as the pole a in dt/(a - t).
W0 = 0    # dt/t
WP = 1    # dt/(1 - t)
WM = -1   # dt/(-1 - t)


class IndexError_(ValueError):
    """Invalid index or word (bad exponent, trailing dt/t letter, ...)."""


class ParseError(IndexError_):
    pass


class SignedComposition(tuple):
    """Immutable tuple of ``(exponent, sign)`` pairs.

    The empty composition is allowed and stands for the constant 1 (weight 0); it is
    the unit of both products and the constant slot of a regularized polynomial.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[tuple[int, int]] = ()):
        parts = tuple((int(s), int(z)) for s, z in parts)
        for s, z in parts:
            if s < 1:
                raise IndexError_(f"exponent must be >= 1, got {s}")
            if z not in (1, -1):
                raise IndexError_(f"sign must be +1 or -1, got {z}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "SignedComposition":
        return tuple.__new__(cls, parts)

    @classmethod
    def of(cls, *spec: int) -> "SignedComposition":
        """``SignedComposition.of(2, -1)`` is zeta(2, bar 1); negative means barred."""
        return cls((abs(s), 1 if s > 0 else -1) for s in spec)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(z for _, z in self)

    @property
    def weight(self) -> int:
        return sum(s for s, _ in self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def admissible(self) -> bool:
        return not self or self[0] != (1, 1)

    def sort_key(self):
        return (self.weight, len(self), self.exponents,
                tuple(0 if z > 0 else 1 for z in self.signs))

    def __repr__(self) -> str:
        return f"zeta({self})"

    def __str__(self) -> str:
        return ",".join(f"{s}b" if z < 0 else str(s) for s, z in self)


class IntegralWord(tuple):
    """Word over ``{W0, WP, WM}``, outermost letter (nearest t = 1) first."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[int]):
        letters = tuple(int(a) for a in letters)
        if any(a not in (W0, WP, WM) for a in letters):
            raise IndexError_(f"unknown letter in {letters}")
        if letters and letters[-1] == W0:
            raise IndexError_("integral word may not end with dt/t")
        return super().__new__(cls, letters)

    @property
    def admissible(self) -> bool:
        return not self or self[0] != WP

    def __repr__(self) -> str:
        names = {W0: "W0", WP: "Wp", WM: "Wm"}
        return "[" + ", ".join(names[a] for a in self) + "]"


class MtvIndex(tuple):
    """Index ``(s_1, ..., s_d)`` of a multiple T-value."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(s) for s in parts)
        if not parts:
            raise IndexError_("empty MTV index")
        if any(s < 1 for s in parts):
            raise IndexError_(f"MTV exponents must be >= 1, got {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def admissible(self) -> bool:
        return self[0] > 1

    def __repr__(self) -> str:
        return f"T({','.join(map(str, self))})"

    def __str__(self) -> str:
        return "T:" + ",".join(map(str, self))


_PART = re.compile(r"^(\d+)(b?)$")


def parse_index(text: str) -> Union[SignedComposition, MtvIndex]:
    """Parse ``"2b,3"`` into a composition or ``"T:2,1"`` into an MTV index."""
    body = text.strip()
    mtv = body.startswith("T:")
    if mtv:
        body = body[2:]
    tokens = [t.strip() for t in body.split(",")]
    if not body.strip() or any(not t for t in tokens):
        raise ParseError(f"empty part in index {text!r}")
    parts = []
    for tok in tokens:
        m = _PART.match(tok)
        if m is None or (mtv and m.group(2)):
            raise ParseError(f"malformed token {tok!r} in {text!r}")
        s = int(m.group(1))
        if s < 1:
            raise ParseError(f"exponent must be >= 1: token {tok!r}")
        parts.append((s, -1 if m.group(2) else 1))
    if mtv:
        return MtvIndex(s for s, _ in parts)
    return SignedComposition._trusted(tuple(parts))


def classify(c: SignedComposition) -> tuple[int, int, bool]:
    return c.weight, c.depth, c.admissible


def to_integral_word(c: SignedComposition) -> IntegralWord:
    letters = []
    a = 1
    for s, z in c:
        a *= z
        letters.extend([W0] * (s - 1))
        letters.append(a)
    return tuple.__new__(IntegralWord, letters)


def from_integral_word(word: Iterable[int]) -> SignedComposition:
    word = tuple(word)
    if word and word[-1] == W0:
        raise IndexError_(f"invalid word {word}: ends with dt/t")
    parts = []
    prev = 1
    s = 1
    for a in word:
        if a == W0:
            s += 1
            continue
        if a not in (WP, WM):
            raise IndexError_(f"unknown letter {a!r}")
        parts.append((s, a * prev))
        prev = a
        s = 1
    return SignedComposition._trusted(tuple(parts))


def compositions(weight: int, depth: int | None = None) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``weight`` (all depths, or a fixed depth)."""
    if weight == 0:
        if depth in (None, 0):
            yield ()
        return
    if depth == 0:
        return
    for first in range(1, weight + 1):
        rest_depth = None if depth is None else depth - 1
        for rest in compositions(weight - first, rest_depth):
            yield (first,) + rest


def signed_compositions(weight: int, admissible_only: bool = False) -> list[SignedComposition]:
    """All level-2 compositions of a weight, in canonical order."""
    out = []
    for exps in compositions(weight):
        for signs in product((1, -1), repeat=len(exps)):
            c = SignedComposition._trusted(tuple(zip(exps, signs)))
            if not admissible_only or c.admissible:
                out.append(c)
    out.sort(key=SignedComposition.sort_key)
    return out


class LinComb:
    """Finite Q-linear combination of signed compositions.

    Zero coefficients are never stored. Values are treated as immutable: every
    arithmetic operation returns a new object.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[SignedComposition, object] | Iterable = ()):
        acc: dict[SignedComposition, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for c, q in items:
            if not isinstance(c, SignedComposition):
                c = SignedComposition(c)
            acc[c] = acc.get(c, 0) + Fraction(q)
        self._terms = {c: q for c, q in acc.items() if q}

    @classmethod
    def _wrap(cls, d: dict) -> "LinComb":
        obj = object.__new__(cls)
        obj._terms = {c: q for c, q in d.items() if q}
        return obj

    @classmethod
    def one(cls) -> "LinComb":
        return cls._wrap({SignedComposition._trusted(()): Fraction(1)})

    @classmethod
    def symbol(cls, c: SignedComposition, coeff=1) -> "LinComb":
        return cls._wrap({c: Fraction(coeff)})

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> list[tuple[SignedComposition, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coeff(self, c: SignedComposition) -> Fraction:
        return self._terms.get(c, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        d = dict(self._terms)
        for c, q in other._terms.items():
            d[c] = d.get(c, 0) + q
        return LinComb._wrap(d)

    def __sub__(self, other: "LinComb") -> "LinComb":
        d = dict(self._terms)
        for c, q in other._terms.items():
            d[c] = d.get(c, 0) - q
        return LinComb._wrap(d)

    def __neg__(self) -> "LinComb":
        return LinComb._wrap({c: -q for c, q in self._terms.items()})

    def scale(self, k) -> "LinComb":
        k = Fraction(k)
        if not k:
            return LinComb()
        return LinComb._wrap({c: q * k for c, q in self._terms.items()})

    def __mul__(self, k):
        if isinstance(k, LinComb):
            return NotImplemented
        return self.scale(k)

    __rmul__ = __mul__

    def weights(self) -> set[int]:
        return {c.weight for c in self._terms}

    def __repr__(self) -> str:
        return f"LinComb({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for c, q in self.sorted_items():
            sym = "1" if not c else f"z({c})"
            if q == 1:
                term = sym
            elif q == -1:
                term = "-" + sym
            elif not c:
                term = str(q)
            else:
                term = f"{q}*{sym}"
            out.append(term)
        return " + ".join(out).replace("+ -", "- ")


def mtv_decompose(t: MtvIndex) -> LinComb:
    """Expand T(s_1..s_d) into 2^d Euler sums with coefficients +-1.

    Slot j restricts n_j to the parity of d - j + 1, i.e. carries the factor
    (1 + (-1)^{n_j + d - j + 1}). Expanding, a bar sits in every slot with
    eps_j = 1 and the sign is (-1)^{sum_j (d - j + 1) eps_j}; for d <= 3 that is
    (-1)^{d*eps_1 + eps_d}.
    """
    d = len(t)
    terms = {}
    for eps in product((0, 1), repeat=d):
        sign = -1 if sum((d - j) * e for j, e in enumerate(eps)) % 2 else 1
        parts = tuple((s, -1 if e else 1) for s, e in zip(t, eps))
        terms[SignedComposition._trusted(parts)] = Fraction(sign)
    return LinComb._wrap(terms)
