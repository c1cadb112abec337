from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import RegPoly
from .index import LinComb, SignedComposition, parse_index

__all__ = ["Identity", "regpoly_to_json", "regpoly_from_json"]

DERIVATIONS = ("transcribed", "derived-from-functional-equation", "derived")


def regpoly_to_json(p: RegPoly) -> list:
    """``[[T-degree, "p/q", "index"], ...]``; the constant 1 has index ``""``."""
    return [[k, str(q), str(c)] for k, q, c in p.terms()]


def regpoly_from_json(rows: list) -> RegPoly:
    d: dict[int, dict] = {}
    for k, q, text in rows:
        c = parse_index(text) if text else SignedComposition(())
        d[int(k)] = d.get(int(k), LinComb()) + LinComb.symbol(c, Fraction(q))
    return RegPoly(d)


@dataclass(frozen=True)
class Identity:
    """A claimed equality ``lhs = rhs`` of regularized polynomials of one weight."""

    name: str
    weight: int
    lhs: RegPoly
    rhs: RegPoly
    provenance: str = ""
    derivation: str = "transcribed"
    meta: dict = field(default_factory=dict, compare=False)

    def difference(self) -> RegPoly:
        return self.lhs - self.rhs

    def is_homogeneous(self) -> bool:
        return self.lhs.is_homogeneous(self.weight) and self.rhs.is_homogeneous(self.weight)

    def symbols(self):
        return self.lhs.symbols() | self.rhs.symbols()

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "weight": self.weight,
            "provenance": self.provenance,
            "lhs": regpoly_to_json(self.lhs),
            "rhs": regpoly_to_json(self.rhs),
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "Identity":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            name=obj["name"],
            weight=int(obj["weight"]),
            lhs=regpoly_from_json(obj["lhs"]),
            rhs=regpoly_from_json(obj["rhs"]),
            provenance=obj.get("provenance", ""),
        )
