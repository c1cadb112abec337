"""Linear span of regularized double shuffle relations, one weight at a time.

Rows live over the admissible Euler sums of a fixed weight. A relation between
regularized polynomials is split by powers of T: the T^k coefficient has weight
w - k and is tested against the system of that weight.
"""
from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from gmpy2 import mpq

from .algebra import RegPoly, dsh_identity, rho_identity
from .identity import Identity
from .index import LinComb, SignedComposition, parse_index, signed_compositions

__all__ = [
    "SymbolBasis", "RelationSystem", "Certificate", "MembershipResult",
    "generate_dsh_system", "check_membership", "check_identity", "rank",
    "CapacityError", "DEFAULT_WEIGHT_CAP",
]

log = logging.getLogger(__name__)

DEFAULT_WEIGHT_CAP = 8


class CapacityError(ValueError):
    pass


class SymbolBasis:
    """Admissible signed compositions of one weight in canonical order."""

    def __init__(self, weight: int):
        self.weight = weight
        self.symbols: list[SignedComposition] = (
            [SignedComposition(())] if weight == 0 else signed_compositions(weight, admissible_only=True))
        self.index = {c: i for i, c in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def vector(self, lc: LinComb) -> dict[int, Fraction]:
        out = {}
        for c, q in lc.items():
            if c not in self.index:
                raise ValueError(f"{c} is not an admissible symbol of weight {self.weight}")
            out[self.index[c]] = q
        return out

    def lincomb(self, vec: dict[int, Fraction]) -> LinComb:
        return LinComb._wrap({self.symbols[i]: q for i, q in vec.items()})


@dataclass
class Certificate:
    """target = sum of multiplier * row over the listed rows (exact)."""
    weight: int
    multipliers: list[tuple[str, Fraction]]

    def to_json(self) -> dict:
        return {"weight": self.weight,
                "multipliers": [[prov, str(q)] for prov, q in self.multipliers]}


@dataclass
class MembershipResult:
    member: bool
    certificates: list[Certificate] = field(default_factory=list)
    residual: dict[int, LinComb] = field(default_factory=dict)   # T-degree -> unexplained part
    not_attempted: list[int] = field(default_factory=list)       # weights beyond the cap

    def __bool__(self) -> bool:
        return self.member


def _q(x) -> mpq:
    return x if isinstance(x, type(mpq())) else mpq(Fraction(x).numerator, Fraction(x).denominator)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class _Echelon:
    """Semi-echelon form: each pivot row has its pivot at the largest column it
    touches, normalized to 1. Optionally records how each pivot row was combined
    from generating rows."""

    def __init__(self, track: bool):
        self.track = track
        self.pivots: dict[int, tuple[dict, Optional[dict]]] = {}

    def reduce(self, vec: dict, hist: Optional[dict]):
        pivots = self.pivots
        done: dict[int, mpq] = {}
        while vec:
            col = max(vec)
            q = vec.pop(col)
            if col not in pivots:
                done[col] = q
                continue
            prow, phist = pivots[col]
            for c, p in prow.items():
                if c == col:
                    continue
                v = vec.get(c, 0) - q * p
                if v:
                    vec[c] = v
                else:
                    vec.pop(c, None)
            if hist is not None:
                for r, h in phist.items():
                    v = hist.get(r, 0) - q * h
                    if v:
                        hist[r] = v
                    else:
                        hist.pop(r, None)
        return done, hist

    def insert(self, vec: dict, rid: int) -> bool:
        rem, hist = self.reduce(dict(vec), {rid: mpq(1)} if self.track else None)
        if not rem:
            return False
        col = max(rem)
        inv = 1 / rem[col]
        rem = {c: q * inv for c, q in rem.items()}
        if hist is not None:
            hist = {r: q * inv for r, q in hist.items()}
        self.pivots[col] = (rem, hist)
        return True


class RelationSystem:
    """Generating rows of exact relations over a SymbolBasis.

    Rank and remainders come from a semi-echelon form built as rows arrive; the
    certificate (exact multipliers of generating rows) needs a second echelon
    form that tracks row histories, built on first request.
    """

    def __init__(self, weight: int):
        self.weight = weight
        self.basis = SymbolBasis(weight)
        self.rows: list[dict[int, mpq]] = []
        self.prov: list[str] = []
        self._ech = _Echelon(track=False)
        self._tracked: Optional[_Echelon] = None
        self._lock = threading.Lock()

    # construction -------------------------------------------------------------
    def add_row(self, vec: dict, prov: str) -> bool:
        """Append a generating row; True when it raised the rank."""
        vec = {int(c): _q(q) for c, q in vec.items() if q}
        with self._lock:
            self.rows.append(vec)
            self.prov.append(prov)
            self._tracked = None
            return self._ech.insert(vec, len(self.rows) - 1)

    def add_lincomb(self, lc: LinComb, prov: str) -> bool:
        return self.add_row(self.basis.vector(lc), prov)

    # queries ------------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self._ech.pivots)

    def dimension_bound(self) -> int:
        """Number of symbols minus rank: an upper bound for the dimension of the span of values."""
        return len(self.basis) - self.rank

    def _tracked_echelon(self) -> _Echelon:
        with self._lock:
            if self._tracked is None:
                ech = _Echelon(track=True)
                for rid, vec in enumerate(self.rows):
                    ech.insert(vec, rid)
                self._tracked = ech
            return self._tracked

    def remainder(self, lc: LinComb) -> LinComb:
        vec = {c: _q(q) for c, q in self.basis.vector(lc).items()}
        rem, _ = self._ech.reduce(vec, None)
        return self.basis.lincomb({c: _frac(q) for c, q in rem.items()})

    def contains(self, lc: LinComb) -> bool:
        return not self.remainder(lc)

    def reduce(self, lc: LinComb, certificate: bool = True) -> tuple[LinComb, Optional[Certificate]]:
        """Remainder of lc modulo the span and, when it vanishes, a certificate."""
        rem = self.remainder(lc)
        if rem or not certificate:
            return rem, None
        vec = {c: _q(q) for c, q in self.basis.vector(lc).items()}
        _, hist = self._tracked_echelon().reduce(vec, {})
        # lc - sum_j c_j pivot_j = 0 and hist = -sum_j c_j history_j
        mult = [(self.prov[r], -_frac(q)) for r, q in sorted(hist.items())]
        return LinComb(), Certificate(self.weight, mult)

    def verify_certificate(self, lc: LinComb, cert: Certificate) -> bool:
        index = {p: i for i, p in enumerate(self.prov)}
        acc: dict[int, Fraction] = {}
        for prov, q in cert.multipliers:
            for c, v in self.rows[index[prov]].items():
                acc[c] = acc.get(c, 0) + q * _frac(v)
        acc = {c: v for c, v in acc.items() if v}
        return acc == self.basis.vector(lc)

    # serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "basis": [str(c) for c in self.basis.symbols],
            "rows": [{"prov": p, "entries": [[c, int(q.numerator), int(q.denominator)] for c, q in sorted(r.items())]}
                     for r, p in zip(self.rows, self.prov)],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "RelationSystem":
        if isinstance(obj, str):
            obj = json.loads(obj)
        sysm = cls(int(obj["weight"]))
        if [str(c) for c in sysm.basis.symbols] != obj["basis"]:
            raise ValueError("basis in cached relation system does not match the canonical order")
        for row in obj["rows"]:
            sysm.add_row({int(c): mpq(n, d) for c, n, d in row["entries"]}, row["prov"])
        return sysm


# -- generation -------------------------------------------------------------------

_SYSTEMS: dict[int, RelationSystem] = {}
_SYSTEMS_LOCK = threading.Lock()


def _cache_dir() -> Optional[Path]:
    d = os.environ.get("TVF_CACHE_DIR")
    return Path(d) if d else None


def _build(W: int) -> RelationSystem:
    sysm = RelationSystem(W)
    if W < 2:
        return sysm
    comps = {k: signed_compositions(k) for k in range(1, W)}
    for k in range(1, W // 2 + 1):
        for i, u in enumerate(comps[k]):
            for j, v in enumerate(comps[W - k]):
                if k == W - k and j < i:
                    continue
                rel = dsh_identity(u, v).difference()
                lc = rel.coeff(0)
                if lc:
                    sysm.add_lincomb(lc, f"dsh({u};{v})")
    for c in signed_compositions(W):
        if not c.admissible:
            lc = rho_identity(c).difference().coeff(0)
            if lc:
                sysm.add_lincomb(lc, f"rho({c})")
    return sysm


def generate_dsh_system(W: int, cap: int = DEFAULT_WEIGHT_CAP, use_cache: bool = True) -> RelationSystem:
    """All double shuffle rows of weight W (stuffle vs shuffle for every pair of
    factors, plus the comparison of the two regularizations of each divergent index)."""
    if W < 0:
        raise ValueError("weight must be non-negative")
    if W > cap:
        raise CapacityError(f"weight {W} exceeds the relation-system cap {cap}")
    with _SYSTEMS_LOCK:
        if use_cache and W in _SYSTEMS:
            return _SYSTEMS[W]
        path = _cache_dir() / f"dsh_w{W}.json" if _cache_dir() else None
        sysm = None
        if use_cache and path is not None and path.exists():
            try:
                sysm = RelationSystem.from_json(path.read_text())
            except (ValueError, KeyError) as exc:
                log.warning("ignoring unreadable relation cache %s: %s", path, exc)
        if sysm is None:
            sysm = _build(W)
            if use_cache and path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(json.dumps(sysm.to_json()))
        if use_cache:
            _SYSTEMS[W] = sysm
        return sysm


def rank(W: int, cap: int = DEFAULT_WEIGHT_CAP) -> int:
    return generate_dsh_system(W, cap).rank


def check_membership(target: RegPoly | LinComb, weight: int, cap: int = DEFAULT_WEIGHT_CAP,
                     certificate: bool = True) -> MembershipResult:
    """Is ``target`` (homogeneous of ``weight``) a consequence of double shuffle?

    Every T^k coefficient is reduced in the weight ``weight - k`` system. Weights
    above ``cap`` are reported as not attempted.
    """
    if isinstance(target, LinComb):
        target = RegPoly.of(target)
    result = MembershipResult(True)
    for k, lc in sorted(target.coeffs.items()):
        wk = weight - k
        if not lc:
            continue
        if wk > cap:
            result.not_attempted.append(wk)
            result.member = False
            continue
        if wk < 2:
            result.residual[k] = lc
            result.member = False
            continue
        rem, cert = generate_dsh_system(wk, cap).reduce(lc, certificate)
        if rem:
            result.residual[k] = rem
            result.member = False
        elif cert is not None:
            result.certificates.append(cert)
    return result


def check_identity(identity: Identity, cap: int = DEFAULT_WEIGHT_CAP, certificate: bool = True) -> MembershipResult:
    return check_membership(identity.difference(), identity.weight, cap, certificate)
