"""Check catalog identities numerically, symbolically, or both."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

import mpmath
from mpmath import mpf

from . import catalog as _catalog
from .identity import Identity
from .numeric import CapacityError, PrecisionCtx, eval_lincomb, eval_regpoly
from .relations import DEFAULT_WEIGHT_CAP, check_identity

__all__ = ["VerifyReport", "verify_identity", "verify_many", "numeric_residual", "threshold"]

METHODS = ("numeric", "symbolic", "both")


def threshold(digits: int) -> mpf:
    return mpf(10) ** (-(digits - 5))


@dataclass(frozen=True)
class VerifyReport:
    identity: str
    weight: int
    digits: int
    lhs: str
    rhs: str
    residual: str
    passed: bool
    method: str
    elapsed_ms: int
    detail: str = ""

    FIELDS = ("identity", "weight", "digits", "lhs", "rhs", "residual", "pass", "method", "elapsed_ms")

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d.pop("detail")
        return {k: d[k] for k in self.FIELDS}

    @classmethod
    def from_json(cls, obj: dict | str) -> "VerifyReport":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["identity"], int(obj["weight"]), int(obj["digits"]), obj["lhs"], obj["rhs"],
                   obj["residual"], bool(obj["pass"]), obj["method"], int(obj["elapsed_ms"]))

    def row(self) -> list:
        return [self.to_json()[k] for k in self.FIELDS]


def numeric_residual(identity: Identity, ctx: PrecisionCtx) -> mpf:
    """Largest |value| among the T-coefficients of lhs - rhs.

    An identity of polynomials in T holds iff every coefficient vanishes, so
    checking coefficients is stronger than checking a few values of T.
    """
    diff = identity.difference()
    worst = mpf(0)
    with mpmath.workdps(ctx.working_digits):
        for k in range(diff.degree + 1):
            lc = diff.coeff(k)
            if lc:
                worst = max(worst, abs(eval_lincomb(lc, ctx).value))
    return worst


def _fmt(x: mpf, digits: int) -> str:
    return mpmath.nstr(x, digits, min_fixed=-5, max_fixed=5)


def verify_identity(identity: Identity, digits: int = 30, method: str = "numeric",
                    cap: int = DEFAULT_WEIGHT_CAP) -> VerifyReport:
    """Run one check. With method "both" the identity passes only if both checks pass.

    A symbolic check beyond the relation cap is reported as not attempted and
    counts as a failure of that check.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    t0 = time.perf_counter()
    ctx = PrecisionCtx(digits)
    lhs = rhs = res = ""
    ok = True
    notes = []
    if method in ("numeric", "both"):
        try:
            with mpmath.workdps(ctx.working_digits):
                lv = eval_regpoly(identity.lhs, 0, ctx).value
                rv = eval_regpoly(identity.rhs, 0, ctx).value
                r = numeric_residual(identity, ctx)
            lhs, rhs, res = _fmt(lv, digits), _fmt(rv, digits), mpmath.nstr(r, 5)
            ok = r <= threshold(digits)
        except CapacityError as exc:
            ok = False
            notes.append(str(exc))
    if method in ("symbolic", "both"):
        m = check_identity(identity, cap)
        if m.not_attempted:
            notes.append(f"symbolic check not attempted above weight {cap}")
        elif not m.member:
            notes.append("difference is outside the double shuffle span")
        else:
            notes.append(f"certificate with {sum(len(c.multipliers) for c in m.certificates)} rows")
        ok = ok and m.member
        if method == "symbolic":
            res = "0" if m.member else "nonzero"
    elapsed = int(round((time.perf_counter() - t0) * 1000))
    return VerifyReport(identity.name, identity.weight, digits, lhs, rhs, res, ok, method, elapsed,
                        "; ".join(notes))


def _job(item, digits, method, cap):
    name, w = item
    return verify_identity(_catalog.build(name, w), digits, method, cap)


def verify_many(items: Iterable[tuple[str, int]], digits: int = 30, method: str = "numeric",
                threads: int = 1, cap: int = DEFAULT_WEIGHT_CAP) -> list[VerifyReport]:
    """Verify (name, weight) pairs; results come back in input order whatever the pool does."""
    items = list(items)
    job = partial(_job, digits=digits, method=method, cap=cap)
    if threads <= 1 or len(items) <= 1:
        return [job(it) for it in items]
    # mpmath keeps its working precision in process-global state, so workers are processes
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(job, items))


def plan(names: Optional[list[str]] = None, weights: Iterable[int] = (),
         include_auxiliary: bool = True) -> list[tuple[str, int]]:
    """Expand names x weights in catalog order, dropping weights outside each entry's range."""
    ws = sorted(set(weights))
    out = []
    for e in _catalog.entries(include_auxiliary):
        if names is not None and e.name not in names:
            continue
        for w in ws:
            if e.fixed_weight is not None:
                if w == e.fixed_weight:
                    out.append((e.name, w))
            elif w >= e.min_weight:
                out.append((e.name, w))
    return out
