"""High-precision evaluation of admissible Euler sums and multiple T-values.

The iterated integral over [0, 1] is split at 1/2. The outer piece is mapped to
[0, 1/2] by t -> 1 - t, which swaps dt/t and dt/(1-t) and turns dt/(-1-t)
into -dt/(2-t). Every piece is then a nested sum

    sum_{n_1 > ... > n_d > 0} prod_j (y/c_j)^{n_j - n_{j+1}} / n_j^{s_j},   y = 1/2,

with |y/c_j| <= 1/2, so a truncation at n_1 <= N has a rigorous geometric tail.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mpf

from .algebra import RegPoly
from .index import (
    W0, WP, WM, MtvIndex, SignedComposition,
    mtv_decompose, to_integral_word,
)

__all__ = [
    "PrecisionCtx", "EvalResult", "DomainError", "CapacityError",
    "eval_euler", "eval_mtv", "eval_regpoly", "eval_lincomb",
    "oracle_partial_sum", "oracle_zeta", "oracle_alt_zeta",
    "oracle_extrapolated", "clear_cache",
]

MAX_TERMS = 20000


class DomainError(ValueError):
    pass


class CapacityError(RuntimeError):
    def __init__(self, msg: str, achieved: float | None = None):
        super().__init__(msg)
        self.achieved = achieved


@dataclass(frozen=True)
class PrecisionCtx:
    digits: int = 40
    guard: int = 15

    def __post_init__(self):
        if self.digits < 10:
            raise ValueError("digits must be >= 10")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard


@dataclass(frozen=True)
class EvalResult:
    value: mpf
    error_bound: mpf

    def __str__(self) -> str:
        return f"{self.value} +- {mpmath.nstr(self.error_bound, 3)}"


_cache: dict = {}
_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _tail_terms(depth: int, log2_target: float) -> int:
    """Smallest N with sum_{n>N} C(n-1, depth-1) 2^-n below 2^log2_target."""
    from math import log2
    n = max(depth + 1, 8)
    while n < MAX_TERMS:
        m = n + 1
        q = m / (2.0 * (m - depth + 1)) if m > depth - 1 else 1.0
        if q < 1:
            first = log2(comb(m - 1, depth - 1)) - m
            if first - log2(1 - q) < log2_target:
                return n
        n += 8
    raise CapacityError(f"depth {depth} piece needs more than {MAX_TERMS} terms")


def _split_blocks(letters: tuple) -> list[tuple[int, int]]:
    """Word over {0, c...} -> [(s_j, c_j)] blocks; ``letters`` must not end in 0."""
    blocks = []
    s = 1
    for a in letters:
        if a == 0:
            s += 1
        else:
            blocks.append((s, a))
            s = 1
    return blocks


def _nested_half(blocks: tuple, n_terms: int, bits: int) -> int:
    """Integral from 0 to 1/2 of (dt/t)^{s_1-1} dt/(c_1-t) ..., as a nested sum.

    Fixed point with ``bits`` fractional bits. Every ratio 1/(2c) is +-2^-1 or
    2^-2, so multiplications are shifts; each operation loses at most one ulp.
    """
    shifts = [(1 if abs(c) == 1 else 2, c < 0) for _, c in blocks]
    d = len(blocks)
    s_d = blocks[-1][0]
    sh, neg = shifts[-1]
    v = [0] * (n_terms + 1)
    p = 1 << bits
    for n in range(1, n_terms + 1):
        p >>= sh
        v[n] = (-p if neg and n % 2 else p) // n ** s_d
    for j in range(d - 2, -1, -1):
        s = blocks[j][0]
        sh, neg = shifts[j]
        w = 0
        nv = [0] * (n_terms + 1)
        for n in range(1, n_terms + 1):
            # w = sum_{1 <= m < n} r^{n-m} v[m]
            nv[n] = w // n ** s
            w = (w + v[n]) >> sh
            if neg:
                w = -w
        v = nv
    return sum(v)


def _piece(letters: tuple, ctx: PrecisionCtx) -> tuple[mpf, mpf]:
    """Value and error bound of a [0, 1/2] piece; |value| <= 1 always."""
    key = ("piece", letters, ctx)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    blocks = tuple(_split_blocks(letters))
    depth = len(blocks)
    if depth == 0:
        res = (mpf(1), mpf(0))
    else:
        from math import log2
        log2_target = -(ctx.digits + ctx.guard / 2) * log2(10) - 6
        n_terms = _tail_terms(depth, log2_target)
        bits = int(ctx.working_digits * 3.33) + 16
        with mpmath.workdps(ctx.working_digits):
            val = mpmath.ldexp(mpf(_nested_half(blocks, n_terms, bits)), -bits)
            m = n_terms + 1
            q = m / (2.0 * (m - depth + 1))
            tail = mpf(comb(m - 1, depth - 1)) * mpf(2) ** (-m) / (1 - q)
            # one ulp per operation, damped by |ratio| <= 1/2 along each level
            rounding = mpf(4 * depth * (n_terms + 1)) * mpf(2) ** (-bits)
        res = (val, tail + rounding)
    with _cache_lock:
        _cache[key] = res
    return res


_TAU = {W0: WP, WP: W0, WM: 2}


def _holder(word: tuple, ctx: PrecisionCtx) -> tuple[mpf, mpf]:
    """Integral of an admissible word over [0, 1] via the split at 1/2."""
    n = len(word)
    total = mpf(0)
    err = mpf(0)
    with mpmath.workdps(ctx.working_digits):
        for k in range(n + 1):
            head = word[:k]
            # reversed, transformed outer piece; each Wm contributes a factor -1
            outer = tuple(_TAU[a] for a in reversed(head))
            sign = -1 if sum(1 for a in head if a == WM) % 2 else 1
            a_val, a_err = _piece(outer, ctx)
            b_val, b_err = _piece(word[k:], ctx)
            total += sign * a_val * b_val
            err += a_err + b_err + a_err * b_err
        err += mpf(10) ** (-ctx.working_digits) * (n + 1)
    return total, err


def eval_euler(c: SignedComposition, ctx: PrecisionCtx | None = None) -> EvalResult:
    """Value of the Euler sum zeta(s; z) with a certified absolute error bound."""
    ctx = ctx or PrecisionCtx()
    c = SignedComposition(c)
    if not c:
        return EvalResult(mpf(1), mpf(0))
    if not c.admissible:
        raise DomainError(f"{c!r} is not admissible")
    key = ("euler", str(c), ctx)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    val, err = _holder(tuple(to_integral_word(c)), ctx)
    if err > mpf(10) ** (-ctx.digits):
        raise CapacityError(f"could not certify {ctx.digits} digits for {c!r}", float(err))
    res = EvalResult(val, err)
    with _cache_lock:
        _cache[key] = res
    return res


def eval_lincomb(lc, ctx: PrecisionCtx | None = None) -> EvalResult:
    ctx = ctx or PrecisionCtx()
    total = mpf(0)
    err = mpf(0)
    with mpmath.workdps(ctx.working_digits):
        for c, q in lc.items():
            r = eval_euler(c, ctx)
            coeff = mpf(q.numerator) / q.denominator
            total += coeff * r.value
            err += abs(coeff) * r.error_bound
    return EvalResult(total, err)


def eval_mtv(t: MtvIndex, ctx: PrecisionCtx | None = None) -> EvalResult:
    t = MtvIndex(t)
    if not t.admissible:
        raise DomainError(f"{t!r} is not admissible")
    return eval_lincomb(mtv_decompose(t), ctx)


def eval_regpoly(p: RegPoly, T_value=0, ctx: PrecisionCtx | None = None) -> EvalResult:
    """Horner evaluation at T = T_value; coefficients via eval_euler."""
    ctx = ctx or PrecisionCtx()
    with mpmath.workdps(ctx.working_digits):
        tv = mpf(T_value) if not isinstance(T_value, Fraction) else mpf(T_value.numerator) / T_value.denominator
        val = mpf(0)
        err = mpf(0)
        for k in range(p.degree, -1, -1):
            r = eval_lincomb(p.coeff(k), ctx)
            val = val * tv + r.value
            err = err * abs(tv) + r.error_bound
    return EvalResult(val, err)


# -- independent oracles ------------------------------------------------------

def oracle_partial_sum(c: SignedComposition, M: int) -> Fraction:
    """Exact truncated sum over M >= n_1 > ... > n_d > 0."""
    c = SignedComposition(c)
    if M < len(c):
        raise ValueError("M must be at least the depth")
    # prev[n] = sum over the deeper indices, all of them < n
    prev = [Fraction(1)] * (M + 2)
    for s, z in reversed(c):
        cur = [Fraction(0)] * (M + 2)
        run = Fraction(0)
        for n in range(1, M + 1):
            run += Fraction(z ** n, n ** s) * prev[n]
            cur[n + 1] = run
        prev = cur
    return prev[M + 1]


def oracle_zeta(s: int, digits: int) -> mpf:
    """zeta(s), s >= 2, by Euler-Maclaurin summation with a bounded remainder."""
    if s < 2:
        raise DomainError("s must be >= 2")
    with mpmath.workdps(digits + 10):
        N = max(10, digits)
        total = mpmath.fsum(mpf(n) ** (-s) for n in range(1, N))
        Nm = mpf(N)
        total += Nm ** (1 - s) / (s - 1) + Nm ** (-s) / 2
        rising = mpf(s)  # s (s+1) ... (s+2k-2)
        k = 1
        while True:
            term = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * rising * Nm ** (-s - 2 * k + 1)
            total += term
            if abs(term) < mpf(10) ** (-(digits + 5)):
                break
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            k += 1
        return +total


def oracle_alt_zeta(s: int, digits: int) -> mpf:
    """sum_{n>=1} (-1)^n / n^s by the Cohen-Villegas-Zagier acceleration."""
    with mpmath.workdps(digits + 10):
        n = int((digits + 5) * 1.31) + 2  # error ~ 2 / 5.83^n
        d = (3 + mpmath.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        total = mpf(0)
        for k in range(n):
            c = b - c
            total += c / mpf(k + 1) ** s
            b = b * (k + n) * (k - n) / ((k + mpf(1) / 2) * (k + 1))
        # total / d = sum_k (-1)^k / (k+1)^s = -(sum (-1)^n / n^s)
        return -total / d


def _direct_partial_sums(weights_fn, exps: tuple, stops: list[int], dps: int) -> list[mpf]:
    """Running nested sums of prod_j w_j(n_j) / n_j^{s_j} up to each stop."""
    M = stops[-1]
    with mpmath.workdps(dps):
        prev = None
        d = len(exps)
        for j in range(d - 1, -1, -1):
            s = exps[j]
            cur = [mpf(0)] * (M + 2)
            run = mpf(0)
            for n in range(1, M + 1):
                w = weights_fn(j, n)
                if w:
                    inner = mpf(1) if prev is None else prev[n]
                    run += w * inner / mpf(n) ** s
                cur[n + 1] = run
            prev = cur
        return [prev[m + 1] for m in stops]


def oracle_extrapolated(index, digits: int = 10, max_n: int = 8000) -> mpf:
    """Direct summation of the defining series, extrapolated in the cutoff.

    Partial sums S(M) with M even have an expansion L + sum_k P_k(log M) / M^k
    with deg P_k < depth; L is fitted by least squares at high working precision.
    Accepts a SignedComposition (Euler sum) or an MtvIndex (parity-restricted sum,
    summed directly, not through the Euler-sum decomposition).
    """
    if isinstance(index, MtvIndex):
        d = len(index)
        exps = tuple(index)

        def weight(j, n):
            return (2 if (n - (d - j)) % 2 == 0 else 0)
    else:
        c = SignedComposition(index)
        if not c.admissible:
            raise DomainError(f"{c!r} is not admissible")
        d = len(c)
        exps = c.exponents
        signs = c.signs

        def weight(j, n):
            return signs[j] ** n

    kmax = 6
    nlog = d
    unknowns = 1 + kmax * nlog
    stops = sorted({2 * int(round(max_n / 2 * (0.25 + 0.75 * i / (unknowns + 7)))) for i in range(unknowns + 8)})
    dps = 3 * digits + 30
    sums = _direct_partial_sums(weight, exps, stops, dps)
    with mpmath.workdps(dps):
        m0 = mpf(stops[0])
        lmax = mpmath.log(stops[-1])
        rows = []
        for m in stops:
            h = m0 / m
            lm = mpmath.log(m) / lmax
            row = [mpf(1)]
            for k in range(1, kmax + 1):
                for i in range(nlog):
                    row.append(lm ** i * h ** k)
            rows.append(row)
        A = mpmath.matrix(rows)
        b = mpmath.matrix(sums)
        sol, _ = mpmath.qr_solve(A, b)
        return +sol[0]
