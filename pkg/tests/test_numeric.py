from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from tvf.algebra import RegPoly
from tvf.index import LinComb, MtvIndex, SignedComposition, parse_index
from tvf.numeric import (DomainError, PrecisionCtx, clear_cache, eval_euler, eval_lincomb, eval_mtv,
                         eval_regpoly, oracle_alt_zeta, oracle_extrapolated, oracle_partial_sum,
                         oracle_zeta)

SC = SignedComposition.of


def tol(D):
    return mpf(10) ** -D


@pytest.mark.parametrize("D", [20, 40, 60])
def test_depth_one_against_oracles(D):
    with mpmath.workdps(D + 20):
        cases = [(SC(2), oracle_zeta(2, D)), (SC(3), oracle_zeta(3, D)),
                 (SC(-2), oracle_alt_zeta(2, D)), (SC(-1), oracle_alt_zeta(1, D))]
        for c, want in cases:
            r = eval_euler(c, PrecisionCtx(D))
            assert abs(r.value - want) <= tol(D), c
            assert r.error_bound <= tol(D)


def test_oracles_against_closed_forms():
    with mpmath.workdps(70):
        assert abs(oracle_zeta(2, 60) - mpmath.pi ** 2 / 6) < tol(60)
        assert abs(oracle_zeta(5, 60) - mpmath.zeta(5)) < tol(60)
        assert abs(oracle_alt_zeta(1, 60) + mpmath.log(2)) < tol(60)
        assert abs(oracle_alt_zeta(2, 60) + mpmath.pi ** 2 / 12) < tol(60)


def test_digits_stable_under_refinement():
    lo = eval_euler(SC(-3, 1, -1), PrecisionCtx(20)).value
    hi = eval_euler(SC(-3, 1, -1), PrecisionCtx(60)).value
    assert abs(lo - hi) <= tol(20)


def test_classical_values():
    ctx = PrecisionCtx(40)
    with mpmath.workdps(60):
        # Euler: zeta(2,1) = zeta(3); zeta(3,1) = zeta(4)/4
        assert abs(eval_euler(SC(2, 1), ctx).value - mpmath.zeta(3)) < tol(40)
        assert abs(eval_euler(SC(3, 1), ctx).value - mpmath.zeta(4) / 4) < tol(40)
        # zeta(1b,1) = log(2)^2 / 2
        assert abs(eval_euler(SC(-1, 1), ctx).value - mpmath.log(2) ** 2 / 2) < tol(40)


def test_mtv_values():
    ctx = PrecisionCtx(30)
    with mpmath.workdps(50):
        assert abs(eval_mtv(MtvIndex([2]), ctx).value - 3 * mpmath.zeta(2) / 2) < tol(30)
        assert abs(eval_mtv(MtvIndex([4]), ctx).value - 15 * mpmath.zeta(4) / 8) < tol(30)


@pytest.mark.parametrize("text", ["2b,1", "3,1b,1", "2,2b", "1b,1b,1"])
def test_direct_summation_oracle(text):
    c = parse_index(text)
    assert abs(oracle_extrapolated(c, 10) - eval_euler(c).value) < tol(10)


def test_direct_summation_oracle_for_tvalue():
    # summed from the parity-restricted definition, not the Euler-sum decomposition
    with mpmath.workdps(30):
        want = eval_mtv(MtvIndex([2, 1, 1]), PrecisionCtx(20)).value
    assert abs(oracle_extrapolated(MtvIndex([2, 1, 1]), 10) - want) < tol(10)


def test_partial_sum_oracle_converges():
    with mpmath.workdps(30):
        s = oracle_partial_sum(SC(-2, 1), 4000)
        v = eval_euler(SC(-2, 1)).value
        assert abs(mpf(s.numerator) / s.denominator - v) < 1e-3


def test_partial_sum_small_case():
    # M = 2: only n1 = 2 > n2 = 1
    assert oracle_partial_sum(SC(2, -1), 2) == Fraction(1, 4) * -1


def test_non_admissible_rejected():
    with pytest.raises(DomainError):
        eval_euler(SC(1, 2))
    with pytest.raises(DomainError):
        eval_mtv(MtvIndex([1, 2]))


def test_lincomb_and_regpoly():
    ctx = PrecisionCtx(30)
    lc = LinComb({SC(2, 1): 1, SC(3): -1})
    assert abs(eval_lincomb(lc, ctx).value) < tol(30)
    p = RegPoly.T(2) + RegPoly.symbol(SC(2), Fraction(1, 2))
    with mpmath.workdps(40):
        want = 4 + mpmath.zeta(2) / 2
        assert abs(eval_regpoly(p, 2, ctx).value - want) < tol(30)


def test_cache_gives_identical_values():
    clear_cache()
    a = eval_euler(SC(-2, 3, 1), PrecisionCtx(35))
    b = eval_euler(SC(-2, 3, 1), PrecisionCtx(35))
    clear_cache()
    c = eval_euler(SC(-2, 3, 1), PrecisionCtx(35))
    assert a == b == c


def test_precision_floor():
    with pytest.raises(ValueError):
        PrecisionCtx(5)


def test_partial_sum_examples():
    assert oracle_partial_sum(SC(2), 3) == Fraction(49, 36)
    assert oracle_partial_sum(SC(-1, -1), 2) == Fraction(-1, 2)
    M = 50
    lhs = oracle_partial_sum(SC(2), M) * oracle_partial_sum(SC(3), M)
    assert lhs == sum(oracle_partial_sum(c, M) for c in (SC(5), SC(2, 3), SC(3, 2)))


def test_regularized_constant_terms():
    from tvf.algebra import reg_shuffle, reg_stuffle
    ctx = PrecisionCtx(30)
    with mpmath.workdps(45):
        z2 = eval_euler(SC(2), ctx).value
        z21 = eval_euler(SC(2, 1), ctx).value
        assert abs(eval_regpoly(reg_stuffle(SC(1, 1)), 0, ctx).value + z2 / 2) < tol(30)
        assert abs(eval_regpoly(reg_shuffle(SC(1, 2)), 0, ctx).value + 2 * z21) < tol(30)
        # and at T = 1 the linear term contributes z(2)
        assert abs(eval_regpoly(reg_shuffle(SC(1, 2)), 1, ctx).value - (z2 - 2 * z21)) < tol(30)


def test_mtv_is_sum_over_decomposition():
    from tvf.index import compositions, mtv_decompose
    ctx = PrecisionCtx(25)
    for w in range(2, 7):
        for exps in compositions(w):
            if exps[0] == 1:
                continue
            t = MtvIndex(exps)
            with mpmath.workdps(40):
                direct = sum(q * eval_euler(c, ctx).value for c, q in mtv_decompose(t).items())
                assert abs(eval_mtv(t, ctx).value - direct) <= tol(25)


def test_double_shuffle_rows_vanish_numerically():
    from tvf.algebra import dsh_identity
    from tvf.index import signed_compositions
    ctx = PrecisionCtx(30)
    for W in (3, 4, 5):
        for k in range(1, W // 2 + 1):
            for u in signed_compositions(k):
                for v in signed_compositions(W - k):
                    d = dsh_identity(u, v).difference()
                    for T in (0, 1, 2):
                        with mpmath.workdps(45):
                            assert abs(eval_regpoly(d, T, ctx).value) <= tol(25), (u, v, T)
