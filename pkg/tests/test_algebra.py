from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tvf.algebra import (RegPoly, dsh_identity, reg, reg_shuffle, reg_stuffle, regularize, rho,
                         rho_identity, rho_T_power, shuffle, shuffle_lincomb, stuffle, stuffle_lincomb)
from tvf.index import LinComb, SignedComposition, signed_compositions, to_integral_word
from tvf.numeric import PrecisionCtx, eval_lincomb, oracle_partial_sum

SC = SignedComposition.of
E = SignedComposition(())


def L(*pairs):
    return LinComb({c: q for c, q in pairs})


def Z(c, q=1):
    return RegPoly.symbol(c, q)


parts = st.tuples(st.integers(1, 3), st.sampled_from((1, -1)))
small = st.lists(parts, min_size=1, max_size=3).map(SignedComposition).filter(lambda c: c.weight <= 5)


# -- products ------------------------------------------------------------------

def test_stuffle_depth_one():
    assert stuffle(SC(2), SC(3)) == L((SC(5), 1), (SC(2, 3), 1), (SC(3, 2), 1))
    # merged sign is the product of the signs
    assert stuffle(SC(-1), SC(-1)) == L((SC(-1, -1), 2), (SC(2), 1))


def test_stuffle_depth_two_by_one():
    want = L((SC(3, 1), 1), (SC(2, 2), 1), (SC(2, 1, 1), 2), (SC(1, 2, 1), 1))
    assert stuffle(SC(2, 1), SC(1)) == want


def test_shuffle_examples():
    w2 = to_integral_word(SC(2))
    assert shuffle(w2, w2) == L((SC(3, 1), 4), (SC(2, 2), 2))
    assert shuffle(SC(-1), SC(-1)) == L((SC(-1, 1), 2))
    assert shuffle(SC(2), E) == L((SC(2), 1))


def test_stuffle_unit():
    assert stuffle(SC(2, -1), E) == L((SC(2, -1), 1))


@given(small, small)
def test_shuffle_mass(u, v):
    total = sum(q for _, q in shuffle(u, v).items())
    assert total == comb(u.weight + v.weight, u.weight)


@settings(max_examples=100, deadline=None)
@given(small, small, small)
def test_products_commute_and_associate(u, v, w):
    for prod, ext in ((stuffle, stuffle_lincomb), (shuffle, shuffle_lincomb)):
        assert prod(u, v) == prod(v, u)
        assert ext(prod(u, v), L((w, 1))) == ext(L((u, 1)), prod(v, w))


def test_stuffle_matches_truncated_sums():
    # the stuffle product is the product of nested sums, even after truncation
    M = 30
    comps = [c for w in (1, 2, 3) for c in signed_compositions(w) if c.depth <= 2]
    for u in comps:
        for v in comps:
            if u.weight + v.weight > 5:
                continue
            lhs = oracle_partial_sum(u, M) * oracle_partial_sum(v, M)
            rhs = sum(q * oracle_partial_sum(c, M) for c, q in stuffle(u, v).items())
            assert lhs == rhs, (u, v)


def test_shuffle_lincomb_matches_shuffle():
    a = L((SC(2), 1), (SC(-1, 1), -2))
    want = shuffle(SC(2), SC(-2)) - shuffle(SC(-1, 1), SC(-2)).scale(2)
    assert shuffle_lincomb(a, L((SC(-2), 1))) == want


def test_stuffle_lincomb_bilinear():
    a = L((SC(2), 2), (SC(-1), Fraction(1, 3)))
    b = L((SC(3), 1))
    want = stuffle(SC(2), SC(3)).scale(2) + stuffle(SC(-1), SC(3)).scale(Fraction(1, 3))
    assert stuffle_lincomb(a, b) == want


# -- regularization ------------------------------------------------------------

def test_reg_stuffle_examples():
    assert reg_stuffle(SC(3, 2)) == Z(SC(3, 2))
    assert reg_stuffle(SC(1)) == RegPoly.T()
    assert reg_stuffle(SC(1, 1)) == RegPoly.T(2).scale(Fraction(1, 2)) - Z(SC(2), Fraction(1, 2))
    for v in (2, 3, 4):
        want = RegPoly.T() * Z(SC(v)) - Z(SC(v, 1)) - Z(SC(v + 1))
        assert reg_stuffle(SC(1, v)) == want


def test_reg_shuffle_examples():
    assert reg_shuffle(SC(1, 1)) == RegPoly.T(2).scale(Fraction(1, 2))
    assert reg_shuffle(SC(1, 2)) == RegPoly.T() * Z(SC(2)) - Z(SC(2, 1), 2)
    assert reg_shuffle(SC(-2, -1)) == Z(SC(-2, -1))


def test_admissible_fixed_points():
    for w in range(1, 9):
        for c in signed_compositions(w, admissible_only=True):
            assert reg(c, "*") == Z(c) == reg(c, "sha")


def test_regularized_polys_only_hold_admissible_symbols():
    for c in signed_compositions(5):
        for kind in ("*", "sha"):
            p = reg(c, kind)
            assert all(s.admissible for s in p.symbols())
            assert p.is_homogeneous(5)


def test_reg_stuffle_is_multiplicative():
    # reg_*(1) reg_*(v) expands back through the stuffle product
    for v in (SC(2), SC(-1), SC(1, -2)):
        assert reg_stuffle(SC(1)) * reg_stuffle(v) == regularize(stuffle(SC(1), v), "*")


# -- rho -----------------------------------------------------------------------

def test_rho_low_degrees():
    assert rho(RegPoly.const(1)) == RegPoly.const(1)
    assert rho(RegPoly.T()) == RegPoly.T()
    assert rho(RegPoly.T(2)) == RegPoly.T(2) + Z(SC(2))


def test_rho_cubic_from_generating_series():
    # k! [u^k] exp(sum_{n>=2} (-1)^n z(n) u^n / n) e^{Tu} at k = 3
    assert rho_T_power(3) == RegPoly.T(3) + RegPoly.T() * Z(SC(2), 3) - Z(SC(3), 2)


def test_rho_sends_stuffle_reg_to_shuffle_reg():
    assert rho(reg_stuffle(SC(1, 1))) == reg_shuffle(SC(1, 1))
    assert rho_identity(SC(1, 1)).difference() == RegPoly()


def test_triple_one_is_outside_the_weight_four_statement():
    # z_sha(1,1,1) - z_*(1,1,1) = z(2) T / 2 - z(3) / 3: the cubic term of rho contributes z(3)
    d = reg_shuffle(SC(1, 1, 1)) - reg_stuffle(SC(1, 1, 1))
    assert d == RegPoly.T() * Z(SC(2), Fraction(1, 2)) - Z(SC(3), Fraction(1, 3))
    assert rho(reg_stuffle(SC(1, 1, 1))) == reg_shuffle(SC(1, 1, 1))


def test_rho_identity_numerically():
    ctx = PrecisionCtx(30)
    for c in signed_compositions(4):
        if c.admissible:
            continue
        d = rho_identity(c).difference()
        for k in range(d.degree + 1):
            assert abs(eval_lincomb(d.coeff(k), ctx).value) < mpmath.mpf(10) ** -30, (c, k)


# -- double shuffle ------------------------------------------------------------

def _proportional(a: LinComb, b: LinComb) -> bool:
    c, q = next(iter(b.items()))
    return bool(a) and a == b.scale(a.coeff(c) / q)


def test_dsh_gives_euler_relation():
    d = dsh_identity(SC(1), SC(2)).difference()
    assert d.degree == 0
    assert _proportional(d.coeff(0), L((SC(2, 1), 1), (SC(3), -1)))


def test_dsh_weight_four():
    d = dsh_identity(SC(2), SC(2)).difference()
    assert _proportional(d.coeff(0), L((SC(3, 1), 4), (SC(4), -1)))


def test_dsh_barred_ones():
    # zeta(2) = 2 zeta(1b,1) - 2 zeta(1b,1b), i.e. z(1b,1b) - z(1b,1) = z(2b) once 2 z(2b) = -z(2)
    d = dsh_identity(SC(-1), SC(-1)).difference()
    assert _proportional(d.coeff(0), L((SC(2), 1), (SC(-1, 1), -2), (SC(-1, -1), 2)))


def test_dsh_of_divergent_pair_is_trivial():
    assert dsh_identity(SC(1), SC(1)).difference() == RegPoly()


def test_regpoly_text():
    p = RegPoly.T(2) - Z(SC(2, -1), 3)
    assert str(p).startswith("T^2")
    assert "- 3*z(2,1b)" in str(p)
