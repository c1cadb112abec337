import json
import random
from fractions import Fraction

import mpmath
import pytest

from tvf import catalog
from tvf.algebra import RegPoly
from tvf.index import LinComb, SignedComposition
from tvf.numeric import PrecisionCtx, eval_lincomb
from tvf.relations import (CapacityError, RelationSystem, SymbolBasis, check_identity, check_membership,
                           generate_dsh_system, rank)

SC = SignedComposition.of


def lc(*pairs):
    return LinComb({c: Fraction(q) for c, q in pairs})


def test_weight_two_system():
    s = generate_dsh_system(2)
    assert len(s.basis) == 4
    # z(2) and log(2)^2 are independent, so two relations among four symbols is the best possible
    assert s.rank == 2 and s.dimension_bound() == 2
    assert s.contains(lc((SC(-2), 2), (SC(2), 1)))
    assert s.contains(lc((SC(-1, -1), 1), (SC(-1, 1), -1), (SC(-2), -1)))
    assert not s.contains(lc((SC(-1, 1), 1)))


def test_euler_relations_follow():
    assert generate_dsh_system(3).contains(lc((SC(2, 1), 1), (SC(3), -1)))
    assert generate_dsh_system(4).contains(lc((SC(3, 1), 4), (SC(4), -1)))


@pytest.mark.parametrize("W,dim", [(2, 2), (3, 3), (4, 5), (5, 8), (6, 13)])
def test_dimension_bounds_are_fibonacci(W, dim):
    assert generate_dsh_system(W).dimension_bound() == dim


def test_single_symbol_is_not_a_relation():
    s = generate_dsh_system(3)
    rem, cert = s.reduce(lc((SC(3), 1)))
    assert rem and cert is None


def test_certificate_reproduces_difference():
    ident = catalog.build("KT-main", 4)
    res = check_identity(ident)
    assert res.member and res.certificates
    s = generate_dsh_system(4)
    target = ident.difference().coeff(0)
    assert s.verify_certificate(target, res.certificates[0])
    tampered = type(res.certificates[0])(4, [(p, q * 2) for p, q in res.certificates[0].multipliers])
    assert not s.verify_certificate(target, tampered)


def test_zero_identity_has_empty_certificate():
    res = check_membership(RegPoly(), 4)
    assert res.member and res.certificates == [] and not res.residual


def test_membership_splits_by_T_degree():
    # T z(2) - T z(2) trivially, but T (z(2,1) - z(3)) needs the weight-3 system
    p = RegPoly.T() * RegPoly.of(lc((SC(2, 1), 1), (SC(3), -1)))
    res = check_membership(p, 4)
    assert res.member and res.certificates[0].weight == 3
    bad = check_membership(RegPoly.T() * RegPoly.symbol(SC(3)), 4)
    assert not bad.member and 1 in bad.residual


def test_beyond_cap_is_not_attempted():
    res = check_membership(RegPoly.symbol(SC(9)), 9, cap=8)
    assert not res.member and res.not_attempted == [9]
    with pytest.raises(CapacityError):
        generate_dsh_system(99)
    with pytest.raises(CapacityError):
        rank(9)


def test_basis_rejects_foreign_symbols():
    b = SymbolBasis(3)
    assert len(b) == 2 * 9 - 6
    with pytest.raises(ValueError):
        b.vector(lc((SC(1, 2), 1)))
    with pytest.raises(ValueError):
        b.vector(lc((SC(2), 1)))


def test_rank_ignores_row_order():
    rng = random.Random(7)
    for W in (3, 4, 5):
        s = generate_dsh_system(W)
        order = list(range(len(s.rows)))
        rng.shuffle(order)
        t = RelationSystem(W)
        for i in order:
            t.add_row(s.rows[i], s.prov[i])
        assert t.rank == s.rank


def test_rows_vanish_numerically():
    ctx = PrecisionCtx(40)
    s = generate_dsh_system(4)
    with mpmath.workdps(60):
        for row in s.rows:
            v = s.basis.lincomb({c: Fraction(int(q.numerator), int(q.denominator)) for c, q in row.items()})
            assert abs(eval_lincomb(v, ctx).value) <= mpmath.mpf(10) ** -35


def test_serialization_is_deterministic():
    a = json.dumps(generate_dsh_system(4, use_cache=False).to_json())
    b = json.dumps(generate_dsh_system(4, use_cache=False).to_json())
    assert a == b
    back = RelationSystem.from_json(a)
    assert back.rank == generate_dsh_system(4).rank
    assert json.dumps(back.to_json()) == a


def test_disk_cache_written(relation_cache):
    generate_dsh_system(3)
    path = relation_cache / "dsh_w3.json"
    assert path.exists()
    assert RelationSystem.from_json(path.read_text()).rank == generate_dsh_system(3).rank
