import json
from collections import Counter

import pytest

from tvf import catalog
from tvf.algebra import RegPoly
from tvf.identity import Identity
from tvf.index import MtvIndex, SignedComposition, mtv_decompose

SC = SignedComposition.of


def T(*parts):
    return RegPoly.of(mtv_decompose(MtvIndex(parts)))


def Z(*spec, q=1):
    return RegPoly.symbol(SC(*spec), q)


def test_catalog_size_and_families():
    primary = [e.name for e in catalog.entries(include_auxiliary=False)]
    assert len(primary) == 54
    assert len(catalog.entries()) >= 40
    fams = Counter(n.rsplit("-", 1)[0] for n in primary)
    for fam, n in [("sum-depth2", 4), ("sum-ab1", 8), ("sum-1bc", 8), ("sum-depth3", 8),
                   ("sum-a1c", 8), ("weighted-2b", 6), ("weighted-3a2b", 4)]:
        assert fams[fam] == n, fam


def test_names_unique_and_ordered():
    names = catalog.names()
    assert len(names) == len(set(names))
    assert names == [e.name for e in catalog.entries()]
    assert names[0] == "sum-depth2-pp"


def test_kt_main_weight_four():
    # only (2,1,1) survives: 3^(a-1) - 1 vanishes at a = 1
    i = catalog.build("KT-main", 4)
    assert i.lhs == T(2, 1, 1).scale(4)
    assert i.rhs == T(4).scale(4)


def test_euler_relation_entry():
    i = catalog.build("sum-depth2-pp", 3)
    assert (i.lhs, i.rhs) == (Z(2, 1), Z(3))


def test_double_t_sum_at_weight_three():
    i = catalog.build("T-sum-depth2", 3)
    want = (Z(3) - Z(-3) + Z(-2, -1) + Z(-1, -2) - Z(-2, 1) - Z(-1, 2)).scale(2)
    assert i.lhs == T(2, 1)
    assert i.rhs == want


def test_weight_two_pair():
    a = catalog.build("z11rel", 2)
    assert (a.lhs, a.rhs) == (Z(-2, q=2), Z(2, q=-1))
    b = catalog.build("z11rel-diff", 2)
    assert b.difference() == Z(-1, -1) - Z(-1, 1) - Z(-2)


def test_range_errors():
    with pytest.raises(catalog.RangeError):
        catalog.build("KT-main", 3)
    with pytest.raises(catalog.RangeError):
        catalog.build("z11rel", 3)
    with pytest.raises(KeyError):
        catalog.get("no-such-identity")


@pytest.mark.parametrize("w", [4, 5, 6, 7])
def test_every_entry_is_homogeneous(w):
    for ident in catalog.catalog(w):
        assert ident.is_homogeneous(), ident.name
        assert all(c.admissible for c in ident.symbols())


def test_catalog_skips_entries_out_of_range():
    names = {i.name for i in catalog.catalog(3)}
    assert "sum-depth2-pp" in names and "KT-main" not in names and "z11rel" not in names


def test_sources_point_at_equations():
    for e in catalog.entries():
        if e.source is None:
            continue
        fam, signs, point = e.source
        assert fam in ("depth2", "depth3A", "depth3B")
        assert len(signs) == (2 if fam == "depth2" else 3)
        assert any(point)


def test_identity_json_round_trip():
    for name in ("KT-main", "sum-1bc-pmp", "weighted-3a2b-mpp"):
        i = catalog.build(name, 5)
        back = Identity.from_json(json.dumps(i.to_json()))
        assert back.lhs == i.lhs and back.rhs == i.rhs and back.weight == 5
