from itertools import combinations

import pytest

from toricqh import fan as fan_mod
from toricqh import fano
from toricqh.errors import (
    BlowDownInvalid,
    IndexOutOfRange,
    NotACone,
    NotInClass,
    NotInTier,
)
from toricqh.fan import CurveClass, Fan
from toricqh.fano import ExceptionalData, Tier


def test_classify_corpus_full_class(corpus):
    for fan in corpus.values():
        ct = fano.classify(fan)
        assert ct.tier is Tier.FULL_CLASS
        for cert in ct.certificates:
            assert cert.coefficient_sum <= 1
            assert cert.rhs_multiplicity <= 1


def test_classify_hirzebruch_two(f2):
    ct = fano.classify(f2)
    assert ct.tier is Tier.NOT_FANO
    assert ct.tier.render() == "NotFano"
    cert = ct.certificates[0]
    assert cert.pset == (0, 1)
    assert cert.coefficient_sum == 2
    assert cert.rhs_cone == (2,)
    assert cert.rhs_multiplicity == 0


def test_classify_twisted_bundle(bundle3):
    ct = fano.classify(bundle3)
    assert ct.tier is Tier.FANO
    sums = {cert.pset: cert.coefficient_sum for cert in ct.certificates}
    assert sums == {(0, 1, 2): 2, (3, 4): 0}


def test_coordinate_test_matches_tier(corpus, f2, p3, bundle3):
    for fan in list(corpus.values()) + [f2, p3, bundle3]:
        ok, witness = fano.check_condition_iii(fan)
        assert ok == (fano.classify(fan).tier >= Tier.SUBVARIETIES_FANO)
        assert (witness is None) == ok


def test_coordinate_test_witnesses(f2, bundle3):
    ok, witness = fano.check_condition_iii(f2)
    assert not ok and witness == ((0, 2), 1, (-1, 2))
    ok, witness = fano.check_condition_iii(bundle3)
    assert not ok and witness == ((0, 1, 3), 2, (-1, -1, 2))


def test_exceptional_sets_oracles(corpus, p3):
    by_fan = {
        name: {e.set: e.exc for e in fano.exceptional_sets(fan)}
        for name, fan in corpus.items()
    }
    assert by_fan["p2"] == {}
    assert by_fan["p1xp1"] == {}
    assert by_fan["bl1p2"] == {(0, 1): 3}
    assert by_fan["bl2p2"] == {(0, 1): 3, (0, 2): 4, (3, 4): 0}
    assert by_fan["bl3p2"] == {
        (0, 1): 3, (0, 2): 5, (1, 2): 4,
        (3, 4): 1, (3, 5): 0, (4, 5): 2,
    }
    assert fano.exceptional_sets(p3) == ()


def test_exceptional_class_pairings(bl3p2):
    for e in fano.exceptional_sets(bl3p2):
        expected = [0] * bl3p2.n_rays
        for i in e.set:
            expected[i] = 1
        expected[e.exc] = -1
        assert e.cls.pairings == tuple(expected)
        assert e.cls.degree == len(e.set) - 1


def test_exceptional_sets_tier_gate(bundle3):
    with pytest.raises(NotInTier):
        fano.exceptional_sets(bundle3)


def test_special_exceptional_sets(bl1p2, bl3p2):
    assert len(fano.special_exceptional_sets(bl1p2, (0, 3))) == 1
    specials = fano.special_exceptional_sets(bl3p2, (0, 3))
    assert {(e.set, e.exc) for e in specials} == {((0, 1), 3), ((3, 5), 0)}
    with pytest.raises(NotACone):
        fano.special_exceptional_sets(bl3p2, (0, 1))


def test_family_predicates_concrete(bl3p2):
    specials = fano.special_exceptional_sets(bl3p2, (0, 3))
    both = fano.family_predicates(specials)
    assert both == {"distinct_exc": True, "no_overlaps": False, "no_cycles": False}
    for e in specials:
        single = fano.family_predicates([e])
        assert single == {"distinct_exc": True, "no_overlaps": True, "no_cycles": True}
    assert fano.family_predicates([])["no_cycles"]


def test_no_overlaps_implies_no_cycles(corpus):
    for fan in corpus.values():
        for sigma in fan.max_cones:
            specials = fano.special_exceptional_sets(fan, sigma)
            for size in range(len(specials) + 1):
                for family in combinations(specials, size):
                    preds = fano.family_predicates(family)
                    if preds["no_overlaps"]:
                        assert preds["no_cycles"]


def test_primitive_exceptional_sets(corpus):
    counts = {
        name: len(fano.primitive_exceptional_sets(fan))
        for name, fan in corpus.items()
    }
    assert counts == {"p2": 0, "p1xp1": 0, "bl1p2": 1, "bl2p2": 3, "bl3p2": 6}
    for fan in corpus.values():
        prims = {pd.set for pd in fan_mod.primitive_data(fan)}
        for e in fano.primitive_exceptional_sets(fan):
            assert e.set in prims


def test_blow_down_oracles(corpus):
    bl1, bl2 = corpus["bl1p2"], corpus["bl2p2"]
    (only,) = fano.primitive_exceptional_sets(bl1)
    assert fan_mod.is_isomorphic(fano.blow_down(bl1, only), corpus["p2"])
    by_exc = {e.exc: e for e in fano.primitive_exceptional_sets(bl2)}
    assert fan_mod.is_isomorphic(fano.blow_down(bl2, by_exc[3]), bl1)
    assert fan_mod.is_isomorphic(fano.blow_down(bl2, by_exc[0]), corpus["p1xp1"])


def test_blow_down_gates(f2, bundle3, p1xp1, bl1p2):
    fake = ExceptionalData((0, 1), 2, CurveClass((1, 1, -1, 0)))
    with pytest.raises(NotInClass):
        fano.blow_down(f2, fake)
    with pytest.raises(NotInClass):
        fano.blow_down(bundle3, ExceptionalData((0, 1), 3, CurveClass((1, 1, 0, -1, 0))))
    with pytest.raises(BlowDownInvalid):
        fano.blow_down(p1xp1, ExceptionalData((0, 2), 1, CurveClass((1, 0, 1, 0))))
    (real,) = fano.primitive_exceptional_sets(bl1p2)
    off = ExceptionalData(real.set, real.exc, real.cls.scaled(2))
    with pytest.raises(BlowDownInvalid):
        fano.blow_down(bl1p2, off)


def test_blow_down_tower_default(corpus):
    tower = fano.blow_down_tower(corpus["bl3p2"])
    assert [f.n_rays for f in tower] == [6, 5, 4, 3]
    for stage in tower:
        assert fano.classify(stage).tier is Tier.FULL_CLASS
    ok, dims = fano.is_product_of_projective_spaces(tower[-1])
    assert ok and dims == (2,)
    assert fano.blow_down_tower(corpus["p2"]) == [corpus["p2"]]
    assert fano.blow_down_tower(corpus["p1xp1"]) == [corpus["p1xp1"]]


def test_blow_down_tower_with_order(bl3p2, bl1p2):
    tower = fano.blow_down_tower(bl3p2, order=(0, 1))
    assert [f.n_rays for f in tower] == [6, 5, 4, 3]
    assert fano.is_product_of_projective_spaces(tower[-1])[0]
    explicit = fano.blow_down_tower(bl3p2, order=(3, 4, 5))
    assert [f.n_rays for f in explicit] == [6, 5, 4, 3]
    with pytest.raises(BlowDownInvalid):
        fano.blow_down_tower(bl1p2, order=(0,))
    with pytest.raises(IndexOutOfRange):
        fano.blow_down_tower(bl1p2, order=(9,))


def test_is_product_of_projective_spaces(corpus, p3, bl1p2):
    assert fano.is_product_of_projective_spaces(corpus["p2"]) == (True, (2,))
    assert fano.is_product_of_projective_spaces(corpus["p1xp1"]) == (True, (1, 1))
    assert fano.is_product_of_projective_spaces(p3) == (True, (3,))
    assert fano.is_product_of_projective_spaces(bl1p2) == (False, ())
    p1xp2 = Fan(
        3,
        ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, -1)),
        tuple((a,) + rest for a in (0, 1) for rest in ((2, 3), (2, 4), (3, 4))),
    )
    assert fano.is_product_of_projective_spaces(p1xp2) == (True, (1, 2))
