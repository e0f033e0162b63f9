import numpy as np
import pytest

from lingrowth.errors import NotASubgroup, UnsupportedFamily
from lingrowth.groups import make_spec
from lingrowth.sets import ElementSet
from lingrowth.structure import (
    center,
    closure,
    commutator_subgroup,
    conjugacy_class,
    conjugacy_classes,
    derived_series,
    diagonal_subgroup,
    generating_subset,
    is_soluble,
    is_subgroup,
    sylow_p_subgroup,
)
from oracles import BruteGroup, OracleField


def test_classes_against_brute_force():
    for fam, n, q in [("SL", 2, 3), ("SL", 2, 5), ("PSL", 2, 7), ("GL", 2, 3)]:
        spec = make_spec(fam, n, q)
        B = BruteGroup(OracleField(spec.p, spec.field.modulus), n, fam)
        brute_sizes = sorted(np.bincount(B.class_labels()).tolist())
        classes = conjugacy_classes(spec)
        assert sorted(len(c) for c in classes) == brute_sizes
        mins = [int(c.codes[0]) for c in classes]
        assert mins == sorted(mins)


def test_class_examples():
    spec = make_spec("SL", 2, 3)
    assert sum(len(c) for c in conjugacy_classes(spec)) == 24
    sl25 = make_spec("SL", 2, 5)
    t = sl25.transvection(0, 1, 1)
    assert 120 % len(conjugacy_class(t)) == 0
    minus = sl25.element([[4, 0], [0, 4]])
    assert len(conjugacy_class(minus)) == 1
    assert len(center(sl25)) == 2 and len(center(make_spec("PSL", 2, 5))) == 1
    assert len(center(make_spec("SL", 3, 4))) == 3


def test_sylow_subgroups():
    spec = make_spec("SL", 3, 3)
    U, V = sylow_p_subgroup(spec, "upper"), sylow_p_subgroup(spec, "lower")
    assert len(U) == len(V) == 27
    assert is_subgroup(U) and is_subgroup(V)
    assert len(U & V) == 1
    with pytest.raises(UnsupportedFamily):
        sylow_p_subgroup(make_spec("GL", 2, 3))


def test_derived_series():
    spec = make_spec("SL", 2, 5)
    D = diagonal_subgroup(spec)
    assert is_soluble(D)
    borel = closure(D | sylow_p_subgroup(spec))
    assert [len(H) for H in derived_series(borel)] == [20, 5, 1]
    assert not is_soluble(ElementSet.whole_group(spec))
    # SL(2,3) is soluble: 24 > 8 > 2 > 1
    assert [len(H) for H in derived_series(ElementSet.whole_group(make_spec("SL", 2, 3)))] == [24, 8, 2, 1]
    with pytest.raises(NotASubgroup):
        derived_series(ElementSet(spec, [spec.transvection(0, 1, 1).code]))


def test_commutator_and_generating_subset():
    spec = make_spec("GL", 2, 3)
    G = ElementSet.whole_group(spec)
    assert len(commutator_subgroup(G)) == 24
    gens = generating_subset(G)
    assert len(gens) <= 4 and closure(gens) == G
