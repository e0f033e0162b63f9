from fractions import Fraction

import numpy as np
import pytest

from lingrowth.errors import (
    BudgetExceeded,
    CentralElement,
    CoverNotReached,
    NotGenerating,
    PreconditionViolated,
    UnknownGroup,
)
from lingrowth.groups import make_spec, parse_spec
from lingrowth.quasirandom import (
    DEGC_TABLE,
    baby_product_experiment,
    class_cover_exponent,
    conj_product_decomposition,
    degc_lookup,
    gowers_check,
    is_product_free,
    non_central_class_reps,
    product_free_search,
    psl_trick_check,
    psl_trick_min_size,
    psl_trick_threshold_met,
    sylow_product_cover,
    turbo_check,
    waring_check,
    waring_threshold,
)
from lingrowth.rng import stream
from lingrowth.sets import ElementSet
from lingrowth.structure import sylow_p_subgroup
from lingrowth.verdict import FINDING, HOLDS, NOT_APPLICABLE
from lingrowth.words import parse_word
from oracles import BruteGroup, OracleField, min_irrep_degree


@pytest.mark.parametrize("key", sorted(DEGC_TABLE))
def test_degree_table_against_class_algebra(key):
    spec = parse_spec(key)
    entry = DEGC_TABLE[key]
    B = BruteGroup(OracleField(spec.p, spec.field.modulus), spec.n, spec.family)
    assert entry.k_exact == min_irrep_degree(B)
    assert entry.k_lower <= entry.k_exact


def test_degree_lookup():
    assert degc_lookup(make_spec("SL", 2, 5)).k_lower == 2  # (q - 1)/2
    e = degc_lookup(make_spec("SL", 2, 17))
    assert e.k_exact is None and e.k == 8 and e.kind == "bound"
    assert degc_lookup(make_spec("PSL", 2, 19)).k == 9
    with pytest.raises(UnknownGroup):
        degc_lookup(make_spec("SL", 4, 3))
    with pytest.raises(UnknownGroup):
        degc_lookup(make_spec("GL", 2, 5))


def test_gowers():
    spec = make_spec("PSL", 2, 7)
    G = ElementSet.whole_group(spec)
    k = degc_lookup(spec).k
    # |A|^3 * 3 > 168^3 needs |A| >= 117
    v = gowers_check(G, G.sample(stream(0, "g"), 117), k)
    assert v.verdict == HOLDS and v.exact_quantities["|A^3|"] == 168
    v = gowers_check(G, G.sample(stream(0, "g"), 116), k)
    assert v.verdict == NOT_APPLICABLE
    with pytest.raises(PreconditionViolated):
        gowers_check(sylow_p_subgroup(spec), G, k)


def test_turbo():
    spec = make_spec("PSL", 2, 11)
    G = ElementSet.whole_group(spec)
    k = 5
    rng = stream(1, "turbo")
    sets = [G.sample(rng, 480), G.sample(rng, 400), G.sample(rng, 400)]
    v = turbo_check(G, sets, k)
    assert v.exact_quantities["threshold_met"] == (480 * 400 * 400 * 5 >= 660**3)
    assert v.verdict in (HOLDS, NOT_APPLICABLE)
    sets = [G.sample(rng, 650) for _ in range(4)]
    assert turbo_check(G, sets, k).verdict == HOLDS
    with pytest.raises(PreconditionViolated):
        turbo_check(G, sets[:2], k)
    with pytest.raises(PreconditionViolated):
        turbo_check(G, sets[:2] + [ElementSet(spec, [])], k)


def test_psl_trick():
    spec = make_spec("PSL", 2, 13)
    m = psl_trick_min_size(spec)
    assert psl_trick_threshold_met(spec, m) and not psl_trick_threshold_met(spec, m - 1)
    assert m**3 * 13 >= 8 * spec.order**3 > (m - 1) ** 3 * 13
    G = ElementSet.whole_group(spec)
    assert psl_trick_check(spec, G).verdict == HOLDS
    # for tiny q the threshold exceeds |G|
    assert psl_trick_min_size(make_spec("PSL", 2, 5)) > 60
    assert psl_trick_check(make_spec("PSL", 2, 5), ElementSet.whole_group(make_spec("PSL", 2, 5))).verdict == NOT_APPLICABLE
    with pytest.raises(PreconditionViolated):
        psl_trick_check(make_spec("GL", 2, 5), ElementSet.identity_set(make_spec("GL", 2, 5)))


def test_baby_product():
    spec = make_spec("SL", 3, 4)
    rng = stream(2, "baby")
    extras = ElementSet(spec, spec.random_codes(rng, 1))
    v = baby_product_experiment(3, 4, extras)
    assert v.verdict == HOLDS and v.exact_quantities["branch"] in ("S^3=G", "growth")
    assert v.exact_quantities["ratio"] == Fraction(v.exact_quantities["|S^3|"], v.exact_quantities["|S|"])
    with pytest.raises(PreconditionViolated):
        baby_product_experiment(3, 3, ElementSet(make_spec("SL", 3, 3), []))
    with pytest.raises(NotGenerating):
        baby_product_experiment(3, 4, ElementSet(spec, []))


def test_sylow_cover():
    for spec in (make_spec("SL", 2, 5), make_spec("SL", 3, 3), make_spec("PSL", 2, 7), make_spec("SL", 2, 4)):
        v = sylow_product_cover(spec)
        m = v.exact_quantities["m"]
        assert v.verdict == HOLDS and 3 <= m <= 5
        sizes = v.exact_quantities["partial_sizes"]
        assert sizes == sorted(sizes) and sizes[-1] == spec.order


def test_class_cover():
    spec = make_spec("SL", 2, 5)
    reps = non_central_class_reps(spec)
    assert len(reps) == 7
    for g in reps:
        v = class_cover_exponent(spec, g)
        assert v.verdict == HOLDS and v.exact_quantities["m"] <= 80
        assert v.exact_quantities["m"] >= v.exact_quantities["counting_lower_bound"]
    with pytest.raises(CentralElement):
        class_cover_exponent(spec, spec.element([[4, 0], [0, 4]]))
    # small fields: classes inside the normal Q8 of SL(2,3) never cover
    small = make_spec("SL", 2, 3)
    for g in non_central_class_reps(small):
        if g.order() == 4:
            with pytest.raises(CoverNotReached):
                class_cover_exponent(small, g, max_power=10)
        else:
            assert class_cover_exponent(small, g).verdict in (HOLDS, FINDING)


def test_conj_decomposition():
    spec = make_spec("PSL", 2, 7)
    G = ElementSet.whole_group(spec)
    v = conj_product_decomposition(G, G)
    assert v.exact_quantities["N"] == 1
    A = G.sample(stream(3, "cd"), 6)
    v = conj_product_decomposition(G, A, budget=32)
    assert v.verdict == HOLDS and v.exact_quantities["N"] >= v.exact_quantities["counting_lower_bound"]
    assert len(v.witness_or_counterexample["conjugators"]) == v.exact_quantities["N"]
    with pytest.raises(BudgetExceeded):
        conj_product_decomposition(G, A, budget=2)
    with pytest.raises(PreconditionViolated):
        conj_product_decomposition(G, ElementSet.identity_set(spec))


def test_waring():
    for q in (2, 3, 5, 7, 11, 13, 17):
        for size, rank in ((100, 1), (5000, 2), (1, 1)):
            m = waring_threshold(size, q, rank)
            assert m**13 * q**rank >= size**13
            assert m == 1 or (m - 1) ** 13 * q**rank < size**13
    spec = make_spec("PSL", 2, 7)
    v = waring_check(parse_word("x^2"), spec, 5)
    assert v.exact_quantities["w(L)^2=L"] is True
    assert v.verdict in (HOLDS, FINDING)
    assert v.exact_quantities["failures"] == len((v.witness_or_counterexample or {}).get("failed_trials", []))
    with pytest.raises(PreconditionViolated):
        waring_check(parse_word("x x^-1"), spec, 1)
    with pytest.raises(PreconditionViolated):
        waring_check(parse_word("x^2"), make_spec("SL", 2, 5), 1)


def test_product_free():
    spec = make_spec("PSL", 2, 7)
    G = ElementSet.whole_group(spec)
    v = product_free_search(G, budget=2000)
    X = v.witness_or_counterexample
    assert v.verdict == HOLDS and v.exact_quantities["product_free"]
    found = ElementSet.from_lines(X)
    assert is_product_free(found) and len(found) == v.exact_quantities["|X|"] > 0
    # brute-force check of product-freeness
    codes = found.codes
    prods = spec.mul(codes[:, None], codes[None, :])
    assert not np.isin(prods, codes).any()
    assert not is_product_free(G)
