"""Property-based checks of the structural invariants."""

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from lingrowth import groups
from lingrowth.cayley import cayley_graph, diameter, girth, is_connected
from lingrowth.field import make_field
from lingrowth.growth import check_ruzsa, check_subgroup_growth, coset_cover_count
from lingrowth.groups import make_spec
from lingrowth.quasirandom import waring_threshold
from lingrowth.sets import ElementSet, power_set
from lingrowth.structure import center, diagonal_subgroup, sylow_p_subgroup
from lingrowth.verdict import HOLDS

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 8), (251, 1), (3, 5)]
SPECS = [make_spec(*s) for s in (("SL", 2, 5), ("PSL", 2, 7), ("SL", 2, 4), ("GL", 2, 3), ("SL", 3, 2), ("PSL", 2, 9))]
BIG_SPECS = [make_spec(*s) for s in (("SL", 3, 4), ("PSL", 3, 5), ("GL", 3, 8), ("SL", 4, 3))]

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@st.composite
def field_triples(draw):
    p, e = draw(st.sampled_from(FIELDS))
    F = make_field(p, e)
    a, b, c = (draw(st.integers(0, F.q - 1)) for _ in range(3))
    return F, a, b, c


@given(field_triples())
def test_field_axioms(t):
    F, a, b, c = t
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.power(F.add(a, b), F.p) == F.add(F.power(a, F.p), F.power(b, F.p))


@given(st.sampled_from(BIG_SPECS), st.integers(0, 2**32 - 1))
def test_group_axioms(spec, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (spec.random_codes(rng, 64) for _ in range(3))
    assert np.array_equal(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)))
    assert np.all(spec.mul(a, spec.inv(a)) == spec.identity_code)
    assert np.array_equal(spec.inv(spec.mul(a, b)), spec.mul(spec.inv(b), spec.inv(a)))
    assert np.array_equal(spec.encode(spec.decode(a)), a)


@given(st.integers(0, 2**32 - 1))
def test_psl_well_defined(seed):
    sl, psl = make_spec("SL", 3, 4), make_spec("PSL", 3, 4)
    rng = np.random.default_rng(seed)
    a, b = sl.random_codes(rng, 32), sl.random_codes(rng, 32)
    # multiplying representatives by central scalars does not change the class
    z = groups.center_codes(sl)[rng.integers(len(groups.center_codes(sl)))]
    az = sl.mul(a, z)
    assert np.array_equal(psl.encode(sl.decode(a)), psl.encode(sl.decode(az)))
    lhs = psl.encode(sl.decode(sl.mul(az, b)))
    rhs = psl.mul(psl.encode(sl.decode(a)), psl.encode(sl.decode(b)))
    assert np.array_equal(lhs, rhs)


@st.composite
def subsets(draw, max_size=30):
    spec = draw(st.sampled_from(SPECS))
    G = groups.enumerate_codes(spec)
    idx = draw(st.lists(st.integers(0, len(G) - 1), min_size=1, max_size=max_size))
    return ElementSet(spec, G[idx])


@given(subsets(), st.data())
def test_product_size_bounds(A, data):
    G = groups.enumerate_codes(A.spec)
    idx = data.draw(st.lists(st.integers(0, len(G) - 1), min_size=1, max_size=30))
    B = ElementSet(A.spec, G[idx])
    AB = A * B
    assert max(len(A), len(B)) <= len(AB) <= min(len(A) * len(B), len(G))
    assert (AB).inverse() == B.inverse() * A.inverse()


@given(subsets(max_size=12), st.integers(3, 5))
def test_ruzsa_never_violated(A, k):
    S = A.symmetrized().with_identity()
    v = check_ruzsa(S, k)
    assert v.verdict == HOLDS


@given(subsets(max_size=10), st.integers(1, 3), st.sampled_from(["upper", "diag", "center"]))
def test_subgroup_growth_never_violated(A, k, which):
    spec = A.spec
    if which == "upper" and spec.family in ("SL", "PSL"):
        H = sylow_p_subgroup(spec)
    elif which == "diag":
        H = diagonal_subgroup(spec)
    else:
        H = center(spec)
    S = A.symmetrized().with_identity()
    assert check_subgroup_growth(S, H, k).verdict == HOLDS


@given(subsets(max_size=10))
def test_powers_monotone_with_identity(A):
    S = A.with_identity()
    sizes = [len(power_set(S, k)) for k in (1, 2, 3, 4)]
    assert sizes == sorted(sizes)
    K = Fraction(sizes[2], sizes[0])
    assert 1 <= K <= len(S) ** 2


@given(subsets(max_size=25))
def test_coset_cover_bounds(A):
    H = diagonal_subgroup(A.spec)
    n = coset_cover_count(A, H)
    assert 1 <= n <= min(len(A), A.spec.order // len(H))
    assert len(A) <= n * len(H)


@given(subsets(max_size=4))
def test_girth_diameter_relation(A):
    S = A.symmetrized().without_identity()
    if len(S) == 0:
        return
    g = cayley_graph(S, check=False)
    if not is_connected(g):
        return
    assert girth(g) <= 2 * diameter(g) + 1


@given(st.integers(1, 10**6), st.integers(2, 10**4), st.integers(1, 6))
def test_waring_threshold_is_least(size, q, rank):
    m = waring_threshold(size, q, rank)
    assert m**13 * q**rank >= size**13
    assert m == 1 or (m - 1) ** 13 * q**rank < size**13
