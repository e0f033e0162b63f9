import numpy as np
import pytest

from lingrowth import groups
from lingrowth.errors import ResultCapExceeded, SpecMismatch, UsageError
from lingrowth.groups import make_spec
from lingrowth.rng import stream
from lingrowth.sets import ElementSet, power_set, product_of, product_set
from lingrowth.structure import closure, diagonal_subgroup, standard_generators, sylow_p_subgroup
from lingrowth.words import Word, parse_word, word_image
from lingrowth.errors import TooLarge

SL27 = make_spec("SL", 2, 7)


def brute_product(A, B):
    spec = A.spec
    return {int(spec.mul(np.int64(a), np.int64(b))) for a in A.codes.tolist() for b in B.codes.tolist()}


def test_product_against_double_loop():
    G = ElementSet.whole_group(SL27)
    for i in range(5):
        rng = stream(i, "prod")
        A, B = G.sample(rng, 50), G.sample(rng, 30)
        assert set((A * B).codes.tolist()) == brute_product(A, B)


def test_product_identities():
    U = sylow_p_subgroup(SL27, "upper")
    assert U * U == U
    A = ElementSet.whole_group(SL27).sample(stream(0, "a"), 20)
    one = ElementSet.identity_set(SL27)
    assert one * A == A == A * one
    empty = ElementSet(SL27, [])
    assert len(empty * A) == 0


def test_product_cap_and_mismatch():
    G = ElementSet.whole_group(SL27)
    A = G.sample(stream(1, "cap"), 100)
    with pytest.raises(ResultCapExceeded):
        product_set(A, A, cap=50)
    with pytest.raises(SpecMismatch):
        A * ElementSet.identity_set(make_spec("SL", 2, 5))


def test_power_set():
    spec = make_spec("SL", 2, 3)
    one = ElementSet.identity_set(spec)
    assert power_set(one, 7) == one
    S = standard_generators(spec).with_identity()
    sizes = [len(power_set(S, k)) for k in range(1, 8)]
    assert sizes == sorted(sizes) and sizes[-1] == 24
    with pytest.raises(UsageError):
        power_set(S, 0)
    T = standard_generators(make_spec("SL", 2, 5))
    assert power_set(T, 3).is_symmetric
    # memoised powers compose
    for j, k in [(1, 2), (2, 2), (2, 3)]:
        assert power_set(T, j) * power_set(T, k) == power_set(T, j + k)
    assert product_of([T, T, T]) == power_set(T, 3)


def test_set_algebra_and_flags():
    G = ElementSet.whole_group(SL27)
    rng = stream(2, "alg")
    A, B = G.sample(rng, 40), G.sample(rng, 40)
    assert set((A | B).codes.tolist()) == set(A.codes.tolist()) | set(B.codes.tolist())
    assert set((A & B).codes.tolist()) == set(A.codes.tolist()) & set(B.codes.tolist())
    assert set((A - B).codes.tolist()) == set(A.codes.tolist()) - set(B.codes.tolist())
    assert (A & B) <= A
    S = A.symmetrized()
    assert S.is_symmetric and S.inverse() == S
    assert S.with_identity().contains_identity and not S.without_identity().contains_identity
    assert G.is_whole_group() and not A.is_whole_group()
    assert len(ElementSet(SL27, np.concatenate([A.codes, A.codes]))) == len(A)
    g = SL27.elem(A.codes[0])
    assert g in A and A.codes[0] in A
    conj = A.conjugate(SL27.elem(B.codes[0]))
    assert len(conj) == len(A)
    assert hash(A) == hash(ElementSet(SL27, A.codes[::-1]))


def test_element_file_roundtrip(tmp_path):
    spec = make_spec("PSL", 2, 9)
    A = ElementSet.whole_group(spec).sample(stream(3, "file"), 25)
    path = tmp_path / "a.txt"
    A.save(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "PSL(2,9)" and len(lines) == 26
    assert ElementSet.load(path) == A


def test_element_file_rejects_bad_codes():
    spec = make_spec("SL", 2, 5)
    with pytest.raises(UsageError):
        ElementSet.from_lines(["SL(2,5)", "ffff"])
    with pytest.raises(UsageError):
        ElementSet.from_lines(["SL(2,5)", "zz"])
    diag2 = format(int(spec.encode(np.array([[2, 0], [0, 2]]))), "x")
    with pytest.raises(UsageError):
        ElementSet.from_lines(["SL(2,5)", diag2])
    with pytest.raises(UsageError):
        ElementSet.from_lines([])


def test_words():
    w = parse_word("x y x^-1 y^-1")
    assert w.arity == 2 and str(w) == "x1x2x1^-1x2^-1"
    assert Word((1, 2, -2, -1)).is_trivial
    assert parse_word("x^3").letters == (1, 1, 1)
    assert parse_word("x^-2").letters == (-1, -1)
    with pytest.raises(UsageError):
        parse_word("x + y")


def test_word_image():
    spec = make_spec("PSL", 2, 5)
    G = ElementSet.whole_group(spec)
    assert word_image(parse_word("x"), spec) == G
    sq = word_image(parse_word("x^2"), spec)
    assert sq.contains_identity
    # exhaustive evaluation oracle
    brute = {int(spec.mul(np.int64(g), np.int64(g))) for g in G.codes.tolist()}
    assert set(sq.codes.tolist()) == brute
    comm = word_image(parse_word("x y x^-1 y^-1"), spec)
    # x y x^-1 y^-1 and a^-1 b^-1 a b range over the same set
    brute = {int(spec.commutator(np.int64(a), np.int64(b))) for a in G.codes.tolist() for b in G.codes.tolist()}
    assert set(comm.codes.tolist()) == brute
    with pytest.raises(TooLarge):
        word_image(parse_word("x y z w"), make_spec("PSL", 2, 13))


def test_diagonal_and_closure():
    D = diagonal_subgroup(SL27)
    assert len(D) == 6 and closure(D) == D
    assert len(closure(standard_generators(SL27))) == groups.group_order(SL27)
