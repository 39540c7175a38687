import pytest

from nonhopf.slopes import ContinuedFraction, Slope, family_slope
from nonhopf.words import (
    CyclicSeq,
    CyclicWord,
    Endomorphism,
    WordError,
    cs_seq,
    cyclic_equal_up_to_inversion,
    cyclic_reduce,
    epsilon,
    free_reduce,
    inverse,
    is_alternating,
    is_cyclically_alternating,
    least_rotation,
    relator,
    rotate,
    s_seq,
    substitute,
    word_from_sseq,
)

import expected
from oracles import cyclic_syllables, same_cyclic, upper_relator


def test_basic_operations():
    assert inverse("abAB") == "baBA"
    assert free_reduce("abBAab") == "ab"
    assert free_reduce("aAbB") == ""
    assert cyclic_reduce("Baab") == "aa"
    assert rotate("abAB", 1) == "bABa"
    assert rotate("", 3) == ""
    with pytest.raises(WordError):
        s_seq("")
    with pytest.raises(WordError):
        word_from_sseq([2, 0])


def test_alternation():
    assert is_alternating("abAB")
    assert not is_alternating("aab")
    assert is_cyclically_alternating("abAB")
    assert not is_cyclically_alternating("aba")


def test_booth_matches_brute_force():
    import random

    rng = random.Random(7)
    for _ in range(300):
        seq = [rng.randint(0, 2) for _ in range(rng.randint(1, 12))]
        rots = [tuple(seq[k:] + seq[:k]) for k in range(len(seq))]
        k = least_rotation(seq)
        assert tuple(seq[k:] + seq[:k]) == min(rots)


def test_cyclic_word_canonical():
    c1 = CyclicWord.of("bABa")
    c2 = CyclicWord.of("abAB")
    assert c1 == c2 and c1.word == "abAB"
    assert c1.alternating
    with pytest.raises(WordError):
        CyclicWord.of("abA")


def test_cyclic_seq_equality():
    assert CyclicSeq((1, 2, 3)) == (2, 3, 1)
    assert CyclicSeq((1, 2, 3)) != (3, 2, 1)
    assert hash(CyclicSeq((1, 2))) == hash(CyclicSeq((2, 1)))


def test_relator_examples():
    assert relator("1/3") == "abaBAB"
    assert len(relator("10/43")) == 86
    assert cs_seq(relator("10/43")) == expected.CS_R0
    assert cs_seq(relator(ContinuedFraction([3, 3, 4]))) == expected.CS_S
    assert epsilon(1, Slope(1, 3)) == 1
    with pytest.raises(ValueError):
        epsilon(3, Slope(1, 3))


def test_relator_matches_definition_oracle():
    for p in range(1, 80):
        for q in range(1, p + 1):
            try:
                s = Slope(q, p)
            except ValueError:
                continue
            u = relator(s)
            assert u == upper_relator(q, p)
            assert len(u) == 2 * p
            assert same_cyclic(cs_seq(u), cyclic_syllables(u))


def test_word_from_sseq_round_trip():
    x = word_from_sseq(expected.S_X, "a")
    assert len(x) == 25 and x[0] == "a" and x[-1] == "A"
    assert s_seq(x) == expected.S_X
    assert s_seq(inverse(x)) == expected.S_XBAR
    assert s_seq(word_from_sseq((3, 1), "B")) == (3, 1)


def test_endomorphism_substitution():
    f = Endomorphism("ab", "B")
    assert f("a") == "ab"
    assert f("aA") == ""
    assert substitute(f, "aA", reduce=False) == "abBA"
    assert f(inverse("abb")) == inverse(f("abb"))
    with pytest.raises(WordError):
        Endomorphism("aA", "b")


def test_cyclic_equality_up_to_inversion():
    r = family_slope(3, 0)
    u = relator(r)
    assert cyclic_equal_up_to_inversion(rotate(u, 17), r)
    assert cyclic_equal_up_to_inversion(inverse(u), r)
    assert not cyclic_equal_up_to_inversion(u, family_slope(3, 1))
    assert cyclic_equal_up_to_inversion(CyclicWord.of(u), r)
