import random

import pytest

from nonhopf.seqcalc import (
    HOLDS,
    HYPOTHESIS_FAIL,
    VACUOUS,
    VIOLATED,
    ShapeError,
    ct_of_slope,
    cyclic_contains,
    decompose,
    disjointness_check,
    expand_runs,
    family_cs,
    lemma_useful_check,
    linear_contains,
    slope_from_cs,
    split_cyclic_runs,
    split_runs,
    tv_from_sequence,
    tv_seqs,
    useful_hypotheses,
)
from nonhopf.slopes import ContinuedFraction, family_slope
from nonhopf.words import CyclicWord, cs_seq, relator

import expected
from oracles import brute_decompositions


def random_cfs(n, seed=2024, kmax=6, cmax=6):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        k = rng.randint(1, kmax)
        out.append(ContinuedFraction([rng.randint(1, cmax) for _ in range(k)]))
    return out


def test_split_runs():
    assert split_runs((5, 4, 4, 5, 4, 5), 4, 5) == ((2, 1), 1, 1)
    assert split_runs((4, 5, 4, 4), 4, 5) == ((1, 2), 0, 0)
    assert expand_runs((2, 1), 4, 5, 1, 1) == (5, 4, 4, 5, 4, 5)
    with pytest.raises(ShapeError):
        split_runs((4, 5, 5, 4), 4, 5)
    with pytest.raises(ShapeError):
        split_runs((4, 6), 4, 5)
    assert split_cyclic_runs(expected.CS_R0, 4, 5) == (3, 2, 2, 3, 2, 2)


def test_decompose_examples():
    d = decompose([2, 3])
    assert (d.s1, d.s2) == ((3,), (2, 2))
    d = decompose(family_slope(3, 0))
    assert d.s1 == (5, 4, 4, 5, 4, 4, 5) and d.s2 == (4, 4, 4)
    assert d.reassemble() == expected.CS_R0


def test_decompose_matches_brute_force():
    checked = 0
    for cf in random_cfs(800, seed=11):
        cs = cs_seq(relator(cf))
        if len(cs) < 2 or len(cs) > 60:
            continue
        d = decompose(cf)
        assert (d.s1, d.s2) in brute_decompositions(cs), cf
        checked += 1
    assert checked > 200


def test_decompose_reassembles_on_random_slopes():
    for cf in random_cfs(500):
        assert decompose(cf).reassemble() == cs_seq(relator(cf))


def test_ct_two_paths():
    assert ct_of_slope([4, 3, 3]) == (2, 2, 3, 2, 2, 3)
    assert ct_of_slope([5, 2]) == (1, 1)
    n = 0
    for cf in random_cfs(500):
        if len(cf) >= 2 and cf[1] >= 2:
            ct_of_slope(cf)
            n += 1
    assert n > 100
    with pytest.raises(ValueError):
        ct_of_slope([3, 1, 2])


def test_slope_from_cs_inverts():
    for cf in random_cfs(300, seed=5):
        cs = cs_seq(relator(cf))
        if len(cs) >= 2:
            assert slope_from_cs(cs) == cf
    for i in range(6):
        assert slope_from_cs(family_cs(3, i)) == family_slope(3, i)
    assert slope_from_cs(expected.CV_R0_IMAGE) == (3, 3)
    with pytest.raises(ShapeError):
        slope_from_cs((4, 4, 6, 4))


def test_tv_sequences():
    tv = tv_from_sequence((5, 4, 4, 5, 4, 5, 4, 5, 4, 5, 4, 4, 5))
    assert tv.t_seq == (2, 1, 1, 1, 2) and tv.v_seq == (3,)
    assert tv.reconstruct()[1] == tv.source
    cyc = tv_seqs(CyclicWord.of(relator(family_slope(3, 1))))
    assert cyc.cyclic and cyc.reconstruct()[1] == family_cs(3, 1)


def test_subsequence_search():
    assert cyclic_contains((1, 2, 3), (3, 1)) == [2]
    assert cyclic_contains((1, 2, 3), (1, 2, 3), flanked=True) == []
    assert linear_contains((1, 2, 3, 4), (2, 3), flanked=True)
    assert not linear_contains((1, 2, 3), (1, 2), flanked=True)
    with pytest.raises(ValueError):
        cyclic_contains((1,), ())


def test_disjointness():
    for i in range(6):
        for j in range(6):
            if i != j:
                assert disjointness_check(3, i, j)
    with pytest.raises(ValueError):
        disjointness_check(3, 1, 1)


def test_useful_lemma_harness():
    assert lemma_useful_check([4, 3, 3], [4, 3, 3, 2]) == HOLDS
    assert lemma_useful_check([4, 3, 3], [4, 3, 3]) == HYPOTHESIS_FAIL
    assert not useful_hypotheses([4, 3], [4, 3, 3])
    rng = random.Random(3)
    seen = {HOLDS: 0, VACUOUS: 0, VIOLATED: 0}
    while sum(seen.values()) < 600:
        m = rng.randint(2, 5)
        r = [m] + [rng.randint(2, 5) for _ in range(rng.randint(2, 5))]
        s = [m] + [rng.randint(2, 5) for _ in range(rng.randint(2, 5))]
        out = lemma_useful_check(r, s)
        if out != HYPOTHESIS_FAIL:
            seen[out] += 1
    assert seen[VIOLATED] == 0
    assert seen[HOLDS] > 0
