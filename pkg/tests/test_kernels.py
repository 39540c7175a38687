import os
import random
import subprocess
import sys

import numpy as np
import pytest

from nonhopf import _kernels_py, kernels
from nonhopf.seqcalc import decompose
from nonhopf.slopes import family_slope
from nonhopf.smallcancel import _orientations, family_index, suffix_array, syllable_marks
from nonhopf.words import relator

compiled = pytest.importorskip("nonhopf._kernels", reason="compiled extension not built")


def test_selected_backend():
    assert kernels.BACKEND == "cython"
    assert kernels.fallback is _kernels_py


def test_pure_switch():
    env = dict(os.environ, NONHOPF_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import nonhopf.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def both(name, *args):
    a = getattr(compiled, name)(*args)
    b = getattr(_kernels_py, name)(*args)
    if isinstance(a, tuple):
        assert a == tuple(b)
    else:
        np.testing.assert_array_equal(a, b)
    return a


def test_lcp_parity_random():
    rng = random.Random(0)
    for _ in range(40):
        text = np.array([rng.randint(0, 3) for _ in range(rng.randint(1, 200))], dtype=np.int64)
        sa = suffix_array(text)
        lcp = both("lcp_kasai", text, sa)
        for r in range(1, len(sa)):
            a, b = text[sa[r - 1]:].tolist(), text[sa[r]:].tolist()
            k = 0
            while k < min(len(a), len(b)) and a[k] == b[k]:
                k += 1
            assert lcp[r] == k


def test_dp_and_greedy_parity_random():
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(1, 60))
        ext = rng.integers(0, 6, size=2 * n)
        both("min_pieces_dp", ext, n)
        both("min_pieces_greedy", ext, n)
        # suffix-closed lengths (ext[j+1] >= ext[j] - 1), as pieces produce: greedy is optimal
        for j in range(1, 2 * n):
            ext[j] = max(ext[j], ext[j - 1] - 1)
        np.testing.assert_array_equal(both("min_pieces_dp", ext, n), both("min_pieces_greedy", ext, n))


@pytest.mark.parametrize("i", [0, 1, 2])
def test_family_parity(i):
    index = family_index(3, max(i, 3))
    R = index.R
    ci = _orientations(R, relator(family_slope(3, i)))[0]
    word = R.cyclic[ci].word
    n = len(word)
    ext = index.ext(ci)
    signs = np.array([x.islower() for x in word * 2], dtype=np.int64)
    d = decompose(family_slope(3, i))
    both("min_pieces_dp", ext, n)
    both("crosscheck_scan", signs, ext, d.s1, d.s2, n)
    marks = syllable_marks(word, 5)
    for margin in (0, 1):
        for budget in (1, 2, 3):
            both("greendlinger_scan", ext, marks, 5, n, margin, budget)


def test_piece_length_parity():
    index = family_index(3, 2)
    owner = np.full(len(index.text), -1, dtype=np.int64)
    R = index.R
    for ci in range(len(R.cyclic)):
        st = index.block_start[ci]
        owner[st:st + R.periods[ci]] = np.arange(R.offsets[ci], R.offsets[ci] + R.periods[ci])
    elem_len = np.concatenate([np.full(p, len(c), dtype=np.int64) for c, p in zip(R.cyclic, R.periods)])
    ml = both("max_piece_lengths", index.sa, index.lcp, owner, elem_len)
    np.testing.assert_array_equal(ml, index.ml)


def test_crosscheck_scan_parity_random_signs():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(4, 40))
        signs = rng.integers(0, 2, size=n)
        signs = np.concatenate([signs, signs])
        ext = rng.integers(0, n, size=2 * n)
        both("crosscheck_scan", signs, ext, (2, 1), (1,), n)
