"""Symmetrized sets, pieces and the C(4)/T(4) conditions.

Elements of a symmetrized set are never materialized one by one.  Each
cyclic word ``c`` of length ``n`` (a generator or an inverse, deduplicated)
stands for its ``P`` distinct rotations, ``P`` being the primitive period.
A generalized suffix array over the doubled cyclic words answers
"longest prefix shared with a different element" for every element at once.
"""
from __future__ import annotations

import itertools
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .seqcalc import decompose
from .slopes import family_slope
from .words import (
    CyclicWord,
    PathDisagreement,
    WordError,
    check_word,
    inverse,
    relator,
    rotate,
)

_CODE = {"a": 0, "A": 1, "b": 2, "B": 3}


def _encode(w: str) -> list[int]:
    return [_CODE[x] for x in w]


def primitive_period(w: str) -> int:
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return p
    return n


class SymmetrizedSet:
    """All cyclic permutations of some cyclically reduced words and their inverses."""

    def __init__(self, gens: Iterable[str | CyclicWord]):
        self.generators: list[CyclicWord] = []
        self.cyclic: list[CyclicWord] = []
        self.owner: list[int] = []  # generator index of each cyclic word
        seen: dict[CyclicWord, int] = {}
        for g in gens:
            cw = g if isinstance(g, CyclicWord) else CyclicWord.of(check_word(g))
            if not cw.word:
                raise WordError("the empty word cannot be a relator")
            self.generators.append(cw)
            for c in (cw, cw.inverse()):
                if c not in seen:
                    seen[c] = len(self.cyclic)
                    self.cyclic.append(c)
                    self.owner.append(len(self.generators) - 1)
        self.periods = [primitive_period(c.word) for c in self.cyclic]
        self.offsets = [0] + list(itertools.accumulate(self.periods))

    def __len__(self):
        return self.offsets[-1]

    def element(self, e: int) -> str:
        ci = bisect_right(self.offsets, e) - 1
        return rotate(self.cyclic[ci].word, e - self.offsets[ci])

    def locate(self, e: int) -> tuple[int, int]:
        ci = bisect_right(self.offsets, e) - 1
        return ci, e - self.offsets[ci]

    def elements(self):
        for c, p in zip(self.cyclic, self.periods):
            for k in range(p):
                yield rotate(c.word, k)

    def __contains__(self, w: str) -> bool:
        try:
            cw = CyclicWord.of(w)
        except WordError:
            return False
        return cw in self.cyclic

    @property
    def total_length(self) -> int:
        return sum(len(c) for c in self.cyclic)


def symmetrize(gens: Iterable[str | CyclicWord]) -> SymmetrizedSet:
    return SymmetrizedSet(gens)


@lru_cache(maxsize=16)
def family_set(m: int, N: int) -> SymmetrizedSet:
    """``R_N``: the symmetrized closure of ``u_{r_0}, ..., u_{r_N}``."""
    return symmetrize(relator(family_slope(m, i)) for i in range(N + 1))


def suffix_array(text: Sequence[int]) -> np.ndarray:
    """Prefix-doubling suffix array (ranks refined by radix-style lexsort)."""
    t = np.asarray(text, dtype=np.int64)
    n = len(t)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.unique(t, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:-k] = rank[k:] if k < n else second[:0]
        sa = np.lexsort((second, rank))
        r0, r1 = rank[sa], second[sa]
        step = np.concatenate(([0], ((r0[1:] != r0[:-1]) | (r1[1:] != r1[:-1])).astype(np.int64)))
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(step)
        rank = new
        if rank.max() == n - 1 or k >= n:
            return sa
        k *= 2


class PieceIndex:
    """Generalized suffix array over a symmetrized set, with per-element piece lengths."""

    def __init__(self, R: SymmetrizedSet):
        self.R = R
        text: list[int] = []
        self.block_start: list[int] = []
        owner: list[int] = []
        for ci, c in enumerate(R.cyclic):
            self.block_start.append(len(text))
            text += _encode(c.word * 2)
            text.append(4 + ci)  # unique sentinel
            owner += [R.offsets[ci] + j for j in range(R.periods[ci])]
            owner += [-1] * (2 * len(c) + 1 - R.periods[ci])
        self.text = np.asarray(text, dtype=np.int64)
        self._text_list = text
        self.sa = suffix_array(self.text)
        self.lcp = kernels.lcp_kasai(self.text, self.sa)
        elem_len = np.concatenate(
            [np.full(p, len(c), dtype=np.int64) for c, p in zip(R.cyclic, R.periods)]
        ) if R.cyclic else np.zeros(0, dtype=np.int64)
        self.ml = kernels.max_piece_lengths(self.sa, self.lcp, np.asarray(owner, dtype=np.int64), elem_len)

    # -- queries -------------------------------------------------------------

    def piece_length(self, e: int) -> int:
        """Longest piece that is a prefix of element ``e``."""
        return int(self.ml[e])

    def longest_piece_at(self, e: int, position: int) -> int:
        """Longest piece that starts at ``position`` of element ``e`` and stays inside it."""
        ci, k = self.R.locate(e)
        n = len(self.R.cyclic[ci])
        if not 0 <= position < n:
            raise IndexError(f"position {position} outside element of length {n}")
        rot = (k + position) % self.R.periods[ci]
        return min(int(self.ml[self.R.offsets[ci] + rot]), n - position)

    def ext(self, ci: int) -> np.ndarray:
        """Longest piece at each position of the doubled cyclic word ``ci``."""
        n, p = len(self.R.cyclic[ci]), self.R.periods[ci]
        base = self.ml[self.R.offsets[ci]:self.R.offsets[ci] + p]
        return np.tile(base, (2 * n) // p)

    def _lower_bound(self, v: list[int]) -> int:
        t, sa = self._text_list, self.sa
        k = len(v)
        lo, hi = 0, len(sa)
        while lo < hi:
            mid = (lo + hi) // 2
            p = int(sa[mid])
            if t[p:p + k] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def is_piece(self, v: str) -> bool:
        if not v:
            raise WordError("pieces are nonempty by definition")
        code = _encode(check_word(v))
        k = len(code)
        t, sa = self._text_list, self.sa
        r = self._lower_bound(code)
        starts = self.block_start
        while r < len(sa):
            p = int(sa[r])
            if t[p:p + k] != code:
                return False
            ci = bisect_right(starts, p) - 1
            n = len(self.R.cyclic[ci])
            if k <= n:
                j = (p - starts[ci]) % self.R.periods[ci]
                if self.ml[self.R.offsets[ci] + j] >= k:
                    return True
            r += 1
        return False

    def longest_piece_prefix(self, w: str) -> int:
        """Length of the longest prefix of ``w`` that is a piece (0 if none)."""
        lo, hi = 0, len(w)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.is_piece(w[:mid]):
                lo = mid
            else:
                hi = mid - 1
        return lo


@lru_cache(maxsize=16)
def family_index(m: int, N: int) -> PieceIndex:
    return PieceIndex(family_set(m, N))


def naive_is_piece(v: str, R: SymmetrizedSet) -> bool:
    """Reference definition: ``v`` is a prefix of two different elements."""
    hits = 0
    for e in R.elements():
        if e.startswith(v):
            hits += 1
            if hits == 2:
                return True
    return False


# -- factorizations ----------------------------------------------------------


@dataclass(frozen=True)
class PieceFactorization:
    word: str
    cuts: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.cuts) - 1

    @property
    def factors(self) -> list[str]:
        return [self.word[a:b] for a, b in zip(self.cuts, self.cuts[1:])]

    def __str__(self):
        return "|".join(self.factors)


def _linear_layers(ext: Sequence[int], n: int) -> int | None:
    lo = hi = 0
    t = 0
    while hi < n:
        best = max([hi] + [j + ext[j] for j in range(lo, hi + 1)])
        if best == hi:
            return None
        lo, hi, t = hi + 1, best, t + 1
    return t


def _greedy_cuts(ext: Sequence[int], start: int, n: int) -> list[int] | None:
    cuts, pos = [start], start
    while pos < start + n:
        if ext[pos] == 0:
            return None
        pos = min(pos + int(ext[pos]), start + n)
        cuts.append(pos)
    return cuts


def min_pieces(w: str, index: PieceIndex) -> PieceFactorization | None:
    """Minimal factorization of ``w`` into pieces, or None if there is none."""
    check_word(w)
    if not w:
        return PieceFactorization(w, (0,))
    ext = [index.longest_piece_prefix(w[j:]) for j in range(len(w))]
    layered = _linear_layers(ext, len(w))
    cuts = _greedy_cuts(ext, 0, len(w))
    greedy = None if cuts is None else len(cuts) - 1
    if layered != greedy:
        raise PathDisagreement(f"piece count: layered DP {layered} vs greedy {greedy} on {w!r}")
    return None if cuts is None else PieceFactorization(w, tuple(cuts))


# -- reports -------------------------------------------------------------------


@dataclass
class Report:
    condition: str
    passed: bool
    N: int | None = None
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "condition": self.condition,
            "pass": self.passed,
            "N": self.N,
            "witnesses": self.witnesses,
            "details": self.details,
        }
        if timings:
            out["timings"] = self.timings
        return out


def check_c4(R: SymmetrizedSet, index: PieceIndex | None = None, N: int | None = None) -> Report:
    """No element of ``R`` is a product of fewer than four pieces."""
    if len(R) == 0:
        raise ValueError("C(4) check needs a nonempty set")
    t0 = time.perf_counter()
    index = index or PieceIndex(R)
    t1 = time.perf_counter()
    per_gen: dict[int, int | None] = {}
    witnesses = []
    ok = True
    for ci, c in enumerate(R.cyclic):
        n = len(c)
        ext = index.ext(ci)
        dp = kernels.min_pieces_dp(ext, n)
        greedy = kernels.min_pieces_greedy(ext, n)
        if not np.array_equal(dp, greedy):
            s = int(np.nonzero(dp != greedy)[0][0])
            raise PathDisagreement(f"DP {dp[s]} vs greedy {greedy[s]} at rotation {s} of {c}")
        factorable = dp[dp >= 0]
        best = int(factorable.min()) if len(factorable) else None
        g = R.owner[ci]
        if best is None:
            per_gen.setdefault(g, None)
        else:
            per_gen[g] = best if per_gen.get(g) is None else min(per_gen[g], best)
        if best is not None and best < 4:
            ok = False
            s = int(np.nonzero(dp == best)[0][0])
            cuts = _greedy_cuts(ext, s, n)
            word = rotate(c.word, s)
            fac = PieceFactorization(word, tuple(x - s for x in cuts))
            witnesses.append({"element": word, "pieces": fac.factors, "count": fac.count})
    t2 = time.perf_counter()
    return Report(
        "C(4)",
        ok,
        N,
        witnesses,
        {
            "min_pieces_per_generator": [per_gen[g] for g in range(len(R.generators))],
            "elements": len(R),
            "backend": kernels.BACKEND,
        },
        {"index_s": t1 - t0, "scan_s": t2 - t1},
    )


def _cancels(u: str, v: str) -> bool:
    return u[-1] == v[0].swapcase()


def naive_t4(R: SymmetrizedSet):
    """All-triples search for a T(4) violation; returns the triple or None."""
    elems = list(R.elements())
    for w1, w2, w3 in itertools.product(elems, repeat=3):
        if w2 == inverse(w1) or w3 == inverse(w2) or w1 == inverse(w3):
            continue
        if _cancels(w1, w2) and _cancels(w2, w3) and _cancels(w3, w1):
            return w1, w2, w3
    return None


def check_t4(R: SymmetrizedSet, N: int | None = None) -> Report:
    """No triple ``w1, w2, w3`` (no adjacent pair mutually inverse, cyclically)
    with every product ``w1w2``, ``w2w3``, ``w3w1`` cancelling.

    Cancellation only sees first and last letters, so it suffices to keep
    three representatives of each (first, last) class: each inverse-pair
    constraint excludes a single element.
    """
    if len(R) == 0:
        raise ValueError("T(4) check needs a nonempty set")
    classes: dict[tuple[str, str], list[str]] = {}
    for c in R.cyclic:
        w = c.word
        for k in range(len(w)):
            key = (w[k], w[k - 1])
            bucket = classes.setdefault(key, [])
            if len(bucket) < 3:
                r = rotate(w, k)
                if r not in bucket:
                    bucket.append(r)
    witness = None
    keys = sorted(classes)
    for k1, k2, k3 in itertools.product(keys, repeat=3):
        # (first, last): w1 last cancels w2 first, etc.
        if not (k1[1] == k2[0].swapcase() and k2[1] == k3[0].swapcase() and k3[1] == k1[0].swapcase()):
            continue
        for w1, w2, w3 in itertools.product(classes[k1], classes[k2], classes[k3]):
            if w2 != inverse(w1) and w3 != inverse(w2) and w1 != inverse(w3):
                witness = (w1, w2, w3)
                break
        if witness:
            break
    return Report(
        "T(4)",
        witness is None,
        N,
        [] if witness is None else [list(witness)],
        {"classes": len(classes), "cycle_lengths_checked": [3]},
    )


# -- family-specific scans ----------------------------------------------------------


def _orientations(R: SymmetrizedSet, word: str) -> list[int]:
    out = []
    for w in (word, inverse(word)):
        ci = R.cyclic.index(CyclicWord.of(w))
        if ci not in out:
            out.append(ci)
    return out


def characterization_crosscheck(m: int, i: int, N: int | None = None) -> Report:
    """Every proper subword of ``(u_{r_i}^{±1})`` is a piece (w.r.t. ``R_N``)
    exactly when its S-sequence contains neither S1 nor a flanked S2."""
    if i < 0:
        raise ValueError("family index must be >= 0")
    N = max(i, 3) if N is None else N
    if N < i:
        raise ValueError(f"N={N} must be at least i={i}")
    t0 = time.perf_counter()
    index = family_index(m, N)
    R = index.R
    cf = family_slope(m, i)
    d = decompose(cf)
    u = relator(cf)
    witnesses, checked, mismatches = [], 0, 0
    for ci in _orientations(R, u):
        c = R.cyclic[ci].word
        n = len(c)
        signs = np.array([x.islower() for x in c * 2], dtype=np.int64)
        bad, fj, fl = kernels.crosscheck_scan(signs, index.ext(ci), d.s1, d.s2, n)
        checked += n * (n - 1)
        mismatches += bad
        if bad:
            witnesses.append({"cyclic_word": ci, "subword": (c * 2)[fj:fj + fl], "start": fj, "length": fl})
    return Report(
        "piece characterization",
        mismatches == 0,
        N,
        witnesses,
        {"m": m, "i": i, "subwords": checked, "mismatches": mismatches, "S1": list(d.s1), "S2": list(d.s2)},
        {"total_s": time.perf_counter() - t0},
    )


def syllable_marks(word: str, span: int) -> np.ndarray:
    """Flags (on the doubled word) the starts of the cyclic syllables of length ``span``."""
    n = len(word)
    pos = [x.islower() for x in word]
    starts = [k for k in range(n) if pos[k] != pos[k - 1]]
    marks = np.zeros(2 * n, dtype=np.int64)
    if not starts:
        return marks
    for a, b in zip(starts, starts[1:] + [starts[0] + n]):
        if b - a == span:
            marks[a] = 1
            if a + n < 2 * n:
                marks[a + n] = 1
    return marks


def greendlinger_premise(
    m: int,
    i: int,
    R: SymmetrizedSet | None = None,
    N: int | None = None,
    budget: int = 1,
    interior: bool = True,
) -> Report:
    """Subwords of ``(u_{r_i}^{±1})`` left over after removing at most ``budget``
    pieces must show a syllable of length ``m+2``.

    For every split ``(u) = (w c)`` with ``c`` nonempty and a product of at
    most ``budget`` pieces, ``S(w)`` must contain the term ``m+2``; with
    ``interior`` that term must also avoid the first and last place of
    ``S(w)``.  The default ``budget=1`` is the boundary face of a [4,4]-map
    meeting the rest of the diagram in a single piece, so that ``w`` carries
    three of the (at least four) pieces of the relator.  The details list the
    failure counts for budgets 1 to 3 with both placements.
    """
    if i < 0:
        raise ValueError("family index must be >= 0")
    if budget < 1:
        raise ValueError("piece budget must be >= 1")
    if R is None:
        N = max(i, 3) if N is None else N
        index = family_index(m, N)
    else:
        index = PieceIndex(R)
    R = index.R
    t0 = time.perf_counter()
    u = relator(family_slope(m, i))
    span = m + 2
    margin = 1 if interior else 0
    witnesses, checked, failures = [], 0, 0
    by_budget = {b: {"anywhere": 0, "interior": 0} for b in sorted({1, 2, 3, budget})}
    for ci in _orientations(R, u):
        c = R.cyclic[ci].word
        n = len(c)
        ext, marks = index.ext(ci), syllable_marks(c, span)
        for b, row in by_budget.items():
            row["anywhere"] += kernels.greendlinger_scan(ext, marks, span, n, 0, b)[0]
            row["interior"] += kernels.greendlinger_scan(ext, marks, span, n, 1, b)[0]
        bad, fs, fl, cnt = kernels.greendlinger_scan(ext, marks, span, n, margin, budget)
        checked += cnt
        failures += bad
        if bad:
            dbl = c * 2
            witnesses.append({"complement": dbl[fs:fs + fl], "rest": dbl[fs + fl:fs + n]})
    return Report(
        "Greendlinger premise",
        failures == 0,
        N,
        witnesses,
        {
            "m": m,
            "i": i,
            "budget": budget,
            "interior": interior,
            "marked_term": span,
            "splittings": checked,
            "failures": failures,
            "failures_by_budget": {str(b): row for b, row in by_budget.items()},
        },
        {"total_s": time.perf_counter() - t0},
    )
