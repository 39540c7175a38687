"""Calculus of S/CS-sequences: CT and CV levels, the S1/S2 decomposition,
subsequence search and the descent lemma harness.

"Subsequence" always means a contiguous run of terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .slopes import ContinuedFraction, family_slope, shift, unshift
from .words import CyclicSeq, CyclicWord, PathDisagreement, cs_seq, relator, s_seq


class ShapeError(ValueError):
    """A sequence does not have the run structure an operation requires."""


# -- runs between isolated markers ------------------------------------------


def split_runs(seq: Sequence[int], low: int, high: int):
    """Split ``(e1<high>, t1<low>, high, ..., high, ts<low>, e2<high>)``.

    Returns ``(runs, lead, trail)`` where ``lead``/``trail`` are 0 or 1.
    """
    seq = list(seq)
    for pos, x in enumerate(seq):
        if x not in (low, high):
            raise ShapeError(f"term {x} at position {pos} is neither {low} nor {high}")
    lead = 1 if seq and seq[0] == high else 0
    trail = 1 if len(seq) > lead and seq[-1] == high else 0
    body = seq[lead:len(seq) - trail]
    if not body:
        raise ShapeError(f"no run of {low} in {tuple(seq)}")
    runs, count = [], 0
    for pos, x in enumerate(body, start=lead):
        if x == low:
            count += 1
        else:
            if count == 0:
                raise ShapeError(f"adjacent {high}s at position {pos} of {tuple(seq)}")
            runs.append(count)
            count = 0
    if count == 0:
        raise ShapeError(f"adjacent {high}s at the end of {tuple(seq)}")
    runs.append(count)
    return tuple(runs), lead, trail


def split_cyclic_runs(seq: Sequence[int], low: int, high: int) -> CyclicSeq:
    """Runs of ``low`` between (isolated) occurrences of ``high`` in a cyclic sequence."""
    seq = list(seq)
    if high not in seq:
        raise ShapeError(f"cyclic sequence has no term {high}")
    k = seq.index(high)
    rot = seq[k:] + seq[:k]
    runs, _, _ = split_runs(rot[1:] + [high], low, high) if len(rot) > 1 else ((), 0, 0)
    if not runs:
        raise ShapeError(f"cyclic sequence {tuple(seq)} has no run of {low}")
    return CyclicSeq(runs)


def expand_runs(runs: Iterable[int], low: int, high: int, lead: int = 0, trail: int = 0) -> tuple:
    out = [high] * lead
    for j, t in enumerate(runs):
        if j:
            out.append(high)
        out += [low] * t
    out += [high] * trail
    return tuple(out)


def expand_cyclic_runs(runs: Iterable[int], low: int, high: int) -> CyclicSeq:
    out = []
    for t in runs:
        out.append(high)
        out += [low] * t
    return CyclicSeq(out)


# -- CT sequences -----------------------------------------------------------


def _ct_by_runs(cf: ContinuedFraction) -> CyclicSeq:
    m = cf[0]
    return split_cyclic_runs(cs_seq(relator(cf)), m, m + 1)


def ct_of_slope(cf: Iterable[int]) -> CyclicSeq:
    """``CT(r)``, computed from CS(r) directly and as ``CS(r')``; both must agree."""
    cf = ContinuedFraction(cf)
    if len(cf) < 2 or cf[1] < 2:
        raise ValueError(f"CT(r) needs k >= 2 and m_2 >= 2, got {cf}")
    by_runs = _ct_by_runs(cf)
    by_shift = cs_seq(relator(shift(cf, 1)))
    if by_runs != by_shift:
        raise PathDisagreement(f"CT({cf}): run extraction {by_runs} != CS(r') {by_shift}")
    return by_runs


# -- S1/S2 decomposition ----------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    s1: tuple
    s2: tuple
    m: int

    def reassemble(self) -> CyclicSeq:
        return CyclicSeq(self.s1 + self.s2 + self.s1 + self.s2)

    def __str__(self):
        return f"S1={self.s1} S2={self.s2}"


def _with_outer(runs, sep, run):
    return (sep,) + expand_runs(runs, run, sep) + (sep,) if runs else (sep,)


def _with_inner(runs, sep, run):
    return expand_runs(runs, run, sep)


@lru_cache(maxsize=1024)
def _decompose(cf: ContinuedFraction) -> Decomposition:
    k, m = len(cf), cf[0]
    if k == 1:
        return Decomposition((), (m,), m)
    if cf[1] >= 2:
        if k == 2:
            return Decomposition((m + 1,), (m,) * (cf[1] - 1), m)
        sub = _decompose(shift(cf, 1))
        return Decomposition(_with_outer(sub.s2, m + 1, m), _with_inner(sub.s1, m + 1, m), m)
    # m_2 == 1 (so k >= 3): m is the isolated term, runs of m+1 give CS([m_3, ..., m_k])
    child = ContinuedFraction(cf[2:])
    sub = _decompose(child)
    if len(child) == 1:
        return Decomposition(_with_inner(sub.s2, m, m + 1), _with_outer(sub.s1, m, m + 1), m)
    return Decomposition(_with_inner(sub.s1, m, m + 1), _with_outer(sub.s2, m, m + 1), m)


def decompose(cf: Iterable[int], validate: bool = True) -> Decomposition:
    """The decomposition ``CS(r) = <S1, S2, S1, S2>`` built by recursion on the expansion.

    With ``validate`` the reassembled sequence is compared against CS(u_r).
    """
    cf = ContinuedFraction(cf)
    d = _decompose(cf)
    if validate:
        actual = cs_seq(relator(cf))
        if d.reassemble() != actual:
            raise PathDisagreement(f"decomposition of {cf} does not reassemble to CS(r)")
    return d


def slope_from_cs(cs: Sequence[int]) -> ContinuedFraction:
    """Recover ``r`` from ``CS(r)``; raises ShapeError if no slope has this CS-sequence."""
    cs = CyclicSeq(cs)
    r = _slope_from_cs(cs)
    if cs_seq(relator(r)) != cs:
        raise ShapeError(f"{cs} is not the CS-sequence of any slope")
    return r


def _slope_from_cs(cs: CyclicSeq) -> ContinuedFraction:
    if len(cs) == 2 and cs[0] == cs[1]:
        return ContinuedFraction([cs[0]])
    n = min(cs)
    if set(cs) != {n, n + 1} or len(cs) % 2:
        raise ShapeError(f"{cs} is not the CS-sequence of any slope")
    try:
        runs = split_cyclic_runs(cs, n, n + 1)
    except ShapeError:
        runs = None
    if runs is not None:
        return unshift(_slope_from_cs(runs), n)
    runs = split_cyclic_runs(cs, n + 1, n)
    return ContinuedFraction((n, 1) + tuple(_slope_from_cs(runs)))


# -- contiguous subsequence search ------------------------------------------


def cyclic_contains(host: Sequence[int], pattern: Sequence[int], flanked: bool = False) -> list[int]:
    """Start positions where ``pattern`` occurs in the cyclic ``host``.

    With ``flanked`` the occurrence must leave at least one host term on each
    side, i.e. ``(l1, pattern, l2)`` fits in one linear window.
    """
    host, pattern = tuple(host), tuple(pattern)
    n, k = len(host), len(pattern)
    if k == 0:
        raise ValueError("pattern must be nonempty")
    if k > (n - 2 if flanked else n):
        return []
    doubled = host + host[:k - 1]
    return [i for i in range(n) if doubled[i:i + k] == pattern]


def linear_contains(seq: Sequence[int], pattern: Sequence[int], flanked: bool = False) -> bool:
    seq, pattern = tuple(seq), tuple(pattern)
    k = len(pattern)
    lo, hi = (1, len(seq) - k - 1) if flanked else (0, len(seq) - k)
    return any(seq[i:i + k] == pattern for i in range(lo, hi + 1))


# -- T and V sequences ------------------------------------------------------


@dataclass(frozen=True)
class TVSeqs:
    source: tuple
    t_seq: tuple
    v_seq: tuple
    base: int
    cyclic: bool
    t_edges: tuple = (0, 0)
    v_edges: tuple = (0, 0)

    def reconstruct(self):
        """Expand V back to T and T back to the source S/CS-sequence."""
        if self.cyclic:
            t = expand_cyclic_runs(self.v_seq, 1, 2)
            return t, expand_cyclic_runs(self.t_seq, self.base, self.base + 1)
        t = expand_runs(self.v_seq, 1, 2, *self.v_edges)
        return t, expand_runs(self.t_seq, self.base, self.base + 1, *self.t_edges)


def tv_from_sequence(seq: Sequence[int], base: int = 4, cyclic: bool = False) -> TVSeqs:
    if cyclic:
        t = split_cyclic_runs(seq, base, base + 1)
        v = split_cyclic_runs(t, 1, 2)
        return TVSeqs(tuple(seq), tuple(t), tuple(v), base, True)
    t, tl, tt = split_runs(seq, base, base + 1)
    v, vl, vt = split_runs(t, 1, 2)
    return TVSeqs(tuple(seq), t, v, base, False, (tl, tt), (vl, vt))


def tv_seqs(w: str | CyclicWord, base: int = 4) -> TVSeqs:
    """T and V sequences of an alternating word, or CT and CV of a cyclic word."""
    if isinstance(w, CyclicWord):
        return tv_from_sequence(cs_seq(w), base, cyclic=True)
    return tv_from_sequence(s_seq(w), base)


# -- family-level checks -----------------------------------------------------


@lru_cache(maxsize=64)
def family_cs(m: int, i: int) -> CyclicSeq:
    return cs_seq(relator(family_slope(m, i)))


def family_decomposition(m: int, i: int) -> Decomposition:
    return decompose(family_slope(m, i))


def disjointness_check(m: int, i: int, j: int) -> bool:
    """CS(r_j) contains neither S1(r_i) nor S2(r_i) with a term on each side."""
    if i == j:
        raise ValueError("disjointness needs i != j")
    if i < 0 or j < 0:
        raise ValueError("family indices must be >= 0")
    d = family_decomposition(m, i)
    host = family_cs(m, j)
    return not cyclic_contains(host, d.s1) and not cyclic_contains(host, d.s2, flanked=True)


HOLDS, VACUOUS, HYPOTHESIS_FAIL, VIOLATED = "holds", "vacuous", "hypothesis_fail", "violated"


def useful_hypotheses(r: Sequence[int], s: Sequence[int]) -> bool:
    r, s = ContinuedFraction(r), ContinuedFraction(s)
    k, t = len(r), len(s)
    if r == s or r[0] != s[0]:
        return False
    if any(x < 2 for x in r[1:]) or any(x < 2 for x in s[1:]):
        return False
    if k < 3 or t < 3 or k == t:
        return False
    if k < t:
        return r[1] >= s[1]
    return r[1] <= s[1]


def lemma_useful_check(r: Sequence[int], s: Sequence[int]) -> str:
    """If CS(s) contains S1(r) or S2(r), then CS(s') contains T1(r') or T2(r').

    Returns one of ``holds``, ``vacuous``, ``hypothesis_fail`` or ``violated``.
    """
    r, s = ContinuedFraction(r), ContinuedFraction(s)
    if not useful_hypotheses(r, s):
        return HYPOTHESIS_FAIL
    d = decompose(r)
    host = cs_seq(relator(s))
    if not (cyclic_contains(host, d.s1) or cyclic_contains(host, d.s2)):
        return VACUOUS
    dd = decompose(shift(r, 1))
    host2 = cs_seq(relator(shift(s, 1)))
    hit = (dd.s1 and cyclic_contains(host2, dd.s1)) or cyclic_contains(host2, dd.s2)
    return HOLDS if hit else VIOLATED
