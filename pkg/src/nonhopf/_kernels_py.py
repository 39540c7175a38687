"""Pure Python/numpy versions of the hot loops in ``_kernels.pyx``.

Both modules expose the same functions with the same signatures and must
return identical results; ``nonhopf.kernels`` picks one at import time.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def lcp_kasai(text, sa):
    """LCP array: ``lcp[r]`` is the common prefix of suffixes ``sa[r-1]`` and ``sa[r]``."""
    text = np.asarray(text, dtype=np.int64)
    sa = np.asarray(sa, dtype=np.int64)
    n = len(text)
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.arange(n)
    lcp = np.zeros(n, dtype=np.int64)
    t = text.tolist()
    sa_l = sa.tolist()
    rank_l = rank.tolist()
    h = 0
    for i in range(n):
        r = rank_l[i]
        if r == 0:
            h = 0
            continue
        j = sa_l[r - 1]
        while i + h < n and j + h < n and t[i + h] == t[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def max_piece_lengths(sa, lcp, elem_of_pos, elem_len):
    """For every element, the longest prefix it shares with a different element."""
    sa = np.asarray(sa).tolist()
    lcp = np.asarray(lcp).tolist()
    owner = np.asarray(elem_of_pos).tolist()
    length = np.asarray(elem_len).tolist()
    n = len(sa)
    ml = [0] * len(length)
    for r in range(n):
        e = owner[sa[r]]
        if e < 0:
            continue
        le = length[e]
        best = 0
        run = le
        for r2 in range(r - 1, -1, -1):
            run = min(run, lcp[r2 + 1])
            if run <= best:
                break
            e2 = owner[sa[r2]]
            if e2 >= 0 and e2 != e:
                best = max(best, min(run, length[e2]))
        run = le
        for r2 in range(r + 1, n):
            run = min(run, lcp[r2])
            if run <= best:
                break
            e2 = owner[sa[r2]]
            if e2 >= 0 and e2 != e:
                best = max(best, min(run, length[e2]))
        ml[e] = best
    return np.asarray(ml, dtype=np.int64)


def _sparse_max(values):
    table = [np.asarray(values, dtype=np.int64)]
    k = 1
    while 2 * k <= len(values):
        prev = table[-1]
        table.append(np.maximum(prev[:-k], prev[k:]))
        k *= 2
    return table


def _range_max(table, lo, hi):
    """Vectorized max over the inclusive ranges ``[lo, hi]``."""
    width = hi - lo + 1
    level = np.floor(np.log2(width)).astype(np.int64)
    out = np.empty(len(lo), dtype=np.int64)
    for lv in np.unique(level):
        sel = level == lv
        t = table[lv]
        out[sel] = np.maximum(t[lo[sel]], t[hi[sel] - (1 << lv) + 1])
    return out


def min_pieces_dp(ext, n):
    """Minimal number of pieces covering ``[s, s+n)`` for every start ``s < n``.

    ``ext[j]`` (``0 <= j < 2n``) is the longest piece starting at position
    ``j`` of the doubled cyclic word.  Layered reachability: after ``t``
    pieces the reachable ends form an interval ``[s, H_t]``.  Entries are -1
    when the word cannot be covered at all.
    """
    ext = np.asarray(ext, dtype=np.int64)
    end = np.arange(2 * n, dtype=np.int64) + ext
    table = _sparse_max(end)
    s = np.arange(n, dtype=np.int64)
    hi = s.copy()
    count = np.zeros(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    while active.any():
        idx = np.nonzero(active)[0]
        top = np.minimum(hi[idx], 2 * n - 1)
        new_hi = np.maximum(hi[idx], _range_max(table, s[idx], top))
        stuck = new_hi == hi[idx]
        count[idx[stuck]] = -1
        active[idx[stuck]] = False
        go = idx[~stuck]
        hi[go] = new_hi[~stuck]
        count[go] += 1
        done = go[hi[go] >= s[go] + n]
        active[done] = False
    return count


def min_pieces_greedy(ext, n):
    """Same as :func:`min_pieces_dp`, always taking the longest piece available."""
    ext = np.asarray(ext, dtype=np.int64)
    s = np.arange(n, dtype=np.int64)
    pos = s.copy()
    count = np.zeros(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    while active.any():
        idx = np.nonzero(active)[0]
        step = ext[np.minimum(pos[idx], 2 * n - 1)]
        stuck = step == 0
        count[idx[stuck]] = -1
        active[idx[stuck]] = False
        go = idx[~stuck]
        pos[go] += step[~stuck]
        count[go] += 1
        active[go[pos[go] >= s[go] + n]] = False
    return count


def crosscheck_scan(signs, ext, s1, s2, n):
    """Compare piece-ness with the S1 / flanked-S2 criterion on every subword.

    ``signs`` is the doubled sign pattern (1 for a positive letter) and
    ``ext[j]`` the longest piece at position ``j``.  A subword of length ``L``
    starting at ``j`` is a piece iff ``L <= ext[j]``; the criterion says it is
    a piece iff its S-sequence contains neither ``s1`` nor a flanked ``s2``.
    Returns ``(mismatches, first_j, first_L)`` with -1 when there are none.
    """
    signs = np.asarray(signs).tolist()
    ext = np.asarray(ext).tolist()
    s1, s2 = list(s1), list(s2)
    k1, k2 = len(s1), len(s2)
    last1 = s1[-1] if k1 else -1
    bad, fj, fl = 0, -1, -1
    for j in range(n):
        terms = [1]
        frozen = False
        for L in range(1, n):
            if L > 1:
                if signs[j + L - 1] == signs[j + L - 2]:
                    terms[-1] += 1
                else:
                    terms.append(1)
                    q = len(terms) - 1
                    # terms[q-1] is now a complete term; look for matches ending there
                    if not frozen and k1 and q >= k1 and terms[q - k1:q] == s1:
                        frozen = True
                    if not frozen and q - k2 >= 1 and terms[q - k2:q] == s2:
                        frozen = True
            hit = frozen
            if not hit and k1 and terms[-1] == last1 and len(terms) >= k1:
                hit = terms[len(terms) - k1:] == s1
            piece = L <= ext[j]
            if piece == hit:
                if bad == 0:
                    fj, fl = j, L
                bad += 1
    return bad, fj, fl


def greendlinger_scan(ext, marks, span, n, margin=0, budget=3):
    """Check every split of a cyclic word into complement ``c`` and rest ``w``.

    For each start ``s`` and each ``1 <= L <= n-1`` such that ``[s, s+L)`` is
    a product of at most ``budget`` pieces, the remainder ``[s+L, s+n)`` must
    contain a whole marked syllable, i.e. one starting in
    ``[s+L+margin, s+n-span-margin]``; ``margin=1`` additionally keeps it
    away from both ends of ``S(w)``.  ``marks`` flags, on the doubled word,
    the starts of the syllables of length ``span``.
    Returns ``(failures, first_s, first_L, checked)``.
    """
    ext = np.asarray(ext, dtype=np.int64)
    marks = np.asarray(marks, dtype=np.int64)
    pref = np.concatenate(([0], np.cumsum(marks)))
    end = np.arange(2 * n, dtype=np.int64) + ext
    bad, fs, fl, checked = 0, -1, -1, 0
    for s in range(n):
        lo = hi = s
        for _ in range(budget):
            if lo > hi or hi >= s + n:
                break
            new_hi = max(hi, int(end[lo:hi + 1].max()))
            lo, hi = hi + 1, new_hi
        top = min(hi - s, n - 1)
        if top < 1:
            continue
        L = np.arange(1, top + 1)
        a = s + L + margin
        b = s + n - span - margin
        cnt = np.where(b >= a, pref[np.minimum(b, 2 * n - 1) + 1] - pref[np.minimum(a, 2 * n)], 0)
        checked += top
        fails = np.nonzero(cnt == 0)[0]
        if len(fails):
            if bad == 0:
                fs, fl = s, int(L[fails[0]])
            bad += len(fails)
    return bad, fs, fl, checked
