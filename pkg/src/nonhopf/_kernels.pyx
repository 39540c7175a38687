# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: LCP construction, the piece scan, piece-count DP and
the two exhaustive subword scans.  ``_kernels_py`` mirrors this module."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64

BACKEND = "cython"


cdef inline i64 imin(i64 a, i64 b) nogil:
    return a if a < b else b


cdef inline i64 imax(i64 a, i64 b) nogil:
    return a if a > b else b


def lcp_kasai(text, sa):
    cdef i64[::1] t = np.ascontiguousarray(text, dtype=np.int64)
    cdef i64[::1] s = np.ascontiguousarray(sa, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    rank_arr = np.empty(n, dtype=np.int64)
    lcp_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] rank = rank_arr
    cdef i64[::1] lcp = lcp_arr
    cdef Py_ssize_t i, j, r
    cdef i64 h = 0
    with nogil:
        for i in range(n):
            rank[s[i]] = i
        for i in range(n):
            r = rank[i]
            if r == 0:
                h = 0
                continue
            j = s[r - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
    return lcp_arr


def max_piece_lengths(sa, lcp, elem_of_pos, elem_len):
    cdef i64[::1] s = np.ascontiguousarray(sa, dtype=np.int64)
    cdef i64[::1] lc = np.ascontiguousarray(lcp, dtype=np.int64)
    cdef i64[::1] owner = np.ascontiguousarray(elem_of_pos, dtype=np.int64)
    cdef i64[::1] length = np.ascontiguousarray(elem_len, dtype=np.int64)
    ml_arr = np.zeros(length.shape[0], dtype=np.int64)
    cdef i64[::1] ml = ml_arr
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t r, r2
    cdef i64 e, e2, best, run
    with nogil:
        for r in range(n):
            e = owner[s[r]]
            if e < 0:
                continue
            best = 0
            run = length[e]
            r2 = r - 1
            while r2 >= 0:
                run = imin(run, lc[r2 + 1])
                if run <= best:
                    break
                e2 = owner[s[r2]]
                if e2 >= 0 and e2 != e:
                    best = imax(best, imin(run, length[e2]))
                r2 -= 1
            run = length[e]
            r2 = r + 1
            while r2 < n:
                run = imin(run, lc[r2])
                if run <= best:
                    break
                e2 = owner[s[r2]]
                if e2 >= 0 and e2 != e:
                    best = imax(best, imin(run, length[e2]))
                r2 += 1
            ml[e] = best
    return ml_arr


def min_pieces_dp(ext, Py_ssize_t n):
    cdef i64[::1] x = np.ascontiguousarray(ext, dtype=np.int64)
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef Py_ssize_t s, j
    cdef i64 lo, hi, best, t
    with nogil:
        for s in range(n):
            lo = s
            hi = s
            t = 0
            while hi < s + n:
                best = hi
                for j in range(lo, hi + 1):
                    best = imax(best, j + x[j])
                if best == hi:
                    t = -1
                    break
                lo = hi + 1
                hi = best
                t += 1
            out[s] = t
    return out_arr


def min_pieces_greedy(ext, Py_ssize_t n):
    cdef i64[::1] x = np.ascontiguousarray(ext, dtype=np.int64)
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef Py_ssize_t s
    cdef i64 pos, t
    with nogil:
        for s in range(n):
            pos = s
            t = 0
            while pos < s + n:
                if x[pos] == 0:
                    t = -1
                    break
                pos += x[pos]
                t += 1
            out[s] = t
    return out_arr


cdef bint _ends_with(i64[::1] terms, Py_ssize_t q, i64[::1] pat, Py_ssize_t k) nogil:
    # terms[q-k+1 .. q] == pat
    cdef Py_ssize_t u
    if k == 0 or q + 1 < k:
        return False
    for u in range(k):
        if terms[q - k + 1 + u] != pat[u]:
            return False
    return True


def crosscheck_scan(signs, ext, s1, s2, Py_ssize_t n):
    cdef i64[::1] sg = np.ascontiguousarray(signs, dtype=np.int64)
    cdef i64[::1] x = np.ascontiguousarray(ext, dtype=np.int64)
    cdef i64[::1] p1 = np.ascontiguousarray(np.asarray(s1, dtype=np.int64).reshape(-1))
    cdef i64[::1] p2 = np.ascontiguousarray(np.asarray(s2, dtype=np.int64).reshape(-1))
    cdef Py_ssize_t k1 = p1.shape[0], k2 = p2.shape[0]
    terms_arr = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] terms = terms_arr
    cdef Py_ssize_t j, L, q
    cdef bint frozen, hit, piece
    cdef i64 bad = 0, fj = -1, fl = -1
    cdef i64 last1 = p1[k1 - 1] if k1 > 0 else -1
    with nogil:
        for j in range(n):
            q = 0
            terms[0] = 1
            frozen = False
            for L in range(1, n):
                if L > 1:
                    if sg[j + L - 1] == sg[j + L - 2]:
                        terms[q] += 1
                    else:
                        q += 1
                        terms[q] = 1
                        if not frozen and _ends_with(terms, q - 1, p1, k1):
                            frozen = True
                        if not frozen and q - 1 - k2 >= 0 and _ends_with(terms, q - 1, p2, k2):
                            frozen = True
                hit = frozen
                if not hit and k1 > 0 and terms[q] == last1:
                    hit = _ends_with(terms, q, p1, k1)
                piece = L <= x[j]
                if piece == hit:
                    if bad == 0:
                        fj = j
                        fl = L
                    bad += 1
    return int(bad), int(fj), int(fl)


def greendlinger_scan(ext, marks, i64 span, Py_ssize_t n, i64 margin=0, i64 budget=3):
    cdef i64[::1] x = np.ascontiguousarray(ext, dtype=np.int64)
    cdef i64[::1] mk = np.ascontiguousarray(marks, dtype=np.int64)
    pref_arr = np.zeros(2 * n + 1, dtype=np.int64)
    cdef i64[::1] pref = pref_arr
    cdef Py_ssize_t s, j, L, it
    cdef i64 lo, hi, best, top, a, b, cnt
    cdef i64 bad = 0, fs = -1, fl = -1, checked = 0
    with nogil:
        for j in range(2 * n):
            pref[j + 1] = pref[j] + mk[j]
        for s in range(n):
            lo = s
            hi = s
            for it in range(budget):
                if lo > hi or hi >= s + n:
                    break
                best = hi
                for j in range(lo, hi + 1):
                    best = imax(best, j + x[j])
                lo = hi + 1
                hi = best
            top = imin(hi - s, n - 1)
            for L in range(1, top + 1):
                checked += 1
                a = s + L + margin
                b = s + n - span - margin
                cnt = 0
                if b >= a:
                    cnt = pref[b + 1] - pref[a]
                if cnt == 0:
                    if bad == 0:
                        fs = s
                        fl = L
                    bad += 1
    return int(bad), int(fs), int(fl), int(checked)
