"""Compare the compiled kernels with the numpy/pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--N 4] [--i 1] [--repeat 3] [--json]

Each kernel is run on the same inputs (taken from the family set R_N and
the cyclic word u_{r_i}) with both backends; outputs must agree exactly.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from nonhopf import _kernels_py
from nonhopf.seqcalc import decompose
from nonhopf.slopes import family_slope
from nonhopf.smallcancel import _orientations, family_index, suffix_array, syllable_marks
from nonhopf.words import relator

try:
    from nonhopf import _kernels as _compiled
except ImportError:
    _compiled = None


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def cases(N: int, i: int):
    index = family_index(3, N)
    R = index.R
    owner = np.full(len(index.text), -1, dtype=np.int64)
    for ci, c in enumerate(R.cyclic):
        start = index.block_start[ci]
        owner[start:start + R.periods[ci]] = np.arange(R.offsets[ci], R.offsets[ci] + R.periods[ci])
    elem_len = np.concatenate([np.full(p, len(c), dtype=np.int64) for c, p in zip(R.cyclic, R.periods)])
    sa = suffix_array(index.text)
    lcp = _kernels_py.lcp_kasai(index.text, sa)

    u = relator(family_slope(3, i))
    ci = _orientations(R, u)[0]
    word = R.cyclic[ci].word
    n = len(word)
    ext = index.ext(ci)
    signs = np.array([x.islower() for x in word * 2], dtype=np.int64)
    d = decompose(family_slope(3, i))
    marks = syllable_marks(word, 5)
    return {
        f"lcp_kasai (|text|={len(index.text)})": lambda k: k.lcp_kasai(index.text, sa),
        "max_piece_lengths": lambda k: k.max_piece_lengths(sa, lcp, owner, elem_len),
        f"min_pieces_dp (n={n})": lambda k: k.min_pieces_dp(ext, n),
        f"min_pieces_greedy (n={n})": lambda k: k.min_pieces_greedy(ext, n),
        f"crosscheck_scan (n={n})": lambda k: k.crosscheck_scan(signs, ext, d.s1, d.s2, n),
        f"greendlinger_scan (n={n}, budget 3)": lambda k: k.greendlinger_scan(ext, marks, 5, n, 1, 3),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--i", type=int, default=2, help="family word used by the per-word kernels")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    rows = []
    for name, run in cases(args.N, args.i).items():
        tc, oc = best_of(lambda: run(_compiled), args.repeat)
        tp, op = best_of(lambda: run(_kernels_py), args.repeat)
        rows.append({"kernel": name, "cython_s": tc, "python_s": tp, "speedup": tp / tc if tc else float("inf"),
                     "agree": same(oc, op)})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        width = max(len(r["kernel"]) for r in rows)
        print(f"{'kernel'.ljust(width)}  {'cython':>10}  {'fallback':>10}  {'speedup':>8}  agree")
        for r in rows:
            print(f"{r['kernel'].ljust(width)}  {r['cython_s']:10.4f}  {r['python_s']:10.4f}  "
                  f"{r['speedup']:8.1f}  {r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
