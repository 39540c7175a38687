"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it has been built; otherwise
the numpy fallback in ``_kernels_py`` is imported.  Set ``NONHOPF_PURE=1`` to
force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("NONHOPF_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
lcp_kasai = _impl.lcp_kasai
max_piece_lengths = _impl.max_piece_lengths
min_pieces_dp = _impl.min_pieces_dp
min_pieces_greedy = _impl.min_pieces_greedy
crosscheck_scan = _impl.crosscheck_scan
greendlinger_scan = _impl.greendlinger_scan

fallback = _kernels_py
