"""Exact slopes, continued fractions and the relator slope family.

All arithmetic here is integer/`fractions.Fraction`; nothing touches floats.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable


@dataclass(frozen=True, order=True)
class Slope:
    """A rational number ``q/p`` with ``0 < q/p <= 1`` in lowest terms."""

    q: int
    p: int

    def __post_init__(self):
        if not (isinstance(self.q, int) and isinstance(self.p, int)):
            raise TypeError("slope numerator and denominator must be integers")
        if self.q <= 0 or self.p <= 0:
            raise ValueError(f"slope {self.q}/{self.p} is not positive")
        if self.q > self.p:
            raise ValueError(f"slope {self.q}/{self.p} exceeds 1")
        if gcd(self.q, self.p) != 1:
            raise ValueError(f"slope {self.q}/{self.p} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "Slope":
        m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse slope {text!r}; expected 'q/p'")
        return cls(int(m.group(1)), int(m.group(2)))

    @classmethod
    def from_fraction(cls, x: Fraction) -> "Slope":
        return cls(x.numerator, x.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.q, self.p)

    def __str__(self):
        return f"{self.q}/{self.p}"


class ContinuedFraction(tuple):
    """Canonical expansion ``[m_1, ..., m_k]`` of a slope.

    A trailing 1 is folded into the previous term (``[.., m, 1] == [.., m+1]``),
    so every instance satisfies ``m_k >= 2`` unless ``k == 1``.
    """

    def __new__(cls, terms: Iterable[int]):
        terms = [int(t) for t in terms]
        if not terms:
            raise ValueError("continued fraction needs at least one term")
        if any(t < 1 for t in terms):
            raise ValueError(f"continued fraction terms must be positive: {terms}")
        if len(terms) > 1 and terms[-1] == 1:
            terms[-2] += 1
            terms.pop()
        return super().__new__(cls, terms)

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        m = re.fullmatch(r"\s*\[([\d\s,]+)\]\s*", text)
        if not m:
            raise ValueError(f"cannot parse continued fraction {text!r}; expected '[m1,...,mk]'")
        return cls(int(t) for t in m.group(1).split(",") if t.strip())

    def __repr__(self):
        return f"ContinuedFraction({list(self)})"

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"


def cf_to_slope(cf: Iterable[int]) -> Slope:
    x = Fraction(0)
    for m in reversed(ContinuedFraction(cf)):
        x = 1 / (m + x)
    return Slope.from_fraction(x)


def slope_to_cf(s: Slope) -> ContinuedFraction:
    # q/p = 1/(p/q); run Euclid on p/q
    num, den = s.p, s.q
    terms = []
    while den:
        a, r = divmod(num, den)
        terms.append(a)
        num, den = den, r
    return ContinuedFraction(terms)


def family_slope(m: int, i: int) -> ContinuedFraction:
    """``r_0 = [m+1, m, m]`` and ``r_i = [m+1, m-1, (i-1)<m>, m+1, m]`` for ``i >= 1``."""
    if m < 3:
        raise ValueError(f"family parameter m must be >= 3, got {m}")
    if i < 0:
        raise ValueError(f"family index must be >= 0, got {i}")
    if i == 0:
        return ContinuedFraction([m + 1, m, m])
    return ContinuedFraction([m + 1, m - 1] + [m] * (i - 1) + [m + 1, m])


def shift(cf: Iterable[int], n: int) -> ContinuedFraction:
    """``[m_{n+1} - 1, m_{n+2}, ..., m_k]``; ``n = 1`` gives ``r'`` and ``n = 2`` gives ``r''``."""
    cf = ContinuedFraction(cf)
    if n < 1 or n >= len(cf):
        raise ValueError(f"shift by {n} out of range for {cf} (need 1 <= n <= {len(cf) - 1})")
    head = cf[n] - 1
    if head < 1:
        raise ValueError(f"shift of {cf} by {n} has a leading zero")
    return ContinuedFraction((head,) + tuple(cf[n + 1:]))


def unshift(child: Iterable[int], head: int) -> ContinuedFraction:
    """Inverse of :func:`shift` by one: ``[head, c_1 + 1, c_2, ...]``."""
    child = ContinuedFraction(child)
    return ContinuedFraction((head, child[0] + 1) + tuple(child[1:]))


@dataclass(frozen=True)
class GrowthRow:
    i: int
    p: int
    relator_length: int
    ratio: Fraction | None  # p_{i+1} / p_i
    ratio_flag: str | None  # "inside", "boundary" or "outside" w.r.t. (3, 4)
    lower_bound: int  # c * 3**i
    upper_bound: int  # c * 4**i


@dataclass(frozen=True)
class GrowthReport:
    m: int
    c: int
    rows: tuple[GrowthRow, ...]

    @property
    def boundary_indices(self) -> list[int]:
        return [r.i for r in self.rows if r.ratio_flag == "boundary"]

    @property
    def ratios_ok(self) -> bool:
        """``3 <= p_{i+1}/p_i < 4`` for every reported ratio."""
        return all(r.ratio_flag in ("inside", "boundary") for r in self.rows if r.ratio is not None)

    def length_bound_equalities(self) -> list[int]:
        """Indices where ``|u_{r_i}| == c * 3**i`` (the strict lower bound fails by equality)."""
        return [r.i for r in self.rows if r.relator_length == r.lower_bound]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "c": self.c,
            "rows": [
                {
                    "i": r.i,
                    "p": r.p,
                    "relator_length": r.relator_length,
                    "ratio": None if r.ratio is None else str(r.ratio),
                    "ratio_flag": r.ratio_flag,
                }
                for r in self.rows
            ],
            "boundary_indices": self.boundary_indices,
        }


def growth_report(m: int, upto: int) -> GrowthReport:
    """Denominators ``p_i`` for ``0 <= i <= upto`` and ratios ``p_{i+1}/p_i`` for ``i < upto``."""
    if upto < 1:
        raise ValueError("upto must be >= 1")
    ps = [cf_to_slope(family_slope(m, i)).p for i in range(upto + 1)]
    c = 2 * ps[0]
    rows = []
    for i, p in enumerate(ps):
        ratio = flag = None
        if i < upto:
            ratio = Fraction(ps[i + 1], p)
            if 3 < ratio < 4:
                flag = "inside"
            elif ratio == 3:
                flag = "boundary"
            else:
                flag = "outside"
        rows.append(GrowthRow(i, p, 2 * p, ratio, flag, c * 3**i, c * 4**i))
    return GrowthReport(m, c, tuple(rows))
