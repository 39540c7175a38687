"""Words in the free group F(a, b).

Words are plain strings over ``a``, ``A`` (= a^-1), ``b``, ``B`` (= b^-1).
Signs come from case: lower case is a positive letter, upper case negative.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby
from typing import Iterable, Sequence

from .slopes import ContinuedFraction, Slope, cf_to_slope

LETTERS = "aAbB"
_INVERT = str.maketrans("aAbB", "AaBb")
# canonical rotation order a < A < b < B
_ORDER = str.maketrans("aAbB", "0123")


class WordError(ValueError):
    pass


def check_word(w: str) -> str:
    bad = set(w) - set(LETTERS)
    if bad:
        raise WordError(f"invalid letters {sorted(bad)} in word {w!r}")
    return w


def inverse(w: str) -> str:
    return w[::-1].translate(_INVERT)


def is_positive(letter: str) -> bool:
    return letter.islower()


def free_reduce(w: str) -> str:
    out: list[str] = []
    for x in w:
        if out and out[-1] == x.swapcase():
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def is_reduced(w: str) -> bool:
    return all(x != y.swapcase() for x, y in zip(w, w[1:]))


def cyclic_reduce(w: str) -> str:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1].swapcase():
        i += 1
        j -= 1
    return w[i:j]


def is_cyclically_reduced(w: str) -> bool:
    return is_reduced(w) and not (len(w) >= 2 and w[0] == w[-1].swapcase())


def is_alternating(w: str) -> bool:
    return is_reduced(w) and all(x.lower() != y.lower() for x, y in zip(w, w[1:]))


def is_cyclically_alternating(w: str) -> bool:
    return (
        len(w) % 2 == 0
        and is_alternating(w)
        and (len(w) == 0 or w[0].lower() != w[-1].lower())
    )


def rotate(w: str, k: int) -> str:
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def least_rotation(seq: Sequence) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(seq)
    if n == 0:
        return 0
    s = list(seq) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:  # i == -1
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def is_rotation_of(w: str, u: str) -> bool:
    return len(w) == len(u) and (not w or w in u + u)


@dataclass(frozen=True)
class CyclicWord:
    """The cyclic word ``(w)``: all cyclic permutations of a cyclically reduced word.

    ``word`` holds the least rotation under a < A < b < B; ``offset`` records
    which rotation of the input that is.
    """

    word: str
    offset: int = 0

    @classmethod
    def of(cls, w: str) -> "CyclicWord":
        check_word(w)
        if not is_cyclically_reduced(w):
            raise WordError(f"{w!r} is not cyclically reduced")
        k = least_rotation(w.translate(_ORDER))
        return cls(rotate(w, k), k)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __len__(self):
        return len(self.word)

    def inverse(self) -> "CyclicWord":
        return CyclicWord.of(inverse(self.word))

    @property
    def alternating(self) -> bool:
        return is_cyclically_alternating(self.word)

    def __str__(self):
        return f"({self.word})"


class CyclicSeq(tuple):
    """A cyclic sequence of positive integers; equality is modulo rotation.

    The stored order is the order given; ``canonical`` is the least rotation.
    """

    @property
    def canonical(self) -> tuple:
        k = least_rotation(self)
        return tuple(self[k:]) + tuple(self[:k])

    def __eq__(self, other):
        if isinstance(other, (tuple, list)):
            other = other if isinstance(other, CyclicSeq) else CyclicSeq(other)
            return len(self) == len(other) and self.canonical == other.canonical
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"CyclicSeq({list(self)})"

    def __str__(self):
        return "⟨" + ",".join(map(str, self.canonical)) + "⟩"

    def rotations(self):
        for k in range(len(self)):
            yield tuple(self[k:]) + tuple(self[:k])


# -- S-sequences ------------------------------------------------------------


def s_seq(w: str) -> tuple[int, ...]:
    """Lengths of the maximal positive/negative subwords of ``w``."""
    if not w:
        raise WordError("S-sequence of the empty word is undefined")
    return tuple(len(list(g)) for _, g in groupby(w, key=str.islower))


def _run_start(w: str) -> int | None:
    n = len(w)
    for k in range(n):
        if w[k].islower() != w[k - 1].islower():
            return k
    return None


def cs_seq(w: str | CyclicWord) -> CyclicSeq:
    """CS-sequence of the cyclic word ``(w)``; runs wrap around the end."""
    if isinstance(w, CyclicWord):
        w = w.word
    if not w:
        raise WordError("CS-sequence of the empty word is undefined")
    k = _run_start(w)
    if k is None:
        return CyclicSeq((len(w),))
    return CyclicSeq(s_seq(rotate(w, k)))


def word_from_sseq(seq: Iterable[int], first: str = "a") -> str:
    """The alternating word with S-sequence ``seq`` whose first letter is ``first``."""
    seq = list(seq)
    if not seq or any(t < 1 for t in seq):
        raise WordError(f"S-sequence must be a nonempty list of positive integers: {seq}")
    if first not in LETTERS:
        raise WordError(f"first letter must be one of {LETTERS}")
    gens = "ab" if first.lower() == "a" else "ba"
    positive = first.islower()
    out = []
    pos = 0
    for t in seq:
        for _ in range(t):
            g = gens[pos % 2]
            out.append(g if positive else g.upper())
            pos += 1
        positive = not positive
    return "".join(out)


# -- upper presentation relators --------------------------------------------


def epsilon(i: int, s: Slope) -> int:
    if not 1 <= i <= s.p - 1:
        raise ValueError(f"epsilon index {i} out of range 1..{s.p - 1}")
    return -1 if (i * s.q // s.p) % 2 else 1


def _as_slope(s) -> Slope:
    if isinstance(s, Slope):
        return s
    if isinstance(s, str):
        return Slope.parse(s)
    return cf_to_slope(s)


@lru_cache(maxsize=256)
def _relator(q: int, p: int) -> str:
    letters = []
    for i in range(1, p):
        g = "b" if i % 2 else "a"
        letters.append(g if (i * q // p) % 2 == 0 else g.upper())
    hat = "".join(letters)
    if p % 2:
        middle = "b" if q % 2 == 0 else "B"
    else:
        middle = "A"
    return "a" + hat + middle + inverse(hat)


def relator(s: Slope | ContinuedFraction | str) -> str:
    """The single relator ``u_{q/p}`` of the upper presentation (length ``2p``)."""
    s = _as_slope(s)
    return _relator(s.q, s.p)


def relator_cs(s) -> CyclicSeq:
    return cs_seq(relator(s))


# -- endomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class Endomorphism:
    image_a: str
    image_b: str

    def __post_init__(self):
        for w in (self.image_a, self.image_b):
            check_word(w)
            if not is_reduced(w):
                raise WordError(f"endomorphism image {w!r} is not freely reduced")

    def letter_images(self) -> dict[str, str]:
        return {
            "a": self.image_a,
            "A": inverse(self.image_a),
            "b": self.image_b,
            "B": inverse(self.image_b),
        }

    def __call__(self, w: str) -> str:
        return substitute(self, w)


def substitute(e: Endomorphism, w: str, reduce: bool = True) -> str:
    images = e.letter_images()
    out = "".join(images[x] for x in check_word(w))
    return free_reduce(out) if reduce else out


# -- the (w) == (u_s^{+-1}) test ---------------------------------------------


class PathDisagreement(AssertionError):
    """Two independent computations of the same quantity disagreed."""


def cyclic_equal_up_to_inversion(w: str | CyclicWord, s) -> bool:
    """Whether ``(w)`` is ``(u_s)`` or ``(u_s^{-1})``.

    Decided both by rotation search and by comparing CS-sequences (for a
    cyclically alternating ``w``); the two answers must agree.
    """
    if isinstance(w, CyclicWord):
        w = w.word
    u = relator(s)
    direct = is_rotation_of(w, u) or is_rotation_of(w, inverse(u))
    if not w or not is_cyclically_alternating(w):
        return direct
    by_cs = len(w) == len(u) and cs_seq(w) == cs_seq(u)
    if direct != by_cs:
        raise PathDisagreement(
            f"rotation search says {direct}, CS criterion says {by_cs} for {w!r} vs slope {s}"
        )
    return direct
