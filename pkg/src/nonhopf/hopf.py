"""The endomorphism f, witness-based equality in G_0 = <a, b | u_{r_0}>, the
block cut of the family relators and the end-to-end certificate.

Every equality is established by a :class:`RewriteWitness`: a start word, a
list of steps (free/cyclic reduction or deletion of a verbatim cyclic
permutation of ``u_{r_0}^{±1}``) and the end word.  ``nonhopf.replay``
re-executes witnesses without using anything from this module.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import __version__
from .seqcalc import (
    ShapeError,
    cyclic_contains,
    decompose,
    disjointness_check,
    family_cs,
    slope_from_cs,
    split_cyclic_runs,
    split_runs,
)
from .slopes import ContinuedFraction, Slope, cf_to_slope, family_slope, unshift
from .smallcancel import (
    characterization_crosscheck,
    check_c4,
    check_t4,
    family_index,
    family_set,
    greendlinger_premise,
)
from .words import (
    CyclicWord,
    Endomorphism,
    PathDisagreement,
    cs_seq,
    cyclic_equal_up_to_inversion,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_cyclically_alternating,
    is_rotation_of,
    relator,
    rotate,
    s_seq,
    substitute,
    word_from_sseq,
)

SCHEMA_VERSION = 1

X_SSEQ = (4, 4, 4, 5, 4, 4)
W_SSEQ = (3, 3, 3, 4, 3, 3)
KILL_SLOPE = ContinuedFraction([3, 3, 4])

CITED = [
    {
        "step": "[4,4]-map Greendlinger",
        "statement": "a reduced van Kampen diagram over a C(4)-T(4) presentation has a boundary "
        "face whose outer boundary is a subword of a relator missing at most one piece",
        "checked_premises": ["C(4)", "T(4)", "Greendlinger premise"],
    },
    {
        "step": "epimorphism not injective implies non-Hopfian",
        "statement": "f induces a surjection G -> G killing u_s, and u_s is nontrivial in G",
        "checked_premises": ["surjectivity", "image relations", "kill", "nontriviality"],
    },
]


class VerificationError(AssertionError):
    """A stage of a verification pipeline produced something unexpected."""


class NotCertified(ValueError):
    """The requested parameters are outside what the pipeline certifies."""


def _require(cond: bool, msg: str):
    if not cond:
        raise VerificationError(msg)


# -- the endomorphism ----------------------------------------------------------


def x_word(sseq: Sequence[int] = X_SSEQ) -> str:
    return word_from_sseq(sseq, "a")


def default_endo(m: int = 3, x_sseq: Sequence[int] | None = None) -> Endomorphism:
    """``f(a) = X^{-1}``, ``f(b) = b^{-1}`` with ``S(X) = (4,4,4,5,4,4)`` for m = 3."""
    if x_sseq is None:
        if m != 3:
            raise NotCertified(f"general m not certified (m={m}); supply the S-sequence of X")
        x_sseq = X_SSEQ
    return Endomorphism(inverse(x_word(x_sseq)), "B")


def _certified(m: int):
    if m != 3:
        raise NotCertified(f"general m not certified (m={m})")


# -- witnesses ---------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    op: str  # "delete" or "reduce"
    pos: int = 0
    word: str = ""

    def to_dict(self) -> dict:
        if self.op == "reduce":
            return {"op": "reduce"}
        return {"op": self.op, "pos": self.pos, "word": self.word}


@dataclass
class RewriteWitness:
    """``start`` equals ``end`` in G_0 (as cyclic words when ``cyclic``)."""

    start: str
    steps: list[Step]
    end: str
    cyclic: bool
    claim: dict = field(default_factory=dict)

    @property
    def deletions(self) -> int:
        return sum(s.op == "delete" for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "mode": "cyclic" if self.cyclic else "linear",
            "start": self.start,
            "steps": [s.to_dict() for s in self.steps],
            "end": self.end,
        }


class _Builder:
    """Applies and records steps; positions refer to the current word."""

    def __init__(self, start: str, cyclic: bool, pattern_source: str):
        self.word = start
        self.start = start
        self.cyclic = cyclic
        self.steps: list[Step] = []
        self.u = pattern_source
        self.ui = inverse(pattern_source)

    def delete(self, pos: int, word: str):
        _require(is_rotation_of(word, self.u) or is_rotation_of(word, self.ui),
                 f"deleted word is not a cyclic permutation of u^±1: {word[:20]}...")
        cur, k = self.word, len(word)
        if pos + k <= len(cur):
            _require(cur[pos:pos + k] == word, f"no verbatim occurrence at {pos}")
            self.word = cur[:pos] + cur[pos + k:]
        else:
            _require(self.cyclic and k <= len(cur) and (cur + cur)[pos:pos + k] == word,
                     f"no verbatim occurrence at {pos}")
            self.word = cur[pos + k - len(cur):pos]
        self.steps.append(Step("delete", pos, word))

    def reduce(self):
        self.word = cyclic_reduce(self.word) if self.cyclic else free_reduce(self.word)
        self.steps.append(Step("reduce"))

    def finish(self, claim: dict) -> RewriteWitness:
        return RewriteWitness(self.start, self.steps, self.word, self.cyclic, claim)


def _delete_segments(b: _Builder, segments: Iterable[tuple[str, bool]]):
    """Delete, left to right, every segment flagged True of the current word."""
    pos = 0
    for text, kill in segments:
        if kill:
            b.delete(pos, text)
        else:
            pos += len(text)


def r0_word(m: int = 3) -> str:
    return relator(family_slope(m, 0))


def g0_equal(u: str, v: str, r0: Slope | Sequence[int] | str | None = None) -> RewriteWitness | None:
    """Try to show ``u = v`` in ``<a, b | u_{r0}>`` by deleting relator occurrences.

    Works on the cyclic reduction of ``u v^{-1}`` (conjugation does not matter
    when the target is 1).  Sound but incomplete: None means "no conclusion".
    """
    rel = relator(r0) if r0 is not None else r0_word()
    n = len(rel)
    patterns = {rotate(rel, k) for k in range(n)} | {rotate(inverse(rel), k) for k in range(n)}
    b = _Builder(u + inverse(v), True, rel)
    b.reduce()
    while b.word:
        cur = b.word
        if len(cur) < n:
            return None
        doubled = cur + cur[:n - 1]
        hit = next((p for p in range(len(cur)) if doubled[p:p + n] in patterns), None)
        if hit is None:
            return None
        b.delete(hit, doubled[hit:hit + n])
        b.reduce()
    return b.finish({"kind": "g0_equal", "lhs": u, "rhs": v})


# -- X-level identities (m = 3) -----------------------------------------------------------
#
# Tokens: x = X^{-1}, X = X, b, B.  f sends a -> x, A -> X, b -> B, B -> b.

_F_TOKEN = str.maketrans("aAbB", "xXBb")
_TOKEN_INV = str.maketrans("xXbB", "XxBb")


def tokens_of(v: str) -> str:
    return v.translate(_F_TOKEN)


def token_inverse(t: str) -> str:
    return t[::-1].translate(_TOKEN_INV)


def expand_tokens(t: str) -> str:
    x = x_word()
    table = {"x": inverse(x), "X": x, "b": "b", "B": "B"}
    return "".join(table[c] for c in t)


@dataclass(frozen=True)
class Identity:
    """``P = y z`` (or ``z y``) letter for letter, with ``y`` a relator conjugate."""

    name: str
    tokens: str
    y: str
    z: str
    y_first: bool

    @property
    def word(self) -> str:
        return expand_tokens(self.tokens)

    def inverted(self) -> "Identity":
        return Identity(self.name + "^-1", token_inverse(self.tokens), inverse(self.y), inverse(self.z),
                        not self.y_first)


def _identities() -> list[Identity]:
    p1 = expand_tokens("xBxbXbXB")
    z1 = word_from_sseq((4, 5, 4, 5), "a")
    y1 = p1[:len(p1) - len(z1)]
    p2 = expand_tokens("xBxBXbX")
    z2 = word_from_sseq((4, 4, 5, 4), "a")
    y2 = p2[len(z2):]
    id1 = Identity("claim1", "xBxbXbXB", y1, z1, True)
    id2 = Identity("claim2", "xBxBXbX", y2, z2, False)
    return [id1, id2, id1.inverted(), id2.inverted()]


def verify_identities(m: int = 3) -> list[RewriteWitness]:
    """The two block identities ``X̄b̄X̄bXbXb̄ = z1`` and ``X̄b̄X̄b̄XbX = z2`` in G_0."""
    _certified(m)
    out = []
    rel = r0_word(m)
    for ident in _identities()[:2]:
        w = ident.word
        _require(w == (ident.y + ident.z if ident.y_first else ident.z + ident.y),
                 f"{ident.name}: factorization is not letter for letter")
        _require(cs_seq(ident.y) == family_cs(m, 0), f"{ident.name}: CS(y) != CS(r_0)")
        _require(cyclic_equal_up_to_inversion(ident.y, family_slope(m, 0)), f"{ident.name}: y not a relator")
        wit = g0_equal(w, ident.z, family_slope(m, 0))
        _require(wit is not None and wit.deletions == 1, f"{ident.name}: rewriting failed")
        wit.claim = {"kind": "identity", "name": ident.name, "lhs": w, "lhs_tokens": ident.tokens, "rhs": ident.z,
                     "y": ident.y, "relator": rel}
        out.append(wit)
    return out


def rewrite_tokens(t: str) -> list[tuple[str, bool]]:
    """Split the image of a block into letter segments; True marks a relator to delete.

    Scans left to right; at each token position the longest identity that
    matches is applied, otherwise the token is kept as is.
    """
    idents = sorted(_identities(), key=lambda i: -len(i.tokens))
    segs: list[tuple[str, bool]] = []
    k = 0
    while k < len(t):
        for ident in idents:
            if t.startswith(ident.tokens, k):
                if ident.y_first:
                    segs += [(ident.y, True), (ident.z, False)]
                else:
                    segs += [(ident.z, False), (ident.y, True)]
                k += len(ident.tokens)
                break
        else:
            segs.append((expand_tokens(t[k]), False))
            k += 1
    return segs


# -- block tables --------------------------------------------------------------------


SIX_TABLE = (
    "abaBABAbabaBABAb",
    "ababABABababABA",
    "BAbabaBABAb",
    "ababABABababABABab",
    "abaBABAbabaBABA",
    "BababABABab",
)
EIGHT_TABLE = (
    "BababABABab",
    "BAbabaBABAb",
    "ababABABababABA",
    "abaBABAbabaBABA",
    "BababABA",
    "BAbabaBABA",
    "ababABABab",
    "abaBABAb",
)
TABLES = {"six": SIX_TABLE, "eight": EIGHT_TABLE}


@dataclass(frozen=True)
class BlockDecomposition:
    table: str
    blocks: tuple[int, ...]  # 0-based table indices
    rotation: int  # the blocks spell rotate(word, rotation)
    cut_offsets: tuple[int, ...]  # cut position inside each length-5 syllable
    inverted: bool  # True when the cut was made on the inverse word

    def words(self) -> list[str]:
        t = TABLES[self.table]
        return [t[k] for k in self.blocks]

    def concatenation(self) -> str:
        return "".join(self.words())


def _syllables(w: str) -> list[tuple[int, int]]:
    """(start, length) of the cyclic syllables, starts in ``[0, n)``."""
    n = len(w)
    starts = [k for k in range(n) if w[k].islower() != w[k - 1].islower()]
    return [(a, (b - a)) for a, b in zip(starts, starts[1:] + [starts[0] + n])]


def block_cut(w: str, table: str = "eight") -> BlockDecomposition:
    """Cut the cyclic word once inside every syllable of length 5 so that each
    piece between consecutive cuts is a table entry.

    The offset inside each syllable (1..4 letters in) is found by a search
    along the cyclic chain of syllables.  Falls back to the inverse word if
    the word itself admits no cut.
    """
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}")
    entries = {v: k for k, v in enumerate(TABLES[table])}
    err = None
    for inverted in (False, True):
        word = inverse(w) if inverted else w
        try:
            return _cut(word, table, entries, inverted)
        except ShapeError as exc:
            err = err or exc
    raise err


def _cut(word: str, table: str, entries: dict, inverted: bool) -> BlockDecomposition:
    n = len(word)
    if not is_cyclically_alternating(word):
        raise ShapeError("block cut needs a cyclically alternating word")
    sylls = _syllables(word)
    fives = [a for a, ln in sylls if ln == 5]
    if any(ln not in (4, 5) for _, ln in sylls):
        raise ShapeError("block cut needs syllables of length 4 and 5 only")
    if not fives:
        raise ShapeError("no syllable of length 5")
    k = len(fives)
    dbl = word * 3

    def block(j: int, o1: int, o2: int) -> str:
        a = fives[j] + o1
        b = fives[(j + 1) % k] + o2 + (n if j + 1 == k else 0)
        if k == 1:
            b = fives[0] + o2 + n
        return dbl[a:b]

    order = (2, 3, 1, 4)
    for first in order:
        # reach[j] maps an offset at syllable j to the offset it came from
        reach = [{first: None}]
        for j in range(k - 1):
            nxt = {}
            for o1 in reach[-1]:
                for o2 in order:
                    if o2 not in nxt and block(j, o1, o2) in entries:
                        nxt[o2] = o1
            if not nxt:
                break
            reach.append(nxt)
        else:
            closing = [o for o in reach[-1] if block(k - 1, o, first) in entries]
            if not closing:
                continue
            offs = [closing[0]]
            for j in range(k - 1, 0, -1):
                offs.append(reach[j][offs[-1]])
            offs.reverse()
            blocks = tuple(entries[block(j, offs[j], offs[(j + 1) % k])] for j in range(k))
            # start at the least rotation of the block sequence
            j0 = min(range(k), key=lambda j: blocks[j:] + blocks[:j])
            blocks = blocks[j0:] + blocks[:j0]
            offs = offs[j0:] + offs[:j0]
            rot = (fives[j0] + offs[0]) % n
            bd = BlockDecomposition(table, blocks, rot, tuple(offs), inverted)
            _require(bd.concatenation() == rotate(word, rot), "block concatenation mismatch")
            return bd
    raise ShapeError(f"no consistent cut of the cyclic word against the {table} table "
                     f"(first failing syllable at letter {fives[0]})")


def _merge_edges(entries) -> list[tuple[int, int]]:
    seqs = [s_seq(v) for v in entries]
    edges = []
    for a, b in itertools.product(range(len(entries)), repeat=2):
        va, vb = entries[a], entries[b]
        if va[-1].lower() == vb[0].lower() or va[-1].islower() != vb[0].islower():
            continue
        if s_seq(va + vb) == seqs[a][:-1] + (5,) + seqs[b][1:]:
            edges.append((a, b))
    return edges


def _valences(n: int, edges) -> list[int]:
    neighbours = [set() for _ in range(n)]
    for a, b in edges:
        neighbours[a].add(b)
        neighbours[b].add(a)
    return [len(nb) for nb in neighbours]


def amalgamation_graph(table: str = "eight", realized_upto: int = 5) -> dict:
    """Directed graphs on the table entries.

    ``predicate_edges``: ``n -> m`` iff ``v_n v_m`` is alternating and the last
    syllable of ``v_n`` merges with the first of ``v_m`` into one of length 5.
    ``edges``: the pairs that actually follow each other in the block cuts of
    ``u_{r_1}, ..., u_{r_realized_upto}``.  The weight/valence law (weight 1
    iff valence 3, weight 2 iff valence 2) is evaluated on both; it holds on
    the realized graph, which is the predicate graph minus the edges joining
    two weight-2 vertices.
    """
    entries = TABLES[table]
    seqs = [s_seq(v) for v in entries]
    weights = [sum(1 for x in s[1:-1] if x == 4) for s in seqs]
    predicate = _merge_edges(entries)
    realized = set()
    if table == "eight":
        for i in range(1, realized_upto + 1):
            blocks = block_cut(relator(family_slope(3, i)), table).blocks
            realized |= {(blocks[k], blocks[(k + 1) % len(blocks)]) for k in range(len(blocks))}
    realized = sorted(realized)
    _require(set(realized) <= set(predicate), "a realized adjacency violates the merge predicate")

    def law(edges):
        return all((w, d) in {(1, 3), (2, 2)} for w, d in zip(weights, _valences(len(entries), edges)))

    heavy = sorted(e for e in predicate if weights[e[0]] == 2 and weights[e[1]] == 2)
    return {
        "table": table,
        "sseqs": seqs,
        "weights": weights,
        "predicate_edges": predicate,
        "predicate_valence": _valences(len(entries), predicate),
        "predicate_valence_law": law(predicate),
        "edges": realized,
        "valence": _valences(len(entries), realized),
        "valence_law": law(realized),
        "heavy_pairs": heavy,
        "realized_is_predicate_minus_heavy": set(realized) == set(predicate) - set(heavy),
    }


def closed_paths(graph: dict, length: int):
    """Compatible closed edge paths of the given length, as tuples of vertices."""
    succ: dict[int, list[int]] = {}
    for a, b in graph["edges"]:
        succ.setdefault(a, []).append(b)

    def walk(path):
        if len(path) == length:
            if path[0] in succ.get(path[-1], ()):
                yield tuple(path)
            return
        for nb in succ.get(path[-1], ()):
            yield from walk(path + [nb])

    for v in range(len(graph["weights"])):
        yield from walk([v])


def check_closed_paths(graph: dict, max_length: int = 8) -> dict:
    """Every compatible closed path spells a cyclically alternating word with
    ``CS = <5, t_1<4>, 5, t_2<4>, ...>`` and a CT-sequence of 1s and isolated 2s."""
    entries = TABLES[graph["table"]]
    count = 0
    for length in range(1, max_length + 1):
        for path in closed_paths(graph, length):
            count += 1
            w = "".join(entries[k] for k in path)
            _require(is_cyclically_alternating(w), f"path {path} is not cyclically alternating")
            expect = tuple(itertools.chain(*((5,) + (4,) * graph["weights"][k] for k in path)))
            _require(cs_seq(w) == expect, f"path {path}: CS mismatch")
            ct = tuple(split_cyclic_runs(cs_seq(w), 4, 5))
            _require(set(ct) <= {1, 2}, f"path {path}: CT has terms outside 1, 2")
            _require(len(ct) == 1 or all(not (ct[k] == 2 and ct[k - 1] == 2) for k in range(len(ct))),
                     f"path {path}: CT has adjacent 2s")
    return {"paths": count, "max_length": max_length, "pass": True}


# -- image relations -------------------------------------------------------------------


@dataclass
class ImageRelation:
    i: int
    slope: ContinuedFraction
    witness: RewriteWitness
    blocks: BlockDecomposition
    rewritten_sseqs: list[tuple]
    t_seqs: list[tuple]
    v_seqs: list[tuple]
    cs: tuple
    ct: tuple
    cv: tuple


def verify_image_relation(m: int, i: int) -> ImageRelation:
    """``(f(u_{r_i})) = (u_{r_{i+1}}^{±1})`` in G_0, with the lifted slope."""
    _certified(m)
    if i < 0:
        raise ValueError("family index must be >= 0")
    f = default_endo(m)
    u = relator(family_slope(m, i))
    bd = block_cut(u, "six" if i == 0 else "eight")
    src = inverse(u) if bd.inverted else u
    rotated = rotate(src, bd.rotation)
    raw = substitute(f, rotated, reduce=False)
    _require(raw == free_reduce(raw), "f(u) cancels letters")
    block_words = bd.words()
    _require(raw == "".join(f(v) for v in block_words), "mapped blocks do not concatenate to f(u)")
    _require(is_rotation_of(raw, substitute(f, u)) or is_rotation_of(raw, inverse(substitute(f, u))),
             "f(u) differs from the mapped blocks up to rotation")
    if i == 0:
        _require(bd.blocks == tuple(range(6)), f"six-table cut gives blocks {bd.blocks}, expected v1..v6")

    segments, per_block = [], []
    for v in block_words:
        segs = rewrite_tokens(tokens_of(v))
        segments += segs
        per_block.append("".join(t for t, kill in segs if not kill))
    b = _Builder(raw, True, r0_word(m))
    _delete_segments(b, segments)
    w_prime = b.word
    _require(w_prime == "".join(per_block), "rewritten blocks disagree with the witness end")

    # syllable bookkeeping: no amalgamation across block boundaries
    sseqs = [s_seq(w) for w in per_block]
    _require(is_cyclically_alternating(w_prime), "rewritten word is not cyclically alternating")
    _require(s_seq(w_prime) == tuple(itertools.chain(*sseqs)) and w_prime[0].islower() != w_prime[-1].islower(),
             "syllables merge across block boundaries")
    cs = cs_seq(w_prime)
    t_seqs, v_seqs = [], []
    for s in sseqs:
        t, _, _ = split_runs(s, 4, 5)
        v, _, _ = split_runs(t, 1, 2)
        t_seqs.append(t)
        v_seqs.append(v)
    ct = split_cyclic_runs(cs, 4, 5)
    cv = split_cyclic_runs(ct, 1, 2)
    _require(ct == tuple(itertools.chain(*t_seqs)), "CT is not the concatenation of the block T-sequences")
    _require(cv == tuple(itertools.chain(*v_seqs)), "CV is not the concatenation of the block V-sequences")

    r2 = slope_from_cs(cv)
    r = unshift(unshift(r2, 1), m + 1)
    _require(r == family_slope(m, i + 1), f"lifted slope {r} != r_{i + 1} = {family_slope(m, i + 1)}")
    _require(cs_seq(relator(r)) == cs, "CS of the rewritten word differs from CS(r_{i+1})")
    _require(cyclic_equal_up_to_inversion(w_prime, r), "rewritten word is not u_{r_{i+1}}^{±1}")
    wit = b.finish({"kind": "image", "i": i, "from": str(family_slope(m, i)), "to": str(r),
                    "rotation": bd.rotation, "inverted": bd.inverted})
    return ImageRelation(i, r, wit, bd, sseqs, t_seqs, v_seqs, tuple(cs), tuple(ct), tuple(cv))


# -- surjectivity and u_s ------------------------------------------------------------------


SURJ_V = (
    (4, 4, 5, 4, 4, 5, 4, 4, 5, 4, 4, 4, 5, 4, 4, 5, 4, 4, 5, 4),
    (5, 4, 4, 5, 4, 4, 5, 4, 4, 4, 5, 4, 4, 5, 4, 4, 5, 4, 4, 4),
    (4, 5, 4, 4, 5, 4, 4, 5, 4, 4, 4, 5, 4, 4, 5, 4, 4, 5, 4, 4),
)


def _surjectivity_parts(m: int):
    f = default_endo(m)
    w = word_from_sseq(W_SSEQ, "a")
    fw = f(w)
    v1 = word_from_sseq(SURJ_V[0], "a")
    v2 = word_from_sseq(SURJ_V[1], "a")
    v3 = word_from_sseq(SURJ_V[2], "b")
    return w, fw, (v1, v2, v3)


def verify_surjectivity(m: int = 3) -> RewriteWitness:
    """``f(w) = a^{-1}`` in G_0 for the alternating ``w`` with ``S(w) = (3,3,3,4,3,3)``."""
    _certified(m)
    w, fw, (v1, v2, v3) = _surjectivity_parts(m)
    _require(fw == v1 + v2 + "A" + v3, "f(w) does not factor as v1 v2 A v3")
    for k, v in enumerate((v1, v2, v3), 1):
        _require(cs_seq(v) == family_cs(m, 0), f"CS(v{k}) != CS(r_0)")
        _require(cyclic_equal_up_to_inversion(v, family_slope(m, 0)), f"v{k} is not a relator conjugate")
    b = _Builder(fw, False, r0_word(m))
    _delete_segments(b, [(v1, True), (v2, True), ("A", False), (v3, True)])
    _require(b.word == "A", f"residual {b.word!r} is not A")
    return b.finish({"kind": "surjectivity", "w": w, "w_sseq": list(W_SSEQ), "image_of": "w", "residual": "A"})


def kill_word(m: int = 3) -> str:
    w = word_from_sseq(W_SSEQ, "a")
    W = inverse(w)
    return w + "b" + w + "baba" + "BAB" + W + "B" + W + "B"


def verify_kill_us(m: int = 3) -> RewriteWitness:
    """``f(u_s) = 1`` in G_0 for ``s = [3,3,4]``."""
    _certified(m)
    f = default_endo(m)
    q = kill_word(m)
    us = relator(KILL_SLOPE)
    _require(is_rotation_of(q, us), "(u_s) is not the cyclic word w b w baba BAB W B W B")
    _, fw, (v1, v2, v3) = _surjectivity_parts(m)
    fW = inverse(fw)
    _require(fW == inverse(v3) + "a" + inverse(v2) + inverse(v1), "f(w^-1) does not factor")
    middle = f("baba") + f("BAB")
    start = substitute(f, q, reduce=False)
    _require(start == fw + "B" + fw + middle + fW + "b" + fW + "b", "f(Q) layout mismatch")
    _require(is_cyclically_alternating(start), "f(u_s) is not cyclically alternating")
    fw_segs = [(v1, True), (v2, True), ("A", False), (v3, True)]
    fW_segs = [(inverse(v3), True), ("a", False), (inverse(v2), True), (inverse(v1), True)]
    segs = fw_segs + [("B", False)] + fw_segs + [(middle, False)] + fW_segs + [("b", False)] \
        + fW_segs + [("b", False)]
    b = _Builder(start, True, r0_word(m))
    _delete_segments(b, segs)
    residual = b.word
    _require(residual == "ABA" + middle + "abab", f"unexpected residual {residual[:30]}...")
    _require(cs_seq(residual) == family_cs(m, 0), "CS(residual) != CS(r_0)")
    b.delete(0, residual)
    _require(b.word == "", "kill witness does not end empty")
    return b.finish({"kind": "kill", "s": str(KILL_SLOPE), "word": q, "residual": residual})


# -- nontriviality premises ---------------------------------------------------------------


def verify_nontriviality_premises(m: int, N: int, jobs: int | None = 1) -> dict:
    _certified(m)
    cs_s = cs_seq(relator(KILL_SLOPE))
    terms_ok = set(cs_s) <= {m, m + 1}
    R = family_set(m, N)
    index = family_index(m, N)
    c4 = check_c4(R, index, N)
    t4 = check_t4(R, N)
    green = [greendlinger_premise(m, i, N=N) for i in range(N + 1)]
    ok = terms_ok and c4.passed and t4.passed and all(g.passed for g in green)
    return {
        "pass": ok,
        "cs_s_terms": sorted(set(cs_s)),
        "cs_s_terms_ok": terms_ok,
        "c4": c4.to_dict(timings=False),
        "t4": t4.to_dict(timings=False),
        "greendlinger": [g.to_dict(timings=False) for g in green],
        "cited": CITED[0],
    }


# -- certificate ------------------------------------------------------------------------


def _image_job(args):
    m, i = args
    rel = verify_image_relation(m, i)
    return i, rel.witness.to_dict(), str(rel.slope)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(payload: dict) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def certify(m: int = 3, N: int = 4, jobs: int | None = 1, timings: bool = False,
            crosscheck_upto: int = 2, progress=None) -> dict:
    """Run every verifier and return the certificate (a JSON-ready dict).

    Raises :class:`VerificationError` if any premise fails.
    """
    _certified(m)
    if N < 1:
        raise ValueError("N must be >= 1")
    say = progress or (lambda msg: None)
    clock = {}

    def timed(name, fn, *a, **k):
        t0 = time.perf_counter()
        out = fn(*a, **k)
        clock[name] = round(time.perf_counter() - t0, 4)
        return out

    say("surjectivity")
    surj = timed("surjectivity", verify_surjectivity, m)
    say("identities")
    idents = timed("identities", verify_identities, m)
    say(f"image relations i < {N}")
    t0 = time.perf_counter()
    if jobs is not None and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            images = sorted(pool.map(_image_job, [(m, i) for i in range(N)]))
    else:
        images = [_image_job((m, i)) for i in range(N)]
    clock["images"] = round(time.perf_counter() - t0, 4)
    say("kill u_s")
    kill = timed("kill", verify_kill_us, m)
    say("nontriviality premises")
    nontriv = timed("nontriviality", verify_nontriviality_premises, m, N)
    say("piece characterization and disjointness")
    cross = timed("crosscheck", lambda: [characterization_crosscheck(m, i, N=max(N, i)).to_dict(timings=False)
                                         for i in range(min(crosscheck_upto, N) + 1)])
    disjoint = all(disjointness_check(m, i, j) for i in range(N + 1) for j in range(N + 1) if i != j)
    premises = {
        "nontriviality": nontriv,
        "crosscheck": cross,
        "disjointness": {"pass": disjoint, "range": [0, N]},
        "cited": CITED,
    }
    failed = [k for k, ok in (("nontriviality", nontriv["pass"]),
                              ("crosscheck", all(c["pass"] for c in cross)),
                              ("disjointness", disjoint)) if not ok]
    if failed:
        raise VerificationError(f"premises failed: {failed}")
    payload = {
        "schema_version": SCHEMA_VERSION,
        "generator": f"nonhopf {__version__}",
        "m": m,
        "N": N,
        "relator_slope": str(cf_to_slope(family_slope(m, 0))),
        "family": [str(family_slope(m, i)) for i in range(N + 1)],
        "kill_slope": str(KILL_SLOPE),
        "endomorphism": {"a": default_endo(m).image_a, "b": default_endo(m).image_b,
                         "x_sseq": list(X_SSEQ)},
        "witnesses": {
            "surjectivity": surj.to_dict(),
            "identities": [w.to_dict() for w in idents],
            "image": [w for _, w, _ in images],
            "kill": kill.to_dict(),
        },
        "premises": premises,
    }
    cert = {"payload": payload, "digest": digest(payload)}
    if timings:
        cert["timings"] = clock
    return cert
