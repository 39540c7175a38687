"""Independent certificate checker.

Nothing here imports the search code in ``nonhopf.hopf``: relators are
rebuilt from the family formula, the endomorphism from the stated
S-sequence of X, and every witness is re-executed step by step with the
primitives of ``nonhopf.words``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .slopes import ContinuedFraction, family_slope
from .words import (
    Endomorphism,
    WordError,
    cs_seq,
    cyclic_equal_up_to_inversion,
    cyclic_reduce,
    free_reduce,
    inverse,
    is_rotation_of,
    relator,
    substitute,
    word_from_sseq,
)

SUPPORTED_SCHEMA = 1


class ReplayFailure(Exception):
    pass


@dataclass
class ReplayReport:
    ok: bool = True
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def record(self, name: str, ok: bool, note: str = ""):
        self.checks.append((name, ok, note))
        self.ok = self.ok and ok


def payload_digest(payload: dict) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(text.encode()).hexdigest()


def run_witness(wit: dict, r0: str) -> str:
    """Execute the steps of one witness and return the final word.

    Raises :class:`ReplayFailure` on the first step that does not apply.
    """
    mode = wit.get("mode")
    if mode not in ("linear", "cyclic"):
        raise ReplayFailure(f"unknown mode {mode!r}")
    cyclic = mode == "cyclic"
    r0_inv = inverse(r0)
    cur = wit["start"]
    for k, step in enumerate(wit["steps"]):
        op = step.get("op")
        if op == "reduce":
            cur = cyclic_reduce(cur) if cyclic else free_reduce(cur)
        elif op == "delete":
            pos, word = step["pos"], step["word"]
            if not (is_rotation_of(word, r0) or is_rotation_of(word, r0_inv)):
                raise ReplayFailure(f"step {k}: deleted word is not a cyclic permutation of u^±1")
            n, m = len(cur), len(word)
            if not (isinstance(pos, int) and 0 <= pos < max(n, 1)) or m > n:
                raise ReplayFailure(f"step {k}: position {pos} out of range")
            if pos + m <= n:
                if cur[pos:pos + m] != word:
                    raise ReplayFailure(f"step {k}: no verbatim occurrence at {pos}")
                cur = cur[:pos] + cur[pos + m:]
            else:
                if not cyclic or (cur + cur)[pos:pos + m] != word:
                    raise ReplayFailure(f"step {k}: no verbatim occurrence at {pos}")
                cur = cur[pos + m - n:pos]
        else:
            raise ReplayFailure(f"step {k}: unknown op {op!r}")
    return cur


def _ends_match(wit: dict, final: str) -> bool:
    if wit["mode"] == "cyclic":
        return final == wit["end"] or (bool(final) and is_rotation_of(final, wit["end"]))
    return final == wit["end"]


def _check(report: ReplayReport, name: str, fn):
    try:
        ok, note = fn()
    except (ReplayFailure, WordError, KeyError, TypeError, ValueError) as exc:
        ok, note = False, f"{type(exc).__name__}: {exc}"
    report.record(name, bool(ok), note)


def replay_report(cert: dict) -> ReplayReport:
    report = ReplayReport()
    try:
        payload = cert["payload"]
        m, N = payload["m"], payload["N"]
    except (KeyError, TypeError) as exc:
        report.record("structure", False, f"missing field {exc}")
        return report
    report.record("schema", payload.get("schema_version") == SUPPORTED_SCHEMA,
                  f"schema_version={payload.get('schema_version')}")
    report.record("digest", payload_digest(payload) == cert.get("digest"), "sha256 of canonical payload")
    if not (isinstance(m, int) and isinstance(N, int) and m >= 2 and N >= 1):
        report.record("parameters", False, f"m={m!r}, N={N!r}")
        return report

    r0 = relator(family_slope(m, 0))
    endo = payload["endomorphism"]

    def endo_check():
        x = word_from_sseq(endo["x_sseq"], "a")
        return endo["a"] == inverse(x) and endo["b"] == "B", "f(a) = X^-1, f(b) = b^-1"

    _check(report, "endomorphism", endo_check)
    if not report.checks[-1][1]:
        return report
    f = Endomorphism(endo["a"], endo["b"])
    wits = payload["witnesses"]

    def surj():
        wit = wits["surjectivity"]
        w = word_from_sseq(wit["claim"]["w_sseq"], "a")
        final = run_witness(wit, r0)
        ok = (wit["claim"]["w"] == w and wit["start"] == substitute(f, w) and wit["mode"] == "linear"
              and final == wit["end"] == "A")
        return ok, "f(w) = a^-1, hence a and b lie in the image"

    def identities():
        for wit in wits["identities"]:
            c = wit["claim"]
            if wit["start"] != c["lhs"] + inverse(c["rhs"]) or run_witness(wit, r0) != "" or wit["end"] != "":
                return False, f"identity {c.get('name')}"
        return True, f"{len(wits['identities'])} identities"

    def image(i):
        def go():
            wit = wits["image"][i]
            u = relator(family_slope(m, i))
            fu = substitute(f, u)
            if not (is_rotation_of(wit["start"], fu) or is_rotation_of(wit["start"], inverse(fu))):
                return False, "start is not (f(u_{r_i}))^±1"
            final = run_witness(wit, r0)
            if not _ends_match(wit, final):
                return False, "steps do not end at the stated word"
            return cyclic_equal_up_to_inversion(final, family_slope(m, i + 1)), \
                f"(f(u_r{i})) = (u_r{i + 1}^±1), {sum(s['op'] == 'delete' for s in wit['steps'])} deletions"
        return go

    def kill():
        wit = wits["kill"]
        q = wit["claim"]["word"]
        us = relator(ContinuedFraction.parse(payload["kill_slope"]))
        if not is_rotation_of(q, us):
            return False, "stated word is not a rotation of u_s"
        if wit["start"] != substitute(f, q) or wit["mode"] != "cyclic":
            return False, "start is not f(u_s)"
        return run_witness(wit, r0) == "" and wit["end"] == "", "f(u_s) = 1"

    def kill_nontrivial():
        us = relator(ContinuedFraction.parse(payload["kill_slope"]))
        return set(cs_seq(us)) <= {m, m + 1}, "S-terms of u_s lie in {m, m+1}"

    _check(report, "surjectivity", surj)
    _check(report, "identities", identities)
    if len(wits.get("image", [])) != N:
        report.record("image:count", False, f"expected {N} image witnesses")
    else:
        for i in range(N):
            _check(report, f"image:{i}", image(i))
    _check(report, "kill", kill)
    _check(report, "kill:terms", kill_nontrivial)

    prem = payload.get("premises", {})
    flags = {
        "premise:nontriviality": prem.get("nontriviality", {}).get("pass"),
        "premise:c4": prem.get("nontriviality", {}).get("c4", {}).get("pass"),
        "premise:t4": prem.get("nontriviality", {}).get("t4", {}).get("pass"),
        "premise:disjointness": prem.get("disjointness", {}).get("pass"),
        "premise:crosscheck": bool(prem.get("crosscheck")) and all(c.get("pass") for c in prem["crosscheck"]),
    }
    for name, val in flags.items():
        report.record(name, val is True, "recorded result")
    return report


def replay(cert: dict) -> bool:
    """True iff every witness re-executes and every recorded premise passed."""
    return replay_report(cert).ok
