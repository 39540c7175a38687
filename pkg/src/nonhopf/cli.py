"""``nonhopf`` command line.

Data goes to stdout (JSON with ``--format json``, aligned text otherwise);
progress and diagnostics go to stderr.  Exit status: 0 success, 1 a check
failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import hopf, smallcancel
from .replay import replay_report
from .seqcalc import ShapeError, decompose, disjointness_check
from .slopes import ContinuedFraction, Slope, cf_to_slope, family_slope, slope_to_cf
from .words import WordError, check_word, cs_seq, relator

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _slope_arg(args) -> ContinuedFraction:
    """The slope given by --slope q/p or --cf [m1,...,mk] (or --m/--i for family members)."""
    given = [x for x in ("slope", "cf") if getattr(args, x, None) is not None]
    if len(given) > 1:
        raise UsageError("--slope and --cf are mutually exclusive")
    try:
        if getattr(args, "slope", None) is not None:
            return slope_to_cf(Slope.parse(args.slope))
        if getattr(args, "cf", None) is not None:
            return ContinuedFraction.parse(args.cf)
    except (ValueError, TypeError) as exc:
        flag = "--slope" if getattr(args, "slope", None) is not None else "--cf"
        raise UsageError(f"{flag}: {exc}") from None
    if getattr(args, "i", None) is not None:
        return family_slope(args.m, args.i)
    raise UsageError("one of --slope, --cf or --i is required")


def _table(rows) -> str:
    rows = [(str(k), str(v)) for k, v in rows]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _seq(seq) -> str:
    return "(" + ",".join(map(str, seq)) + ")"


def _emit(args, data: dict, rows=None, text: str | None = None):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    elif text is not None:
        print(text)
    else:
        print(_table(rows if rows is not None else data.items()))


def _progress(args):
    if args.quiet:
        return lambda msg: None
    start = time.perf_counter()
    return lambda msg: print(f"[{time.perf_counter() - start:7.2f}s] {msg}", file=sys.stderr, flush=True)


# -- subcommands -----------------------------------------------------------------


def cmd_cf(args) -> int:
    cf = _slope_arg(args)
    s = cf_to_slope(cf)
    _emit(args, {"slope": str(s), "cf": list(cf)}, [("slope", s), ("cf", cf)])
    return EXIT_OK


def cmd_relator(args) -> int:
    cf = _slope_arg(args)
    w = relator(cf)
    _emit(args, {"slope": str(cf_to_slope(cf)), "cf": list(cf), "relator": w, "length": len(w)}, text=w)
    return EXIT_OK


def cmd_csseq(args) -> int:
    if args.word is not None:
        try:
            w = check_word(args.word)
        except WordError as exc:
            raise UsageError(f"--word: {exc}") from None
    else:
        w = relator(_slope_arg(args))
    try:
        cs = cs_seq(w)
    except (WordError, ValueError) as exc:
        raise UsageError(f"--word: {exc}") from None
    _emit(args, {"word": w, "cs": list(cs)}, text="<" + ",".join(map(str, cs)) + ">")
    return EXIT_OK


def cmd_decompose(args) -> int:
    cf = _slope_arg(args)
    try:
        d = decompose(cf)
    except ShapeError as exc:
        raise UsageError(f"decompose: {exc}") from None
    _emit(args, {"cf": list(cf), "S1": list(d.s1), "S2": list(d.s2)},
          [("cf", cf), ("S1", _seq(d.s1)), ("S2", _seq(d.s2))])
    return EXIT_OK


def cmd_pieces(args) -> int:
    R = smallcancel.family_set(args.m, args.N)
    index = smallcancel.family_index(args.m, args.N)
    if args.word is not None:
        try:
            w = check_word(args.word)
        except WordError as exc:
            raise UsageError(f"--word: {exc}") from None
        fac = smallcancel.min_pieces(w, index)
        data = {"word": w, "is_piece": index.is_piece(w),
                "pieces": None if fac is None else fac.factors}
        _emit(args, data, [("word", w), ("is_piece", data["is_piece"]),
                           ("factorization", "none" if fac is None else str(fac))])
        return EXIT_OK
    report = smallcancel.check_c4(R, index, args.N)
    counts = report.details["min_pieces_per_generator"]
    data = [{"generator": k, "length": len(g.word), "min_pieces": c}
            for k, (g, c) in enumerate(zip(R.generators, counts))]
    rows = [(f"r_{d['generator']} (|u|={d['length']})", d["min_pieces"]) for d in data]
    _emit(args, {"m": args.m, "N": args.N, "generators": data}, rows)
    return EXIT_OK


def cmd_check(args) -> int:
    say = _progress(args)
    wanted = ["c4", "t4", "crosscheck", "greendlinger", "disjointness"] if args.condition == "all" \
        else [args.condition]
    results = {}
    if {"c4", "t4"} & set(wanted):
        R = smallcancel.family_set(args.m, args.N)
    if "c4" in wanted:
        say("C(4)")
        results["c4"] = smallcancel.check_c4(R, N=args.N).to_dict()
    if "t4" in wanted:
        say("T(4)")
        results["t4"] = smallcancel.check_t4(R, N=args.N).to_dict()
    if "crosscheck" in wanted:
        results["crosscheck"] = []
        for i in range(min(args.N, 2) + 1):
            say(f"piece characterization, i={i}")
            results["crosscheck"].append(smallcancel.characterization_crosscheck(args.m, i, N=args.N).to_dict())
    if "greendlinger" in wanted:
        results["greendlinger"] = []
        for i in range(args.N + 1):
            say(f"Greendlinger premise, i={i}")
            results["greendlinger"].append(smallcancel.greendlinger_premise(args.m, i, N=args.N).to_dict())
    if "disjointness" in wanted:
        say("disjointness")
        ok = all(disjointness_check(args.m, i, j) for i in range(args.N + 1) for j in range(args.N + 1) if i != j)
        results["disjointness"] = {"pass": ok}

    def passed(v):
        return all(x["pass"] for x in v) if isinstance(v, list) else v["pass"]

    verdict = {k: passed(v) for k, v in results.items()}
    _emit(args, {"m": args.m, "N": args.N, "results": results, "pass": all(verdict.values())},
          [(k, "pass" if ok else "FAIL") for k, ok in verdict.items()])
    return EXIT_OK if all(verdict.values()) else EXIT_FAIL


def cmd_image(args) -> int:
    try:
        rel = hopf.verify_image_relation(args.m, args.i)
    except hopf.NotCertified as exc:
        raise UsageError(str(exc)) from None
    except (hopf.VerificationError, ShapeError) as exc:
        print(f"image relation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    data = {"i": args.i, "from": str(family_slope(args.m, args.i)), "to": str(rel.slope),
            "blocks": [k + 1 for k in rel.blocks.blocks], "table": rel.blocks.table,
            "deletions": rel.witness.deletions, "CV": list(rel.cv)}
    if args.witness:
        data["witness"] = rel.witness.to_dict()
    _emit(args, data, [("from", data["from"]), ("to", data["to"]), ("table", rel.blocks.table),
                       ("blocks", len(rel.blocks.blocks)), ("deletions", rel.witness.deletions),
                       ("CV", "<" + ",".join(map(str, rel.cv)) + ">")])
    return EXIT_OK


def cmd_certify(args) -> int:
    say = _progress(args)
    try:
        cert = hopf.certify(args.m, args.N, jobs=args.jobs, timings=args.timings, progress=say)
    except hopf.NotCertified as exc:
        raise UsageError(str(exc)) from None
    except (hopf.VerificationError, ShapeError) as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    say("replaying")
    ok = replay_report(json.loads(json.dumps(cert))).ok
    text = json.dumps(cert, sort_keys=True, indent=1) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        say(f"wrote {args.out}")
        _emit(args, {"out": args.out, "digest": cert["digest"], "replay": ok},
              [("out", args.out), ("digest", cert["digest"]), ("replay", ok)])
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_replay(args) -> int:
    try:
        with open(args.path) as fh:
            cert = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        print(f"not a certificate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = replay_report(cert)
    _emit(args, {"ok": report.ok, "checks": [{"name": n, "ok": ok, "note": note} for n, ok, note in report.checks]},
          [(n, ("ok    " if ok else "FAILED") + "  " + note) for n, ok, note in report.checks]
          + [("verdict", "valid" if report.ok else "INVALID")])
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _m_value(text: str) -> int:
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"m must be at least 2, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--quiet", action="store_true", help="suppress progress on stderr")

    slope = argparse.ArgumentParser(add_help=False)
    slope.add_argument("--slope", help="slope q/p with 0 < q/p <= 1")
    slope.add_argument("--cf", help="continued fraction [m1,...,mk]")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--m", type=_m_value, default=3)
    fam.add_argument("--N", type=_positive, default=4)

    p = _Parser(prog="nonhopf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("cf", parents=[common, slope], help="convert between slope and continued fraction")
    s.set_defaults(run=cmd_cf)
    s = sub.add_parser("relator", parents=[common, slope], help="print the relator word u_r")
    s.add_argument("--m", type=_m_value, default=3)
    s.add_argument("--i", type=_positive, help="family member r_i instead of --slope")
    s.set_defaults(run=cmd_relator)
    s = sub.add_parser("csseq", parents=[common, slope], help="CS-sequence of a relator or cyclic word")
    s.add_argument("--word")
    s.set_defaults(run=cmd_csseq)
    s = sub.add_parser("decompose", parents=[common, slope], help="S1/S2 decomposition of CS(r)")
    s.set_defaults(run=cmd_decompose)
    s = sub.add_parser("pieces", parents=[common, fam], help="piece factorizations over R_N")
    s.add_argument("--word")
    s.set_defaults(run=cmd_pieces)
    s = sub.add_parser("check", parents=[common, fam], help="small-cancellation checks on R_N")
    s.add_argument("--condition", default="all",
                   choices=["all", "c4", "t4", "crosscheck", "greendlinger", "disjointness"])
    s.set_defaults(run=cmd_check)
    s = sub.add_parser("image", parents=[common], help="verify (f(u_{r_i})) = (u_{r_{i+1}}^±1)")
    s.add_argument("--m", type=_m_value, default=3)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--witness", action="store_true", help="include the full witness (json)")
    s.set_defaults(run=cmd_image)
    s = sub.add_parser("certify", parents=[common, fam], help="build and self-replay a certificate")
    s.add_argument("--out")
    s.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    s.add_argument("--timings", action="store_true", help="add a non-canonical timings field")
    s.set_defaults(run=cmd_certify)
    s = sub.add_parser("replay", parents=[common], help="re-execute a certificate")
    s.add_argument("path")
    s.set_defaults(run=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"nonhopf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
