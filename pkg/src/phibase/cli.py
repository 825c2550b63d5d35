"""Command-line front end.

Exit codes: 0 pass, 1 counterexample or mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .checks import REGISTRY, CheckResult, run_check
from .numeration import PhiExpansion, check_word, phi_decode, phi_encode, zeck_decode, zeck_encode
from .occurrence import (
    RAW,
    SKETCH,
    OccurrenceReport,
    conjecture_scan,
    pi_permutation,
    predict_prefix_small,
    predict_suffix,
    rotation_permutation,
    scan_central,
    scan_prefix,
    scan_suffix,
    sketch_orbit,
)
from .structure import phi_encode_recursive

PASS, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return n


def _positive(text: str) -> int:
    n = _natural(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _emit_rows(header: Sequence[str], rows: list[Sequence], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([dict(zip(header, r)) for r in rows], out)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        cells = [list(map(str, header))] + [["-" if c is None else str(c) for c in r] for r in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            out.write("  ".join(c.rjust(wd) for c, wd in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------- commands


def cmd_encode(args, out) -> int:
    if args.system == "zeck":
        out.write(zeck_encode(args.n) + "\n")
        return PASS
    if args.method == "recursive":
        e = phi_encode_recursive(args.n)
    else:
        e = phi_encode(args.n, args.method)
    out.write(str(e) + "\n")
    return PASS


def cmd_decode(args, out) -> int:
    try:
        if args.system == "zeck":
            value = zeck_decode(check_word(args.word))
        else:
            value = phi_decode(PhiExpansion.parse(args.word))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(f"{value}\n")
    return PASS


def table_rows(lo: int, hi: int) -> list[tuple]:
    rows = []
    for n in range(lo, hi + 1):
        e = phi_encode(n)
        gamma = e.right[:-2] if n >= 2 else None
        rows.append((n, zeck_encode(n) or "0", str(e), gamma, None if gamma is None else zeck_decode(gamma)))
    return rows


def cmd_table(args, out) -> int:
    if not 1 <= args.start <= args.stop:
        raise UsageError("need 1 <= FROM <= TO")
    rows = table_rows(args.start, args.stop)
    if args.format == "text":
        # negative-side words are shown after the radix point, so gamma-(2) reads "."
        rows = [r[:3] + (None if r[3] is None else "." + r[3],) + r[4:] for r in rows]
    _emit_rows(("N", "Z", "beta", "gamma", "code"), rows, args.format, out)
    return PASS


def _print_check(res: CheckResult, fmt: str, out) -> None:
    if fmt == "json":
        return
    status = "PASS" if res.passed else "FAIL"
    line = f"{status} {res.name} ({res.checked} checks)"
    if res.counterexample:
        line += f": {res.counterexample}"
    out.write(line + "\n")
    for note in res.notes:
        out.write(f"  note: {note}\n")


def cmd_verify(args, out) -> int:
    names = list(REGISTRY) if args.id == "all" else [args.id]
    if args.id != "all" and args.id not in REGISTRY:
        raise UsageError(f"unknown verifier {args.id!r}; choose from all, {', '.join(REGISTRY)}")
    results = []
    for name in names:
        res = run_check(name, args.max_n, args.n)
        results.append(res)
        _print_check(res, args.format, out)
    if args.format == "json":
        json.dump([r.to_dict() for r in results], out)
        out.write("\n")
    return PASS if all(r.passed for r in results) else FAIL


def _scan_once(kind: str, word: str, horizon: int, jobs: int) -> tuple[str, list[int]]:
    if kind == "suffix":
        return word, scan_suffix(word, horizon, jobs)
    if kind == "prefix":
        return "." + word, scan_prefix(word, horizon, jobs)
    if word.count(".") != 1:
        raise UsageError("central blocks are written w.v")
    w, v = word.split(".")
    return word, scan_central(w, v, horizon, jobs)


def cmd_scan(args, out) -> int:
    word = args.word
    try:
        check_word(word.replace(".", "", 1) if args.kind == "central" else word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    horizon = args.max_n
    block, seq = _scan_once(args.kind, word, horizon, args.jobs)
    if args.count is not None:
        while len(seq) < args.count and horizon < 10**7:
            horizon *= 4
            block, seq = _scan_once(args.kind, word, horizon, args.jobs)
        if len(seq) >= args.count:
            horizon = seq[args.count - 1]
            seq = seq[: args.count]
    pred = None
    if args.kind == "suffix":
        pred = predict_suffix(word)
    elif args.kind == "prefix":
        pred = predict_prefix_small(word)
    rep = OccurrenceReport(block, args.kind, horizon, seq, pred).judge()
    if args.format == "json":
        out.write(rep.to_json() + "\n")
    elif args.format == "csv":
        out.write("N\n" + "".join(f"{x}\n" for x in seq))
    else:
        out.write(",".join(map(str, seq)) + "\n")
        out.write(f"verdict: {rep.verdict}" + (f" against {pred}" if pred is not None else "") + "\n")
    return FAIL if rep.verdict.startswith("MISMATCH") else PASS


def cmd_perm(args, out) -> int:
    n = args.n
    pi = list(pi_permutation(n).values)
    conv = SKETCH if args.convention == "sketch" else RAW
    rot = rotation_permutation(n, conv)
    if args.format == "json":
        json.dump({"n": n, "pi": pi, "rotation": rot, "convention": conv, "orbit": sketch_orbit(n)}, out)
        out.write("\n")
    else:
        out.write(" ".join(map(str, pi)) + "\n")
        if args.verbose:
            out.write(f"rotation ({conv}): {' '.join(map(str, rot))}\n")
    return PASS if rot == pi else FAIL


def cmd_conjecture(args, out) -> int:
    rows = conjecture_scan(args.max_len, args.max_n)
    if args.format == "json":
        json.dump([r.to_dict() for r in rows], out)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["word", "structure", "classes", "lucas_letters", "runs"])
        for r in rows:
            w.writerow([r.word, r.structure, " ".join(map(str, r.classes)), r.lucas_letters, r.count])
    else:
        for r in rows:
            out.write(str(r) + "\n")
    scored = [r for r in rows if r.classes]
    return PASS if all(r.classified and r.lucas_letters for r in scored) else FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phibase", description="Base-phi and Zeckendorf expansions: codecs and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    sp = sub.add_parser("encode", help="encode a natural number")
    sp.add_argument("system", choices=("phi", "zeck"))
    sp.add_argument("n", type=_natural)
    sp.add_argument("--method", choices=("doubling", "add-one", "recursive"), default="doubling")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode a digit word (phi words are written left.right)")
    sp.add_argument("system", choices=("phi", "zeck"))
    sp.add_argument("word")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("table", help="rows N, Z(N), beta(N), gamma-(N), C(N)")
    sp.add_argument("start", type=_positive, metavar="FROM")
    sp.add_argument("stop", type=_positive, metavar="TO")
    fmt(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser(
        "verify",
        help="run a named verifier",
        description="Verifiers: all, " + ", ".join(REGISTRY) + ". Default horizons keep each under a minute.",
    )
    sp.add_argument("id")
    sp.add_argument("--max-n", type=_positive, default=None, help="scan horizon")
    sp.add_argument("--n", type=_positive, default=None, help="largest interval or permutation index")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", help="occurrence sequence of a digit block")
    sp.add_argument("kind", choices=("suffix", "prefix", "central"))
    sp.add_argument("word")
    sp.add_argument("--max-n", type=_positive, default=10**4)
    sp.add_argument("--count", type=_positive, default=None, help="emit exactly this many terms")
    sp.add_argument("--jobs", type=_positive, default=1)
    fmt(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("perm", help="the permutation of gamma- codes on Xi_n")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--convention", choices=("sketch", "raw"), default="sketch")
    sp.add_argument("-v", "--verbose", action="store_true")
    fmt(sp)
    sp.set_defaults(func=cmd_perm)

    sp = sub.add_parser("conjecture", help="classify prefix occurrence sequences")
    sp.add_argument("--max-len", type=_positive, default=5)
    sp.add_argument("--max-n", type=_positive, default=10**5)
    fmt(sp)
    sp.set_defaults(func=cmd_conjecture)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"phibase: {exc}\n")
        return USAGE


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Invoke the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()
