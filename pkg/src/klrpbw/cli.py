"""Command line entry point: ``klrpbw verify`` and ``klrpbw tables``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on usage
errors (bad flags, weights out of range, malformed words).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from datetime import datetime, timezone

from .checks import CHECKS, RangeExceeded, check_range, run_checks
from .report import (
    build_report,
    dump_json,
    results_csv,
    results_latex,
    tables_csv,
    tables_document,
    tables_json,
    tables_latex,
    timing_document,
)
from .roots import CapExceeded, adapted_orientation, cartan, enumerate_w0_words, is_w0_word, weights_up_to

FORMATS = ("json", "csv", "latex")
WORD_CAP = 20  # "--words all" beyond this is a seeded sample


class UsageError(ValueError):
    pass


def _int_list(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from None


def _cartan(args):
    try:
        return cartan(args.type, args.rank)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


def _words(c, spec: str, seed: int) -> list[tuple[int, ...]]:
    if spec == "all":
        try:
            ws = enumerate_w0_words(c)
        except CapExceeded as exc:
            raise UsageError(str(exc)) from None
        if len(ws) <= WORD_CAP:
            return ws
        return _sample_words(c, ws, seed)
    out = []
    for part in spec.split(";"):
        if not part.strip():
            continue
        w = _int_list(part)
        if not is_w0_word(c, w):
            raise UsageError(f"{w} is not a reduced word of the longest element of {c.name}")
        out.append(w)
    if not out:
        raise UsageError("no reduced words given")
    return out


def _sample_words(c, ws, seed: int) -> list[tuple[int, ...]]:
    """A seeded sample of ``WORD_CAP`` words with both adapted and non-adapted ones."""
    rng = random.Random(seed)
    adapted = [w for w in ws if adapted_orientation(c, w) is not None]
    other = [w for w in ws if adapted_orientation(c, w) is None]
    k = min(len(adapted), WORD_CAP // 2)
    picked = rng.sample(adapted, k) + rng.sample(other, min(len(other), WORD_CAP - k))
    return sorted(picked)


def _weights(c, args) -> list[tuple[int, ...]]:
    if args.beta:
        out = []
        for part in args.beta.split(";"):
            b = _int_list(part)
            if len(b) != c.rank:
                raise UsageError(f"--beta needs {c.rank} entries, got {len(b)}")
            out.append(b)
        return out
    if args.ht_max is not None:
        if args.ht_max < 1:
            raise UsageError("--ht-max must be positive")
        return weights_up_to(c, args.ht_max)
    raise UsageError("one of --beta or --ht-max is required")


def _checks(spec: str) -> list[str]:
    if spec == "all":
        return list(CHECKS)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for n in names:
        if n not in CHECKS:
            raise UsageError(f"unknown check {n!r}; choose from all, {', '.join(CHECKS)}")
    return names


def _resolve_output(args) -> tuple[str, str | None]:
    """``(format, path)``; a bare ``--out json`` (no ``--format``) means that format on stdout."""
    fmt, out = args.format, args.out
    if fmt is None and out in FORMATS:
        return out, None
    return fmt or "json", out


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    c = _cartan(args)
    words = _words(c, args.words, args.seed)
    weights = _weights(c, args)
    checks = _checks(args.check)
    try:
        check_range(c, weights)
    except (RangeExceeded, ValueError) as exc:
        raise UsageError(str(exc)) from None
    fmt, path = _resolve_output(args)
    config = {
        "type": c.type,
        "rank": c.rank,
        "words": [list(w) for w in words],
        "weights": [list(b) for b in weights],
        "checks": checks,
        "truncate": args.truncate,
        "seed": args.seed,
        "format": fmt,
    }
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()

    def progress(res):
        if args.verbose:
            print(f"{res.status:8s} {res.check} {res.params}", file=sys.stderr)

    results = run_checks(c, checks, weights, words, truncate=args.truncate, seed=args.seed, progress=progress)
    total = time.perf_counter() - t0
    if fmt == "json":
        text = dump_json(build_report(config, results))
    elif fmt == "csv":
        text = results_csv(results)
    else:
        text = results_latex(results)
    _write(text, path)
    if path and path != "-":
        with open(path + ".timing.json", "w", encoding="utf-8") as fh:
            fh.write(dump_json(timing_document(results, started, total)))
    fails = [r for r in results if r.status == "fail"]
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "reported")}
    print(f"{c.name}: {len(results)} records, {counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['reported']} reported ({total:.1f}s)", file=sys.stderr)
    for r in fails:
        print(f"FAIL {r.check} {r.params}: {r.witness}", file=sys.stderr)
    return 1 if fails else 0


def cmd_tables(args) -> int:
    c = _cartan(args)
    if not args.word:
        raise UsageError("--word is required")
    word = _int_list(args.word)
    if not is_w0_word(c, word):
        raise UsageError(f"{word} is not a reduced word of the longest element of {c.name}")
    if not args.beta:
        raise UsageError("--beta is required")
    beta = _int_list(args.beta)
    if len(beta) != c.rank:
        raise UsageError(f"--beta needs {c.rank} entries")
    try:
        check_range(c, [beta])
    except (RangeExceeded, ValueError) as exc:
        raise UsageError(str(exc)) from None
    fmt, path = _resolve_output(args)
    doc = tables_document(c, word, beta)
    text = {"json": tables_json, "csv": tables_csv, "latex": tables_latex}[fmt](doc)
    _write(text, path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="klrpbw", description="PBW bases, canonical bases and their verification.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", required=True, choices=("A", "D", "E"))
        sp.add_argument("--rank", required=True, type=int)
        sp.add_argument("--beta", help="weight a1,a2,... (several separated by ';')")
        sp.add_argument("--truncate", type=int, default=20, help="series cutoff degree")
        sp.add_argument("--format", choices=FORMATS)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="run verification checks")
    common(v)
    v.add_argument("--words", default="all", help="'all' or reduced words 1,2,1;2,1,2")
    v.add_argument("--ht-max", type=int, help="all weights of height 1..N")
    v.add_argument("--check", default="all", help=f"all or a comma-separated subset of {', '.join(CHECKS)}")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="print transition matrices for one word and weight")
    common(t)
    t.add_argument("--word", help="reduced word, e.g. 1,2,1")
    t.set_defaults(func=cmd_tables)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
