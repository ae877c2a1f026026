"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 internal
soundness violation.  PATTERNFORGE_THREADS caps the worker count for the
level engine.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .construction import (
    MultiplicityMismatch,
    NetOutOfRange,
    SpanSplitError,
    collect_copies,
    run_levels,
)
from .oracle import DEFAULT_BUDGET, BudgetExceeded, count_avoiding
from .succession import RuleParseError, expand_census, parse_rule
from .verify import verify_pattern
from .words import MarkedWord, Pattern, profile
from . import __version__


def _workers() -> int:
    raw = os.environ.get("PATTERNFORGE_THREADS", "").strip()
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _pattern(parser: argparse.ArgumentParser, args: argparse.Namespace) -> Pattern:
    try:
        return Pattern(args.j, args.i)
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError  # unreachable


def _add_pattern_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--j", type=int, required=True, help="rise count of the forbidden factor")
    sub.add_argument("--i", type=int, required=True, help="fall count of the forbidden factor")


def cmd_generate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    pattern = _pattern(parser, args)
    result = run_levels(pattern, args.max_ones, cancel_nodes=args.cancel_nodes, workers=_workers())
    for rep in result.levels:
        for word in rep.survivors:
            p, m = rep.word_census[word]
            if args.format == "tsv":
                print(f"{rep.level}\t{word}\t{p - m}\t{p}\t{m}")
            else:
                print(json.dumps({"level": rep.level, "word": word, "net": p - m, "plus": p, "minus": m}))
    return 0


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    pattern = _pattern(parser, args)
    report = verify_pattern(
        pattern,
        args.max_ones,
        cancel_nodes=args.cancel_nodes,
        workers=_workers(),
        budget=args.budget,
    )
    for verdict in report.levels:
        print(f"level {verdict.level}: {'PASS' if verdict.ok else 'FAIL'}")
    for line in report.divergences()[:10]:
        print(f"  {line}")
    status = "OK" if report.ok else "MISMATCH"
    print(f"verify 1^{pattern.j} 0^{pattern.i} to {args.max_ones} ones: {status} (gamma nodes: {report.gamma_total})")
    return 0 if report.ok else 1


def cmd_count(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    pattern = _pattern(parser, args)
    total = 0
    for m in range(args.ones + 1):
        c = count_avoiding(pattern, args.ones, m)
        total += c
        print(f"{args.ones}\t{m}\t{c}")
    print(f"total\t{total}")
    return 0


def cmd_rule(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    try:
        text = open(args.file, encoding="utf-8").read()
    except OSError as exc:
        parser.error(str(exc))
    try:
        rule = parse_rule(text)
    except RuleParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 2
    for census in expand_census(rule, args.levels):
        plus_total = minus_total = 0
        for label, (p, m) in sorted(census.counts.items()):
            plus_total += p
            minus_total += m
            print(f"{census.level}\t{label}\t{p}\t{m}\t{p - m}")
        print(f"{census.level}\ttotal\t{plus_total}\t{minus_total}\t{plus_total - minus_total}")
    return 0


def cmd_trace(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    pattern = _pattern(parser, args)
    word = args.word
    if set(word) - {"0", "1"}:
        parser.error(f"word must be over 0/1, got {word!r}")
    result = run_levels(pattern, word.count("1"), workers=_workers(), keep_nodes=True)
    for node in collect_copies(result, word):
        sign = "+" if node.parity > 0 else "-"
        spans = ",".join(str(s) for s in node.mw.spans) or "-"
        prov = ">".join(node.provenance) or "-"
        print(f"{sign}\t{spans}\t{prov}")
    return 0


def _span_extent(word: str, start: int) -> int:
    ones = 0
    pos = start
    while pos < len(word) and word[pos] == "1":
        ones += 1
        pos += 1
    zeros = 0
    while pos < len(word) and word[pos] == "0":
        zeros += 1
        pos += 1
    if ones == 0 or zeros == 0:
        raise ValueError(f"no factor shape at span start {start}")
    return ones + zeros


def cmd_render(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    word = args.word
    if set(word) - {"0", "1"}:
        parser.error(f"word must be over 0/1, got {word!r}")
    spans = tuple(int(s) for s in args.spans.split(",")) if args.spans else ()
    if args.j is not None and args.i is not None:
        pattern = _pattern(parser, args)
        try:
            MarkedWord(word, spans).validate(pattern)
        except ValueError as exc:
            parser.error(str(exc))
        extents = {s: pattern.length for s in spans}
    else:
        try:
            extents = {s: _span_extent(word, s) for s in spans}
        except ValueError as exc:
            parser.error(str(exc))
    prof = profile(word)
    for y in range(max(prof), min(prof) - 1, -1):
        cells = "".join("*" if v == y else " " for v in prof)
        print(f"{y:>4} | {cells.rstrip()}")
    for s in sorted(extents):
        width = extents[s]
        print(" " * 7 + " " * s + "[" + "-" * (width - 1) + "]")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="patternforge",
        description="Build, count, and check binary words avoiding the factor 1^j 0^i.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit surviving words per level")
    _add_pattern_flags(p)
    p.add_argument("--max-ones", type=int, required=True)
    p.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--cancel-nodes", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="differential check against the oracles")
    _add_pattern_flags(p)
    p.add_argument("--max-ones", type=int, required=True)
    p.add_argument("--cancel-nodes", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="oracle counts by fall count")
    _add_pattern_flags(p)
    p.add_argument("--ones", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("rule", help="expand a succession rule file into a census")
    p.add_argument("--file", required=True)
    p.add_argument("--levels", type=int, required=True)
    p.set_defaults(func=cmd_rule)

    p = sub.add_parser("trace", help="show every tree copy of one word")
    _add_pattern_flags(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("render", help="ASCII profile of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--spans", default="")
    p.add_argument("--j", type=int)
    p.add_argument("--i", type=int)
    p.set_defaults(func=cmd_render)

    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (NetOutOfRange, MultiplicityMismatch, SpanSplitError) as exc:
        print(f"internal soundness violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
