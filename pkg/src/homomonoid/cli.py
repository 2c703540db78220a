"""Command-line front end.

Exit codes: 0 success, 1 syntax/validation error, 2 non-homogeneous input,
3 truncated completion (or an exhausted oracle budget).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .automaton import to_dot
from .oracle import DEFAULT_BUDGET, BudgetExceeded, census_counts, enumerate_census
from .presentation import NonHomogeneous, PresentationError, homogeneous, parse_presentation
from .report import (
    DEFAULT_COUNT_DEGREE,
    EXIT_INVALID,
    EXIT_NON_HOMOGENEOUS,
    EXIT_OK,
    EXIT_TRUNCATED,
    analyze,
    text_lines,
)

COMMANDS = ("analyze", "check", "complete", "automaton", "growth", "series",
            "decompose", "gamma", "oracle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homomonoid",
        description="Analyze homogeneous finitely presented monoids: normal forms, growth, "
                    "sandwich decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("file", help="presentation file ('-' for stdin)")
        cmd.add_argument("--max-degree", type=int, default=None,
                         help=f"degree bound for counts (default {DEFAULT_COUNT_DEGREE}); "
                              "when given it also bounds completion")
        cmd.add_argument("--completion-degree", type=int, default=None,
                         help="degree bound for completion only (default 4 x max relation weight)")
        cmd.add_argument("--format", choices=("text", "json"), default="text")
        cmd.add_argument("--seed-order", type=int, default=None,
                         help="shuffle the generator order with this seed")
        if name in ("analyze", "growth"):
            cmd.add_argument("--figure", type=Path, default=None,
                             help="write a growth figure (PNG/PDF/SVG by extension)")
        if name == "automaton":
            cmd.add_argument("--output", "-o", type=Path, default=None, help="write DOT here")
        if name == "oracle":
            cmd.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                             help="maximum number of words enumerated")
    return parser


def _load(args):
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    p = parse_presentation(text)
    if args.seed_order is not None:
        order = list(p.generators)
        random.Random(args.seed_order).shuffle(order)
        p = p.reordered(order)
    return p


def _emit(args, payload: dict, lines: list[str], out):
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


_STAGE = {"check": "check", "complete": "complete", "automaton": "growth", "growth": "growth",
          "series": "growth", "decompose": "gamma", "gamma": "gamma", "analyze": "gamma"}

_FIELDS = {
    "check": ["presentation", "weights", "homogeneous"],
    "complete": ["weights", "completion"],
    "growth": ["weights", "growth", "counts"],
    "series": ["weights", "series"],
    "decompose": ["decomposition"],
    "gamma": ["gamma"],
}


def _run_oracle(args, p, out) -> int:
    hp = homogeneous(p)
    if isinstance(hp, NonHomogeneous):
        print(f"error: not homogeneous: {hp.reason}", file=sys.stderr)
        return EXIT_NON_HOMOGENEOUS
    degree = DEFAULT_COUNT_DEGREE if args.max_degree is None else args.max_degree
    code, diagnostics = EXIT_OK, []
    try:
        census = enumerate_census(hp, degree, budget=args.budget)
    except BudgetExceeded as exc:
        census, code = exc.partial, EXIT_TRUNCATED
        diagnostics.append(str(exc))
    counts = census_counts(census)
    payload = {"counts": counts, "max_degree": census.max_degree, "diagnostics": diagnostics}
    lines = ["counts (oracle): " + ",".join(map(str, counts))] + [f"diagnostic: {d}" for d in diagnostics]
    _emit(args, payload, lines, out)
    return code


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        p = _load(args)
    except (OSError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.command == "oracle":
        return _run_oracle(args, p, out)

    count_degree = DEFAULT_COUNT_DEGREE if args.max_degree is None else args.max_degree
    completion_degree = args.completion_degree
    if completion_degree is None and args.max_degree is not None:
        completion_degree = args.max_degree
    report, pipe = analyze(p, count_degree=count_degree, completion_degree=completion_degree,
                           stop_after=_STAGE[args.command])
    if report.exit_code == EXIT_NON_HOMOGENEOUS:
        _emit(args, json.loads(report.to_json()), text_lines(report, ["presentation", "homogeneous"]), out)
        return report.exit_code

    if args.command == "automaton":
        for d in report.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        if report.exit_code == EXIT_OK:
            dot = to_dot(pipe.automaton)
            if args.output is not None:
                args.output.write_text(dot, encoding="utf-8")
            else:
                out.write(dot)
        return report.exit_code

    if getattr(args, "figure", None) is not None and report.counts is not None:
        from .plotting import save_growth_figure
        save_growth_figure(args.figure, report.counts, pipe.decomposition and pipe.gamma.witness,
                           title=report.presentation.replace("\n", "; "))

    if args.command == "analyze":
        _emit(args, json.loads(report.to_json()), text_lines(report), out)
        return report.exit_code

    keys = _FIELDS[args.command]
    payload = {}
    for k in keys:
        if k == "gamma":
            payload[k] = report.decomposition and report.decomposition["gamma"]
        else:
            payload[k] = getattr(report, k)
    if "counts" in keys:
        payload["counts_source"] = report.counts_source
    payload["diagnostics"] = report.diagnostics
    _emit(args, payload, text_lines(report, keys), out)
    return report.exit_code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
