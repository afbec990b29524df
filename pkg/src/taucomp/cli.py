"""Command-line front end.

Exit codes: 0 ok, 1 mathematical failure (a property fails, a suite item
fails), 2 tooling error (bad input, unparsable relation file, bad window).
"""

from __future__ import annotations

import argparse
import json
import sys

from .domain import Window, check_elem
from .factor import enumerate_factorizations, factor_set, tau_divides, ufd_diagnostic
from .props import PROPERTIES, check
from .relations import Compose, RelationSpecError, enumerate_pairs, load_relation_file
from .search import SAMPLER_KINDS, RelationSampler, search_counterexample

EXIT_OK, EXIT_MATH, EXIT_TOOL = 0, 1, 2
DEFAULT_BOUND = 50


class ToolError(Exception):
    pass


def _dumps(obj, indent=2) -> str:
    return json.dumps(obj, sort_keys=True, indent=indent, ensure_ascii=False)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return load_relation_file(path)
    except OSError as exc:
        raise ToolError(f"cannot read {path}: {exc.strerror}") from None
    except RelationSpecError as exc:
        raise ToolError(f"{path}: invalid relation: {exc}") from None


def _window(args, *file_windows) -> Window:
    """Flags win over the first relation file's domain block, which wins over defaults."""
    fw = next((w for w in file_windows if w is not None), None)
    bound = args.window if args.window is not None else (fw.bound if fw else DEFAULT_BOUND)
    if args.witness_bound is not None:
        wb = args.witness_bound
    elif fw is not None and args.window is None:
        wb = fw.witness_bound
    else:
        wb = bound
    try:
        return Window(bound, wb)
    except ValueError as exc:
        raise ToolError(str(exc)) from None


def _elem(value: int, what: str) -> int:
    try:
        return check_elem(value, what)
    except ValueError as exc:
        raise ToolError(str(exc)) from None


def cmd_compose(args) -> int:
    r1, w1 = _load(args.rel1)
    r2, w2 = _load(args.rel2)
    window = _window(args, w1, w2)
    comp = Compose(r1, r2)
    pairs = [list(p) for p in enumerate_pairs(comp, window)]
    doc = {"relation": comp.to_spec(), "window": window.to_dict(), "exact": comp.exact,
           "count": len(pairs), "pairs": pairs}
    _emit(_dumps(doc) + "\n", args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    rel, w = _load(args.rel)
    window = _window(args, w)
    report = check(rel, args.property, window)
    if args.seed is not None:
        report.seed = args.seed
    _emit(_dumps(report.to_dict()) + "\n", args.out)
    return EXIT_OK if report.holds else EXIT_MATH


def cmd_factorize(args) -> int:
    target = _elem(args.target, "target")
    rel, w = _load(args.rel)
    window = _window(args, w)
    lines = [_dumps(fz.to_dict(), indent=None) + "\n"
             for fz in enumerate_factorizations(target, rel, window, args.min_length)]
    _emit("".join(lines), args.out)
    return EXIT_OK


def cmd_tau_divides(args) -> int:
    a, b = _elem(args.a, "a"), _elem(args.b, "b")
    rel, w = _load(args.rel)
    window = _window(args, w)
    related = tau_divides(a, b, rel, window)
    doc = {"a": a, "b": b, "relation": rel.to_spec(), "window": window.to_dict(), "tau_divides": related}
    if related:
        doc["factorization"] = next(fz.to_dict() for fz in enumerate_factorizations(b, rel, window, 1)
                                    if a in fz.factors)
    else:
        doc["factors_of_b"] = sorted(factor_set(b, rel, window))
    _emit(_dumps(doc) + "\n", args.out)
    return EXIT_OK


def cmd_ufd_diagnostic(args) -> int:
    rel, w = _load(args.rel)
    window = _window(args, w)
    _emit(_dumps(ufd_diagnostic(rel, window)) + "\n", args.out)
    return EXIT_OK


def cmd_paper_suite(args) -> int:
    from .suite import ERROR, FAIL, SuiteConfig, dumps, run_suite, summary

    bound = args.window if args.window is not None else 50
    wb = args.witness_bound if args.witness_bound is not None else 600
    try:
        cfg = SuiteConfig(bound, wb, args.seed if args.seed is not None else 0)
        results = run_suite(cfg, jobs=args.jobs, out_dir=args.out, only=args.item or None)
    except ValueError as exc:
        raise ToolError(str(exc)) from None
    if not args.out:
        sys.stdout.write(dumps(summary(results, cfg)))
    for r in results:
        print(f"{r.status:14} {r.item_id}", file=sys.stderr)
    statuses = {r.status for r in results}
    if ERROR in statuses:
        return EXIT_TOOL
    return EXIT_MATH if FAIL in statuses else EXIT_OK


def _hypothesis(text: str) -> tuple[str, str]:
    slot, sep, prop = text.partition(":")
    if not sep or slot not in ("tau1", "tau2") or prop not in PROPERTIES:
        raise argparse.ArgumentTypeError(
            f"expected tau1:PROPERTY or tau2:PROPERTY with PROPERTY in {', '.join(PROPERTIES)}")
    return slot, prop


def cmd_search(args) -> int:
    bound = args.window if args.window is not None else 12
    wb = args.witness_bound if args.witness_bound is not None else 3 * bound
    try:
        window = Window(bound, wb)
    except ValueError as exc:
        raise ToolError(str(exc)) from None
    seed = args.seed if args.seed is not None else 0
    sampler = RelationSampler(seed, args.kinds or SAMPLER_KINDS)
    res = search_counterexample(args.hypothesis, args.conclusion, sampler, args.budget, seed, window)
    doc = {"hypotheses": [list(h) for h in args.hypothesis], "conclusion": args.conclusion,
           "window": window.to_dict(), **res.to_dict()}
    _emit(_dumps(doc) + "\n", args.out)
    return EXIT_OK


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--window", type=int, default=d, metavar="B", help="enumeration bound B")
    parser.add_argument("--witness-bound", type=int, default=d, metavar="W", help="witness search bound W >= B")
    parser.add_argument("--seed", type=int, default=d, help="random seed")
    parser.add_argument("--jobs", type=int, default=argparse.SUPPRESS if suppress else 1, help="worker count")
    parser.add_argument("--out", default=d, help="output file (directory for paper-suite)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taucomp", description="Relations on the integers, composition and tau-factorizations.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    p = sub.add_parser("compose", parents=[common], help="enumerate rel1 o rel2 on the window")
    p.add_argument("rel1")
    p.add_argument("rel2")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("check", parents=[common], help="bounded property check")
    p.add_argument("rel")
    p.add_argument("--property", "-p", required=True, choices=PROPERTIES, metavar="P",
                   help=f"one of: {', '.join(PROPERTIES)}")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("factorize", parents=[common], help="tau-factorizations of a target (JSON lines)")
    p.add_argument("target", type=int)
    p.add_argument("rel")
    p.add_argument("--min-length", type=int, default=2)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("tau-divides", parents=[common], help="does a tau-divide b")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("rel")
    p.set_defaults(func=cmd_tau_divides)

    p = sub.add_parser("ufd-diagnostic", parents=[common], help="atom factorization classes per element")
    p.add_argument("rel")
    p.set_defaults(func=cmd_ufd_diagnostic)

    p = sub.add_parser("paper-suite", parents=[common], help="run the reproduction suite")
    p.add_argument("--item", action="append", help="run only this item (repeatable)")
    p.set_defaults(func=cmd_paper_suite)

    p = sub.add_parser("search-counterexample", parents=[common], help="seeded random counterexample search")
    p.add_argument("--hypothesis", "-H", action="append", type=_hypothesis, default=[],
                   metavar="SLOT:P", help="e.g. tau1:divisive_left (repeatable)")
    p.add_argument("--conclusion", "-c", required=True, choices=PROPERTIES, metavar="P")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--kinds", nargs="+", choices=SAMPLER_KINDS)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse itself exits with 2 on usage errors
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except ToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOOL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOOL


if __name__ == "__main__":
    sys.exit(main())
