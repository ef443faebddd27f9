"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse or semantic error, 3 lint
findings (``lint`` only), 4 an enumeration limit was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .benchmark import classify_benchmark, load_scenario, run_variability_suite
from .cascade import build_cascade, find_elicitation_gaps, flatten_theory
from .context import Dimension, lint_domain_coverage, restrict_theory
from .dsl import DocumentError, emit_documentation, parse_document, parse_literal
from .engine import DEFAULT_MAX_DEFAULTS, QueryVerdict, compute_extensions, verdict
from .errors import DefreqError, LimitExceeded
from .logic import DEFAULT_MAX_ATOMS
from .proportions import read_proportions, render_report, report_proportions

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_LINT, EXIT_LIMIT = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(args):
    path = Path(args.file)
    return parse_document(path.read_text(encoding="utf-8"), source=str(path), max_atoms=args.max_atoms)


def _limits(args) -> dict:
    return {"max_atoms": args.max_atoms, "max_defaults": args.max_defaults}


def _theory(args, doc):
    theory = doc.theory
    if getattr(args, "flatten", False):
        theory = flatten_theory(theory)
    if getattr(args, "restrict", False):
        restriction = restrict_theory(theory, doc.profile, max_atoms=args.max_atoms)
        for d in restriction.dropped:
            dims = ", ".join(x.value for x in d.dimensions())
            print(f"# dropped {d.rule_id} for {d.object} (violated: {dims})")
        theory = restriction.theory
    return theory


def cmd_check(args) -> int:
    doc = _load(args)
    t = doc.theory
    conditions = sum(len(r.domain.conditions or ()) for r in t.defaults if r.domain is not None)
    print(
        f"ok: {len(t.background)} background clauses, {len(t.defaults)} defaults, "
        f"{conditions} conditions, {len(doc.profile.facts)} profiles, {len(doc.records)} records"
    )
    return EXIT_OK


def cmd_extensions(args) -> int:
    doc = _load(args)
    theory = _theory(args, doc)
    exts = compute_extensions(theory, method=args.method, **_limits(args))
    print(f"{len(exts)} extension(s)")
    for i, ext in enumerate(exts, 1):
        gen = ", ".join(sorted(ext.generating)) or "none"
        print(f"extension {i}: generated by {{{gen}}}")
        for literal in sorted(ext.literals):
            print(f"  {literal.render()}")
    return EXIT_OK


def cmd_ask(args) -> int:
    doc = _load(args)
    goal = parse_literal(args.goal)
    exts = compute_extensions(_theory(args, doc), **_limits(args))
    status = verdict(exts, goal)
    if args.mode == "skeptical":
        holds = status is QueryVerdict.ENTAILED_IN_ALL
    else:
        holds = status in (QueryVerdict.ENTAILED_IN_ALL, QueryVerdict.ENTAILED_IN_SOME)
    print(status.value)
    print(f"{args.mode}: {'yes' if holds else 'no'}")
    return EXIT_OK


def cmd_lint(args) -> int:
    doc = _load(args)
    findings = 0
    for record in doc.records:
        if not record.is_default:
            continue
        missing = lint_domain_coverage(record)
        if missing:
            findings += 1
            print(f"{record.rule.id}: undocumented dimensions: {', '.join(d.value for d in missing)}")
        else:
            print(f"{record.rule.id}: all {len(Dimension)} dimensions documented")
    return EXIT_LINT if findings else EXIT_OK


def cmd_cascade(args) -> int:
    doc = _load(args)
    objects = args.object or None
    if args.gaps:
        gaps = find_elicitation_gaps(doc.theory, objects=objects, max_atoms=args.max_atoms)
        if not gaps:
            print("no elicitation gaps")
        for gap in gaps:
            print(f"gap: {gap.atom.render()} needed by {', '.join(gap.needed_by)}")
        return EXIT_OK
    graph = build_cascade(doc.theory, objects=objects, max_atoms=args.max_atoms)
    for cycle in graph.cycles:
        print(f"// cycle: {' '.join(cycle)}")
    sys.stdout.write(graph.to_dot())
    return EXIT_OK


def cmd_classify(args) -> int:
    problem, _ = load_scenario(Path(args.file), max_atoms=args.max_atoms)
    result = classify_benchmark(problem, **_limits(args))
    print(result.answer.value)
    for step in result.trace:
        print(f"  {step}")
    return EXIT_OK


def cmd_suite(args) -> int:
    problem, levels = load_scenario(Path(args.file), max_atoms=args.max_atoms)
    report = run_variability_suite(problem, levels, **_limits(args))
    sys.stdout.write(report.render())
    return EXIT_OK


def cmd_doc(args) -> int:
    doc = _load(args)
    fmt = "table-text" if args.format == "table" else "structured"
    sys.stdout.write(emit_documentation(doc.records, fmt))
    return EXIT_OK


def cmd_proportions(args) -> int:
    rows = read_proportions(Path(args.file), strict=args.strict)
    sys.stdout.write(render_report(report_proportions(rows)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS, help="atom enumeration cap")
    common.add_argument("--max-defaults", type=int, default=DEFAULT_MAX_DEFAULTS, help="default subset cap")

    parser = _Parser(prog="defreq", description="Default requirements: reasoning, linting, documentation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="parse a document and check W is satisfiable")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extensions", parents=[common], help="list the extensions of a theory")
    p.add_argument("file")
    p.add_argument("--method", choices=["subsets", "iterative"], default="subsets")
    p.add_argument("--restrict", action="store_true", help="drop defaults whose domain the profile violates")
    p.add_argument("--flatten", action="store_true", help="flatten nested defaults first")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("ask", parents=[common], help="query a literal across extensions")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--mode", choices=["skeptical", "credulous"], default="skeptical")
    p.add_argument("--restrict", action="store_true")
    p.add_argument("--flatten", action="store_true")
    p.set_defaults(func=cmd_ask)

    p = sub.add_parser("lint", parents=[common], help="report undocumented context dimensions")
    p.add_argument("file")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("cascade", parents=[common], help="default dependency graph (DOT) or gaps")
    p.add_argument("file")
    p.add_argument("--gaps", action="store_true", help="list elicitation gaps instead of the graph")
    p.add_argument("--object", action="append", help="object to instantiate schemas for (repeatable)")
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("classify", parents=[common], help="classify a benchmark scenario")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("suite", parents=[common], help="classify every variability level of a scenario")
    p.add_argument("file")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("doc", parents=[common], help="emit requirements documentation")
    p.add_argument("file")
    p.add_argument("--format", choices=["table", "structured"], default="table")
    p.set_defaults(func=cmd_doc)

    p = sub.add_parser("proportions", parents=[common], help="report answer proportions from CSV")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="reject rows whose fractions do not sum to 1")
    p.set_defaults(func=cmd_proportions)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as exc:
        print(f"defreq: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except DefreqError as exc:
        print(f"defreq: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"defreq: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
