"""Command-line interface: ``loggeo <command> ...``.

Exit status is 0 on success, 1 when a verification reports findings and
2 for usage, parse, schema or I/O errors (with one diagnostic line on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .diagram import OppositionDiagram, build_opposition_structure, collapse, detect_degeneracies, verify
from .document import dumps, load_document
from .errors import GeometryError
from .nelson import NelsonDiagram, build_nelson, twist, untwist, validate_inferences
from .opposition import BOTH_FALSE, BOTH_TRUE, FIRST_ONLY, POSSIBILITIES, SECOND_ONLY, Kind, classify
from .parser import parse
from .render import FORMATS, LAYOUTS, RenderOptions, render_diagram

PROG = "loggeo"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _opposition(path: str, command: str) -> OppositionDiagram:
    d = load_document(path)
    if not isinstance(d, OppositionDiagram):
        raise UsageError(f"{command} needs an opposition diagram; {path} is a Nelson diagram "
                         f"(run 'untwist' first)")
    return d


def _nelson(path: str, command: str) -> NelsonDiagram:
    d = load_document(path)
    if not isinstance(d, NelsonDiagram):
        raise UsageError(f"{command} needs a Nelson diagram; {path} is an opposition diagram")
    return d


# Command handlers return the exit status.

def cmd_parse(args) -> int:
    print(parse(args.formula))
    return 0


_POSSIBILITY_TEXT = {BOTH_TRUE: "both true", BOTH_FALSE: "both false",
                     FIRST_ONLY: "first only", SECOND_ONLY: "second only"}

# Which joint possibility refutes each symmetric relation.
_REFUTERS = (("contradictory", (BOTH_TRUE, BOTH_FALSE)), ("contrary", (BOTH_TRUE,)),
             ("subcontrary", (BOTH_FALSE,)))


def cmd_classify(args) -> int:
    a, b = parse(args.a), parse(args.b)
    constraint = parse(args.constraint)
    rel = classify(a, b, constraint)
    if args.json:
        sys.stdout.write(_json({"a": str(a), "b": str(b), "constraint": str(constraint),
                                **rel.to_dict()}))
        return 0
    print(f"{a}  vs  {b}: {rel.kind.value}")
    for p in POSSIBILITIES:
        w = rel.witnesses[p]
        print(f"  {_POSSIBILITY_TEXT[p] + ':':12} {w.format() if w is not None else 'impossible'}")
    if rel.kind is not Kind.DEGENERATE:
        for name, refuters in _REFUTERS:
            if rel.kind.value == name:
                continue
            hit = next((p for p in refuters if rel.witnesses[p] is not None), None)
            if hit is not None:
                print(f"not {name}: {_POSSIBILITY_TEXT[hit]} at {rel.witnesses[hit].format()}")
    return 0


def cmd_structure(args) -> int:
    disjuncts = [parse(t) for t in args.disjuncts]
    _emit(dumps(build_opposition_structure(disjuncts, parse(args.constraint))), args.output)
    return 0


def cmd_nelson(args) -> int:
    disjuncts = [parse(t) for t in args.disjuncts]
    n = build_nelson(disjuncts, parse(args.constraint), include_all_negations=not args.no_neg_r)
    _emit(dumps(n), args.output)
    return 0


def cmd_untwist(args) -> int:
    _emit(dumps(untwist(_nelson(args.file, "untwist"))), args.output)
    return 0


def cmd_twist(args) -> int:
    _emit(dumps(twist(_opposition(args.file, "twist"))), args.output)
    return 0


def _print_inferences(report) -> None:
    for inf in report.per_conclusion:
        premisses = ", ".join(inf.premiss_ids)
        if inf.tacit:
            premisses += " + tacit " + ", ".join(str(t) for t in inf.tacit)
        verdict = "valid" if inf.valid else f"INVALID, counterexample {inf.counterexample.format()}"
        print(f"{inf.vertex_id} <= {premisses}: {verdict}")


def cmd_verify(args) -> int:
    d = load_document(args.file)
    if isinstance(d, NelsonDiagram):
        report = validate_inferences(d)
        ok = report.all_valid
        if args.json:
            sys.stdout.write(_json(report.to_dict()))
        else:
            _print_inferences(report)
            print("all inferences valid" if ok else "some inferences are invalid")
        return 0 if ok else 1
    report = verify(d)
    if args.json:
        sys.stdout.write(_json(report.to_dict()))
        return 0 if report.clean else 1
    for v in report.per_edge:
        e = v.edge
        arrow = "->" if e.kind.directed else "--"
        line = f"{e.source} {arrow} {e.target} {e.kind.value}: "
        if v.confirmed:
            line += "confirmed"
        else:
            line += f"REFUTED, actually {v.actual.value}"
            if v.witness is not None:
                line += f" (witness {v.witness.format()})"
        print(line)
    for a, b, kind in report.missing_pairs:
        print(f"{a} {b}: no edge drawn, actually {kind.value}")
    census = " / ".join(f"{n} {k}" for k, n in report.partition_counts.items())
    print(f"pairs: {census}")
    print("clean" if report.clean else
          f"{len(report.refuted)} refuted, {len(report.missing_pairs)} missing")
    return 0 if report.clean else 1


def cmd_degeneracies(args) -> int:
    report = detect_degeneracies(_opposition(args.file, "degeneracies"))
    if args.json:
        sys.stdout.write(_json(report.to_dict()))
        return 0 if report.clean else 1
    for a, b in report.equivalent_pairs:
        print(f"equivalent: {a} = {b}")
    for vid in report.non_contingent_vertices:
        print(f"non-contingent: {vid}")
    for (a, b), w in report.failed_contrarieties:
        print(f"failed contrariety {a} -- {b}: both true at {w.format()}")
    print(f"collapsed order: {report.collapsed_order}")
    return 0 if report.clean else 1


def cmd_collapse(args) -> int:
    _emit(dumps(collapse(_opposition(args.file, "collapse"))), args.output)
    return 0


def cmd_render(args) -> int:
    d = load_document(args.file)
    opts = RenderOptions(format=args.format, layout=args.layout)
    _emit(render_diagram(d, opts, name=Path(args.file).stem), args.output)
    return 0


def cmd_corpus(args) -> int:
    if args.action == "list":
        for fx in corpus.fixtures():
            print(f"{fx.name:18} {fx.description}")
        return 0
    if args.action == "show":
        if not args.name:
            raise UsageError("corpus show needs a fixture name")
        try:
            fx = corpus.get_fixture(args.name)
        except KeyError as e:
            raise UsageError(e.args[0]) from None
        sys.stdout.write(fx.text())
        return 0
    checks = corpus.check_all()
    status = 0
    if args.json:
        sys.stdout.write(_json({c.name: {"observed": c.observed, "findings": c.findings,
                                         "as_expected": c.as_expected} for c in checks}))
        return 1 if any(c.findings or c.mismatches for c in checks) else 0
    for c in checks:
        if not c.findings:
            print(f"{c.name}: pass")
        else:
            status = 1
            print(f"{c.name}: {len(c.findings)} findings")
            for f in c.findings:
                print(f"  {f}")
        if c.mismatches:
            status = 1
            for m in c.mismatches:
                print(f"  UNEXPECTED {m}")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog=PROG, description="Oppositional geometry and Nelson diagrams.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", help="echo a formula in canonical form")
    s.add_argument("formula")
    s.set_defaults(run=cmd_parse)

    s = sub.add_parser("classify", help="classify the opposition between two formulas")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--constraint", default="true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_classify)

    for name, count, what in (("hexagon", 2, "JSB hexagon"), ("cube", 3, "cube of opposition")):
        s = sub.add_parser(name, help=f"build the {what} for {count} disjuncts")
        s.add_argument("disjuncts", nargs=count, metavar="formula")
        s.add_argument("--constraint", default="true")
        s.add_argument("-o", "--output")
        s.set_defaults(run=cmd_structure)

    s = sub.add_parser("nelson", help="build a Nelson diagram for 2 or 3 disjuncts")
    s.add_argument("disjuncts", nargs="+", metavar="formula")
    s.add_argument("--constraint", default="true")
    s.add_argument("--no-neg-r", action="store_true",
                   help="omit the third negation (7-vertex form)")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_nelson)

    for name, handler, what in (("untwist", cmd_untwist, "Nelson diagram to opposition diagram"),
                                ("twist", cmd_twist, "opposition diagram to Nelson diagram"),
                                ("collapse", cmd_collapse, "merge equivalent vertices")):
        s = sub.add_parser(name, help=what)
        s.add_argument("file")
        s.add_argument("-o", "--output")
        s.set_defaults(run=handler)

    for name, handler, what in (("verify", cmd_verify, "check every drawn edge or inference"),
                                ("degeneracies", cmd_degeneracies, "report degenerate vertices")):
        s = sub.add_parser(name, help=what)
        s.add_argument("file")
        s.add_argument("--json", action="store_true")
        s.set_defaults(run=handler)

    s = sub.add_parser("render", help="emit DOT, TikZ or SVG")
    s.add_argument("file")
    s.add_argument("--format", required=True, choices=FORMATS)
    s.add_argument("--layout", default="auto", choices=LAYOUTS)
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_render)

    s = sub.add_parser("corpus", help="bundled fixtures")
    s.add_argument("action", choices=("list", "show", "verify-all"))
    s.add_argument("name", nargs="?")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as e:
        print(f"{PROG}: usage error: {e}", file=sys.stderr)
    except GeometryError as e:
        print(f"{PROG}: {type(e).__name__}: {e}", file=sys.stderr)
    except OSError as e:
        print(f"{PROG}: {e.strerror or e}: {e.filename or ''}".rstrip(": "), file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
