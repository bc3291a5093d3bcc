"""Command-line front end.

Exit codes: 0 success (valid / equal / member found), 1 negative outcome
(mismatch, not found, invalid grammar), 2 usage or parse error, 3 resource
exhaustion.  Machine-readable output goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import compilers, control, formats, grammar, verify
from .core import Budget, errors_in, size_of

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCES = 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_grammar(path: str) -> formats.GrammarDoc:
    return formats.parse_grammar(_read(path))


def _load_system(path: str):
    return formats.parse_system(_read(path))


def _special_of(doc: formats.GrammarDoc) -> grammar.SpecialGNFGrammar:
    """Special-form grammar of a file, linearizing plain-form input."""
    if doc.kind == formats.KIND_PLAIN:
        return grammar.linearize(doc.grammar, doc.special)
    return doc.as_special()


def _budget(args, default_len: int = 8) -> Budget:
    max_len = args.max_len if args.max_len is not None else default_len
    return Budget(max_len=max_len,
                  max_intermediate=args.max_intermediate,
                  max_steps=args.max_steps,
                  max_visited=args.max_visited)


def _add_bounds(p: argparse.ArgumentParser, *, with_len: bool = True) -> None:
    if with_len:
        p.add_argument("--max-len", type=int, default=None,
                       help="longest collected word (default 8)")
    p.add_argument("--max-intermediate", type=int, default=None,
                   help="longest word the search may pass through "
                        "(default max-len + 6)")
    p.add_argument("--max-steps", type=int, default=200,
                   help="derivation length bound (default 200)")
    p.add_argument("--max-visited", type=int, default=1_000_000,
                   help="visited-state budget (default 1000000)")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _print_diagnostics(diags) -> None:
    for d in diags:
        print(str(d), file=sys.stderr)


def _cmd_validate(args) -> int:
    doc = _load_grammar(args.grammar)
    if doc.kind == formats.KIND_PLAIN:
        diags = grammar.validate_plain_form(doc.grammar, doc.special)
    else:
        diags = grammar.validate_special_gnf(doc.as_special())
    _print_diagnostics(diags)
    return EXIT_NEGATIVE if errors_in(diags) else EXIT_OK


def _cmd_compile(args) -> int:
    doc = _load_grammar(args.grammar)
    try:
        sg = _special_of(doc)
        output = compilers.compile_theorem(args.theorem, sg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    _emit(formats.format_system(output.system), args.output)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    budget = _budget(args)
    if args.grammar:
        doc = _load_grammar(args.grammar)
        result = grammar.grammar_enumerate(doc.grammar, budget)
    else:
        system = _load_system(args.system)
        result = control.enumerate(system, budget)
    for w in formats.shortlex(result.words):
        print(formats.format_word(w))
    if result.exhausted:
        print("warning: visited budget exhausted; listed words are only "
              "a lower bound", file=sys.stderr)
        return EXIT_RESOURCES
    return EXIT_OK


def _cmd_member(args) -> int:
    system = _load_system(args.system)
    target = formats.parse_word(args.word)
    if args.max_len is None:
        args.max_len = max(len(target), 1)
    budget = _budget(args)
    result = control.member(system, target, budget)
    if result.found:
        if args.trace:
            print(json.dumps(formats.trace_json(result.trace), indent=2))
        return EXIT_OK
    note = "exhausted the visited budget" if result.exhausted else "within bounds"
    print(f"not found: no derivation of {formats.format_word(target)!r} {note}",
          file=sys.stderr)
    return EXIT_RESOURCES if result.exhausted else EXIT_NEGATIVE


def _cmd_compare(args) -> int:
    doc = _load_grammar(args.grammar)
    system = _load_system(args.system)
    if not isinstance(system, control.ComponentGCID):
        print("error: compare needs a component-form system", file=sys.stderr)
        return EXIT_USAGE
    try:
        sg = _special_of(doc)
        report = verify.compare(sg, system, _budget(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(json.dumps(formats.report_json(report), indent=2))
    if report.resource_flags:
        return EXIT_RESOURCES
    return EXIT_OK if report.equal_up_to_bound else EXIT_NEGATIVE


def _cmd_graph(args) -> int:
    system = _load_system(args.system)
    if not isinstance(system, control.ComponentGCID):
        print("error: communication graphs are defined for component-form "
              "systems", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(formats.to_dot(control.communication_graph(system)))
    return EXIT_OK


def _cmd_size(args) -> int:
    system = _load_system(args.system)
    rules = [r.rule for r in system.rules]
    vector = size_of([r for r in rules if r.mode == "ins"],
                     [r for r in rules if r.mode == "del"])
    print(str(vector))
    return EXIT_OK


def _cmd_convert(args) -> int:
    system = _load_system(args.system)
    if args.to == "labels":
        if isinstance(system, control.LabelGCID):
            print("error: system is already in label form", file=sys.stderr)
            return EXIT_USAGE
        converted = control.to_label_form(system)
    else:
        if isinstance(system, control.ComponentGCID):
            print("error: system is already in component form", file=sys.stderr)
            return EXIT_USAGE
        converted = control.to_component_form(system)
    _emit(formats.format_system(converted), args.output)
    return EXIT_OK


def _cmd_replay(args) -> int:
    system = _load_system(args.system)
    if not isinstance(system, control.ComponentGCID):
        print("error: replay needs a component-form system", file=sys.stderr)
        return EXIT_USAGE
    form = formats.parse_word(args.form)
    try:
        trace = verify.replay_prefix(system, args.rule, form,
                                     max_steps=args.max_steps)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    if trace is None:
        print(f"no trace: rule group {args.rule!r} never changes "
              f"{formats.format_word(form)!r} and returns", file=sys.stderr)
        return EXIT_NEGATIVE
    print(json.dumps(formats.trace_json(trace), indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcid",
        description="Insertion-deletion systems under graph control: compile "
                    "restricted grammars into 4-component systems, enumerate "
                    "and compare bounded languages, and inspect the results.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a grammar file")
    p.add_argument("grammar")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("compile", help="translate a grammar into a system")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3, 4), required=True,
                   help="which construction to use")
    p.add_argument("grammar")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("enumerate", help="bounded language of a grammar or system")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--grammar")
    src.add_argument("--system")
    _add_bounds(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("member", help="search for a derivation of a word")
    p.add_argument("--system", required=True)
    p.add_argument("--word", required=True, help="space-separated tokens, eps for "
                                                 "the empty word")
    p.add_argument("--trace", action="store_true", help="print the witness as JSON")
    _add_bounds(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("compare", help="grammar oracle vs. system, as JSON")
    p.add_argument("--grammar", required=True)
    p.add_argument("--system", required=True)
    _add_bounds(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("graph", help="communication graph in DOT")
    p.add_argument("--system", required=True)
    p.add_argument("--format", choices=("dot",), default="dot")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("size", help="size vector (n,m,m';p,q,q') of a system")
    p.add_argument("--system", required=True)
    p.set_defaults(func=_cmd_size)

    p = sub.add_parser("convert", help="switch between the two formulations")
    p.add_argument("--system", required=True)
    p.add_argument("--to", choices=("labels", "components"), required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("replay", help="minimal effect trace of one rule group")
    p.add_argument("--system", required=True)
    p.add_argument("--rule", required=True, help="rule-label prefix of the group")
    p.add_argument("--form", required=True, help="starting word")
    p.add_argument("--max-steps", type=int, default=12)
    p.set_defaults(func=_cmd_replay)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except formats.FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
