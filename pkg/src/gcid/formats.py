"""Line-based text formats, DOT emission and JSON views.

All files are UTF-8 with LF line endings and `#` comments.  Tokens are
whitespace-separated; the reserved token `eps` spells the empty word.
Printing is canonical (sorted symbol lists, label-sorted rules, shortlex
axioms), so print(parse(print(x))) == print(x) byte for byte.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .control import (
    CommGraph,
    ComponentGCID,
    ComponentRule,
    LabelGCID,
    LabelRule,
    Trace,
)
from .core import Rule, Symbol, Word, shortlex, symbol_name_ok
from .grammar import Grammar, Production, SpecialGNFGrammar

KIND_SPECIAL = "special-gnf"
KIND_PLAIN = "geffert"


class FormatError(ValueError):
    """A malformed input file or word string."""


def format_word(w: Word) -> str:
    return " ".join(w) if w else "eps"


def parse_word(text: str, *, where: str = "word") -> Word:
    tokens = text.split()
    if tokens == ["eps"]:
        return ()
    for t in tokens:
        if not symbol_name_ok(t):
            raise FormatError(f"{where}: {t!r} is not a valid symbol token")
    return tuple(tokens)


def _meaningful_lines(text: str):
    for lineno, raw in zip(range(1, text.count("\n") + 2), text.split("\n")):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _symbols(rest: str, lineno: int) -> tuple[Symbol, ...]:
    tokens = tuple(rest.split())
    for t in tokens:
        if not symbol_name_ok(t):
            raise FormatError(f"line {lineno}: invalid symbol token {t!r}")
    return tokens


# ---------------------------------------------------------------------------
# grammar files

@dataclass(frozen=True)
class GrammarDoc:
    """A parsed grammar file: the declared kind plus grammar and pair symbols."""

    kind: str
    grammar: Grammar
    special: tuple[Symbol, Symbol, Symbol, Symbol]

    def as_special(self) -> SpecialGNFGrammar:
        if self.kind != KIND_SPECIAL:
            raise FormatError(f"grammar file is {self.kind!r}, not {KIND_SPECIAL!r}")
        return SpecialGNFGrammar(self.grammar, self.special)


def parse_grammar(text: str) -> GrammarDoc:
    kind = None
    sections: dict[str, tuple[Symbol, ...]] = {}
    start = None
    productions: list[Production] = []
    labels_seen: set[str] = set()

    for lineno, line in _meaningful_lines(text):
        if kind is None:
            m = re.fullmatch(r"grammar\s+(special-gnf|geffert)", line)
            if not m:
                raise FormatError(f"line {lineno}: expected 'grammar special-gnf' "
                                  "or 'grammar geffert'")
            kind = m.group(1)
            continue
        if line.startswith("rule "):
            head, sep, tail = line[5:].partition(":")
            label = head.strip()
            if not sep or not label or not symbol_name_ok(label):
                raise FormatError(f"line {lineno}: malformed rule header")
            lhs_text, arrow, rhs_text = tail.partition("->")
            if not arrow:
                raise FormatError(f"line {lineno}: rule needs '->'")
            lhs = _symbols(lhs_text, lineno)
            if not lhs:
                raise FormatError(f"line {lineno}: empty left-hand side")
            if not rhs_text.split():
                raise FormatError(f"line {lineno}: write 'eps' for an erasing rule")
            rhs = parse_word(rhs_text, where=f"line {lineno}")
            if label in labels_seen:
                raise FormatError(f"line {lineno}: duplicate rule label {label!r}")
            labels_seen.add(label)
            productions.append(Production(label, lhs, rhs))
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("nonterminals", "terminals", "special", "start"):
            raise FormatError(f"line {lineno}: unrecognised line {line!r}")
        if key in sections or (key == "start" and start is not None):
            raise FormatError(f"line {lineno}: duplicate {key!r} line")
        if key == "start":
            tokens = _symbols(rest, lineno)
            if len(tokens) != 1:
                raise FormatError(f"line {lineno}: start needs exactly one symbol")
            start = tokens[0]
        else:
            sections[key] = _symbols(rest, lineno)

    if kind is None:
        raise FormatError("empty grammar file")
    for needed in ("nonterminals", "special"):
        if needed not in sections:
            raise FormatError(f"missing {needed!r} line")
    if start is None:
        raise FormatError("missing 'start' line")
    special = sections["special"]
    if len(special) != 4:
        raise FormatError("'special' must list exactly four symbols")
    grammar = Grammar(frozenset(sections["nonterminals"]),
                      frozenset(sections.get("terminals", ())),
                      tuple(productions), start)
    return GrammarDoc(kind, grammar, (special[0], special[1], special[2], special[3]))


def format_grammar(doc: GrammarDoc) -> str:
    g = doc.grammar

    def listing(name: str, items) -> str:
        body = " ".join(sorted(items))
        return f"{name}: {body}" if body else f"{name}:"

    lines = [
        f"grammar {doc.kind}",
        listing("nonterminals", g.nonterminals),
        listing("terminals", g.terminals),
        "special: " + " ".join(doc.special),
        f"start: {g.start}",
    ]
    for p in g.productions:
        lines.append(f"rule {p.label}: {' '.join(p.lhs)} -> {format_word(p.rhs)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# system files

_COMP_HEADER = re.compile(r"gcid\s+components=(\d+)\s+init=(\d+)\s+final=(\d+)")
_COMP_RULE = re.compile(r"(\S+)\s*:\s*(\d+)\s+(ins|del)\((.*)\)\s*->\s*(\d+)")
_LABEL_RULE = re.compile(r"(\S+)\s*:\s*(ins|del)\((.*)\)\s*->\s*(.*)")


def _rule_body(mode: str, inner: str, lineno: int) -> Rule:
    parts = inner.split(";")
    if len(parts) != 3:
        raise FormatError(f"line {lineno}: rule needs 'mode(u; body; v)' "
                          "with two semicolons")
    left, body, right = (_symbols(p, lineno) for p in parts)
    return Rule(mode, left, body, right)


def parse_system(text: str) -> ComponentGCID | LabelGCID:
    """Parse a system file; the header line selects the formulation."""
    lines = list(_meaningful_lines(text))
    if not lines:
        raise FormatError("empty system file")
    lineno, header = lines[0]
    if header.startswith("gcid-labels"):
        return _parse_label_system(lines[1:])
    m = _COMP_HEADER.fullmatch(header)
    if not m:
        raise FormatError(f"line {lineno}: expected 'gcid components=K init=I "
                          "final=F' or 'gcid-labels'")
    k, init, final = (int(x) for x in m.groups())

    alphabet: tuple[Symbol, ...] | None = None
    terminals: tuple[Symbol, ...] = ()
    axioms: list[Word] = []
    rules: list[ComponentRule] = []
    for lineno, line in lines[1:]:
        if line.startswith("rule "):
            m = _COMP_RULE.fullmatch(line[5:])
            if not m:
                raise FormatError(f"line {lineno}: malformed rule line")
            label, source, mode, inner, target = m.groups()
            if not symbol_name_ok(label):
                raise FormatError(f"line {lineno}: invalid rule label {label!r}")
            rules.append(ComponentRule(label, int(source),
                                       _rule_body(mode, inner, lineno), int(target)))
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise FormatError(f"line {lineno}: unrecognised line {line!r}")
        if key == "alphabet":
            alphabet = _symbols(rest, lineno)
        elif key == "terminals":
            terminals = _symbols(rest, lineno)
        elif key == "axiom":
            axioms.append(parse_word(rest, where=f"line {lineno}"))
        else:
            raise FormatError(f"line {lineno}: unrecognised line {line!r}")
    if alphabet is None:
        raise FormatError("missing 'alphabet' line")
    return ComponentGCID(k, frozenset(alphabet), frozenset(terminals),
                         frozenset(axioms), init, final, tuple(rules))


def _parse_label_system(lines) -> LabelGCID:
    alphabet: tuple[Symbol, ...] | None = None
    terminals: tuple[Symbol, ...] = ()
    axioms: list[Word] = []
    initial: tuple[str, ...] | None = None
    final: tuple[str, ...] | None = None
    rules: list[LabelRule] = []
    for lineno, line in lines:
        if line.startswith("rule "):
            m = _LABEL_RULE.fullmatch(line[5:])
            if not m:
                raise FormatError(f"line {lineno}: malformed rule line")
            label, mode, inner, succ = m.groups()
            if not symbol_name_ok(label):
                raise FormatError(f"line {lineno}: invalid rule label {label!r}")
            rules.append(LabelRule(label, _rule_body(mode, inner, lineno),
                                   frozenset(succ.split())))
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise FormatError(f"line {lineno}: unrecognised line {line!r}")
        if key == "alphabet":
            alphabet = _symbols(rest, lineno)
        elif key == "terminals":
            terminals = _symbols(rest, lineno)
        elif key == "axiom":
            axioms.append(parse_word(rest, where=f"line {lineno}"))
        elif key == "initial":
            initial = tuple(rest.split())
        elif key == "final":
            final = tuple(rest.split())
        else:
            raise FormatError(f"line {lineno}: unrecognised line {line!r}")
    if alphabet is None:
        raise FormatError("missing 'alphabet' line")
    if initial is None or final is None:
        raise FormatError("label system needs 'initial' and 'final' lines")
    return LabelGCID(frozenset(alphabet), frozenset(terminals), frozenset(axioms),
                     frozenset(initial), frozenset(final), tuple(rules))


def _format_rule_body(r: Rule) -> str:
    return f"{r.mode}({' '.join(r.left)}; {' '.join(r.body)}; {' '.join(r.right)})"


def format_system(system: ComponentGCID | LabelGCID) -> str:
    def listing(name: str, items) -> str:
        body = " ".join(sorted(items))
        return f"{name}: {body}" if body else f"{name}:"

    if isinstance(system, ComponentGCID):
        lines = [f"gcid components={system.k} init={system.initial} "
                 f"final={system.final}"]
    else:
        lines = ["gcid-labels"]
    lines.append(listing("alphabet", system.alphabet))
    lines.append(listing("terminals", system.terminals))
    for a in shortlex(system.axioms):
        lines.append(f"axiom: {format_word(a)}")
    if isinstance(system, ComponentGCID):
        for r in sorted(system.rules, key=lambda c: c.label):
            lines.append(f"rule {r.label}: {r.source} "
                         f"{_format_rule_body(r.rule)} -> {r.target}")
    else:
        lines.append(listing("initial", system.initial_labels))
        lines.append(listing("final", system.final_labels))
        for r in sorted(system.rules, key=lambda c: c.label):
            succ = " ".join(sorted(r.successors))
            lines.append(f"rule {r.label}: {_format_rule_body(r.rule)} -> {succ}"
                         .rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DOT and JSON views

def to_dot(graph: CommGraph) -> str:
    """Deterministic DOT rendering: integer nodes, one edge per line, sorted."""
    lines = ["digraph G {"]
    touched = {n for edge in graph.edges for n in edge}
    for n in graph.nodes:
        if n not in touched:
            lines.append(f"  {n};")
    for i, j in sorted(graph.edges):
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def words_json(words) -> list[list[str]]:
    return [list(w) for w in shortlex(words)]


def trace_json(trace: Trace) -> dict:
    return {
        "start": {"site": trace.start.site, "word": list(trace.start.word)},
        "steps": [{"label": label, "site": c.site, "word": list(c.word)}
                  for label, c in trace.steps],
    }


def report_json(report) -> dict:
    return {
        "bound": report.bound,
        "verdict": report.verdict,
        "oracle_words": words_json(report.oracle_words),
        "system_words": words_json(report.system_words),
        "missing": words_json(report.missing),
        "extra": words_json(report.extra),
        "resource_flags": list(report.resource_flags),
    }
