"""Cross-validation: grammar oracle vs. compiled systems, plus canonical
group replays and the two bundled test grammars.

The bundled grammars are fixed files shipped with the package so that
every derived expectation in the test suite is reproducible byte for
byte: `anbn` generates a^n b^n (n >= 1) and exercises the linear-rule
groups, `erasing` generates only the empty word and exercises the
pair-eraser machinery.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources

from . import formats
from .compilers import CompilationOutput
from .control import ComponentGCID, Trace, trace_to
from .core import Budget, Word, explore, shortlex
from .grammar import SpecialGNFGrammar, grammar_enumerate
from . import control


class NoCanonicalTrace(RuntimeError):
    """Raised when a rule group cannot carry out its production's rewrite;
    this signals a compiler regression, not a user error."""


@dataclass(frozen=True)
class ComparisonReport:
    """Bounded-language comparison between a grammar and a compiled system.

    `missing` are oracle words the system did not produce, `extra` the
    converse.  The verdict only ever claims equality *up to the stated
    bound*, and only when neither enumeration was cut short.
    """

    bound: int
    oracle_words: frozenset[Word]
    system_words: frozenset[Word]
    missing: frozenset[Word]
    extra: frozenset[Word]
    resource_flags: tuple[str, ...]

    @property
    def equal_up_to_bound(self) -> bool:
        return not self.missing and not self.extra and not self.resource_flags

    @property
    def verdict(self) -> str:
        if self.equal_up_to_bound:
            return "equal-up-to-bound"
        if self.missing or self.extra:
            return "mismatch"
        return "inconclusive"


def compare(sg: SpecialGNFGrammar, system: ComponentGCID,
            budget: Budget) -> ComparisonReport:
    """Enumerate both sides exhaustively within `budget` and diff the results.

    Resource exhaustion on either side is propagated as a flag, never as a
    silently truncated answer.
    """
    control.require_valid(system)
    oracle = grammar_enumerate(sg.grammar, budget)
    system_side = control.enumerate(system, budget)
    flags = []
    if oracle.exhausted:
        flags.append("grammar-enumeration-exhausted")
    if system_side.exhausted:
        flags.append("system-enumeration-exhausted")
    return ComparisonReport(
        bound=budget.max_len,
        oracle_words=oracle.words,
        system_words=system_side.words,
        missing=frozenset(oracle.words - system_side.words),
        extra=frozenset(system_side.words - oracle.words),
        resource_flags=tuple(flags),
    )


# ---------------------------------------------------------------------------
# canonical replays

def _count_occurrences(w: Word, factor: Word) -> int:
    span = len(factor)
    return sum(1 for i in range(len(w) - span + 1) if w[i:i + span] == factor)


def _rewrite_once(w: Word, lhs: Word, rhs: Word) -> Word:
    span = len(lhs)
    for i in range(len(w) - span + 1):
        if w[i:i + span] == lhs:
            return w[:i] + rhs + w[i + span:]
    raise ValueError("left-hand side does not occur")


def _restricted(system: ComponentGCID, labels: frozenset[str],
                start: Word) -> ComponentGCID:
    kept = tuple(r for r in system.rules if r.label in labels)
    return replace(system, rules=kept, axioms=frozenset({start}))


def _search_trace(system: ComponentGCID, form: Word, stop, max_steps: int) -> Trace | None:
    cap = max(len(form) + 6, 8)
    expand = control._expander(system, cap)
    res = explore([(system.initial, form)], expand,
                  max_steps=max_steps, max_visited=1_000_000, stop=stop)
    if res.hit is None:
        return None
    return trace_to(res.parents, res.hit)


def replay_group(output: CompilationOutput, production: str, form: Word,
                 max_steps: int = 12) -> Trace:
    """Deterministic minimal trace of one production's rule group.

    Starting from (1, form), using only the rules generated for
    `production`, the trace must end at (1, form-with-the-production-
    applied).  `form` must contain the production's left-hand side exactly
    once and no generated symbols.  Raises NoCanonicalTrace when no such
    trace exists within `max_steps` steps.
    """
    try:
        group = output.marker_table[production]
    except KeyError:
        raise KeyError(f"no rule group for production {production!r}") from None

    generated = set(output.eraser_symbols)
    for g in output.marker_table.values():
        generated.update(g.markers)
    if any(s in generated for s in form):
        raise ValueError("form must not contain generated marker symbols")
    if _count_occurrences(form, group.lhs) != 1:
        raise ValueError(f"form must contain {' '.join(group.lhs)!r} exactly once")

    expected = _rewrite_once(form, group.lhs, group.rhs)
    sub = _restricted(output.system, group.labels, form)
    final = sub.final

    trace = _search_trace(sub, form,
                          lambda st: st == (final, expected),
                          max_steps)
    if trace is None:
        raise NoCanonicalTrace(
            f"group {production!r} cannot rewrite {' '.join(form) or 'eps'!r} "
            f"within {max_steps} steps")
    return trace


def replay_prefix(system: ComponentGCID, rule_prefix: str, form: Word,
                  max_steps: int = 12) -> Trace | None:
    """Group replay addressed by label prefix, for systems loaded from files.

    The group is every rule labelled `<prefix>` or `<prefix>.<...>`; the
    trace found is the minimal return to the initial component with a
    changed word (the group's net effect).  Returns None when the group
    never changes the word within the step bound.
    """
    labels = frozenset(r.label for r in system.rules
                       if r.label == rule_prefix
                       or r.label.startswith(rule_prefix + "."))
    if not labels:
        raise KeyError(f"no rules labelled {rule_prefix!r} or {rule_prefix!r}.*")
    sub = _restricted(system, labels, form)
    final = sub.final
    return _search_trace(sub, form,
                         lambda st: st[0] == final and st[1] != form,
                         max_steps)


# ---------------------------------------------------------------------------
# bundled test grammars

def _load_grammar(name: str) -> SpecialGNFGrammar:
    text = resources.files(__package__).joinpath(f"grammars/{name}.grammar").read_text("utf-8")
    return formats.parse_grammar(text).as_special()


def grammar_anbn() -> SpecialGNFGrammar:
    """Bundled grammar with bounded language {a^n b^n : n >= 1}."""
    return _load_grammar("anbn")


def grammar_erasing() -> SpecialGNFGrammar:
    """Bundled grammar over an empty terminal alphabet; its language is {eps}."""
    return _load_grammar("erasing")


def sorted_words(words) -> list[Word]:
    return shortlex(words)
