"""Grammars, the special normal form used by the compilers, and the
bounded rewriting oracle.

The compilers consume grammars in a restricted shape: besides the two
pair-erasing rules ``A B -> eps`` and ``C D -> eps`` there are only
single-nonterminal rules of the forms ``X -> b Y`` (the new symbol lands
left of the successor), ``X -> Y b`` (it lands right), and one unit
eraser ``S' -> eps`` whose left-hand side plays the stage-switching role.
The plain form (rules ``S -> u S v`` with u over {A,C} and v over {B,D},
``S -> x``, and the two pair erasers) is accepted as input to
:func:`linearize`, which breaks its rules into chains of the restricted
shapes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .core import (
    Budget,
    Diagnostic,
    EnumerationResult,
    Symbol,
    Word,
    errors_in,
    explore,
    fresh_name,
    symbol_name_ok,
)

SHAPE_LEFT = "left-linear"        # X -> b Y
SHAPE_RIGHT = "right-linear"      # X -> Y b
SHAPE_ERASE_SPRIME = "erase-sprime"
SHAPE_ERASE_AB = "erase-ab"
SHAPE_ERASE_CD = "erase-cd"


@dataclass(frozen=True)
class Production:
    """A labelled rewriting rule lhs -> rhs over N and T (lhs non-empty)."""

    label: str
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset[Symbol]
    terminals: frozenset[Symbol]
    productions: tuple[Production, ...]
    start: Symbol

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "productions", tuple(self.productions))

    @property
    def symbols(self) -> frozenset[Symbol]:
        return self.nonterminals | self.terminals

    def production(self, label: str) -> Production:
        for p in self.productions:
            if p.label == label:
                return p
        raise KeyError(label)


@dataclass(frozen=True)
class SpecialGNFGrammar:
    """A grammar restricted to the five compiler-ready production shapes.

    `special` names, in order, the four pair nonterminals: the two erased
    as the first pair and the two erased as the second pair.  Everything
    else in N is a "chain" nonterminal; at most one of those ever occurs
    in a sentential form.
    """

    grammar: Grammar
    special: tuple[Symbol, Symbol, Symbol, Symbol]

    def __post_init__(self) -> None:
        object.__setattr__(self, "special", tuple(self.special))

    @property
    def pair_nonterminals(self) -> frozenset[Symbol]:
        return frozenset(self.special)

    @property
    def chain_nonterminals(self) -> frozenset[Symbol]:
        return self.grammar.nonterminals - self.pair_nonterminals

    @cached_property
    def sprime(self) -> Symbol:
        """The stage-switching symbol: lhs of the unit erasing production."""
        candidates = {p.lhs[0] for p in self.grammar.productions
                      if len(p.lhs) == 1 and not p.rhs
                      and p.lhs[0] in self.chain_nonterminals}
        if len(candidates) != 1:
            raise ValueError("grammar does not determine a unique unit-erased symbol")
        return next(iter(candidates))

    def shape_of(self, p: Production) -> str | None:
        """Which of the five shapes `p` has, or None if it has none."""
        a, b, c, d = self.special
        if p.lhs == (a, b) and not p.rhs:
            return SHAPE_ERASE_AB
        if p.lhs == (c, d) and not p.rhs:
            return SHAPE_ERASE_CD
        chain = self.chain_nonterminals
        emitted = self.grammar.terminals | self.pair_nonterminals
        if len(p.lhs) != 1 or p.lhs[0] not in chain:
            return None
        if not p.rhs:
            return SHAPE_ERASE_SPRIME
        if len(p.rhs) == 2:
            first, second = p.rhs
            if first in emitted and second in chain:
                return SHAPE_LEFT
            if first in chain and second in emitted:
                return SHAPE_RIGHT
        return None

    def linear_productions(self) -> tuple[tuple[Production, str], ...]:
        """The left/right-linear productions with their shapes, grammar order."""
        out = []
        for p in self.grammar.productions:
            shape = self.shape_of(p)
            if shape in (SHAPE_LEFT, SHAPE_RIGHT):
                out.append((p, shape))
        return tuple(out)


# ---------------------------------------------------------------------------
# validation

def _validate_base(g: Grammar, out: list[Diagnostic]) -> None:
    overlap = g.nonterminals & g.terminals
    if overlap:
        out.append(Diagnostic("error", "overlapping-alphabets",
                              f"symbols both nonterminal and terminal: {sorted(overlap)}"))
    for s in sorted(g.symbols):
        if not symbol_name_ok(s):
            out.append(Diagnostic("error", "bad-symbol-name",
                                  f"symbol {s!r} is not a valid atom"))
    if g.start not in g.nonterminals:
        out.append(Diagnostic("error", "bad-start",
                              f"start symbol {g.start!r} is not a nonterminal"))
    seen: set[str] = set()
    for p in g.productions:
        if p.label in seen:
            out.append(Diagnostic("error", "duplicate-label",
                                  f"production label {p.label!r} used more than once"))
        seen.add(p.label)
        if not p.lhs:
            out.append(Diagnostic("error", "empty-lhs",
                                  f"production {p.label!r} has an empty left-hand side"))
        for s in p.lhs + p.rhs:
            if s not in g.symbols:
                out.append(Diagnostic("error", "unknown-symbol",
                                      f"production {p.label!r}: {s!r} is not declared"))


def validate_special_gnf(sg: SpecialGNFGrammar) -> list[Diagnostic]:
    """Diagnostics for the restricted normal form.

    Shape violations are errors.  A repeated right-hand side between two
    linear rules with different left-hand sides is only a warning (the
    compilers do not depend on it), except that chains ending in the start
    symbol or the unit-erased symbol are allowed to share tails.
    """
    out: list[Diagnostic] = []
    g = sg.grammar
    _validate_base(g, out)

    if len(set(sg.special)) != 4 or not set(sg.special) <= g.nonterminals:
        out.append(Diagnostic("error", "bad-special",
                              "the four pair nonterminals must be distinct declared "
                              f"nonterminals, got {sg.special}"))
        return out
    if g.start in sg.pair_nonterminals:
        out.append(Diagnostic("error", "bad-start",
                              f"start symbol {g.start!r} must not be a pair nonterminal"))

    unit_lhs: set[Symbol] = set()
    for p in g.productions:
        shape = sg.shape_of(p)
        if shape is None:
            out.append(Diagnostic("error", "shape-error",
                                  f"production {p.label!r} matches none of the five "
                                  "allowed shapes"))
        elif shape == SHAPE_ERASE_SPRIME:
            unit_lhs.add(p.lhs[0])
    if not unit_lhs:
        out.append(Diagnostic("error", "missing-unit-eraser",
                              "no unit erasing production; the stage-switching "
                              "symbol cannot be identified"))
    elif len(unit_lhs) > 1:
        out.append(Diagnostic("error", "conflicting-unit-erasers",
                              f"unit erasing productions with different left-hand "
                              f"sides: {sorted(unit_lhs)}"))

    # Right-hand side uniqueness (warning only).  Chain-final rules point
    # back at the start symbol or at the unit-erased symbol; those may
    # legitimately collide.
    exempt_targets = {g.start} | unit_lhs
    by_rhs: dict[Word, list[Production]] = {}
    for p in g.productions:
        if sg.shape_of(p) in (SHAPE_LEFT, SHAPE_RIGHT):
            by_rhs.setdefault(p.rhs, []).append(p)
    for rhs, group in by_rhs.items():
        if len({p.lhs for p in group}) < 2:
            continue
        if rhs and rhs[0] in exempt_targets and rhs[0] in sg.chain_nonterminals:
            continue
        labels = ", ".join(p.label for p in group)
        out.append(Diagnostic("warning", "rhs-not-unique",
                              f"productions {labels} share the right-hand side "
                              f"{' '.join(rhs)!r}"))
    return out


def validate_plain_form(g: Grammar, special: tuple[Symbol, ...]) -> list[Diagnostic]:
    """Diagnostics for the unrestricted (pre-linearization) input shape."""
    out: list[Diagnostic] = []
    _validate_base(g, out)
    if len(set(special)) != 4 or not set(special) <= g.nonterminals:
        out.append(Diagnostic("error", "bad-special",
                              f"pair nonterminals must be four distinct declared "
                              f"nonterminals, got {special}"))
        return out
    a, b, c, d = special
    left_side = {a, c}
    right_side = {b, d}
    emitted = g.terminals | set(special)
    for p in g.productions:
        if p.lhs in ((a, b), (c, d)) and not p.rhs:
            continue
        if len(p.lhs) == 1 and p.lhs[0] == g.start:
            middle = [i for i, s in zip(range(len(p.rhs)), p.rhs) if s == g.start]
            if len(middle) == 1:
                i = middle[0]
                u, v = p.rhs[:i], p.rhs[i + 1:]
                if all(s in left_side for s in u) and all(s in right_side for s in v):
                    continue
                out.append(Diagnostic("error", "shape-error",
                                      f"production {p.label!r}: recursive rule must be "
                                      "start -> u start v with u over the first pair "
                                      "symbols and v over the second"))
                continue
            if not middle and all(s in emitted for s in p.rhs):
                continue
            out.append(Diagnostic("error", "shape-error",
                                  f"production {p.label!r} is not of the allowed "
                                  "start-rule shapes"))
            continue
        if (len(p.lhs) == 1 and not p.rhs
                and p.lhs[0] in g.nonterminals - set(special) - {g.start}):
            continue  # an existing unit eraser is tolerated and passed through
        out.append(Diagnostic("error", "shape-error",
                              f"production {p.label!r} matches no allowed shape"))
    return out


# ---------------------------------------------------------------------------
# linearization

def linearize(g: Grammar, special: tuple[Symbol, Symbol, Symbol, Symbol]) -> SpecialGNFGrammar:
    """Break the plain-form rules into left/right-linear chains.

    A rule ``S -> u S v`` becomes a chain that first emits u left to right
    (each symbol to the left of a fresh nonterminal) and then emits v right
    to left (so v reads in order once rewriting is done), ending back at S.
    A rule ``S -> x`` emits x the same way but ends at the unit-erased
    symbol, which is created (with its eraser) when the input has none;
    its last step places the stage switcher just left of the final symbol
    of x, so chain tails are shared-target rules only.  ``S -> eps`` has
    no chain of the restricted shapes and is rejected.
    """
    problems = errors_in(validate_plain_form(g, special))
    if problems:
        raise ValueError(f"not in the plain input form: {problems[0].message}")

    names = set(g.symbols)
    labels = {p.label for p in g.productions}
    prods_out: list[Production] = []

    existing_unit = [p for p in g.productions
                     if len(p.lhs) == 1 and not p.rhs
                     and p.lhs[0] in g.nonterminals - set(special) - {g.start}]
    if existing_unit:
        sprime = existing_unit[0].lhs[0]
        need_unit = False
    else:
        sprime = fresh_name("S'", names)
        names.add(sprime)
        need_unit = True

    new_nonterminals: set[Symbol] = {sprime}

    for p in g.productions:
        if not p.rhs and p.lhs != (g.start,):
            prods_out.append(p)  # pair and unit erasers pass through unchanged
            continue
        occurrences = [i for i, s in zip(range(len(p.rhs)), p.rhs) if s == g.start]
        if occurrences:
            i = occurrences[0]
            u, v = p.rhs[:i], p.rhs[i + 1:]
            emit = ([("left", s) for s in u]
                    + [("right", s) for s in reversed(v)])
            tail = g.start
        else:
            if not p.rhs:
                raise ValueError(
                    f"production {p.label!r} erases the start symbol directly; "
                    "pre-compose such inputs with the unit eraser instead")
            emit = [("left", s) for s in p.rhs[:-1]] + [("right", p.rhs[-1])]
            tail = sprime
        if not emit:
            raise ValueError(f"production {p.label!r} is a unit rule; the "
                             "restricted form has no unit chain for it")

        heads = [p.lhs[0]]
        for j in range(1, len(emit)):
            h = fresh_name(f"{p.label}.{j}", names)
            names.add(h)
            new_nonterminals.add(h)
            heads.append(h)
        heads.append(tail)

        for j, (side, sym) in zip(range(len(emit)), emit):
            rhs = (sym, heads[j + 1]) if side == "left" else (heads[j + 1], sym)
            lab = fresh_name(f"{p.label}.{j + 1}", labels)
            labels.add(lab)
            prods_out.append(Production(lab, (heads[j],), rhs))

    if need_unit:
        lab = "e"
        while lab in labels:
            lab += "'"
        labels.add(lab)
        prods_out.append(Production(lab, (sprime,), ()))

    out = SpecialGNFGrammar(
        Grammar(g.nonterminals | new_nonterminals, g.terminals,
                tuple(prods_out), g.start),
        tuple(special))
    leftover = errors_in(validate_special_gnf(out))
    if leftover:  # sanity net: linearization must produce a valid grammar
        raise AssertionError(f"linearize produced an invalid grammar: {leftover[0]}")
    return out


# ---------------------------------------------------------------------------
# bounded oracle

def _grammar_expand(g: Grammar, cap: int):
    prods = sorted(g.productions, key=lambda p: p.label)

    def expand(w: Word):
        out = []
        for p in prods:
            span = len(p.lhs)
            for i in range(len(w) - span + 1):
                if w[i:i + span] == p.lhs:
                    w2 = w[:i] + p.rhs + w[i + span:]
                    if len(w2) <= cap:
                        out.append(((p.label, i), w2))
        out.sort(key=lambda item: item[0])
        return out

    return expand


def grammar_enumerate(g: Grammar, budget: Budget) -> EnumerationResult:
    """Bounded language of a grammar by exhaustive rewriting from the start.

    All productions are applied at all positions; terminal sentential forms
    of length <= budget.max_len are collected.  This is the independent
    oracle the compiled systems are compared against.
    """
    cap = budget.intermediate_cap
    start: Word = (g.start,)
    initials = [start] if len(start) <= cap else []
    res = explore(initials, _grammar_expand(g, cap),
                  max_steps=budget.max_steps, max_visited=budget.max_visited)
    terminals = g.terminals
    words = frozenset(w for w in res.order
                      if len(w) <= budget.max_len
                      and all(s in terminals for s in w))
    return EnumerationResult(words, res.exhausted, len(res.parents))


def grammar_derive(g: Grammar, target: Word,
                   budget: Budget) -> tuple[tuple[str, Word], ...] | None:
    """A shortest derivation of `target` as (production label, form) steps.

    Returns None when no derivation exists within the bounds.
    """
    cap = budget.intermediate_cap
    start: Word = (g.start,)
    if len(start) > cap:
        return None
    res = explore([start], _grammar_expand(g, cap),
                  max_steps=budget.max_steps, max_visited=budget.max_visited,
                  stop=lambda w: w == target)
    if res.hit is None:
        return None
    steps: list[tuple[str, Word]] = []
    cur = res.hit
    while True:
        prev = res.parents[cur]
        if prev is None:
            break
        before, edge = prev
        steps.append((edge[0], cur))
        cur = before
    steps.reverse()
    return tuple(steps)


def reachable_forms(g: Grammar, budget: Budget) -> tuple[Word, ...]:
    """Every sentential form the bounded oracle visits (for invariant checks)."""
    cap = budget.intermediate_cap
    res = explore([(g.start,)], _grammar_expand(g, cap),
                  max_steps=budget.max_steps, max_visited=budget.max_visited)
    return tuple(res.order)
