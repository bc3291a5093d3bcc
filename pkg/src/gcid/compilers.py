"""Four translations from the restricted grammar form into 4-component
graph-controlled insertion-deletion systems.

Each translation attaches a group of labelled rules to every left/right
linear production and fixed machinery for the erasing productions; all
four produce systems with components 1..4, initial = final = 1 and the
start symbol as the single axiom.  They differ in the rule sizes they
need:

    compile_t1  (1,1,0;2,0,0)  contextual insertion, two-symbol context-free
                               deletion; linear communication chain
    compile_t2  (1,1,0;1,1,0)  one-symbol rules, left contexts
    compile_t3  (1,1,0;1,0,1)  like t2 with deletion contexts on the right
    compile_t4  (2,0,0;1,1,0)  context-free two-symbol insertion

Marker symbols are minted from the production labels (uniquified against
the grammar's own symbols), so generated symbols can never collide with
grammar symbols.
"""
from __future__ import annotations

from dataclasses import dataclass

from .control import ComponentGCID, ComponentRule
from .core import Symbol, Word, del_rule, errors_in, fresh_name, ins_rule
from .grammar import (
    SHAPE_ERASE_AB,
    SHAPE_ERASE_CD,
    SHAPE_ERASE_SPRIME,
    SHAPE_LEFT,
    SpecialGNFGrammar,
    validate_special_gnf,
)


@dataclass(frozen=True)
class RuleGroup:
    """The generated artefacts that simulate one grammar production."""

    production: str
    markers: tuple[Symbol, ...]
    labels: frozenset[str]
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class CompilationOutput:
    """A compiled system plus the bookkeeping linking it back to the grammar."""

    system: ComponentGCID
    marker_table: dict[str, RuleGroup]
    eraser_symbols: tuple[Symbol, ...]
    grammar: SpecialGNFGrammar


def _checked(sg: SpecialGNFGrammar) -> None:
    problems = errors_in(validate_special_gnf(sg))
    if problems:
        raise ValueError(f"grammar does not validate: {problems[0].message}")


def _label_base(seed: str, linear_labels: set[str]) -> str:
    # Group labels are "<production>.<component>.<index>", so a fixed-rule
    # base only collides when it equals a linear production label outright.
    base = seed
    while base in linear_labels:
        base += seed
    return base


def _mint_markers(sg: SpecialGNFGrammar, *, primed: bool,
                  erasers: bool) -> tuple[dict[str, tuple[str, ...]], tuple[str, ...], set[str]]:
    names = set(sg.grammar.symbols)
    markers: dict[str, tuple[str, ...]] = {}
    for p, _shape in sg.linear_productions():
        m = fresh_name(p.label, names)
        names.add(m)
        if primed:
            mp = fresh_name(m + "'", names)
            names.add(mp)
            markers[p.label] = (m, mp)
        else:
            markers[p.label] = (m,)
    eraser_symbols: tuple[str, ...] = ()
    if erasers:
        k = fresh_name("K", names)
        names.add(k)
        kp = fresh_name("K'", names)
        names.add(kp)
        eraser_symbols = (k, kp)
    return markers, eraser_symbols, names


def _eraser_groups(sg: SpecialGNFGrammar, table: dict[str, RuleGroup],
                   labels_sprime: frozenset[str],
                   labels_ab: frozenset[str], labels_cd: frozenset[str],
                   markers_ab: tuple[str, ...], markers_cd: tuple[str, ...]) -> None:
    for p in sg.grammar.productions:
        shape = sg.shape_of(p)
        if shape == SHAPE_ERASE_SPRIME:
            table[p.label] = RuleGroup(p.label, (), labels_sprime, p.lhs, p.rhs)
        elif shape == SHAPE_ERASE_AB:
            table[p.label] = RuleGroup(p.label, markers_ab, labels_ab, p.lhs, p.rhs)
        elif shape == SHAPE_ERASE_CD:
            table[p.label] = RuleGroup(p.label, markers_cd, labels_cd, p.lhs, p.rhs)


def _finish(sg: SpecialGNFGrammar, rules: list[ComponentRule],
            table: dict[str, RuleGroup], eraser_symbols: tuple[str, ...],
            names: set[str]) -> CompilationOutput:
    system = ComponentGCID(
        k=4,
        alphabet=frozenset(names),
        terminals=sg.grammar.terminals,
        axioms=frozenset({(sg.grammar.start,)}),
        initial=1,
        final=1,
        rules=tuple(rules),
    )
    return CompilationOutput(system, table, eraser_symbols, sg)


def compile_t1(sg: SpecialGNFGrammar) -> CompilationOutput:
    """Contextual-insertion translation, size (1,1,0;2,0,0).

    A production X -> b Y is simulated by marking X with a fresh marker m,
    growing "m m' " scaffolding to the right of X, deleting "X m" as one
    two-symbol context-free deletion, emitting b behind m', and deleting
    m' again.  The pair and unit erasers are single context-free deletions
    looping on component 1, so the whole communication graph is the chain
    1 - 2 - 3 - 4 with a self-loop on 1.
    """
    _checked(sg)
    sprime = sg.sprime
    markers, _, names = _mint_markers(sg, primed=True, erasers=False)
    linear = sg.linear_productions()
    base = _label_base("e", {p.label for p, _ in linear})

    rules: list[ComponentRule] = []
    table: dict[str, RuleGroup] = {}
    for p, shape in linear:
        m, mp = markers[p.label]
        x = p.lhs[0]
        if shape == SHAPE_LEFT:
            b, y = p.rhs
            grow = ins_rule((m,), (y,))
            emit = ins_rule((mp,), (b,))
        else:
            y, b = p.rhs
            grow = ins_rule((m,), (b,))
            emit = ins_rule((mp,), (y,))
        group = [
            ComponentRule(f"{p.label}.1.1", 1, ins_rule((x,), (m,)), 2),
            ComponentRule(f"{p.label}.2.1", 2, grow, 3),
            ComponentRule(f"{p.label}.2.2", 2, del_rule((), (mp,)), 1),
            ComponentRule(f"{p.label}.3.1", 3, ins_rule((m,), (mp,)), 4),
            ComponentRule(f"{p.label}.3.2", 3, emit, 2),
            ComponentRule(f"{p.label}.4.1", 4, del_rule((), (x, m)), 3),
        ]
        rules.extend(group)
        table[p.label] = RuleGroup(p.label, markers[p.label],
                                   frozenset(r.label for r in group),
                                   p.lhs, p.rhs)

    a, b2, c, d = sg.special
    rules.append(ComponentRule(f"{base}.1.1", 1, del_rule((), (sprime,)), 1))
    rules.append(ComponentRule(f"{base}.1.2", 1, del_rule((), (a, b2)), 1))
    rules.append(ComponentRule(f"{base}.1.3", 1, del_rule((), (c, d)), 1))
    _eraser_groups(sg, table,
                   frozenset({f"{base}.1.1"}),
                   frozenset({f"{base}.1.2"}),
                   frozenset({f"{base}.1.3"}),
                   (), ())
    return _finish(sg, rules, table, (), names)


def _compile_one_sided(sg: SpecialGNFGrammar, *, right_contexts: bool) -> CompilationOutput:
    """Shared body of compile_t2 / compile_t3 (they differ only in which
    side of the deleted symbol carries the context)."""
    _checked(sg)
    sprime = sg.sprime
    markers, (k, kp), names = _mint_markers(sg, primed=False, erasers=True)
    linear = sg.linear_productions()
    linear_labels = {p.label for p, _ in linear}
    base_e = _label_base("e", linear_labels)
    base_k = _label_base("k", linear_labels)

    rules: list[ComponentRule] = []
    table: dict[str, RuleGroup] = {}
    for p, shape in linear:
        (m,) = markers[p.label]
        x = p.lhs[0]
        if shape == SHAPE_LEFT:
            b, y = p.rhs
            first_insert, second_insert = y, b
        else:
            y, b = p.rhs
            first_insert, second_insert = b, y
        if right_contexts:
            drop_x = del_rule((), (x,), (m,))
        else:
            drop_x = del_rule((m,), (x,))
        group = [
            ComponentRule(f"{p.label}.1.1", 1, ins_rule((), (m,)), 2),
            ComponentRule(f"{p.label}.2.1", 2, drop_x, 3),
            ComponentRule(f"{p.label}.2.2", 2, del_rule((), (m,)), 1),
            ComponentRule(f"{p.label}.3.1", 3, ins_rule((m,), (first_insert,)), 4),
            ComponentRule(f"{p.label}.4.1", 4, ins_rule((m,), (second_insert,)), 2),
        ]
        rules.extend(group)
        table[p.label] = RuleGroup(p.label, markers[p.label],
                                   frozenset(r.label for r in group),
                                   p.lhs, p.rhs)

    a, b2, c, d = sg.special
    rules.append(ComponentRule(f"{base_e}.1.1", 1, del_rule((), (sprime,)), 1))
    if right_contexts:
        # The eraser symbol sits right of the pair, so the pair is consumed
        # second symbol first; contexts stay strictly on the right.
        eat_first = (del_rule((), (b2,), (k,)), del_rule((), (d,), (kp,)))
        eat_second = (del_rule((), (a,), (k,)), del_rule((), (c,), (kp,)))
    else:
        eat_first = (del_rule((k,), (a,)), del_rule((kp,), (c,)))
        eat_second = (del_rule((k,), (b2,)), del_rule((kp,), (d,)))
    k_rules = [
        ComponentRule(f"{base_k}.1.1", 1, ins_rule((), (k,)), 2),
        ComponentRule(f"{base_k}.1.2", 1, ins_rule((), (kp,)), 2),
        ComponentRule(f"{base_k}.2.1", 2, eat_first[0], 3),
        ComponentRule(f"{base_k}.2.2", 2, eat_first[1], 3),
        ComponentRule(f"{base_k}.2.3", 2, del_rule((), (k,)), 1),
        ComponentRule(f"{base_k}.2.4", 2, del_rule((), (kp,)), 1),
        ComponentRule(f"{base_k}.3.1", 3, eat_second[0], 2),
        ComponentRule(f"{base_k}.3.2", 3, eat_second[1], 2),
    ]
    rules.extend(k_rules)
    _eraser_groups(sg, table,
                   frozenset({f"{base_e}.1.1"}),
                   frozenset({f"{base_k}.1.1", f"{base_k}.2.1",
                              f"{base_k}.2.3", f"{base_k}.3.1"}),
                   frozenset({f"{base_k}.1.2", f"{base_k}.2.2",
                              f"{base_k}.2.4", f"{base_k}.3.2"}),
                   (k,), (kp,))
    return _finish(sg, rules, table, (k, kp), names)


def compile_t2(sg: SpecialGNFGrammar) -> CompilationOutput:
    """One-symbol rules with left contexts, size (1,1,0;1,1,0).

    Markers are inserted context-free; a misplaced marker can only be
    deleted again, restoring the word.  Pair erasure walks an eraser
    symbol K (or K') over the pair from the left, one symbol per
    component hop; the communication graph gains the chord 2-4.
    """
    return _compile_one_sided(sg, right_contexts=False)


def compile_t3(sg: SpecialGNFGrammar) -> CompilationOutput:
    """Mirror of compile_t2 with deletion contexts on the right,
    size (1,1,0;1,0,1).

    The deleted symbol now carries its anchor on the right ("X m" instead
    of "m X"), and the pair erasers consume each pair second symbol first
    so the eraser symbol can stay on the right throughout.
    """
    return _compile_one_sided(sg, right_contexts=True)


def compile_t4(sg: SpecialGNFGrammar) -> CompilationOutput:
    """Context-free two-symbol insertion, size (2,0,0;1,1,0).

    The emitted symbol and the marker are inserted together as one
    two-symbol word; the successor nonterminal is later inserted
    context-free, which is safe because at most one such symbol is in
    flight in any usefully evolving word.  Pair erasure runs 1-2-3-4-1,
    closing a directed cycle through component 4.
    """
    _checked(sg)
    sprime = sg.sprime
    markers, (k, kp), names = _mint_markers(sg, primed=False, erasers=True)
    linear = sg.linear_productions()
    linear_labels = {p.label for p, _ in linear}
    base_e = _label_base("e", linear_labels)
    base_k = _label_base("k", linear_labels)

    rules: list[ComponentRule] = []
    table: dict[str, RuleGroup] = {}
    for p, shape in linear:
        (m,) = markers[p.label]
        x = p.lhs[0]
        if shape == SHAPE_LEFT:
            b, y = p.rhs
            seeded, reinserted = b, y
        else:
            y, b = p.rhs
            seeded, reinserted = y, b
        group = [
            ComponentRule(f"{p.label}.1.1", 1, ins_rule((), (seeded, m)), 2),
            ComponentRule(f"{p.label}.2.1", 2, del_rule((m,), (x,)), 3),
            ComponentRule(f"{p.label}.2.2", 2, del_rule((reinserted,), (m,)), 1),
            ComponentRule(f"{p.label}.3.1", 3, ins_rule((), (reinserted,)), 2),
        ]
        rules.extend(group)
        table[p.label] = RuleGroup(p.label, markers[p.label],
                                   frozenset(r.label for r in group),
                                   p.lhs, p.rhs)

    a, b2, c, d = sg.special
    rules.append(ComponentRule(f"{base_e}.1.1", 1, del_rule((), (sprime,)), 1))
    k_rules = [
        ComponentRule(f"{base_k}.1.1", 1, ins_rule((), (k,)), 2),
        ComponentRule(f"{base_k}.1.2", 1, ins_rule((), (kp,)), 2),
        ComponentRule(f"{base_k}.2.1", 2, del_rule((k,), (a,)), 3),
        ComponentRule(f"{base_k}.2.2", 2, del_rule((kp,), (c,)), 3),
        ComponentRule(f"{base_k}.3.1", 3, del_rule((k,), (b2,)), 4),
        ComponentRule(f"{base_k}.3.2", 3, del_rule((kp,), (d,)), 4),
        ComponentRule(f"{base_k}.4.1", 4, del_rule((), (k,)), 1),
        ComponentRule(f"{base_k}.4.2", 4, del_rule((), (kp,)), 1),
    ]
    rules.extend(k_rules)
    _eraser_groups(sg, table,
                   frozenset({f"{base_e}.1.1"}),
                   frozenset({f"{base_k}.1.1", f"{base_k}.2.1",
                              f"{base_k}.3.1", f"{base_k}.4.1"}),
                   frozenset({f"{base_k}.1.2", f"{base_k}.2.2",
                              f"{base_k}.3.2", f"{base_k}.4.2"}),
                   (k,), (kp,))
    return _finish(sg, rules, table, (k, kp), names)


COMPILERS = {1: compile_t1, 2: compile_t2, 3: compile_t3, 4: compile_t4}


def compile_theorem(number: int, sg: SpecialGNFGrammar) -> CompilationOutput:
    """Dispatch on the construction number 1..4."""
    try:
        chosen = COMPILERS[number]
    except KeyError:
        raise ValueError(f"no construction number {number}; choose 1..4") from None
    return chosen(sg)
