"""Graph-controlled insertion-deletion systems.

Two equivalent formulations are supported: the component form, where rules
live in numbered components and each application names the component that
acts next, and the label form, where every rule carries the set of labels
allowed to act next.  Both get the same bounded enumeration / membership
machinery, plus conversions in both directions and communication-graph
extraction.

A configuration pairs the current site (component number, or label of the
rule to be applied) with the current word.  Acceptance is purely a
reachability condition: a terminal word counts as soon as it is situated
at the final site, whether or not further rules would apply.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .core import (
    Budget,
    Diagnostic,
    EnumerationResult,
    Rule,
    Symbol,
    Word,
    apply_rule,
    errors_in,
    explore,
    shortlex,
    symbol_name_ok,
)


@dataclass(frozen=True)
class ComponentRule:
    """A labelled rule `label: (source, rule, target)` of a component system."""

    label: str
    source: int
    rule: Rule
    target: int


@dataclass(frozen=True)
class ComponentGCID:
    """A k-component graph-controlled insertion-deletion system."""

    k: int
    alphabet: frozenset[Symbol]
    terminals: frozenset[Symbol]
    axioms: frozenset[Word]
    initial: int
    final: int
    rules: tuple[ComponentRule, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "rules", tuple(self.rules))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.rules)

    def rules_in(self, component: int) -> tuple[ComponentRule, ...]:
        return tuple(r for r in sorted(self.rules, key=lambda c: c.label)
                     if r.source == component)

    @cached_property
    def insertions(self) -> frozenset[Rule]:
        return frozenset(r.rule for r in self.rules if r.rule.mode == "ins")

    @cached_property
    def deletions(self) -> frozenset[Rule]:
        return frozenset(r.rule for r in self.rules if r.rule.mode == "del")


@dataclass(frozen=True)
class LabelRule:
    """A rule `label: (rule, successors)` of a label-controlled system."""

    label: str
    rule: Rule
    successors: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "successors", frozenset(self.successors))


@dataclass(frozen=True)
class LabelGCID:
    """The label formulation: control flows through successor-label sets."""

    alphabet: frozenset[Symbol]
    terminals: frozenset[Symbol]
    axioms: frozenset[Word]
    initial_labels: frozenset[str]
    final_labels: frozenset[str]
    rules: tuple[LabelRule, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "initial_labels", frozenset(self.initial_labels))
        object.__setattr__(self, "final_labels", frozenset(self.final_labels))
        object.__setattr__(self, "rules", tuple(self.rules))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.rules)

    @cached_property
    def rule_map(self) -> dict[str, LabelRule]:
        return {r.label: r for r in self.rules}


System = Union[ComponentGCID, LabelGCID]

Site = Union[int, str]


@dataclass(frozen=True)
class Configuration:
    """Current site (component index or rule label) plus current word."""

    site: Site
    word: Word


@dataclass(frozen=True)
class Trace:
    """A derivation witness: start configuration and (label, configuration) steps."""

    start: Configuration
    steps: tuple[tuple[str, Configuration], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def end(self) -> Configuration:
        return self.steps[-1][1] if self.steps else self.start

    def configurations(self) -> tuple[Configuration, ...]:
        return (self.start,) + tuple(c for _, c in self.steps)


@dataclass(frozen=True)
class MemberResult:
    """Membership verdict.  `found=False` is always bound-relative."""

    found: bool
    trace: Trace | None
    exhausted: bool
    visited: int


@dataclass(frozen=True)
class CommGraph:
    """Directed communication graph: edge (i, j) iff some rule moves i -> j."""

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]


# ---------------------------------------------------------------------------
# validation

def _check_symbols(rule: Rule, alphabet: frozenset[str], where: str,
                   out: list[Diagnostic]) -> None:
    for part in (rule.left, rule.body, rule.right):
        for s in part:
            if not symbol_name_ok(s):
                out.append(Diagnostic("error", "bad-symbol-name",
                                      f"{where}: symbol {s!r} is not a valid atom"))
            elif s not in alphabet:
                out.append(Diagnostic("error", "unknown-symbol",
                                      f"{where}: symbol {s!r} is not in the alphabet"))


def validate(system: System) -> list[Diagnostic]:
    """All invariant violations of a system, one diagnostic per finding.

    An empty list means the system is well formed.  Warnings flag
    degenerate but legal shapes (e.g. a final component without rules,
    which makes the label-form conversion accept nothing).
    """
    out: list[Diagnostic] = []
    seen: set[str] = set()
    for r in system.rules:
        if r.label in seen:
            out.append(Diagnostic("error", "duplicate-label",
                                  f"rule label {r.label!r} is assigned more than once"))
        seen.add(r.label)
        if not r.rule.body:
            out.append(Diagnostic("error", "empty-rule-body",
                                  f"rule {r.label!r} has an empty body"))
        _check_symbols(r.rule, system.alphabet, f"rule {r.label!r}", out)

    if not system.terminals <= system.alphabet:
        extra = ", ".join(sorted(system.terminals - system.alphabet))
        out.append(Diagnostic("error", "terminals-not-subset",
                              f"terminals outside the alphabet: {extra}"))
    for a in shortlex(system.axioms):
        for s in a:
            if s not in system.alphabet:
                out.append(Diagnostic("error", "unknown-symbol",
                                      f"axiom symbol {s!r} is not in the alphabet"))

    if isinstance(system, ComponentGCID):
        if system.k < 1:
            out.append(Diagnostic("error", "component-out-of-range",
                                  f"system declares k={system.k}"))
        for site, what in ((system.initial, "initial"), (system.final, "final")):
            if not 1 <= site <= system.k:
                out.append(Diagnostic("error", "component-out-of-range",
                                      f"{what} component {site} not in [1..{system.k}]"))
        for r in system.rules:
            for site, what in ((r.source, "source"), (r.target, "target")):
                if not 1 <= site <= system.k:
                    out.append(Diagnostic(
                        "error", "component-out-of-range",
                        f"rule {r.label!r}: {what} component {site} not in [1..{system.k}]"))
        if not any(r.source == system.final for r in system.rules):
            out.append(Diagnostic("warning", "final-component-empty",
                                  f"final component {system.final} has no rules"))
    else:
        labels = set(system.labels)
        for group, code in ((system.initial_labels, "unknown-initial-label"),
                            (system.final_labels, "unknown-final-label")):
            for lab in sorted(group - labels):
                out.append(Diagnostic("error", code, f"label {lab!r} does not exist"))
        for r in system.rules:
            for lab in sorted(r.successors - labels):
                out.append(Diagnostic("error", "unknown-successor-label",
                                      f"rule {r.label!r}: successor {lab!r} does not exist"))
        if not system.initial_labels:
            out.append(Diagnostic("warning", "no-initial-labels",
                                  "system has no initial labels"))
        if not system.final_labels:
            out.append(Diagnostic("warning", "no-final-labels",
                                  "system has no final labels; nothing can be accepted"))
    return out


def require_valid(system: System) -> None:
    """Raise ValueError when `system` has error-level diagnostics."""
    problems = errors_in(validate(system))
    if problems:
        summary = "; ".join(str(d) for d in problems[:5])
        raise ValueError(f"invalid system: {summary}")


# ---------------------------------------------------------------------------
# operational semantics

def _component_expand(system: ComponentGCID, cap: int | None):
    by_source: dict[int, list[ComponentRule]] = {}
    for cr in sorted(system.rules, key=lambda c: c.label):
        by_source.setdefault(cr.source, []).append(cr)

    def expand(state: tuple[int, Word]):
        site, w = state
        out = []
        for cr in by_source.get(site, ()):  # label-sorted
            for w2, pos in sorted(apply_rule(w, cr.rule), key=lambda t: t[1]):
                if cap is None or len(w2) <= cap:
                    out.append(((cr.label, pos), (cr.target, w2)))
        out.sort(key=lambda item: item[0])
        return out

    return expand


def _label_expand(system: LabelGCID, cap: int | None):
    rule_map = system.rule_map

    def expand(state: tuple[str, Word]):
        lab, w = state
        lr = rule_map.get(lab)
        if lr is None:
            return []
        succ = sorted(lr.successors)
        out = []
        for w2, pos in sorted(apply_rule(w, lr.rule), key=lambda t: t[1]):
            if cap is not None and len(w2) > cap:
                continue
            for nxt in succ:
                out.append(((lab, pos), (nxt, w2)))
        return out

    return expand


def _expander(system: System, cap: int | None):
    if isinstance(system, ComponentGCID):
        return _component_expand(system, cap)
    return _label_expand(system, cap)


def step(system: System, config: Configuration) -> set[tuple[str, Configuration]]:
    """All one-step successors of a configuration.

    Component form: any rule housed in the current component, applied at any
    match position, moving the word to the rule's target.  Label form: the
    rule named by the current site, with every successor label as the next
    site.  An empty set means the configuration is halted.
    """
    expand = _expander(system, None)
    return {(edge[0], Configuration(site, w))
            for edge, (site, w) in expand((config.site, config.word))}


def _initial_states(system: System, cap: int) -> list[tuple[Site, Word]]:
    axioms = [a for a in shortlex(system.axioms) if len(a) <= cap]
    if isinstance(system, ComponentGCID):
        return [(system.initial, a) for a in axioms]
    starts = sorted(system.initial_labels)
    return [(lab, a) for a in axioms for lab in starts]


def _is_final_site(system: System, site: Site) -> bool:
    if isinstance(system, ComponentGCID):
        return site == system.final
    return site in system.final_labels


def enumerate(system: System, budget: Budget) -> EnumerationResult:  # noqa: A001
    """Bounded language of a controlled system.

    Exactly the terminal words of length <= budget.max_len situated at the
    final site in some configuration reachable from an axiom within the
    step, length and visited budgets.  The result is independent of rule
    order: successors are explored sorted by (label, position).
    """
    cap = budget.intermediate_cap
    res = explore(_initial_states(system, cap), _expander(system, cap),
                  max_steps=budget.max_steps, max_visited=budget.max_visited)
    terminals = system.terminals
    words = frozenset(
        w for site, w in res.order
        if _is_final_site(system, site)
        and len(w) <= budget.max_len
        and all(s in terminals for s in w))
    return EnumerationResult(words, res.exhausted, len(res.parents))


def trace_to(parents: dict, state: tuple[Site, Word]) -> Trace:
    """Reconstruct the discovery path of `state` from an explore() parent map."""
    steps: list[tuple[str, Configuration]] = []
    cur = state
    while True:
        prev = parents[cur]
        if prev is None:
            break
        before, edge = prev
        steps.append((edge[0], Configuration(cur[0], cur[1])))
        cur = before
    steps.reverse()
    return Trace(Configuration(cur[0], cur[1]), tuple(steps))


def member(system: System, target: Word, budget: Budget) -> MemberResult:
    """Bounded membership: search for a derivation of `target`.

    On success the trace runs from an initial configuration to the final
    site carrying `target`.  A negative answer is only ever
    "not found within these bounds", reported together with the exhaustion
    flag; it never claims non-membership.  Only the intermediate-length,
    step and visited budgets constrain the search (max_len plays no role
    beyond its default for the intermediate cap).
    """
    if any(s not in system.terminals for s in target):
        return MemberResult(False, None, False, 0)
    cap = budget.intermediate_cap

    def stop(state: tuple[Site, Word]) -> bool:
        return state[1] == target and _is_final_site(system, state[0])

    res = explore(_initial_states(system, cap), _expander(system, cap),
                  max_steps=budget.max_steps, max_visited=budget.max_visited,
                  stop=stop)
    if res.hit is not None:
        return MemberResult(True, trace_to(res.parents, res.hit),
                            res.exhausted, len(res.parents))
    return MemberResult(False, None, res.exhausted, len(res.parents))


def trace_is_valid(system: System, trace: Trace) -> bool:
    """Replay a trace through step(); True iff every step is a real transition."""
    current = trace.start
    for label, nxt in trace.steps:
        if (label, nxt) not in step(system, current):
            return False
        current = nxt
    return True


# ---------------------------------------------------------------------------
# conversions

def to_label_form(system: ComponentGCID) -> LabelGCID:
    """Component form -> label form.

    Each rule `l: (i, r, j)` becomes `l: (r, labels-of-component-j)`; the
    initial labels are those of the initial component and the final labels
    those of the final component.  If the final component carries no rules
    the converted system has no final labels (and accepts nothing), which
    is reported as a warning.
    """
    require_valid(system)
    labels_of = {i: frozenset(r.label for r in system.rules if r.source == i)
                 for i in range(1, system.k + 1)}
    rules = tuple(LabelRule(r.label, r.rule, labels_of[r.target])
                  for r in sorted(system.rules, key=lambda c: c.label))
    final_labels = labels_of[system.final]
    if not final_labels:
        warnings.warn("final component has no rules; the label form has no "
                      "final labels and accepts nothing", stacklevel=2)
    return LabelGCID(system.alphabet, system.terminals, system.axioms,
                     labels_of[system.initial], final_labels, rules)


def to_component_form(system: LabelGCID) -> ComponentGCID:
    """Label form -> component form by the powerset construction.

    Components are the non-empty successor-label subsets reachable from the
    initial-label set, plus one rule-free sink that is the final component.
    A rule housed in a subset goes to the component of its successor set,
    and additionally to the sink whenever its successor set meets the final
    labels.  Acceptance is exactly "word situated in the sink"; note that a
    terminal axiom accepted by the label form in zero steps (initial and
    final labels overlapping) has no sink counterpart.
    """
    require_valid(system)
    if not system.initial_labels:
        raise ValueError("cannot convert: no initial labels")
    if not system.final_labels:
        raise ValueError("cannot convert: no final labels")

    rule_map = system.rule_map
    start = frozenset(system.initial_labels)
    seen: set[frozenset[str]] = {start}
    queue: list[frozenset[str]] = [start]
    while queue:
        current = queue.pop(0)
        for lab in sorted(current):
            succ = rule_map[lab].successors
            if succ and succ not in seen:
                seen.add(succ)
                queue.append(succ)

    subsets = sorted(seen, key=lambda s: sorted(s))
    index: dict[frozenset[str], int] = {}
    for n, s in zip(range(1, len(subsets) + 1), subsets):
        index[s] = n
    sink = len(subsets) + 1

    out_rules: list[ComponentRule] = []
    for s in subsets:
        here = index[s]
        for lab in sorted(s):
            lr = rule_map[lab]
            if lr.successors:
                out_rules.append(ComponentRule(f"{lab}@{here}", here,
                                               lr.rule, index[lr.successors]))
            if lr.successors & system.final_labels:
                out_rules.append(ComponentRule(f"{lab}@{here}@f", here,
                                               lr.rule, sink))

    return ComponentGCID(sink, system.alphabet, system.terminals, system.axioms,
                         index[start], sink, tuple(out_rules))


# ---------------------------------------------------------------------------
# communication graph

def communication_graph(system: ComponentGCID) -> CommGraph:
    """Edge (i, j) iff some rule has source i and target j; self-loops kept."""
    edges = frozenset((r.source, r.target) for r in system.rules)
    return CommGraph(tuple(range(1, system.k + 1)), edges)


def classify_graph(graph: CommGraph) -> str:
    """Shape of the undirected support with self-loops removed.

    "linear-chain" if it is a path visiting every node (a single node
    counts), "tree" if it is acyclic and connected, "general" otherwise.
    """
    nodes = list(graph.nodes)
    if not nodes:
        return "linear-chain"
    undirected = {frozenset((i, j)) for i, j in graph.edges if i != j}
    neighbours: dict[int, set[int]] = {n: set() for n in nodes}
    for edge in undirected:
        i, j = sorted(edge)
        neighbours[i].add(j)
        neighbours[j].add(i)

    reached = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for nxt in neighbours[stack.pop()]:
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if len(reached) != len(nodes):
        return "general"
    if len(undirected) != len(nodes) - 1:
        return "general"  # connected with an extra edge: contains a cycle
    if all(len(neighbours[n]) <= 2 for n in nodes):
        return "linear-chain"
    return "tree"
