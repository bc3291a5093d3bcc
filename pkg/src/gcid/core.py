"""Words, insertion/deletion rules, and bounded exhaustive search.

Symbols are atoms: plain non-empty strings compared by name.  A word is a
tuple of symbols; the empty tuple is the empty word.  All values here are
immutable and every operation is a pure function, so everything is safe to
share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

Symbol = str
Word = tuple[Symbol, ...]

EMPTY_WORD: Word = ()

INSERTION = "ins"
DELETION = "del"

# Characters that the text formats reserve; symbol names must avoid them.
_FORBIDDEN_CHARS = set(";:#") | set(" \t\r\n\x0b\x0c")


def symbol_name_ok(name: str) -> bool:
    """True if `name` is usable as a symbol atom.

    Names must be non-empty, contain no whitespace and none of the file
    format delimiters (`;`, `:`, `->`, `#`).  The token `eps` is reserved
    as the textual spelling of the empty word.
    """
    if not name or name == "eps":
        return False
    if "->" in name:
        return False
    return not (_FORBIDDEN_CHARS & set(name))


def word(text: str | Iterable[str]) -> Word:
    """Build a word from whitespace-separated tokens (or any symbol iterable)."""
    if isinstance(text, str):
        return tuple(text.split())
    return tuple(text)


@dataclass(frozen=True, order=True)
class Rule:
    """One insertion or deletion triple (left, body, right) with a mode tag.

    An insertion rule rewrites `left right -> left body right`; a deletion
    rule rewrites `left body right -> left right`.  The body must be
    non-empty for the rule to be well formed (validators report violations
    rather than the constructor raising, so that parsed input can be
    diagnosed).
    """

    mode: str
    left: Word
    body: Word
    right: Word


def ins_rule(left: str | Iterable[str], body: str | Iterable[str],
             right: str | Iterable[str] = ()) -> Rule:
    return Rule(INSERTION, word(left), word(body), word(right))


def del_rule(left: str | Iterable[str], body: str | Iterable[str],
             right: str | Iterable[str] = ()) -> Rule:
    return Rule(DELETION, word(left), word(body), word(right))


def apply_rule(w: Word, r: Rule) -> set[tuple[Word, int]]:
    """All one-step rewrites of `w` by rule `r`, with match positions.

    For an insertion (u, a, v) every factorisation w = x1 u v x2 yields
    (x1 u a v x2, |x1|); for a deletion (u, a, v) every factorisation
    w = x1 u a v x2 yields (x1 u v x2, |x1|).  Overlapping occurrences all
    count.  The position is the start index of the matched window, so
    results that coincide as words are still kept apart when they stem
    from different positions.
    """
    results: set[tuple[Word, int]] = set()
    if r.mode == INSERTION:
        window = r.left + r.right
        span = len(window)
        for i in range(len(w) - span + 1):
            if w[i:i + span] == window:
                cut = i + len(r.left)
                results.add((w[:cut] + r.body + w[cut:], i))
    elif r.mode == DELETION:
        window = r.left + r.body + r.right
        span = len(window)
        for i in range(len(w) - span + 1):
            if w[i:i + span] == window:
                cut = i + len(r.left)
                results.add((w[:cut] + w[cut + len(r.body):], i))
    else:
        raise ValueError(f"unknown rule mode: {r.mode!r}")
    return results


@dataclass(frozen=True)
class SizeVector:
    """Maximal body/context lengths: (n, m, m') over insertions, (p, q, q') over deletions."""

    n: int
    m: int
    m_prime: int
    p: int
    q: int
    q_prime: int

    def __str__(self) -> str:
        return (f"({self.n},{self.m},{self.m_prime};"
                f"{self.p},{self.q},{self.q_prime})")

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.n, self.m, self.m_prime, self.p, self.q, self.q_prime)


def size_of(insertions: Iterable[Rule], deletions: Iterable[Rule]) -> SizeVector:
    """Size vector of a rule set; maxima over an empty set are 0."""
    ins = list(insertions)
    dels = list(deletions)
    return SizeVector(
        n=max((len(r.body) for r in ins), default=0),
        m=max((len(r.left) for r in ins), default=0),
        m_prime=max((len(r.right) for r in ins), default=0),
        p=max((len(r.body) for r in dels), default=0),
        q=max((len(r.left) for r in dels), default=0),
        q_prime=max((len(r.right) for r in dels), default=0),
    )


@dataclass(frozen=True)
class InsDelSystem:
    """A plain insertion-deletion system (alphabet, terminals, axioms, I, D)."""

    alphabet: frozenset[Symbol]
    terminals: frozenset[Symbol]
    axioms: frozenset[Word]
    insertions: frozenset[Rule]
    deletions: frozenset[Rule]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "insertions", frozenset(self.insertions))
        object.__setattr__(self, "deletions", frozenset(self.deletions))

    @property
    def size(self) -> SizeVector:
        return size_of(self.insertions, self.deletions)


@dataclass(frozen=True)
class Budget:
    """Bounds for exhaustive search.

    `max_len` caps collected words, `max_intermediate` caps every word that
    the search is allowed to pass through (default: max_len + 6, enough
    slack for the compiled systems, which carry at most two extra marker
    symbols), `max_steps` caps the derivation length, and `max_visited`
    caps the visited-state set so the search always terminates.
    """

    max_len: int
    max_intermediate: int | None = None
    max_steps: int = 200
    max_visited: int = 1_000_000

    def __post_init__(self) -> None:
        if self.max_len < 0 or self.max_steps < 0 or self.max_visited < 1:
            raise ValueError("budget bounds must be non-negative (max_visited positive)")
        if self.intermediate_cap < self.max_len:
            raise ValueError("max_intermediate must be at least max_len")

    @property
    def intermediate_cap(self) -> int:
        if self.max_intermediate is None:
            return self.max_len + 6
        return self.max_intermediate


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of a bounded enumeration.

    When `exhausted` is set the visited budget was hit and `words` is only
    a lower bound of the bounded language, never a silently truncated
    answer presented as complete.
    """

    words: frozenset[Word]
    exhausted: bool = False
    visited: int = 0


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding; `severity` is \"error\" or \"warning\"."""

    severity: str
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.code}: {self.message}"


def errors_in(diagnostics: Iterable[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diagnostics if d.severity == "error"]


def shortlex(words: Iterable[Word]) -> list[Word]:
    """Words sorted by length then lexicographically (the canonical output order)."""
    return sorted(set(words), key=lambda w: (len(w), w))


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """`base` if unused, else the first unused `base~2`, `base~3`, ..."""
    pool = set(taken)
    if base not in pool:
        return base
    k = 2
    while f"{base}~{k}" in pool:
        k += 1
    return f"{base}~{k}"


@dataclass
class ExploreResult:
    """Raw BFS closure: discovery order, parent edges, and budget status."""

    order: list[Hashable]
    parents: dict[Hashable, tuple[Hashable, Hashable] | None]
    exhausted: bool
    hit: Hashable | None = None


def explore(initials: Iterable[Hashable],
            expand: Callable[[Hashable], Iterable[tuple[Hashable, Hashable]]],
            *, max_steps: int, max_visited: int,
            stop: Callable[[Hashable], bool] | None = None) -> ExploreResult:
    """Deterministic bounded breadth-first closure.

    `expand` must yield (edge, successor) pairs in a deterministic order;
    the closure is then independent of everything but its inputs.  States
    are visited at most once, at their minimal depth.  If `stop` is given
    the search halts the first time a discovered state satisfies it, which
    (because expansion order is deterministic) selects the lexicographically
    least minimal witness.
    """
    parents: dict[Hashable, tuple[Hashable, Hashable] | None] = {}
    order: list[Hashable] = []
    exhausted = False
    hit: Hashable | None = None
    done = False

    for s in initials:
        if s in parents:
            continue
        if len(parents) >= max_visited:
            exhausted = True
            done = True
            break
        parents[s] = None
        order.append(s)
        if stop is not None and stop(s):
            hit = s
            done = True
            break

    frontier = list(order)
    depth = 0
    while not done and frontier and depth < max_steps:
        successors: list[Hashable] = []
        for s in frontier:
            if done:
                break
            for edge, t in expand(s):
                if t in parents:
                    continue
                if len(parents) >= max_visited:
                    exhausted = True
                    done = True
                    break
                parents[t] = (s, edge)
                order.append(t)
                successors.append(t)
                if stop is not None and stop(t):
                    hit = t
                    done = True
                    break
        frontier = successors
        depth += 1

    return ExploreResult(order, parents, exhausted, hit)


def enumerate_basic(system: InsDelSystem, budget: Budget) -> EnumerationResult:
    """Bounded language of a plain insertion-deletion system.

    Exactly the terminal words of length <= budget.max_len reachable from
    an axiom by at most budget.max_steps rule applications while never
    passing through a word longer than the intermediate cap.
    """
    cap = budget.intermediate_cap
    rules = sorted(system.insertions) + sorted(system.deletions)

    def expand(w: Word):
        out = []
        for idx, r in zip(range(len(rules)), rules):
            for w2, pos in sorted(apply_rule(w, r)):
                if len(w2) <= cap:
                    out.append(((idx, pos), w2))
        return out

    initials = [a for a in shortlex(system.axioms) if len(a) <= cap]
    res = explore(initials, expand,
                  max_steps=budget.max_steps, max_visited=budget.max_visited)
    terminals = system.terminals
    found = frozenset(
        w for w in res.order
        if len(w) <= budget.max_len and all(s in terminals for s in w))
    return EnumerationResult(found, res.exhausted, len(res.parents))
