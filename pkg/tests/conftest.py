import pytest

from gcid.grammar import Grammar, Production, SpecialGNFGrammar
from gcid.verify import grammar_anbn, grammar_erasing

SPECIAL = ("A", "B", "C", "D")
BASE_NONTERMINALS = frozenset({"S", "Z", "S'", "A", "B", "C", "D"})


@pytest.fixture(scope="session")
def anbn():
    return grammar_anbn()


@pytest.fixture(scope="session")
def erasing():
    return grammar_erasing()


@pytest.fixture(scope="session")
def golden():
    """Two linear productions plus the unit eraser; language {ab}."""
    g = Grammar(
        nonterminals=frozenset({"S", "Q", "S'", "A", "B", "C", "D"}),
        terminals=frozenset({"a", "b"}),
        productions=(
            Production("pL", ("S",), ("a", "Q")),
            Production("pR", ("Q",), ("S'", "b")),
            Production("e", ("S'",), ()),
        ),
        start="S",
    )
    return SpecialGNFGrammar(g, SPECIAL)


def make_special(productions, *, terminals=("a", "b"), nonterminals=None,
                 start="S"):
    return SpecialGNFGrammar(
        Grammar(frozenset(nonterminals or BASE_NONTERMINALS),
                frozenset(terminals), tuple(productions), start),
        SPECIAL)
