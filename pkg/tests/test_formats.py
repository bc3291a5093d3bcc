"""Round-trip and error tests for the text formats, DOT and JSON views."""
import json

import pytest

from gcid import control, formats
from gcid.compilers import compile_t1, compile_t2
from gcid.control import CommGraph, communication_graph
from gcid.core import word
from gcid.formats import (
    FormatError,
    format_grammar,
    format_system,
    format_word,
    parse_grammar,
    parse_system,
    parse_word,
    to_dot,
)

ANBN_TEXT = """\
grammar special-gnf
nonterminals: A B C D S S' Z
terminals: a b
special: A B C D
start: S
rule p1: S -> a Z
rule p2: Z -> S b
rule p3: Z -> S' b
rule e: S' -> eps
"""


class TestWords:
    def test_round_trip(self):
        assert parse_word("a S' b") == ("a", "S'", "b")
        assert parse_word("eps") == ()
        assert format_word(()) == "eps"
        assert format_word(("a", "b")) == "a b"

    def test_bad_token(self):
        with pytest.raises(FormatError):
            parse_word("a ;b")


class TestGrammarFormat:
    def test_parse_bundled_text(self):
        doc = parse_grammar(ANBN_TEXT)
        assert doc.kind == "special-gnf"
        assert doc.grammar.start == "S"
        assert doc.special == ("A", "B", "C", "D")
        assert [p.label for p in doc.grammar.productions] == ["p1", "p2", "p3", "e"]
        assert doc.grammar.production("e").rhs == ()

    def test_print_is_bit_exact_on_canonical_input(self):
        assert format_grammar(parse_grammar(ANBN_TEXT)) == ANBN_TEXT

    def test_comments_and_blank_lines_ignored(self):
        noisy = ANBN_TEXT.replace("start: S", "start: S   # the axiom\n\n# noise")
        assert format_grammar(parse_grammar(noisy)) == ANBN_TEXT

    def test_parse_print_parse_fixpoint(self, erasing):
        text = format_grammar(formats.GrammarDoc("special-gnf", erasing.grammar,
                                                 erasing.special))
        assert format_grammar(parse_grammar(text)) == text

    @pytest.mark.parametrize("mutation, fragment", [
        ("grammar special-gnf", "grammar sort-of"),
        ("rule e: S' -> eps", "rule e: S' ->"),
        ("rule e: S' -> eps", "rule e S' -> eps"),
        ("rule p1: S -> a Z", "rule p1: -> a Z"),
        ("special: A B C D", "special: A B C"),
        ("start: S", "start: S Z"),
    ])
    def test_malformed_inputs(self, mutation, fragment):
        with pytest.raises(FormatError):
            parse_grammar(ANBN_TEXT.replace(mutation, fragment))

    def test_missing_sections(self):
        with pytest.raises(FormatError):
            parse_grammar("grammar special-gnf\nstart: S\n")

    def test_geffert_kind_refuses_as_special(self):
        doc = parse_grammar(ANBN_TEXT.replace("special-gnf", "geffert"))
        with pytest.raises(FormatError):
            doc.as_special()


class TestSystemFormat:
    def test_component_round_trip(self, anbn):
        sys_ = compile_t1(anbn).system
        text = format_system(sys_)
        again = parse_system(text)
        assert again == control.ComponentGCID(
            sys_.k, sys_.alphabet, sys_.terminals, sys_.axioms,
            sys_.initial, sys_.final,
            tuple(sorted(sys_.rules, key=lambda r: r.label)))
        assert format_system(again) == text

    def test_label_round_trip(self, anbn):
        lab = control.to_label_form(compile_t2(anbn).system)
        text = format_system(lab)
        again = parse_system(text)
        assert format_system(again) == text
        assert again.initial_labels == lab.initial_labels
        assert again.rule_map["p1.1.1"].successors \
            == lab.rule_map["p1.1.1"].successors

    def test_empty_context_fields(self):
        text = ("gcid components=1 init=1 final=1\n"
                "alphabet: a\n"
                "terminals: a\n"
                "axiom: eps\n"
                "rule i: 1 ins(; a; ) -> 1\n")
        sys_ = parse_system(text)
        rule = sys_.rules[0].rule
        assert rule.left == () and rule.body == ("a",) and rule.right == ()
        assert format_system(sys_) == text

    def test_malformed_header(self):
        with pytest.raises(FormatError):
            parse_system("gcid components=four init=1 final=1\nalphabet: a\n")

    def test_malformed_rule(self):
        with pytest.raises(FormatError):
            parse_system("gcid components=1 init=1 final=1\n"
                         "alphabet: a\n"
                         "rule r: 1 ins(a) -> 1\n")

    def test_missing_alphabet(self):
        with pytest.raises(FormatError):
            parse_system("gcid components=1 init=1 final=1\naxiom: eps\n")


class TestDot:
    def test_t1_graph(self, anbn):
        got = to_dot(communication_graph(compile_t1(anbn).system))
        assert got == ("digraph G {\n"
                       "  1 -> 1;\n"
                       "  1 -> 2;\n"
                       "  2 -> 1;\n"
                       "  2 -> 3;\n"
                       "  3 -> 2;\n"
                       "  3 -> 4;\n"
                       "  4 -> 3;\n"
                       "}\n")

    def test_isolated_nodes_still_listed(self):
        got = to_dot(CommGraph((1, 2, 3), frozenset({(1, 2)})))
        assert got == "digraph G {\n  3;\n  1 -> 2;\n}\n"


class TestJson:
    def test_trace_json_is_serialisable(self, anbn):
        from gcid.core import Budget
        res = control.member(compile_t1(anbn).system, word("a b"), Budget(4, 10))
        payload = json.dumps(formats.trace_json(res.trace))
        data = json.loads(payload)
        assert data["start"] == {"site": 1, "word": ["S"]}
        assert data["steps"][-1]["word"] == ["a", "b"]

    def test_report_json_sorted_words(self, anbn):
        from gcid.core import Budget
        from gcid.verify import compare
        report = compare(anbn, compile_t1(anbn).system, Budget(6, 12))
        data = formats.report_json(report)
        assert data["verdict"] == "equal-up-to-bound"
        assert data["oracle_words"] == [["a", "b"],
                                        ["a", "a", "b", "b"],
                                        ["a", "a", "a", "b", "b", "b"]]
        assert data["missing"] == [] and data["extra"] == []
